import argparse
import signal
import sys

from totalMatching.enumeration import MODES
from totalMatching.Tool import COMMANDS, EF_ACTIONS, CommandSpec, Tool
from totalMatching.utils import load_config


def handle_exit(signal_received, frame):
    print("SIGINT or CTRL-C detected. Exiting.", file=sys.stderr)
    sys.exit(130)


def build_parser():
    parser = argparse.ArgumentParser(description="Exact polyhedral toolkit for the total matching polytope.")
    parser.add_argument("--quiet", action="store_true", help="Run without echoing the log to stdout")
    parser.add_argument(
        "--config",
        type=str,
        default="config.json",
        help="Path to the configuration file (default: config.json, falls back to built-in defaults)",
    )
    subparsers = parser.add_subparsers(dest="command", required=True)

    for command in COMMANDS:
        sub = subparsers.add_parser(command)
        instance = sub.add_mutually_exclusive_group()
        instance.add_argument("--complete-bipartite", nargs=2, type=int, metavar=("R", "S"))
        instance.add_argument("--graph", type=str, metavar="FILE")
        instance.add_argument("--tree", type=str, metavar="SPEC", help="pathN, starN or prufer:a,b,c (1-based)")
        sub.add_argument("--weights", type=str, metavar="FILE")
        sub.add_argument("--mode", choices=MODES, default="all")
        sub.add_argument("--r", type=int, metavar="K", help="balanced separation size")
        sub.add_argument("--rows", type=str, metavar="FILE", help="inequality file")
        sub.add_argument("--point", type=str, metavar="FILE", help="point in weight-file format")
        sub.add_argument("--action", choices=EF_ACTIONS, default="build")
        sub.add_argument("--brute-force", action="store_true")
        sub.add_argument("--hull-check", action="store_true")
        sub.add_argument("--limit-elements", type=int, metavar="N")
        sub.add_argument("--limit-dim", type=int, metavar="N")
        sub.add_argument("--trials", type=int, metavar="N")
        sub.add_argument("--seed", type=int, metavar="N")
        sub.add_argument("--out", type=str, metavar="FILE")
    return parser


def spec_from_args(args) -> CommandSpec:
    return CommandSpec(
        command=args.command,
        complete_bipartite=tuple(args.complete_bipartite) if args.complete_bipartite else None,
        graph=args.graph,
        tree=args.tree,
        weights=args.weights,
        mode=args.mode,
        r=args.r,
        rows=args.rows,
        point=args.point,
        action=args.action,
        brute_force=args.brute_force,
        hull_check=args.hull_check,
        out=args.out,
        limit_elements=args.limit_elements,
        limit_dim=args.limit_dim,
        trials=args.trials,
        seed=args.seed,
    )


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    config = load_config(args.config)

    tool = Tool(config, debugging=not args.quiet)
    code, text = tool.run(spec_from_args(args))
    print(text, end="", file=sys.stderr if code >= 2 else sys.stdout)
    return code


if __name__ == "__main__":

    signal.signal(signal.SIGINT, handle_exit)
    signal.signal(signal.SIGTERM, handle_exit)

    sys.exit(main())
