"""The Total Matching Tool object for orchestrating batch runs of generators, solvers and verifiers."""

from dataclasses import dataclass
from fractions import Fraction
from functools import partial
from typing import List, Optional, Sequence, Tuple

import numpy as np

from totalMatching.balasEF import (
    LiftError,
    build_Q,
    lift_point,
    lifted_space,
    project_Q,
    projection_cone,
    raw_ray_inequality,
    solve_over_Q,
)
from totalMatching.doubleDescription import dd_hull, dd_rays
from totalMatching.enumeration import (
    MODES,
    characteristic_vectors,
    enumerate_total_matchings,
    max_weight_over_table,
    max_weight_total_matching_bruteforce,
    nu_t,
    random_weights,
)
from totalMatching.exactGeometry import GeometryError, HPolytope, VPolytope, check_space
from totalMatching.fileUtils import (
    FormatError,
    format_catalog,
    format_inequalities,
    format_point,
    format_row,
    format_separation,
    format_total_matchings,
    parse_inequalities,
    parse_weights,
    read_text,
    write_text,
)
from totalMatching.graphCore import (
    Graph,
    GraphError,
    format_graph,
    is_tree,
    make_complete_bipartite,
    parse_graph,
    parse_tree_spec,
)
from totalMatching.inequalityCatalog import (
    CatalogError,
    biclique_catalog,
    complete_bipartite_description,
    element_space,
    is_facet,
    is_valid,
    tree_description,
    verify_description,
)
from totalMatching.solverSeparation import separate_balanced, separate_catalog, solve_kbipartite, solve_tree
from totalMatching.utils import DEFAULT_CONFIG, LimitExceededError, configure_log, log

COMMANDS = ("gen", "enumerate", "nut", "solve", "describe", "hull", "verify", "facet", "ef", "cone", "separate")
EF_ACTIONS = ("build", "solve", "lift")

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2
EXIT_LIMIT = 3


@dataclass(frozen=True)
class CommandSpec:
    command: str
    complete_bipartite: Optional[Tuple[int, int]] = None
    graph: Optional[str] = None
    tree: Optional[str] = None
    weights: Optional[str] = None
    mode: str = "all"
    r: Optional[int] = None
    rows: Optional[str] = None
    point: Optional[str] = None
    action: str = "build"
    brute_force: bool = False
    hull_check: bool = False
    out: Optional[str] = None
    limit_elements: Optional[int] = None
    limit_dim: Optional[int] = None
    trials: Optional[int] = None
    seed: Optional[int] = None

    def check(self):
        if self.command not in COMMANDS:
            raise UsageError(f"unknown subcommand {self.command!r}")
        for name in ("limit_elements", "limit_dim", "trials"):
            value = getattr(self, name)
            if value is not None and value <= 0:
                raise UsageError(f"--{name.replace('_', '-')} must be positive, got {value}")
        if self.seed is not None and self.seed < 0:
            raise UsageError(f"--seed must be nonnegative, got {self.seed}")
        if self.mode not in MODES:
            raise UsageError(f"--mode must be one of {', '.join(MODES)}")
        if self.action not in EF_ACTIONS:
            raise UsageError(f"--action must be one of {', '.join(EF_ACTIONS)}")
        sources = [self.complete_bipartite, self.graph, self.tree]
        if sum(source is not None for source in sources) > 1:
            raise UsageError("give at most one of --complete-bipartite, --graph, --tree")


class Tool:
    def __init__(self, config, debugging=True):

        # ----------- Tool Essential Attributes ----------- #
        self.config = dict(DEFAULT_CONFIG)
        self.config.update(config)
        self.debugging = debugging

        configure_log(self.config["logFile"], verbose=self.config["verbose"] and self.debugging)

        # ----------- Tool Parameters ----------- #
        self.enumerationLimit = self.config["enumerationLimit"]
        self.hullDimLimit = self.config["hullDimLimit"]
        self.separationLimit = self.config["separationLimit"]
        self.trials = self.config["trials"]
        self.seed = self.config["seed"]

        self.handlers = {
            "gen": self.gen,
            "enumerate": self.enumerate,
            "nut": self.nut,
            "solve": self.solve,
            "describe": self.describe,
            "hull": self.hull,
            "verify": self.verify,
            "facet": self.facet,
            "ef": self.ef,
            "cone": self.cone,
            "separate": self.separate,
        }

    # ----------- Running ----------- #

    def run(self, spec: CommandSpec) -> Tuple[int, str]:
        """Execute one subcommand. Returns the exit code and the result text (the diagnostic on errors).

        With spec.out the result is written there and the returned text is empty.
        """
        log(f"INFO TOOL: start {spec.command}")
        try:
            spec.check()
            self.applyOverrides(spec)
            code, text = self.handlers[spec.command](spec)
            text = write_text(spec.out, text)
        except LimitExceededError as e:
            code, text = EXIT_LIMIT, f"limit exceeded: {e}\n"
        except LiftError as e:
            code, text = EXIT_FAILED, f"error: {e}\n"
        except (UsageError, GraphError, FormatError, CatalogError, GeometryError, ValueError, OSError) as e:
            code, text = EXIT_USAGE, f"error: {e}\n"
        log(f"INFO TOOL: finish {spec.command} with exit code {code}")
        return code, text

    def applyOverrides(self, spec: CommandSpec):
        self.enumerationLimit = spec.limit_elements or self.config["enumerationLimit"]
        self.hullDimLimit = spec.limit_dim or self.config["hullDimLimit"]
        self.trials = spec.trials or self.config["trials"]
        self.seed = self.config["seed"] if spec.seed is None else spec.seed

    # ----------- Instances ----------- #

    def getGraph(self, spec: CommandSpec) -> Graph:
        if spec.complete_bipartite is not None:
            return make_complete_bipartite(*spec.complete_bipartite)
        if spec.tree is not None:
            return parse_tree_spec(spec.tree)
        if spec.graph is not None:
            return parse_graph(read_text(spec.graph))
        raise UsageError("no instance: give --complete-bipartite, --graph or --tree")

    def getBipartite(self, spec: CommandSpec) -> Tuple[int, int]:
        if spec.complete_bipartite is None:
            raise UsageError(f"{spec.command} needs --complete-bipartite R S")
        return spec.complete_bipartite

    def getWeights(self, spec: CommandSpec, g: Graph) -> List[Sequence[Fraction]]:
        """The weight file's vector, or `trials` seeded random vectors."""
        if spec.weights is not None:
            return [parse_weights(read_text(spec.weights), g)]
        rng = np.random.default_rng(self.seed)
        return [random_weights(g, rng, denominator=4) for _ in range(self.trials)]

    def getPoint(self, spec: CommandSpec, g: Graph) -> Sequence[Fraction]:
        if spec.point is None:
            raise UsageError(f"{spec.command} needs --point FILE")
        return parse_weights(read_text(spec.point), g)

    def getDescription(self, spec: CommandSpec, g: Graph) -> HPolytope:
        if spec.rows is not None:
            h = parse_inequalities(read_text(spec.rows))
            check_space(h.space, element_space(g))
            return h
        if spec.complete_bipartite is not None:
            return complete_bipartite_description(*spec.complete_bipartite)
        if is_tree(g):
            return tree_description(g)
        return biclique_catalog(g)

    def pickSolver(self, spec: CommandSpec, g: Graph):
        if spec.brute_force:
            return partial(max_weight_total_matching_bruteforce, g, limit=self.enumerationLimit)
        if spec.complete_bipartite is not None:
            return partial(solve_kbipartite, *spec.complete_bipartite)
        if is_tree(g):
            return partial(solve_tree, g)
        return partial(max_weight_total_matching_bruteforce, g, limit=self.enumerationLimit)

    # ----------- Subcommands ----------- #

    def gen(self, spec: CommandSpec) -> Tuple[int, str]:
        return EXIT_OK, format_graph(self.getGraph(spec))

    def enumerate(self, spec: CommandSpec) -> Tuple[int, str]:
        g = self.getGraph(spec)
        return EXIT_OK, format_total_matchings(enumerate_total_matchings(g, spec.mode, self.enumerationLimit))

    def nut(self, spec: CommandSpec) -> Tuple[int, str]:
        return EXIT_OK, f"{nu_t(self.getGraph(spec), self.enumerationLimit)}\n"

    def solve(self, spec: CommandSpec) -> Tuple[int, str]:
        """One weight file is solved and its optimum printed; without one, seeded trials are cross-checked."""
        g = self.getGraph(spec)
        weightsList = self.getWeights(spec, g)

        solver = self.pickSolver(spec, g)
        if spec.weights is not None:
            value, witness = solver(weightsList[0])
            labels = ", ".join(element.label for element in witness)
            return EXIT_OK, f"value: {value}\nwitness: {{{labels}}}\n"

        expected = max_weight_over_table(g, weightsList, self.enumerationLimit)
        disagree = [i for i, w in enumerate(weightsList) if solver(w)[0] != expected[i]]
        for i in disagree:
            log(f"DEBUG TOOL: trial {i} solver optimum differs from brute force {expected[i]}")
        text = f"trials: {len(weightsList)}, seed: {self.seed}, agree: {len(weightsList) - len(disagree)}\n"
        return (EXIT_FAILED if disagree else EXIT_OK), text

    def describe(self, spec: CommandSpec) -> Tuple[int, str]:
        g = self.getGraph(spec)
        h = self.getDescription(spec, g)
        text = format_catalog(h, f"{len(h.deduplicated().rows)} rows")
        if not spec.hull_check:
            return EXIT_OK, text
        report = verify_description(g, h, self.hullDimLimit, self.enumerationLimit)
        return (EXIT_OK if report.passed else EXIT_FAILED), text + f"c {report}\n"

    def hull(self, spec: CommandSpec) -> Tuple[int, str]:
        g = self.getGraph(spec)
        vectors = characteristic_vectors(g, self.enumerationLimit)
        h = dd_hull(VPolytope(element_space(g), tuple(vectors)), self.hullDimLimit)
        return EXIT_OK, format_inequalities(h, f"{len(h.rows)} facets of the hull of {len(vectors)} total matchings")

    def verify(self, spec: CommandSpec) -> Tuple[int, str]:
        g = self.getGraph(spec)
        report = verify_description(g, self.getDescription(spec, g), self.hullDimLimit, self.enumerationLimit)
        lines = [str(report)]
        lines += [f"missing: {format_row(row)}" for row in report.missing]
        lines += [f"invalid: {format_row(row)}" for row in report.invalid]
        lines += [f"redundant: {format_row(row)}" for row in report.redundant]
        return (EXIT_OK if report.passed else EXIT_FAILED), "\n".join(lines) + "\n"

    def facet(self, spec: CommandSpec) -> Tuple[int, str]:
        if spec.rows is None:
            raise UsageError("facet needs --rows FILE")
        g = self.getGraph(spec)
        h = self.getDescription(spec, g)
        lines = []
        failed = False
        for i, row in enumerate(h.rows, start=1):
            validity = is_valid(g, row, self.enumerationLimit)
            if not validity:
                failed = True
                witness = " ".join(element.label for element in validity.counterexample) or "{}"
                lines.append(f"row {i}: valid: no, violated by {witness}")
                continue
            result = is_facet(g, row, self.enumerationLimit)
            failed = failed or not result.facet
            verdict = "yes" if result.facet else "no"
            lines.append(f"row {i}: valid: yes, facet: {verdict}, rank: {result.rank} of {len(g.elements)}")
        return (EXIT_FAILED if failed else EXIT_OK), "\n".join(lines) + "\n"

    def ef(self, spec: CommandSpec) -> Tuple[int, str]:
        r, s = self.getBipartite(spec)
        g = make_complete_bipartite(r, s)
        if spec.action == "build":
            Q = build_Q(r, s)
            return EXIT_OK, format_inequalities(Q, f"extended formulation of K_{r},{s}: {len(Q.rows)} rows")
        if spec.action == "lift":
            return EXIT_OK, format_point(lifted_space(r, s), lift_point(self.getPoint(spec, g), r, s))

        weightsList = self.getWeights(spec, g)
        if spec.weights is not None:
            value, point = solve_over_Q(r, s, weightsList[0])
            return EXIT_OK, f"value: {value}\n" + format_point(element_space(g), point)
        expected = max_weight_over_table(g, weightsList, self.enumerationLimit)
        agree = sum(solve_over_Q(r, s, w)[0] == expected[i] for i, w in enumerate(weightsList))
        text = f"trials: {len(weightsList)}, seed: {self.seed}, agree: {agree}\n"
        return (EXIT_OK if agree == len(weightsList) else EXIT_FAILED), text

    def cone(self, spec: CommandSpec) -> Tuple[int, str]:
        r, s = self.getBipartite(spec)
        C = projection_cone(r, s)
        rays = dd_rays(C, self.hullDimLimit)
        lines = [f"c {len(rays)} extreme rays over " + " ".join(C.space)]
        lines += ["c ray " + " ".join(str(value) for value in ray) for ray in rays]
        # unstrengthened u.A x <= u.d per ray, same order
        lines += ["c raw " + format_row(raw_ray_inequality(ray, r, s)) for ray in rays]
        projected = project_Q(r, s, self.hullDimLimit, rays)
        return EXIT_OK, "\n".join(lines) + "\n" + format_inequalities(projected, f"{len(projected.rows)} rows")

    def separate(self, spec: CommandSpec) -> Tuple[int, str]:
        r, s = self.getBipartite(spec)
        g = make_complete_bipartite(r, s)
        point = self.getPoint(spec, g)
        if spec.r is not None:
            result = separate_balanced(g, point, spec.r, self.separationLimit)
        else:
            result = separate_catalog(r, s, point)
        return EXIT_OK, format_separation(element_space(g), result.violated, result.inequality, result.violation)


class UsageError(Exception):
    pass
