"""
Text formats: weight files, inequality files (with a coordinate header and per-row family comments),
total matching listings and separation results.
"""

from dataclasses import replace
from fractions import Fraction
from typing import List, Optional, Sequence

from totalMatching.exactGeometry import EQ, FAMILIES, LE, HPolytope, LinearInequality, Vector
from totalMatching.graphCore import Element, Graph


def read_text(path: str) -> str:
    with open(path, "r") as file:
        return file.read()


def write_text(path: Optional[str], text: str):
    """Write to path, or return the text for stdout when path is None."""
    if path is None:
        return text
    with open(path, "w") as file:
        file.write(text)
    return ""


def _fraction(token: str, line_number: int) -> Fraction:
    try:
        return Fraction(token)
    except (ValueError, ZeroDivisionError):
        raise FormatError(f"not a rational number: {token!r}", line_number) from None


# ----------- weights ----------- #


def parse_weights(text: str, g: Graph) -> Vector:
    """Lines "<element-id> <p>/<q>"; elements not listed weigh 0."""
    weights = [Fraction(0)] * len(g.elements)
    seen = set()
    for line_number, raw in enumerate(text.splitlines(), start=1):
        tokens = raw.split()
        if not tokens or tokens[0] == "c":
            continue
        if len(tokens) != 2:
            raise FormatError("expected '<element-id> <p>/<q>'", line_number)
        try:
            element = Element.parse(tokens[0])
        except ValueError as e:
            raise FormatError(str(e), line_number) from None
        if not g.has_element(element):
            raise FormatError(f"{tokens[0]} is not an element of the graph", line_number)
        if element in seen:
            raise FormatError(f"duplicate weight for {tokens[0]}", line_number)
        seen.add(element)
        weights[g.index_of(element)] = _fraction(tokens[1], line_number)
    return tuple(weights)


def format_weights(g: Graph, w: Sequence[Fraction]) -> str:
    return "".join(f"{element.label} {Fraction(value)}\n" for element, value in zip(g.elements, w))


# ----------- inequalities ----------- #


def format_row(row: LinearInequality) -> str:
    return " ".join(str(value) for value in row.coefficients) + f" {row.relation} {row.rhs}"


def format_inequalities(h: HPolytope, title: Optional[str] = None) -> str:
    lines = [f"c {title}"] if title else []
    lines.append("space " + " ".join(h.space))
    for row in h.rows:
        lines.append(format_row(row))
        lines.append(f"c {row.family} {row.note}".rstrip())
    return "\n".join(lines) + "\n"


def format_catalog(h: HPolytope, title: Optional[str] = None) -> str:
    return format_inequalities(h.deduplicated(), title)


def parse_inequalities(text: str) -> HPolytope:
    """Inverse of format_inequalities; a "c <family> <note>" line right after a row restores its tag."""
    space = None
    rows: List[LinearInequality] = []
    last_was_row = False
    for line_number, raw in enumerate(text.splitlines(), start=1):
        tokens = raw.split()
        if not tokens:
            last_was_row = False
            continue
        if tokens[0] == "c":
            if last_was_row and len(tokens) >= 2 and tokens[1] in FAMILIES:
                rows[-1] = replace(rows[-1], family=tokens[1], note=" ".join(tokens[2:]))
            last_was_row = False
            continue
        if space is None:
            if tokens[0] != "space":
                raise FormatError("expected header 'space <coordinate names>'", line_number)
            space = tuple(tokens[1:])
            continue
        if len(tokens) != len(space) + 2:
            raise FormatError(f"expected {len(space)} coefficients, a relation and a rhs", line_number)
        relation = tokens[-2]
        if relation not in (LE, EQ):
            raise FormatError(f"unknown relation {relation!r}", line_number)
        coefficients = tuple(_fraction(token, line_number) for token in tokens[:-2])
        rows.append(LinearInequality(coefficients, _fraction(tokens[-1], line_number), relation))
        last_was_row = True
    if space is None:
        raise FormatError("missing header 'space <coordinate names>'", 0)
    return HPolytope(space, tuple(rows))


# ----------- results ----------- #


def format_total_matchings(matchings: Sequence[Sequence[Element]]) -> str:
    lines = ["{" + ", ".join(element.label for element in T) + "}" for T in matchings]
    return "\n".join(lines) + f"\nc {len(matchings)} total matchings\n"


def format_point(space: Sequence[str], point: Sequence[Fraction]) -> str:
    return "".join(f"{name} {value}\n" for name, value in zip(space, point) if value != 0)


def format_separation(space: Sequence[str], violated: bool, inequality, violation) -> str:
    if not violated:
        return "not violated\nviolation: 0\n"
    text = format_inequalities(HPolytope(space, (inequality,)))
    return text + f"violation: {violation}\n"


class FormatError(Exception):
    def __init__(self, message, line_number):
        super().__init__(f"line {line_number}: {message}")
        self.line_number = line_number
