"""
Graphs, elements (vertices and edges), element adjacency, total graphs, chordality and cliques.

Vertices are 0-based internally. The canonical element order (all vertices by index, then all edges in
lexicographic endpoint order) fixes the coordinate system of every vector in the package.
"""

from dataclasses import dataclass
from enum import Enum
from functools import cached_property
from typing import Dict, FrozenSet, Iterator, List, NamedTuple, Optional, Sequence, Tuple

import networkx as nx

VERTEX = 0
EDGE = 1


class Side(Enum):
    A = "A"
    B = "B"

    def other(self):
        return Side.B if self is Side.A else Side.A


class Element(NamedTuple):
    """A vertex (kind VERTEX, ends (i,)) or an edge (kind EDGE, ends (u, v) with u < v).

    Tuple ordering of Elements is the canonical element order.
    """

    kind: int
    ends: Tuple[int, ...]

    @classmethod
    def vertex(cls, index: int) -> "Element":
        return cls(VERTEX, (index,))

    @classmethod
    def edge(cls, u: int, v: int) -> "Element":
        return cls(EDGE, (min(u, v), max(u, v)))

    @classmethod
    def parse(cls, label: str) -> "Element":
        """Inverse of `label`: "v3" or "e1-4" (1-based)."""
        if label.startswith("v") and label[1:].isdigit():
            return cls.vertex(int(label[1:]) - 1)
        if label.startswith("e") and "-" in label:
            u, v = label[1:].split("-", 1)
            if u.isdigit() and v.isdigit():
                return cls.edge(int(u) - 1, int(v) - 1)
        raise ValueError(f"not an element id: {label!r}")

    @property
    def is_vertex(self) -> bool:
        return self.kind == VERTEX

    @property
    def is_edge(self) -> bool:
        return self.kind == EDGE

    @property
    def label(self) -> str:
        if self.kind == VERTEX:
            return f"v{self.ends[0] + 1}"
        return f"e{self.ends[0] + 1}-{self.ends[1] + 1}"


@dataclass(frozen=True)
class Graph:
    vertex_count: int
    edges: Tuple[Tuple[int, int], ...] = ()
    # (A, B): disjoint, covering all vertices, every edge crosses
    bipartition: Optional[Tuple[FrozenSet[int], FrozenSet[int]]] = None

    def __post_init__(self):
        if self.vertex_count < 0:
            raise GraphError("vertex count must be nonnegative")
        normalized = []
        for u, v in self.edges:
            if u == v:
                raise GraphError(f"loop at vertex {u + 1}")
            if not (0 <= u < self.vertex_count and 0 <= v < self.vertex_count):
                raise GraphError(f"edge ({u + 1}, {v + 1}) has an endpoint out of range")
            normalized.append((min(u, v), max(u, v)))
        if len(set(normalized)) != len(normalized):
            raise GraphError("parallel edges are not allowed")
        object.__setattr__(self, "edges", tuple(sorted(normalized)))

        if self.bipartition is not None:
            sideA, sideB = (frozenset(side) for side in self.bipartition)
            if sideA & sideB or (sideA | sideB) != frozenset(range(self.vertex_count)):
                raise GraphError("bipartition sides must be disjoint and cover all vertices")
            for u, v in self.edges:
                if (u in sideA) == (v in sideA):
                    raise GraphError(f"edge ({u + 1}, {v + 1}) does not cross the bipartition")
            object.__setattr__(self, "bipartition", (sideA, sideB))

    @property
    def n(self) -> int:
        return self.vertex_count

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def elements(self) -> Tuple[Element, ...]:
        return tuple(Element.vertex(v) for v in range(self.n)) + tuple(Element.edge(u, v) for u, v in self.edges)

    @cached_property
    def element_index(self) -> Dict[Element, int]:
        return {element: i for i, element in enumerate(self.elements)}

    @cached_property
    def edge_set(self) -> FrozenSet[Tuple[int, int]]:
        return frozenset(self.edges)

    @cached_property
    def neighbors(self) -> Tuple[FrozenSet[int], ...]:
        adjacency = [set() for _ in range(self.n)]
        for u, v in self.edges:
            adjacency[u].add(v)
            adjacency[v].add(u)
        return tuple(frozenset(a) for a in adjacency)

    @cached_property
    def incident(self) -> Tuple[Tuple[Tuple[int, int], ...], ...]:
        star = [[] for _ in range(self.n)]
        for edge in self.edges:
            star[edge[0]].append(edge)
            star[edge[1]].append(edge)
        return tuple(tuple(s) for s in star)

    def delta(self, v: int) -> Tuple[Element, ...]:
        """Edge elements incident to v, canonical order."""
        return tuple(Element.edge(*edge) for edge in self.incident[v])

    def index_of(self, element: Element) -> int:
        try:
            return self.element_index[element]
        except KeyError:
            raise GraphError(f"element {element.label} is not in the graph") from None

    def has_element(self, element: Element) -> bool:
        return element in self.element_index

    @property
    def labels(self) -> Tuple[str, ...]:
        return tuple(element.label for element in self.elements)


# ----------- constructors ----------- #


def make_complete_bipartite(r: int, s: int) -> Graph:
    """K_{r,s} with side A = 0..r-1 and side B = r..r+s-1."""
    if r < 1 or s < 1:
        raise GraphError(f"complete bipartite sides must be positive, got ({r}, {s})")
    edges = tuple((v, r + w) for v in range(r) for w in range(s))
    return Graph(r + s, edges, (frozenset(range(r)), frozenset(range(r, r + s))))


def make_path(n: int) -> Graph:
    if n < 1:
        raise GraphError("a path needs at least one vertex")
    return Graph(n, tuple((i, i + 1) for i in range(n - 1)))


def make_star(leaves: int) -> Graph:
    """K_{1,leaves}; the center is vertex 0."""
    return make_complete_bipartite(1, leaves)


def make_tree_from_prufer(sequence: Sequence[int]) -> Graph:
    """Decode a 0-based Prufer sequence (networkx) into a tree on len(sequence)+2 vertices."""
    return from_networkx(nx.from_prufer_sequence(list(sequence)))


def trees_up_to(max_vertices: int) -> Iterator[Graph]:
    """Every tree on 1..max_vertices vertices, one per isomorphism class."""
    for n in range(1, max_vertices + 1):
        if n <= 2:
            yield make_path(n)
            continue
        for tree in nx.nonisomorphic_trees(n):
            yield from_networkx(tree)


def parse_tree_spec(text: str) -> Graph:
    """CLI tree names: pathN, starN (N vertices), prufer:a,b,c (1-based labels)."""
    text = text.strip()
    try:
        if text.startswith("path"):
            return make_path(int(text[4:]))
        if text.startswith("star"):
            return make_star(int(text[4:]) - 1)
        if text.startswith("prufer:"):
            body = text[len("prufer:") :]
            sequence = [int(token) - 1 for token in body.split(",") if token.strip()]
            return make_tree_from_prufer(sequence)
    except (ValueError, nx.NetworkXError) as e:
        raise GraphError(f"bad tree spec {text!r}: {e}") from None
    raise GraphError(f"unknown tree spec {text!r} (use pathN, starN or prufer:a,b,...)")


def to_networkx(g: Graph) -> nx.Graph:
    nxg = nx.Graph()
    nxg.add_nodes_from(range(g.n))
    nxg.add_edges_from(g.edges)
    return nxg


def from_networkx(nxg: nx.Graph) -> Graph:
    relabel = {node: i for i, node in enumerate(sorted(nxg.nodes))}
    return Graph(len(relabel), tuple((relabel[u], relabel[v]) for u, v in nxg.edges))


def induced_subgraph(g: Graph, vertices: Sequence[int]) -> Graph:
    """Subgraph induced by `vertices`, relabelled 0.. in increasing order; keeps the bipartition."""
    keep = sorted(set(vertices))
    relabel = {v: i for i, v in enumerate(keep)}
    edges = tuple((relabel[u], relabel[v]) for u, v in g.edges if u in relabel and v in relabel)
    bipartition = None
    if g.bipartition is not None:
        bipartition = tuple(frozenset(relabel[v] for v in side if v in relabel) for side in g.bipartition)
    return Graph(len(keep), edges, bipartition)


def delete_edges(g: Graph, edges: Sequence[Tuple[int, int]]) -> Graph:
    removed = {(min(u, v), max(u, v)) for u, v in edges}
    return Graph(g.n, tuple(e for e in g.edges if e not in removed), g.bipartition)


# ----------- graph file format ----------- #


def parse_graph(text: str) -> Graph:
    """Parse "p tm <n> <m>", optional "b <k>" (vertices 1..k form side A), then m lines "e <u> <v>"."""
    n = m = None
    sideA_size = None
    edges = []
    seen = set()
    last_line = 0
    for line_number, raw in enumerate(text.splitlines(), start=1):
        last_line = line_number
        tokens = raw.split()
        if not tokens or tokens[0] == "c":
            continue
        if n is None:
            if tokens[0] != "p" or len(tokens) != 4 or tokens[1] != "tm":
                raise GraphFormatError("expected header 'p tm <n> <m>'", line_number)
            try:
                n, m = int(tokens[2]), int(tokens[3])
            except ValueError:
                raise GraphFormatError("header counts must be integers", line_number) from None
            if n < 0 or m < 0:
                raise GraphFormatError("header counts must be nonnegative", line_number)
            continue
        if tokens[0] == "b":
            if len(tokens) != 2 or not tokens[1].isdigit() or edges or sideA_size is not None:
                raise GraphFormatError("expected a single 'b <k>' line before the edges", line_number)
            sideA_size = int(tokens[1])
            if sideA_size > n:
                raise GraphFormatError(f"bipartition size {sideA_size} exceeds vertex count {n}", line_number)
            continue
        if tokens[0] == "e":
            if len(tokens) != 3:
                raise GraphFormatError("expected 'e <u> <v>'", line_number)
            try:
                u, v = int(tokens[1]) - 1, int(tokens[2]) - 1
            except ValueError:
                raise GraphFormatError("edge endpoints must be integers", line_number) from None
            if not (0 <= u < n and 0 <= v < n):
                raise GraphFormatError(f"vertex out of range 1..{n}", line_number)
            if u == v:
                raise GraphFormatError(f"loop at vertex {u + 1}", line_number)
            key = (min(u, v), max(u, v))
            if key in seen:
                raise GraphFormatError(f"duplicate edge {u + 1} {v + 1}", line_number)
            if sideA_size is not None and (u < sideA_size) == (v < sideA_size):
                raise GraphFormatError(f"edge {u + 1} {v + 1} does not cross the bipartition", line_number)
            seen.add(key)
            edges.append(key)
            continue
        raise GraphFormatError(f"unknown line type {tokens[0]!r}", line_number)

    if n is None:
        raise GraphFormatError("missing header 'p tm <n> <m>'", last_line)
    if len(edges) != m:
        raise GraphFormatError(f"header declares {m} edges, found {len(edges)}", last_line)
    bipartition = None
    if sideA_size is not None:
        bipartition = (frozenset(range(sideA_size)), frozenset(range(sideA_size, n)))
    return Graph(n, tuple(edges), bipartition)


def format_graph(g: Graph) -> str:
    lines = [f"p tm {g.n} {g.m}"]
    if g.bipartition is not None:
        sideA = sorted(g.bipartition[0])
        if sideA != list(range(len(sideA))):
            raise GraphError("the file format only expresses side A as the first k vertices")
        lines.append(f"b {len(sideA)}")
    lines.extend(f"e {u + 1} {v + 1}" for u, v in g.edges)
    return "\n".join(lines) + "\n"


# ----------- elements and adjacency ----------- #


def elements(g: Graph) -> List[Element]:
    return list(g.elements)


def adjacent(g: Graph, d: Element, d2: Element) -> bool:
    """Elements touch: joined vertices, edges sharing an endpoint, or an edge and one of its endpoints."""
    g.index_of(d)
    g.index_of(d2)
    if d == d2:
        raise GraphError(f"adjacency is only defined for distinct elements, got {d.label} twice")
    if d.is_vertex and d2.is_vertex:
        return (min(d.ends[0], d2.ends[0]), max(d.ends[0], d2.ends[0])) in g.edge_set
    return bool(set(d.ends) & set(d2.ends))


def element_adjacency(g: Graph) -> Tuple[FrozenSet[int], ...]:
    """Neighbors of every element, as sets of canonical element indices."""
    index = g.element_index
    adjacency = [set() for _ in g.elements]
    for u, v in g.edges:
        e = index[Element.edge(u, v)]
        for end in (u, v):
            adjacency[e].add(end)
            adjacency[end].add(e)
        adjacency[u].add(v)
        adjacency[v].add(u)
    for v in range(g.n):
        star = [index[element] for element in g.delta(v)]
        for i in star:
            adjacency[i].update(j for j in star if j != i)
    return tuple(frozenset(a) for a in adjacency)


def total_graph(g: Graph) -> Graph:
    """T(g): one vertex per element (canonical order), adjacent iff the elements are adjacent."""
    adjacency = element_adjacency(g)
    edges = tuple((i, j) for i, neighbors in enumerate(adjacency) for j in neighbors if i < j)
    return Graph(len(g.elements), edges)


# ----------- structure ----------- #


def is_tree(g: Graph) -> bool:
    return g.n >= 1 and g.m == g.n - 1 and nx.is_connected(to_networkx(g))


def sides(g: Graph) -> Tuple[Tuple[int, ...], Tuple[int, ...]]:
    if g.bipartition is None:
        raise GraphError("graph has no bipartition")
    return tuple(sorted(g.bipartition[0])), tuple(sorted(g.bipartition[1]))


def is_complete_bipartite(g: Graph) -> bool:
    if g.bipartition is None:
        return False
    sideA, sideB = g.bipartition
    return len(sideA) >= 1 and len(sideB) >= 1 and g.m == len(sideA) * len(sideB)


@dataclass(frozen=True)
class ChordalityResult:
    chordal: bool
    # perfect elimination ordering when chordal
    ordering: Optional[Tuple[int, ...]] = None
    # chordless cycle of length >= 4 otherwise
    hole: Optional[Tuple[int, ...]] = None

    def __bool__(self):
        return self.chordal


def maximum_cardinality_search(g: Graph) -> Tuple[int, ...]:
    """Visit order of maximum cardinality search (ties: smallest index). Its reverse is a PEO iff g is chordal."""
    weight = [0] * g.n
    visited = [False] * g.n
    order = []
    for _ in range(g.n):
        v = max((u for u in range(g.n) if not visited[u]), key=lambda u: (weight[u], -u))
        visited[v] = True
        order.append(v)
        for u in g.neighbors[v]:
            if not visited[u]:
                weight[u] += 1
    return tuple(order)


def is_perfect_elimination_ordering(g: Graph, ordering: Sequence[int]) -> bool:
    position = {v: i for i, v in enumerate(ordering)}
    for v in ordering:
        later = [u for u in g.neighbors[v] if position[u] > position[v]]
        if not later:
            continue
        parent = min(later, key=position.__getitem__)
        if any(u != parent and u not in g.neighbors[parent] for u in later):
            return False
    return True


def _normalized_cycle(cycle: Sequence[int]) -> Tuple[int, ...]:
    k = cycle.index(min(cycle))
    rotated = list(cycle[k:]) + list(cycle[:k])
    if len(rotated) > 2 and rotated[-1] < rotated[1]:
        rotated = [rotated[0]] + rotated[:0:-1]
    return tuple(rotated)


def find_hole(g: Graph) -> Optional[Tuple[int, ...]]:
    """Shortest odd hole if there is one, else the shortest hole; None for chordal graphs."""
    holes = [_normalized_cycle(c) for c in nx.chordless_cycles(to_networkx(g)) if len(c) >= 4]
    if not holes:
        return None
    return min(holes, key=lambda c: (len(c) % 2 == 0, len(c), c))


def is_chordal(g: Graph) -> ChordalityResult:
    ordering = tuple(reversed(maximum_cardinality_search(g)))
    if is_perfect_elimination_ordering(g, ordering):
        return ChordalityResult(True, ordering=ordering)
    return ChordalityResult(False, hole=find_hole(g))


def maximal_cliques(g: Graph) -> List[Tuple[int, ...]]:
    """All inclusion-maximal cliques (pivoting Bron-Kerbosch), each sorted, listed lexicographically."""
    if g.n == 0:
        return []
    return sorted(tuple(sorted(clique)) for clique in nx.find_cliques(to_networkx(g)))


def _side_vertices(r: int, s: int, side: Side) -> range:
    return range(r) if side is Side.A else range(r, r + s)


def reduced_total_graph(r: int, s: int, removed_side: Side) -> Tuple[Graph, Tuple[Element, ...]]:
    """T(K_{r,s}) minus the vertex-elements of the removed side, with the element behind each vertex."""
    g = make_complete_bipartite(r, s)
    removed = {Element.vertex(v) for v in _side_vertices(r, s, removed_side)}
    kept = tuple(element for element in g.elements if element not in removed)
    relabel = {g.index_of(element): i for i, element in enumerate(kept)}
    adjacency = element_adjacency(g)
    edges = tuple(
        (relabel[i], relabel[j]) for i in relabel for j in adjacency[i] if j in relabel and relabel[i] < relabel[j]
    )
    return Graph(len(kept), edges), kept


def reduced_total_graph_cliques(r: int, s: int, removed_side: Side) -> List[FrozenSet[Element]]:
    """The r+s cliques of T(K_{r,s}) minus U: {v} + delta(v) per kept vertex v, delta(w) per removed vertex w."""
    g = make_complete_bipartite(r, s)
    cliques = []
    for v in _side_vertices(r, s, removed_side.other()):
        cliques.append(frozenset((Element.vertex(v),) + g.delta(v)))
    for w in _side_vertices(r, s, removed_side):
        cliques.append(frozenset(g.delta(w)))
    return sorted(cliques, key=lambda clique: tuple(sorted(clique)))


class GraphError(Exception):
    """Invalid graph construction or element lookup."""

    pass


class GraphFormatError(GraphError):
    def __init__(self, message, line_number):
        super().__init__(f"line {line_number}: {message}")
        self.line_number = line_number
