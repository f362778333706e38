"""Immutable simple graphs, the graph file format, deletion and contraction."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator

Edge = tuple[str, str]


class GraphError(ValueError):
    """Malformed graph input or an operation applied to a missing vertex."""


def norm_edge(a: str, b: str) -> Edge:
    if a == b:
        raise GraphError(f"loop edge at {a!r}")
    return (a, b) if a < b else (b, a)


class Graph:
    """A finite simple undirected graph with string vertex labels.

    Vertex order is insertion order and is only used to lay out matrix
    columns and bitmasks; equality ignores it. Edges iterate in
    lexicographic order of their (min, max) endpoint pair.
    """

    __slots__ = ("_vertices", "_edges", "_adj", "_index")

    def __init__(self, vertices: Iterable[str] = (), edges: Iterable[tuple[str, str]] = ()):
        verts: dict[str, None] = dict.fromkeys(vertices)
        es = set()
        for a, b in edges:
            e = norm_edge(a, b)
            es.add(e)
            verts.setdefault(e[0])
            verts.setdefault(e[1])
        self._vertices = tuple(verts)
        self._edges = tuple(sorted(es))
        adj: dict[str, set[str]] = {w: set() for w in self._vertices}
        for a, b in self._edges:
            adj[a].add(b)
            adj[b].add(a)
        self._adj = {w: frozenset(s) for w, s in adj.items()}
        self._index = {w: i for i, w in enumerate(self._vertices)}

    @property
    def vertices(self) -> tuple[str, ...]:
        return self._vertices

    @property
    def edges(self) -> tuple[Edge, ...]:
        return self._edges

    def __len__(self) -> int:
        return len(self._vertices)

    def __contains__(self, w: object) -> bool:
        return w in self._index

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return set(self._vertices) == set(other._vertices) and self._edges == other._edges

    def __hash__(self) -> int:
        return hash((frozenset(self._vertices), self._edges))

    def __repr__(self) -> str:
        return f"Graph(|V|={len(self._vertices)}, E={list(self._edges)})"

    def has_edge(self, a: str, b: str) -> bool:
        return a in self._adj and b in self._adj[a]

    def neighbours(self, w: str) -> frozenset[str]:
        self._require(w)
        return self._adj[w]

    def degree(self, w: str) -> int:
        return len(self.neighbours(w))

    def index(self, w: str) -> int:
        self._require(w)
        return self._index[w]

    def _require(self, *ws: str) -> None:
        for w in ws:
            if w not in self._index:
                raise GraphError(f"vertex {w!r} not in graph")

    def adjacency_masks(self) -> list[int]:
        """Neighbourhood of each vertex as a bitmask over vertex indices."""
        masks = [0] * len(self._vertices)
        idx = self._index
        for a, b in self._edges:
            masks[idx[a]] |= 1 << idx[b]
            masks[idx[b]] |= 1 << idx[a]
        return masks

    def mask_of(self, xs: Iterable[str]) -> int:
        m = 0
        for w in xs:
            m |= 1 << self.index(w)
        return m

    def labels_of(self, mask: int) -> frozenset[str]:
        return frozenset(w for i, w in enumerate(self._vertices) if mask >> i & 1)

    def with_edges(self, edges: Iterable[tuple[str, str]]) -> "Graph":
        """Same vertex set, different edge set."""
        return Graph(self._vertices, edges)


@dataclass(frozen=True)
class DesignatedPair:
    u: str
    v: str

    def __post_init__(self) -> None:
        if self.u == self.v:
            raise GraphError("designated pair needs two distinct vertices")

    def check(self, g: Graph) -> None:
        for w in (self.u, self.v):
            if w not in g:
                raise GraphError(f"designated vertex {w!r} not in graph")

    def __iter__(self) -> Iterator[str]:
        return iter((self.u, self.v))


def complete_graph(labels: Iterable[str]) -> Graph:
    vs = list(labels)
    return Graph(vs, [(a, b) for i, a in enumerate(vs) for b in vs[i + 1:]])


def path_graph(labels: Iterable[str]) -> Graph:
    vs = list(labels)
    return Graph(vs, zip(vs, vs[1:]))


def delete_edge(g: Graph, e: tuple[str, str]) -> Graph:
    a, b = e
    if not g.has_edge(a, b):
        return g
    drop = norm_edge(a, b)
    return g.with_edges(x for x in g.edges if x != drop)


def contracted_label(g: Graph, u: str, v: str) -> str:
    base = f"z({u},{v})"
    label, k = base, 1
    while label in g:
        k += 1
        label = f"{base}#{k}"
    return label


def contract_pair(g: Graph, u: str, v: str) -> Graph:
    """Identify ``u`` and ``v`` into one vertex, dropping loops and parallel copies."""
    if u == v:
        raise GraphError("cannot contract a vertex with itself")
    g._require(u, v)
    z = contracted_label(g, u, v)
    ren = {u: z, v: z}
    verts = [z if w == u else w for w in g.vertices if w != v]
    edges = {
        (ren.get(a, a), ren.get(b, b))
        for a, b in g.edges
        if {a, b} != {u, v}
    }
    return Graph(verts, edges)


def induced_edge_count(g: Graph, xs: Iterable[str]) -> int:
    xs = set(xs)
    g._require(*xs)
    return sum(1 for a, b in g.edges if a in xs and b in xs)


def induced_subgraph(g: Graph, xs: Iterable[str]) -> Graph:
    xs = set(xs)
    g._require(*xs)
    return Graph([w for w in g.vertices if w in xs], [e for e in g.edges if e[0] in xs and e[1] in xs])


# -- file format ---------------------------------------------------------

def parse_graph(text: str) -> tuple[Graph, DesignatedPair | None]:
    vertices: dict[str, None] = {}
    edges: set[Edge] = set()
    pair: dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        tag, *args = line.split()
        if tag == "e" and len(args) == 2:
            try:
                e = norm_edge(*args)
            except GraphError as exc:
                raise GraphError(f"line {lineno}: {exc}") from None
            if e in edges:
                raise GraphError(f"line {lineno}: duplicate edge {e[0]} {e[1]}")
            edges.add(e)
            vertices.setdefault(args[0])
            vertices.setdefault(args[1])
        elif tag == "n" and len(args) == 1:
            vertices.setdefault(args[0])
        elif tag in ("u", "v") and len(args) == 1:
            if tag in pair:
                raise GraphError(f"line {lineno}: designated vertex {tag} given twice")
            pair[tag] = args[0]
        else:
            raise GraphError(f"line {lineno}: malformed record {line!r}")
    g = Graph(vertices, edges)
    if not pair:
        return g, None
    if len(pair) == 1:
        raise GraphError("designated pair needs both 'u' and 'v' lines")
    dp = DesignatedPair(pair["u"], pair["v"])
    dp.check(g)
    return g, dp


def serialize_graph(g: Graph, pair: DesignatedPair | None = None) -> str:
    lines = []
    if pair is not None:
        lines += [f"u {pair.u}", f"v {pair.v}"]
    lines += [f"n {w}" for w in sorted(w for w in g.vertices if not g.neighbours(w))]
    lines += [f"e {a} {b}" for a, b in g.edges]
    return "\n".join(lines) + "\n"


def read_graph(path) -> tuple[Graph, DesignatedPair | None]:
    with open(path, encoding="utf-8") as fh:
        return parse_graph(fh.read())
