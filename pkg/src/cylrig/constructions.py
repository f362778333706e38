"""Extensions, vertex splits and the small graphs used as fixtures."""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .graph import DesignatedPair, Graph, norm_edge
from .sparsity import CYLINDER, is_rigid_surface


class ConstructionError(ValueError):
    """An operation was asked to do something its definition forbids."""


def fresh_label(g: Graph, base: str, taken: Iterable[str] = ()) -> str:
    taken = set(taken)
    label, k = base, 1
    while label in g or label in taken:
        k += 1
        label = f"{base}{k}"
    return label


def _check_new(g: Graph, label: str) -> None:
    if label in g:
        raise ConstructionError(f"new vertex {label!r} already exists")


def zero_uv_extension(g: Graph, pair: DesignatedPair, a: str, b: str, new: str | None = None) -> Graph:
    if a == b or a not in g or b not in g:
        raise ConstructionError("0-extension needs two distinct existing vertices")
    if {a, b} == {pair.u, pair.v}:
        raise ConstructionError("0-uv-extension may not attach to exactly u and v")
    z = new or fresh_label(g, "z")
    _check_new(g, z)
    return Graph(g.vertices + (z,), g.edges + ((z, a), (z, b)))


def one_uv_extension(
    g: Graph, pair: DesignatedPair, edge: tuple[str, str], c: str, new: str | None = None
) -> Graph:
    a, b = edge
    if not g.has_edge(a, b):
        raise ConstructionError(f"{a}{b} is not an edge")
    if c in (a, b) or c not in g:
        raise ConstructionError("third vertex must be an existing vertex off the edge")
    if {pair.u, pair.v} <= {a, b, c}:
        raise ConstructionError("1-uv-extension may not involve both u and v")
    z = new or fresh_label(g, "z")
    _check_new(g, z)
    drop = norm_edge(a, b)
    edges = [e for e in g.edges if e != drop] + [(z, a), (z, b), (z, c)]
    return Graph(g.vertices + (z,), edges)


def vertex_to_k4(
    g: Graph,
    pair: DesignatedPair,
    w: str,
    edge_assignment: Mapping[str, str] | None = None,
    new: Sequence[str] | None = None,
) -> Graph:
    """Replace ``w`` by a K4 on ``w`` and three new vertices.

    ``edge_assignment`` maps a former neighbour x of w to the K4 vertex that
    the edge xw is moved to; unlisted neighbours stay on w.
    """
    if w not in g:
        raise ConstructionError(f"{w!r} not in graph")
    if new is None:
        new = []
        for k in range(1, 4):
            new.append(fresh_label(g, f"{w}_{k}", new))
    new = list(new)
    if len(new) != 3 or len(set(new)) != 3:
        raise ConstructionError("vertex-to-K4 needs three distinct new labels")
    for x in new:
        _check_new(g, x)
    quad = [w] + new
    if len({pair.u, pair.v} & set(quad)) > 1:
        raise ConstructionError("the new K4 may contain at most one of u, v")
    assign = dict(edge_assignment or {})
    nbrs = g.neighbours(w)
    for x, y in assign.items():
        if x not in nbrs:
            raise ConstructionError(f"{x!r} is not a neighbour of {w!r}")
        if y not in quad:
            raise ConstructionError(f"{y!r} is not a vertex of the new K4")
    edges = [e for e in g.edges if w not in e]
    edges += [(x, assign.get(x, w)) for x in sorted(nbrs)]
    edges += [(a, b) for i, a in enumerate(quad) for b in quad[i + 1:]]
    return Graph(g.vertices + tuple(new), edges)


def vertex_to_4cycle(
    g: Graph,
    pair: DesignatedPair,
    w: str,
    v1: str,
    v2: str,
    edge_assignment: Mapping[str, str] | None = None,
    new: str | None = None,
) -> Graph:
    """Split ``w`` into w, w' both joined to v1 and v2.

    The remaining edges xw go to ``edge_assignment[x]`` (w or w'), default w.
    """
    if w not in g:
        raise ConstructionError(f"{w!r} not in graph")
    nbrs = g.neighbours(w)
    if v1 == v2 or v1 not in nbrs or v2 not in nbrs:
        raise ConstructionError("v1, v2 must be two distinct neighbours of w")
    w2 = new or fresh_label(g, f"{w}'")
    _check_new(g, w2)
    if len({pair.u, pair.v} & {w, w2, v1, v2}) > 1:
        raise ConstructionError("the new 4-cycle may contain at most one of u, v")
    assign = dict(edge_assignment or {})
    for x, y in assign.items():
        if x not in nbrs or x in (v1, v2):
            raise ConstructionError(f"{x!r} is not a reassignable neighbour of {w!r}")
        if y not in (w, w2):
            raise ConstructionError(f"edges of {w!r} can only move to {w!r} or {w2!r}")
    edges = [e for e in g.edges if w not in e]
    edges += [(w, v1), (w, v2), (w2, v1), (w2, v2)]
    edges += [(x, assign.get(x, w)) for x in sorted(nbrs - {v1, v2})]
    return Graph(g.vertices + (w2,), edges)


@dataclass(frozen=True)
class SplitSpec:
    pivot: str
    moved: frozenset[str]
    kept: frozenset[str]
    new: str | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "moved", frozenset(self.moved))
        object.__setattr__(self, "kept", frozenset(self.kept))

    @classmethod
    def for_graph(cls, g: Graph, pivot: str, moved: Iterable[str], new: str | None = None) -> "SplitSpec":
        moved = frozenset(moved)
        return cls(pivot, moved, g.neighbours(pivot) - moved, new)

    def validate(self, g: Graph) -> None:
        if self.pivot not in g:
            raise ConstructionError(f"pivot {self.pivot!r} not in graph")
        nbrs = g.neighbours(self.pivot)
        if self.moved | self.kept != nbrs or self.moved & self.kept:
            raise ConstructionError("moved and kept must partition the pivot's neighbourhood")
        if not self.moved:
            raise ConstructionError("a vertex split must move at least one edge")
        if self.new is not None and self.new in g:
            raise ConstructionError(f"new vertex {self.new!r} already exists")


def split_vertex_label(g: Graph, spec: SplitSpec) -> str:
    return spec.new or fresh_label(g, f"{spec.pivot}_0")


def vertex_split(g: Graph, spec: SplitSpec) -> Graph:
    spec.validate(g)
    v1 = spec.pivot
    v0 = split_vertex_label(g, spec)
    dropped = {norm_edge(v1, x) for x in spec.moved}
    edges = [e for e in g.edges if e not in dropped]
    edges += [(v0, v1)] + [(v0, x) for x in sorted(spec.moved)]
    return Graph(g.vertices + (v0,), edges)


@dataclass(frozen=True)
class SplitVerdict:
    guaranteed: bool
    reason: str

    def __str__(self) -> str:
        return "guaranteed" if self.guaranteed else f"not guaranteed ({self.reason})"


def check_split_preserves_global(g: Graph, spec: SplitSpec, assume_g_globally_rigid: bool) -> SplitVerdict:
    """Check the checkable hypotheses for a split to keep global rigidity.

    Global rigidity of ``g`` itself cannot be decided here and is taken as an
    assumption; the other hypothesis is that the split graph stays rigid once
    the bridging edge is removed.
    """
    split = vertex_split(g, spec)
    v0 = split_vertex_label(g, spec)
    if not assume_g_globally_rigid:
        return SplitVerdict(False, "global rigidity of input not assumed")
    without_bridge = split.with_edges(e for e in split.edges if e != norm_edge(v0, spec.pivot))
    if not is_rigid_surface(without_bridge, CYLINDER):
        return SplitVerdict(False, "split graph minus bridging edge not rigid")
    return SplitVerdict(True, "bridging edge redundant and input globally rigid")


# -- fixtures ------------------------------------------------------------

_FIXTURES = {
    "fig1": "u-v1 u-v2 u-v3 u-v4 v-v1 v-v2 v-v3 v-v5 v1-v2 v3-v4 v3-v5 v4-v5",
    "fig2a": "v1-v2 v1-v3 v2-v3 u-v1 u-v3 v-v2 v-v3 u-v4 u-v5 v3-v4 v3-v5 v4-v5",
    "fig2b": "v1-v2 v1-v3 v2-v3 u-v1 u-v3 v-v2 v-v3 u-v4 v3-v4 v3-v5 v-v5 v4-v5",
    "fig2c": "u-v1 u-v2 u-v3 v1-v2 v1-v3 v2-v3 v-v3 v-v4 v-v5 v3-v4 v3-v5 v4-v5",
}

_LABELS = ["u", "v", "v1", "v2", "v3", "v4", "v5"]
PAIR = DesignatedPair("u", "v")
FIXTURE_NAMES = tuple(_FIXTURES)


def fixture(name: str) -> tuple[Graph, DesignatedPair]:
    try:
        spec = _FIXTURES[name]
    except KeyError:
        raise KeyError(f"unknown fixture {name!r}; choose from {', '.join(_FIXTURES)}") from None
    return Graph(_LABELS, [tuple(t.split("-")) for t in spec.split()]), PAIR


def five_vertex_base() -> tuple[Graph, DesignatedPair]:
    """Minimally uv-rigid graph on five vertices: K5 minus uv and ua."""
    g = Graph(["u", "v", "a", "b", "c"], [("u", "b"), ("u", "c"), ("v", "a"), ("v", "b"),
                                           ("v", "c"), ("a", "b"), ("a", "c"), ("b", "c")])
    return g, PAIR


def random_uv_extension(g: Graph, pair: DesignatedPair, rng: random.Random, new: str) -> Graph:
    verts = list(g.vertices)
    while True:
        if rng.random() < 0.5 or not g.edges:
            a, b = rng.sample(verts, 2)
            if {a, b} != {pair.u, pair.v}:
                return zero_uv_extension(g, pair, a, b, new)
        else:
            a, b = rng.choice(g.edges)
            c = rng.choice(verts)
            if c not in (a, b) and not {pair.u, pair.v} <= {a, b, c}:
                return one_uv_extension(g, pair, (a, b), c, new)


def random_uv_independent(n: int, seed: int = 0) -> tuple[Graph, DesignatedPair]:
    """Minimally uv-rigid graph on n vertices grown by random 0-/1-uv-extensions.

    Starts from fig2c for n >= 7 and from ``five_vertex_base`` for n = 5, 6.
    No minimally uv-rigid graph has fewer than five vertices.
    """
    if n < 5:
        raise ConstructionError("minimally uv-rigid graphs need at least 5 vertices")
    g, pair = fixture("fig2c") if n >= 7 else five_vertex_base()
    rng = random.Random(seed)
    while len(g) < n:
        g = random_uv_extension(g, pair, rng, fresh_label(g, f"x{len(g)}"))
    return g, pair
