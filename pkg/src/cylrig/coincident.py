"""The uv-coincident count matroid on concentric cylinders.

Two routes to the rank of a graph with a designated pair (u, v):

* ``uv_rank`` -- deletion/contraction, ``min{r(G-uv), r(G/uv) + 2}`` with r the
  simple (2,2)-sparse rank from the pebble game. Polynomial.
* ``brute_uv_rank`` -- greedy over the independence oracle
  ``uv_sparsity_violation``, which checks every vertex set and every
  uv-compatible family directly. Exponential, small graphs only.

Family search only visits canonical families: one base X containing u and v
plus triples {u, v, t}. Merging two members that meet in three or more
vertices strictly lowers the family value without losing coverage, and
merging two members of size at least four keeps it unchanged, so any
violating family can be turned into a canonical one. A triple {u, v, t}
adds one to the value and covers the edges ut, vt, so it helps exactly when
t is a common neighbour of u and v; the best family on base X therefore
covers ``i(X) + c(X)`` edges, c(X) being the common neighbours outside X.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass
from typing import Callable, Iterable

from .graph import DesignatedPair, Graph, contract_pair, delete_edge
from .sparsity import CYLINDER, SPHERE, is_rigid_surface, sparse_rank

BRUTE_MAX_VERTICES = 12
SCHEMA = "cylrig/1"


def t_value(h: Iterable[str], pair: DesignatedPair) -> int:
    h = frozenset(h)
    if h == {pair.u, pair.v}:
        return 4
    if len(h) in (2, 3):
        return 3
    return 2


def val_set(h: Iterable[str], pair: DesignatedPair) -> int:
    h = frozenset(h)
    if len(h) < 2:
        raise ValueError("val is defined for sets of at least two vertices")
    return 2 * len(h) - t_value(h, pair)


@dataclass(frozen=True)
class CanonicalFamily:
    """A uv-compatible family in normal form.

    ``base`` is a vertex set containing u and v with at least three vertices;
    each ``t`` in ``tails`` stands for the member {u, v, t}.
    """

    base: frozenset[str]
    tails: frozenset[str] = frozenset()

    def __post_init__(self) -> None:
        object.__setattr__(self, "base", frozenset(self.base))
        object.__setattr__(self, "tails", frozenset(self.tails))
        if len(self.base) < 3:
            raise ValueError("base of a uv-compatible family needs at least three vertices")
        if self.base & self.tails:
            raise ValueError("tails must lie outside the base")

    def members(self, pair: DesignatedPair) -> list[frozenset[str]]:
        if not {pair.u, pair.v} <= self.base:
            raise ValueError("family members must contain the designated pair")
        if pair.u in self.tails or pair.v in self.tails:
            raise ValueError("a tail cannot be a designated vertex")
        return [self.base] + [frozenset((pair.u, pair.v, t)) for t in sorted(self.tails)]


def family_edges(g: Graph, members: Iterable[Iterable[str]]) -> set[tuple[str, str]]:
    sets = [frozenset(m) for m in members]
    return {e for e in g.edges if any(e[0] in s and e[1] in s for s in sets)}


def val_members(members: Iterable[Iterable[str]], pair: DesignatedPair) -> int:
    vals = [val_set(m, pair) for m in members]
    if not vals:
        raise ValueError("empty family")
    return sum(vals) - 2 * (len(vals) - 1)


def val_family(fam: CanonicalFamily, pair: DesignatedPair) -> int:
    return val_members(fam.members(pair), pair)


@dataclass(frozen=True)
class SetViolation:
    vertices: frozenset[str]
    count: int
    value: int


@dataclass(frozen=True)
class FamilyViolation:
    family: CanonicalFamily
    count: int
    value: int


Violation = SetViolation | FamilyViolation


class _Counts:
    """Induced edge counts of every vertex subset, as a table indexed by bitmask."""

    def __init__(self, g: Graph, pair: DesignatedPair):
        pair.check(g)
        self.n = n = len(g)
        adj = g.adjacency_masks()
        self.ui = g.index(pair.u)
        self.vi = g.index(pair.v)
        self.uv = (1 << self.ui) | (1 << self.vi)
        self.common = adj[self.ui] & adj[self.vi]
        # i(X) = i(X - w) + |N(w) & X| for the lowest vertex w of X
        table = [0] * (1 << n)
        for x in range(1, 1 << n):
            low = x & -x
            rest = x ^ low
            table[x] = table[rest] + bin(adj[low.bit_length() - 1] & rest).count("1")
        self.i = table

    def val(self, x: int, size: int) -> int:
        if x == self.uv:
            return 0
        return 2 * size - (3 if size <= 3 else 2)

    def set_violations(self):
        table = self.i
        for x in range(1 << self.n):
            size = bin(x).count("1")
            if size >= 2 and table[x] > self.val(x, size):
                yield x, table[x], size

    def base_violations(self):
        uv, common, table = self.uv, self.common, self.i
        for x in range(1 << self.n):
            if x & uv != uv or x == uv:
                continue
            size = bin(x).count("1")
            extra = bin(common & ~x).count("1")
            c = table[x] + 2 * extra
            v = self.val(x, size) + extra
            if c > v:
                yield x, common & ~x, c, v


def _check_brute_size(g: Graph) -> None:
    if len(g) > BRUTE_MAX_VERTICES:
        raise ValueError(f"exhaustive uv-sparsity check limited to {BRUTE_MAX_VERTICES} vertices")


def is_uv_sparse(g: Graph, pair: DesignatedPair) -> bool:
    _check_brute_size(g)
    cnt = _Counts(g, pair)
    if g.has_edge(pair.u, pair.v):
        return False
    for _ in cnt.set_violations():
        return False
    for _ in cnt.base_violations():
        return False
    return True


def uv_sparsity_violation(g: Graph, pair: DesignatedPair) -> Violation | None:
    """A witness that ``g`` is not uv-sparse, or None.

    Set witnesses take precedence and the smallest violating set is returned.
    Among family witnesses the one covering the most edges is returned.
    """
    _check_brute_size(g)
    cnt = _Counts(g, pair)
    if g.has_edge(pair.u, pair.v):
        return SetViolation(frozenset((pair.u, pair.v)), 1, 0)
    best_set = None
    for x, c, size in cnt.set_violations():
        if best_set is None or size < best_set[2]:
            best_set = (x, c, size)
    if best_set is not None:
        x, c, size = best_set
        return SetViolation(g.labels_of(x), c, cnt.val(x, size))
    best = None
    for x, tails, c, v in cnt.base_violations():
        if best is None or c > best[2]:
            best = (x, tails, c, v)
    if best is None:
        return None
    x, tails, c, v = best
    return FamilyViolation(CanonicalFamily(g.labels_of(x), g.labels_of(tails)), c, v)


def deletion(g: Graph, pair: DesignatedPair) -> Graph:
    return delete_edge(g, (pair.u, pair.v))


def contraction(g: Graph, pair: DesignatedPair) -> Graph:
    return contract_pair(g, pair.u, pair.v)


RankFn = Callable[[Graph, int], int]


def uv_rank(g: Graph, pair: DesignatedPair, sparse: RankFn = sparse_rank) -> int:
    pair.check(g)
    return min(sparse(deletion(g, pair), 2), sparse(contraction(g, pair), 2) + 2)


class InconsistentRigidity(RuntimeError):
    """The rank form and the deletion/contraction form of uv-rigidity disagree."""


def is_uv_rigid(g: Graph, pair: DesignatedPair) -> bool:
    pair.check(g)
    by_rank = uv_rank(g, pair) == 2 * len(g) - 2
    by_parts = is_rigid_surface(deletion(g, pair), CYLINDER) and is_rigid_surface(
        contraction(g, pair), CYLINDER
    )
    if by_rank != by_parts:
        raise InconsistentRigidity(
            f"rank form says {by_rank}, deletion/contraction form says {by_parts}"
        )
    return by_parts


def is_uv_rigid_sphere(g: Graph, pair: DesignatedPair) -> bool:
    pair.check(g)
    return is_rigid_surface(deletion(g, pair), SPHERE) and is_rigid_surface(
        contraction(g, pair), SPHERE
    )


def brute_uv_basis(g: Graph, pair: DesignatedPair) -> list[tuple[str, str]]:
    _check_brute_size(g)
    pair.check(g)
    kept: list[tuple[str, str]] = []
    for e in g.edges:
        if is_uv_sparse(g.with_edges(kept + [e]), pair):
            kept.append(e)
    return kept


def brute_uv_rank(g: Graph, pair: DesignatedPair) -> int:
    return len(brute_uv_basis(g, pair))


@dataclass
class RankReport:
    combinatorial_rank: int
    brute_rank: int | None = None
    numeric_rank: int | None = None
    trials: int = 0

    @property
    def agree(self) -> bool:
        ranks = {r for r in (self.combinatorial_rank, self.brute_rank, self.numeric_rank) if r is not None}
        return len(ranks) == 1

    def to_dict(self) -> dict:
        d = asdict(self)
        d["agree"] = self.agree
        return d

    def to_json(self, **extra) -> str:
        return json.dumps({"schema": SCHEMA, **self.to_dict(), **extra}, sort_keys=True)
