"""Rank in the (2,l)-sparse count matroids, l = 2 (cylinder) or l = 3 (sphere, plane).

The fast path is the standard (k,l)-pebble game with k = 2. ``brute_sparse_rank``
is an exhaustive oracle for small graphs and shares no code with it.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .graph import Edge, Graph

K = 2
BRUTE_MAX_EDGES = 16


@dataclass(frozen=True)
class SparsityParams:
    l: int = 2

    def __post_init__(self) -> None:
        if self.l not in (2, 3):
            raise ValueError(f"only l in {{2, 3}} is supported, got {self.l}")

    @property
    def k(self) -> int:
        return K


CYLINDER = SparsityParams(2)
SPHERE = SparsityParams(3)


def _params(params: SparsityParams | int) -> SparsityParams:
    return params if isinstance(params, SparsityParams) else SparsityParams(params)


class _PebbleGame:
    def __init__(self, n: int, l: int):
        self.l = l
        self.pebbles = [K] * n
        self.out: list[set[int]] = [set() for _ in range(n)]

    def _fetch(self, x: int, a: int, b: int) -> bool:
        """Move one free pebble to ``x`` along a reversed directed path."""
        parent = {a: -1, b: -1}
        stack = [x]
        while stack:
            y = stack.pop()
            for w in self.out[y]:
                if w in parent:
                    continue
                parent[w] = y
                if self.pebbles[w] > 0:
                    self.pebbles[w] -= 1
                    self.pebbles[x] += 1
                    while w != x:
                        p = parent[w]
                        self.out[p].discard(w)
                        self.out[w].add(p)
                        w = p
                    return True
                stack.append(w)
        return False

    def add(self, a: int, b: int) -> bool:
        peb = self.pebbles
        while peb[a] + peb[b] < self.l + 1:
            if peb[a] < K and self._fetch(a, a, b):
                continue
            if peb[b] < K and self._fetch(b, a, b):
                continue
            return False
        src, dst = (a, b) if peb[a] > 0 else (b, a)
        peb[src] -= 1
        self.out[src].add(dst)
        return True


def sparse_basis(g: Graph, params: SparsityParams | int = CYLINDER) -> list[Edge]:
    """Edges accepted by the pebble game in lexicographic insertion order."""
    p = _params(params)
    if len(g) <= 1:
        return []
    game = _PebbleGame(len(g), p.l)
    idx = {w: i for i, w in enumerate(g.vertices)}
    return [e for e in g.edges if game.add(idx[e[0]], idx[e[1]])]


def sparse_rank(g: Graph, params: SparsityParams | int = CYLINDER) -> int:
    return len(sparse_basis(g, params))


def is_sparse(g: Graph, params: SparsityParams | int = CYLINDER) -> bool:
    return sparse_rank(g, params) == len(g.edges)


def is_complete(g: Graph) -> bool:
    n = len(g)
    return len(g.edges) == n * (n - 1) // 2


def is_rigid_surface(g: Graph, params: SparsityParams | int = CYLINDER) -> bool:
    """Generic rigidity on concentric cylinders (l=2) or spheres (l=3)."""
    p = _params(params)
    n = len(g)
    if p.l == 2:
        if n <= 3 and is_complete(g):
            return True
        return sparse_rank(g, p) == 2 * n - 2
    if n == 1:
        return True
    return sparse_rank(g, p) == 2 * n - 3


# -- exhaustive oracle ---------------------------------------------------

def _induced_edge_masks(g: Graph) -> list[tuple[int, int]]:
    """(bitmask of edges inside X, |X|) for every vertex subset X with |X| >= 2."""
    idx = {w: i for i, w in enumerate(g.vertices)}
    ends = [(1 << idx[a]) | (1 << idx[b]) for a, b in g.edges]
    out = []
    for x in range(1 << len(g)):
        size = bin(x).count("1")
        if size < 2:
            continue
        em = 0
        for j, m in enumerate(ends):
            if m & x == m:
                em |= 1 << j
        out.append((em, size))
    return out


def brute_sparse_rank(g: Graph, params: SparsityParams | int = CYLINDER) -> int:
    """Largest edge subset meeting every (2,l) count, by direct enumeration."""
    p = _params(params)
    m = len(g.edges)
    if m > BRUTE_MAX_EDGES:
        raise ValueError(f"brute force limited to {BRUTE_MAX_EDGES} edges, got {m}")
    tables = _induced_edge_masks(g)
    # the X = V count caps every candidate
    top = min(m, 2 * len(g) - p.l) if len(g) >= 2 else 0
    for size in range(top, 0, -1):
        for chosen in combinations(range(m), size):
            f = 0
            for j in chosen:
                f |= 1 << j
            if all(bin(em & f).count("1") <= 2 * s - p.l for em, s in tables):
                return size
    return 0
