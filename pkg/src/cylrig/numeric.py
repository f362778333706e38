"""Exact rigidity matrices of frameworks on concentric cylinders.

Each vertex sits on the cylinder x^2 + y^2 = r through its own position, so
the cylinder family is induced by the realisation. All entries are
``Fraction``; ranks are exact and there is no tolerance anywhere.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, lcm
from typing import Mapping, Sequence

from .graph import DesignatedPair, Graph, contracted_label

Point = tuple[Fraction, Fraction, Fraction]

DEFAULT_BOUND = 1000
DEFAULT_TRIALS = 3
MAX_RESAMPLES = 1000


@dataclass(frozen=True)
class Realization:
    coords: Mapping[str, Point]
    coincident: DesignatedPair | None = None

    def __post_init__(self) -> None:
        for w, (x, y, _) in self.coords.items():
            if x == 0 and y == 0:
                raise ValueError(f"vertex {w!r} lies on the axis")
        seen: dict[Point, str] = {}
        skip = self.coincident.v if self.coincident else None
        if self.coincident and self.coords[self.coincident.u] != self.coords[self.coincident.v]:
            raise ValueError("designated pair is not coincident")
        for w, pt in self.coords.items():
            if w == skip:
                continue
            if pt in seen:
                raise ValueError(f"vertices {seen[pt]!r} and {w!r} coincide")
            seen[pt] = w

    def __getitem__(self, w: str) -> Point:
        return self.coords[w]

    def radius_sq(self, w: str) -> Fraction:
        x, y, _ = self.coords[w]
        return x * x + y * y


def _rational(rng: random.Random, bound: int) -> Fraction:
    return Fraction(rng.randint(-bound, bound), rng.randint(1, bound))


def random_realization(
    g: Graph,
    pair: DesignatedPair | None = None,
    seed: int = 0,
    bound: int = DEFAULT_BOUND,
) -> Realization:
    if bound < 100:
        raise ValueError("coordinate bound must be at least 100")
    if pair is not None:
        pair.check(g)
    rng = random.Random(seed)
    for _ in range(MAX_RESAMPLES):
        coords = {w: (_rational(rng, bound), _rational(rng, bound), _rational(rng, bound)) for w in g.vertices}
        if pair is not None:
            coords[pair.v] = coords[pair.u]
        try:
            return Realization(coords, pair)
        except ValueError:
            continue
    raise RuntimeError("could not sample a valid realisation")


def quotient_realization(p: Realization, g: Graph, pair: DesignatedPair) -> Realization:
    """Realisation of g/uv placing the contracted vertex at p(u) = p(v)."""
    z = contracted_label(g, pair.u, pair.v)
    coords = {(z if w == pair.u else w): pt for w, pt in p.coords.items() if w != pair.v}
    return Realization(coords)


@dataclass
class RigidityMatrixY:
    rows: list[tuple[str, ...]]
    columns: list[tuple[str, int]]
    entries: list[list[Fraction]] = field(repr=False)

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.entries), len(self.columns)

    def to_json(self) -> str:
        return json.dumps(
            {
                "rows": [list(r) for r in self.rows],
                "entries": [[f"{q.numerator}/{q.denominator}" for q in row] for row in self.entries],
            }
        )


def build_matrix(g: Graph, p: Realization) -> RigidityMatrixY:
    missing = [w for w in g.vertices if w not in p.coords]
    if missing:
        raise ValueError(f"no coordinates for {missing}")
    n = len(g)
    col = {w: 3 * i for i, w in enumerate(g.vertices)}
    zero = Fraction(0)
    entries, rows = [], []
    for a, b in g.edges:
        row = [zero] * (3 * n)
        pa, pb = p[a], p[b]
        for k in range(3):
            row[col[a] + k] = pa[k] - pb[k]
            row[col[b] + k] = pb[k] - pa[k]
        entries.append(row)
        rows.append(("edge", a, b))
    for w in g.vertices:
        row = [zero] * (3 * n)
        x, y, _ = p[w]
        row[col[w]], row[col[w] + 1] = x, y
        entries.append(row)
        rows.append(("vertex", w))
    columns = [(w, k) for w in g.vertices for k in range(3)]
    return RigidityMatrixY(rows, columns, entries)


def _integer_row(row: Sequence[Fraction | int]) -> list[int]:
    den = 1
    for q in row:
        if isinstance(q, Fraction):
            den = lcm(den, q.denominator)
    return [int(q * den) for q in row]


def exact_rank(m: Sequence[Sequence[Fraction | int]]) -> int:
    """Rank over the rationals by fraction-free elimination.

    Rows are cleared of denominators, then eliminated with integer cross
    multiplication; each updated row is divided by the gcd of its entries to
    keep the numbers small. Rows with a zero in the pivot column are left
    untouched, which keeps sparse matrices cheap.
    """
    rows = [r for r in (_integer_row(r) for r in m) if any(r)]
    if not rows:
        return 0
    ncols = len(rows[0])
    rank = 0
    for c in range(ncols):
        piv = None
        for i in range(rank, len(rows)):
            if rows[i][c]:
                if piv is None or abs(rows[i][c]) < abs(rows[piv][c]):
                    piv = i
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        pr = rows[rank]
        a = pr[c]
        for i in range(rank + 1, len(rows)):
            r = rows[i]
            b = r[c]
            if not b:
                continue
            g = gcd(a, b)
            fa, fb = a // g, b // g
            new = [fa * x - fb * y for x, y in zip(r, pr)]
            d = 0
            for x in new:
                if x:
                    d = gcd(d, x)
                    if d == 1:
                        break
            if d > 1:
                new = [x // d for x in new]
            rows[i] = new
        rank += 1
        if rank == len(rows):
            break
    return rank


def numeric_edge_rank(g: Graph, p: Realization) -> int:
    # vertex rows have disjoint supports and nonzero entries, so they add exactly |V|
    return exact_rank(build_matrix(g, p).entries) - len(g)


def numeric_uv_rank(
    g: Graph,
    pair: DesignatedPair,
    trials: int = DEFAULT_TRIALS,
    seed: int = 0,
    bound: int = DEFAULT_BOUND,
) -> int:
    """Best edge rank over ``trials`` random coincident realisations.

    Trial t uses seed ``seed + t``. The search stops early once the rank hits
    the bound no realisation can exceed (|E - uv| edges, or 2|V| - 2 since
    z-translation and rotation about the axis are always in the kernel), so
    the result is the same as evaluating every trial.
    """
    if trials < 1:
        raise ValueError("need at least one trial")
    nonzero = len(g.edges) - (1 if g.has_edge(pair.u, pair.v) else 0)
    ceiling = min(nonzero, max(2 * len(g) - 2, 0))
    best = 0
    for t in range(trials):
        if best >= ceiling:
            break
        p = random_realization(g, pair, seed + t, bound)
        best = max(best, numeric_edge_rank(g, p))
    return best
