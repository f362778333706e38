"""Three-way agreement check: deletion/contraction rank, greedy oracle, exact matrix rank."""

from __future__ import annotations

import os
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterator

from .coincident import BRUTE_MAX_VERTICES, brute_uv_rank, contraction, deletion, uv_rank
from .graph import DesignatedPair, Graph, serialize_graph
from .numeric import numeric_uv_rank
from .sparsity import sparse_rank

EXHAUSTIVE_LIMIT = 6


@dataclass(frozen=True)
class VerifyConfig:
    max_exhaustive_n: int = 6
    random_samples: int = 500
    random_n_range: tuple[int, int] = (7, 9)
    trials: int = 3
    seed: int = 0
    force: bool = False
    inject_fault: bool = False

    def __post_init__(self) -> None:
        if self.max_exhaustive_n > EXHAUSTIVE_LIMIT and not self.force:
            raise ValueError(
                f"exhaustive enumeration above n={EXHAUSTIVE_LIMIT} needs force=True"
            )
        lo, hi = self.random_n_range
        if lo < 2 or hi < lo:
            raise ValueError(f"bad random size range {self.random_n_range}")
        if self.trials < 1:
            raise ValueError("trials must be positive")


def labels(n: int) -> list[str]:
    return ["u", "v"] + [f"w{i}" for i in range(1, n - 1)]


PAIR = DesignatedPair("u", "v")


def instance_graph(n: int, mask: int) -> Graph:
    vs = labels(n)
    pairs = list(combinations(vs, 2))
    return Graph(vs, [pairs[j] for j in range(len(pairs)) if mask >> j & 1])


def instances(config: VerifyConfig) -> Iterator[tuple[int, int, int]]:
    """(index, n, edge mask over K_n) for every instance, exhaustive block first."""
    index = 0
    for n in range(2, config.max_exhaustive_n + 1):
        for mask in range(1 << (n * (n - 1) // 2)):
            yield index, n, mask
            index += 1
    rng = random.Random(config.seed)
    lo, hi = config.random_n_range
    for _ in range(config.random_samples):
        n = rng.randint(lo, hi)
        density = rng.uniform(0.2, 0.8)
        m = n * (n - 1) // 2
        mask = sum(1 << j for j in range(m) if rng.random() < density)
        yield index, n, mask
        index += 1


def _faulty_uv_rank(g: Graph, pair: DesignatedPair) -> int:
    # mutation used to show the harness catches a wrong rank formula
    return min(sparse_rank(deletion(g, pair), 2), sparse_rank(contraction(g, pair), 2) + 3)


@dataclass(frozen=True)
class Outcome:
    index: int
    n: int
    mask: int
    combinatorial: int
    brute: int | None
    numeric: int

    @property
    def agree(self) -> bool:
        ranks = {self.combinatorial, self.numeric}
        if self.brute is not None:
            ranks.add(self.brute)
        return len(ranks) == 1


def check_instance(job: tuple[int, int, int], trials: int, seed: int, inject_fault: bool = False) -> Outcome:
    index, n, mask = job
    g = instance_graph(n, mask)
    comb = (_faulty_uv_rank if inject_fault else uv_rank)(g, PAIR)
    brute = brute_uv_rank(g, PAIR) if n <= BRUTE_MAX_VERTICES else None
    num = numeric_uv_rank(g, PAIR, trials=trials, seed=seed + index * trials)
    return Outcome(index, n, mask, comb, brute, num)


def _run_chunk(args) -> list[Outcome]:
    jobs, trials, seed, fault = args
    return [check_instance(j, trials, seed, fault) for j in jobs]


@dataclass
class VerifyReport:
    exhaustive: int = 0
    random: int = 0
    disagreements: int = 0
    first: Outcome | None = None
    by_n: dict[int, int] = field(default_factory=dict)

    @property
    def total(self) -> int:
        return self.exhaustive + self.random

    def lines(self, config: VerifyConfig) -> list[str]:
        lo, hi = config.random_n_range
        out = [
            f"exhaustive: {self.exhaustive} instances (2 <= n <= {config.max_exhaustive_n})",
            f"random: {self.random} instances (n in {lo}..{hi}, seed {config.seed})",
            f"trials per instance: {config.trials}",
            f"{self.disagreements} disagreements",
        ]
        if self.first is not None:
            f = self.first
            out.append(
                f"first counterexample (instance {f.index}): combinatorial {f.combinatorial}, "
                f"brute {f.brute}, numeric {f.numeric}"
            )
            out += ["  " + line for line in serialize_graph(instance_graph(f.n, f.mask), PAIR).splitlines()]
        return out


def worker_count() -> int:
    env = os.environ.get("CYLRIG_WORKERS")
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


def run_verification(config: VerifyConfig, workers: int | None = None, chunk: int = 256) -> VerifyReport:
    workers = worker_count() if workers is None else workers
    exhaustive_count = sum(1 << (n * (n - 1) // 2) for n in range(2, config.max_exhaustive_n + 1))
    jobs = list(instances(config))
    chunks = [
        (jobs[i:i + chunk], config.trials, config.seed, config.inject_fault)
        for i in range(0, len(jobs), chunk)
    ]
    if workers <= 1:
        results = map(_run_chunk, chunks)
    else:
        pool = ProcessPoolExecutor(max_workers=workers)
        results = pool.map(_run_chunk, chunks)
    report = VerifyReport()
    try:
        for batch in results:
            for o in batch:
                if o.index < exhaustive_count:
                    report.exhaustive += 1
                else:
                    report.random += 1
                report.by_n[o.n] = report.by_n.get(o.n, 0) + 1
                if not o.agree:
                    report.disagreements += 1
                    if report.first is None:
                        report.first = o
    finally:
        if workers > 1:
            pool.shutdown()
    return report
