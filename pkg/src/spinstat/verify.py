"""Engine-versus-oracle sweeps with sum-rule and dimension bookkeeping."""

from __future__ import annotations

import itertools
import logging
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Iterable, Sequence

from .engine import a_identity, admissible_spins, classify, dimension_count
from .errors import NonIntegerResult
from .lr import lr_multi
from .oracle import equal_spin_dim, oracle_values, zero_weight_dim
from .symgroup import irreps, sn_dimension
from .tableaux import Partition, partitions_of

log = logging.getLogger(__name__)


@dataclass
class Divergence:
    kind: str  # "mismatch", "non_integer", "weighted_sum_rule", "dimension", "branching"
    f: list[int]
    n: int
    twice_s: int | None = None
    lam: list[int] | None = None
    engine: int | None = None
    oracle: int | None = None
    detail: str = ""


@dataclass
class ProblemResult:
    f: Partition
    n: int
    entries: dict[tuple[int, Partition], int]
    oracle: dict[tuple[int, Partition], int]
    engine_residue: float
    oracle_residue: float
    weighted: dict[int, tuple[int, int]]  # twice_s -> (sum d_lambda nu, Y^f_{beta..beta})
    unweighted: dict[int, tuple[int, int]]  # twice_s -> (sum nu, Y^f_{beta..beta})
    zero_weight: int
    equal_spin: int
    dimension: int
    divergences: list[Divergence] = field(default_factory=list)


def branching_dim(f: Partition, n: int) -> int:
    """Zero-weight dimension rebuilt from U(2)^n branching: sum of prod (2s_j+1) Y^f_{a_1..a_n}."""
    if f.size % n:
        return 0
    q = f.size // n
    u2 = partitions_of(q, 2)
    total = 0
    for alphas in itertools.product(u2, repeat=n):
        y = lr_multi(f, list(alphas))
        if y:
            total += y * math.prod(a.row(0) - a.row(1) + 1 for a in alphas)
    return total


def check_problem(f: Partition, n: int, nodes: int | None = None, tolerance: float = 1e-6) -> ProblemResult:
    report = classify(f, n)
    spins = admissible_spins(f, n)
    lams = irreps(n)
    divergences: list[Divergence] = []
    oracle: dict[tuple[int, Partition], int] = {}
    oracle_residue = 0.0
    raw = oracle_values(f, n, spins, lams, nodes) if spins else {}
    for (t, lam), value in raw.items():
        k = round(value.real)
        residue = abs(value - k)
        oracle_residue = max(oracle_residue, residue)
        if residue >= tolerance:
            err = NonIntegerResult(value, tolerance)
            divergences.append(Divergence("non_integer", list(f), n, t, list(lam), report.entries[(t, lam)], None, str(err)))
            continue
        oracle[(t, lam)] = int(k)
        if int(k) != report.entries[(t, lam)]:
            divergences.append(Divergence("mismatch", list(f), n, t, list(lam), report.entries[(t, lam)], int(k)))

    weighted, unweighted = {}, {}
    for t in spins:
        y = a_identity(f, n, t)
        wsum = sum(sn_dimension(lam) * report.entries[(t, lam)] for lam in lams)
        usum = sum(report.entries[(t, lam)] for lam in lams)
        weighted[t] = (wsum, y)
        unweighted[t] = (usum, y)
        if wsum != y:
            divergences.append(Divergence("weighted_sum_rule", list(f), n, t, detail=f"sum d*nu = {wsum}, Y = {y}"))

    zw = zero_weight_dim(f, n)
    eq = equal_spin_dim(f, n)
    dim = dimension_count(report)
    if eq != dim:
        divergences.append(Divergence("dimension", list(f), n, detail=f"sum (2s+1)^n d nu = {dim}, equal-spin dim = {eq}"))
    br = branching_dim(f, n)
    if br != zw:
        divergences.append(Divergence("branching", list(f), n, detail=f"sum over spin tuples = {br}, zero-weight dim = {zw}"))

    return ProblemResult(
        f=f, n=n, entries=report.entries, oracle=oracle,
        engine_residue=report.max_residue, oracle_residue=oracle_residue,
        weighted=weighted, unweighted=unweighted, zero_weight=zw, equal_spin=eq, dimension=dim,
        divergences=divergences,
    )


def sweep_problems(max_boxes: int, n_list: Iterable[int]) -> list[tuple[Partition, int]]:
    """Every f with |f| <= max_boxes and at most 2n rows, for each n, in a fixed order."""
    return [
        (f, n)
        for n in n_list
        for size in range(max_boxes + 1)
        for f in partitions_of(size, 2 * n)
    ]


def _check(args: tuple[Partition, int, int | None, float]) -> ProblemResult:
    return check_problem(*args)


@dataclass
class SweepSummary:
    max_boxes: int
    n_list: list[int]
    problems: int = 0
    multiplicities: int = 0
    agreeing: int = 0
    max_engine_residue: float = 0.0
    max_oracle_residue: float = 0.0
    weighted_rule_holds: bool = True
    unweighted_rule_holds: bool = True
    unweighted_failures: list[dict] = field(default_factory=list)
    # problems whose zero-weight space also holds unequal-spin sectors, so that
    # sum (2s+1)^n d nu falls short of the full zero-weight dimension
    unequal_spin_cases: list[dict] = field(default_factory=list)
    divergences: list[Divergence] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.divergences

    def as_dict(self) -> dict:
        d = asdict(self)
        d["ok"] = self.ok
        d["first_divergence"] = asdict(self.divergences[0]) if self.divergences else None
        return d


def sweep(
    max_boxes: int,
    n_list: Sequence[int],
    nodes: int | None = None,
    tolerance: float = 1e-6,
    jobs: int = 1,
) -> tuple[SweepSummary, list[ProblemResult]]:
    problems = sweep_problems(max_boxes, n_list)
    args = [(f, n, nodes, tolerance) for f, n in problems]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_check, args))
    else:
        results = [_check(a) for a in args]

    summary = SweepSummary(max_boxes=max_boxes, n_list=list(n_list), problems=len(results))
    for r in results:
        log.debug("checked f=%s n=%d: %d divergences", tuple(r.f), r.n, len(r.divergences))
        summary.multiplicities += len(r.entries)
        summary.agreeing += sum(1 for k, v in r.oracle.items() if r.entries[k] == v)
        summary.max_engine_residue = max(summary.max_engine_residue, r.engine_residue)
        summary.max_oracle_residue = max(summary.max_oracle_residue, r.oracle_residue)
        summary.divergences.extend(r.divergences)
        if r.zero_weight != r.dimension:
            summary.unequal_spin_cases.append(
                {"f": list(r.f), "n": r.n, "dimension_count": r.dimension, "zero_weight_dim": r.zero_weight}
            )
        for t, (wsum, y) in r.weighted.items():
            if wsum != y:
                summary.weighted_rule_holds = False
        for t, (usum, y) in r.unweighted.items():
            if usum != y:
                summary.unweighted_rule_holds = False
                summary.unweighted_failures.append(
                    {"f": list(r.f), "n": r.n, "twice_s": t, "sum_nu": usum, "Y": y}
                )
    return summary, results
