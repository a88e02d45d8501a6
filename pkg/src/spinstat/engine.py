"""Closed-form multiplicities nu(f, s lambda) of spin-statistics irreps.

For an SU(2n) irrep with tableau ``f`` the multiplicity of the spin-s,
statistics-lambda irrep is a class sum over S_n,

    nu = (1/n!) sum_[sigma] Omega_[sigma] chi^lambda(sigma) sgn(sigma)^{|f|/n} A_[sigma],

where ``A_[sigma]`` couples the cycles of sigma through Littlewood-Richardson
coefficients (f -> one tableau per cycle -> one U(2) tableau per cycle slot)
and multi-fold Clebsch-Gordan multiplicities.  The class terms are
assembled exactly as integer combinations of roots of unity.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from fractions import Fraction
from math import factorial

from .errors import BetaUndefined, InvalidProblem, NonIntegerResult
from .lr import lr_multi, multiply_into
from .phases import PhaseSum
from .su2 import U2Tableau, multi_cg, spin_of_u2
from .symgroup import MAX_N, ClassData, CycleType, conjugacy_classes, irreps, sn_character, sn_dimension
from .tableaux import EMPTY, Partition, contains, partitions_of

HARD_TOLERANCE = 1e-6


@dataclass(frozen=True)
class Problem:
    f: Partition
    n: int
    twice_s: int
    lam: Partition

    def __post_init__(self) -> None:
        validate_fn(self.f, self.n)
        if self.twice_s < 0:
            raise InvalidProblem(f"twice_s must be nonnegative, got {self.twice_s}")
        if self.lam.size != self.n:
            raise InvalidProblem(f"lambda {tuple(self.lam)} is not a partition of n = {self.n}")


def validate_fn(f: Partition, n: int) -> None:
    if not 2 <= n <= MAX_N:
        raise InvalidProblem(f"particle number n must lie in 2..{MAX_N}, got {n}")
    if len(f) > 2 * n:
        raise InvalidProblem(f"f = {tuple(f)} has {len(f)} rows; SU({2 * n}) tableaux have at most {2 * n}")


def beta_of(f: Partition, n: int, twice_s: int) -> U2Tableau | None:
    """The U(2) tableau (|f|/2n + s, |f|/2n - s), or None when it is not a valid tableau."""
    if f.size % n:
        return None
    q = f.size // n
    if twice_s > q or (q - twice_s) % 2:
        return None
    return U2Tableau((q + twice_s) // 2, (q - twice_s) // 2)


def admissible_spins(f: Partition, n: int) -> list[int]:
    """Twice-spins for which beta(f, s) exists."""
    if f.size % n:
        return []
    q = f.size // n
    return list(range(q % 2, q + 1, 2))


def a_identity(f: Partition, n: int, twice_s: int) -> int:
    beta = beta_of(f, n, twice_s)
    if beta is None:
        raise BetaUndefined(f"beta(f={tuple(f)}, s={twice_s}/2) undefined for n={n}")
    return lr_multi(f, [Partition(beta)] * n)


def _u2_tableaux(size: int, bound: Partition) -> list[Partition]:
    return [a for a in partitions_of(size, 2) if contains(bound, a)]


@lru_cache(maxsize=None)
def cycle_block(beta: Partition, length: int, twice_s: int) -> PhaseSum:
    """Contribution of one cycle of the given length whose U(2L) tableau is ``beta``.

    Sums Y^beta_{a_1..a_L} exp(2 pi i sum_p p|a_p| / L)
    C(L s + (L-1)/2, (L-1)/2, S(a_1), ..., S(a_L)) over U(2) tableaux a_p.
    """
    outer = length * twice_s + length - 1
    inner = length - 1
    out = PhaseSum()

    def walk(p: int, remaining: int, products: dict, chosen: list[Partition], turn: int) -> None:
        if p > length:
            y = products.get(beta, 0)
            if y:
                c = multi_cg([outer, inner, *(spin_of_u2(a) for a in chosen)])
                if c:
                    out.add_term(y * c, Fraction(turn, length))
            return
        sizes = [remaining] if p == length else range(remaining, -1, -1)
        for k in sizes:
            for alpha in _u2_tableaux(k, beta):
                nxt = multiply_into(products, alpha, beta)
                if not nxt:
                    continue
                chosen.append(alpha)
                walk(p + 1, remaining - k, nxt, chosen, turn + p * k)
                chosen.pop()

    walk(1, beta.size, {EMPTY: 1}, [], 0)
    return out


def a_class_phases(f: Partition, n: int, twice_s: int, cls: CycleType | Partition, fast: bool = True) -> PhaseSum:
    """A_[sigma] as an exact sum of roots of unity.  Requires n | |f|."""
    cycles = cls.cycles if isinstance(cls, CycleType) else Partition(cls)
    if cycles.size != n:
        raise InvalidProblem(f"class {tuple(cycles)} is not a cycle type of S_{n}")
    if f.size % n:
        raise InvalidProblem(f"class terms need n | |f| (|f| = {f.size}, n = {n})")
    if fast:
        if all(c == 1 for c in cycles):
            if beta_of(f, n, twice_s) is None:
                return PhaseSum()
            return PhaseSum.integer(a_identity(f, n, twice_s))
        if len(cycles) == 1:
            return cycle_block(f, n, twice_s) if len(f) <= 2 * n else PhaseSum()
    return _a_class_general(f, n, twice_s, tuple(cycles))


def _a_class_general(f: Partition, n: int, twice_s: int, cycles: tuple[int, ...]) -> PhaseSum:
    q = f.size // n
    out = PhaseSum()

    def walk(b: int, products: dict, blocks: list[PhaseSum]) -> None:
        nonlocal out
        if b == len(cycles):
            y = products.get(f, 0)
            if y:
                term = PhaseSum.integer(y)
                for blk in blocks:
                    term = term * blk
                out += term
            return
        length = cycles[b]
        for beta in partitions_of(length * q, 2 * length):
            if not contains(f, beta):
                continue
            blk = cycle_block(beta, length, twice_s)
            if not blk:
                continue
            nxt = multiply_into(products, beta, f)
            if not nxt:
                continue
            blocks.append(blk)
            walk(b + 1, nxt, blocks)
            blocks.pop()

    walk(0, {EMPTY: 1}, [])
    return out


def a_class(f: Partition, n: int, twice_s: int, cls: CycleType | Partition, fast: bool = True) -> complex:
    return a_class_phases(f, n, twice_s, cls, fast=fast).to_complex()


@lru_cache(maxsize=None)
def class_terms(f: Partition, n: int, twice_s: int) -> tuple[tuple[ClassData, complex], ...]:
    """(class, sgn^{|f|/n} A_[sigma]) for every class of S_n; requires n | |f|."""
    q = f.size // n
    return tuple(
        (cd, (cd.sign ** q) * a_class(f, n, twice_s, cd.cycle_type))
        for cd in conjugacy_classes(n)
    )


def nu_value(p: Problem, shortcut: bool = True) -> complex:
    """The class sum before rounding."""
    if p.f.size % p.n:
        return 0j
    if shortcut and beta_of(p.f, p.n, p.twice_s) is None:
        return 0j
    acc = 0j
    for cd, term in class_terms(p.f, p.n, p.twice_s):
        chi = sn_character(p.lam, cd.cycle_type)
        if chi:
            acc += cd.class_size * chi * term
    return acc / factorial(p.n)


def round_multiplicity(value: complex, tolerance: float = HARD_TOLERANCE, context: str = "") -> tuple[int, float]:
    k = round(value.real)
    residue = abs(value - k)
    if residue >= tolerance or k < 0:
        raise NonIntegerResult(value, tolerance, context)
    return int(k), residue


def nu_with_residue(p: Problem, shortcut: bool = True) -> tuple[int, float]:
    return round_multiplicity(nu_value(p, shortcut), context=f"(engine, {p})")


def nu(p: Problem, shortcut: bool = True) -> int:
    return nu_with_residue(p, shortcut)[0]


def nu_sum_weighted(f: Partition, n: int, twice_s: int) -> int:
    """sum_lambda d_lambda nu(f, s lambda), via its closed form Y^f_{beta,...,beta}."""
    if beta_of(f, n, twice_s) is None:
        return 0
    return a_identity(f, n, twice_s)


def statistics_name(lam: Partition, n: int) -> str:
    if lam == Partition([n]):
        return "bose"
    if lam == Partition([1] * n):
        return "fermi"
    return "para"


@dataclass
class MultiplicityReport:
    f: Partition
    n: int
    admissible_spins: list[int]
    entries: dict[tuple[int, Partition], int] = field(default_factory=dict)
    definite_statistics: dict[int, bool] = field(default_factory=dict)
    max_residue: float = 0.0

    def occupied(self, twice_s: int) -> list[tuple[Partition, int]]:
        return [(lam, v) for (t, lam), v in self.entries.items() if t == twice_s and v > 0]

    def verdict(self, twice_s: int) -> str:
        occ = self.occupied(twice_s)
        if not occ:
            return "none"
        return "definite" if len(occ) == 1 else "broken"


def classify(f: Partition, n: int) -> MultiplicityReport:
    validate_fn(f, n)
    report = MultiplicityReport(f=f, n=n, admissible_spins=admissible_spins(f, n))
    lams = irreps(n)
    for t in report.admissible_spins:
        for lam in lams:
            v, res = nu_with_residue(Problem(f, n, t, lam))
            report.entries[(t, lam)] = v
            report.max_residue = max(report.max_residue, res)
        report.definite_statistics[t] = report.verdict(t) == "definite"
    return report


def weighted_sum(report: MultiplicityReport, twice_s: int) -> int:
    return sum(sn_dimension(lam) * v for (t, lam), v in report.entries.items() if t == twice_s)


def dimension_count(report: MultiplicityReport) -> int:
    """sum over (s, lambda) of (2s+1)^n d_lambda nu."""
    return sum((t + 1) ** report.n * sn_dimension(lam) * v for (t, lam), v in report.entries.items())
