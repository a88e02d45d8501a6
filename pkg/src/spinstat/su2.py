"""SU(2) characters, U(2) spin labels, and multi-fold Clebsch-Gordan multiplicities.

Spins are carried as the integer ``twice_s`` throughout.
"""

from __future__ import annotations

from functools import lru_cache
from typing import NamedTuple, Sequence

import numpy as np


class U2Tableau(NamedTuple):
    row1: int
    row2: int = 0

    @property
    def size(self) -> int:
        return self.row1 + self.row2

    @property
    def twice_spin(self) -> int:
        return self.row1 - self.row2


def su2_character(twice_s: int, psi):
    """sin((2s+1) psi) / sin(psi) as the finite sum over m = -s..s of e^{2 i m psi}.

    Pairing m with -m gives a real sum of cosines with no singularity at
    sin(psi) = 0.  Accepts scalars or numpy arrays.
    """
    psi = np.asarray(psi, dtype=float)
    out = np.zeros_like(psi)
    # 2m runs over -2s, -2s+2, ..., 2s
    for two_m in range(-twice_s, twice_s + 1, 2):
        out = out + np.cos(two_m * psi)
    return out if out.ndim else float(out)


def spin_of_u2(alpha: Sequence[int]) -> int:
    """Twice the spin of a U(2) tableau: row1 - row2."""
    rows = tuple(alpha) + (0, 0)
    if len(alpha) > 2:
        raise ValueError(f"U(2) tableaux have at most two rows, got {tuple(alpha)}")
    return rows[0] - rows[1]


def triangle_cg(s1: int, s2: int, s3: int) -> int:
    """C(s1, s2, s3) for twice-spins: 1 iff triangle inequality and integral total spin."""
    if (s1 + s2 + s3) % 2:
        return 0
    return int(abs(s1 - s2) <= s3 <= s1 + s2)


def multi_cg(spins: Sequence[int]) -> int:
    """Multiplicity of the trivial representation in the product of the given spins."""
    if not spins:
        raise ValueError("multi_cg needs at least one spin")
    if any(s < 0 for s in spins):
        raise ValueError(f"twice-spins must be nonnegative, got {tuple(spins)}")
    # the defining integral is symmetric in its arguments
    return _multi_cg(tuple(sorted(spins, reverse=True)))


@lru_cache(maxsize=None)
def _multi_cg(spins: tuple[int, ...]) -> int:
    r = len(spins)
    if r == 1:
        return int(spins[0] == 0)
    if r == 2:
        return int(spins[0] == spins[1])
    if sum(spins) % 2:
        return 0
    head, a, b = spins[:-2], spins[-2], spins[-1]
    # C(s1..s_{r-2}, s, ...) recursion; s must share the parity of sum(head)
    total = 0
    for s in range(sum(head) % 2, sum(head) + 1, 2):
        t = triangle_cg(s, a, b)
        if t:
            total += _multi_cg(tuple(sorted(head + (s,), reverse=True))) * t
    return total


def cg_integral(spins: Sequence[int], nodes: int | None = None) -> float:
    """(1/pi) * integral over [0, 2pi) of sin^2(psi) prod chi^{s_i}(psi), by the trapezoid rule.

    The integrand is a trigonometric polynomial, so a uniform grid with more
    nodes than its bandwidth is exact; used only to cross-check :func:`multi_cg`.
    """
    if nodes is None:
        nodes = 4 * (sum(spins) + 2)
    psi = 2 * np.pi * np.arange(nodes) / nodes
    vals = np.sin(psi) ** 2
    for s in spins:
        vals = vals * su2_character(s, psi)
    return float(2 * vals.mean())
