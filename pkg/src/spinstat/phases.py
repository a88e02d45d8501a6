"""Exact integer combinations of roots of unity.

A :class:`PhaseSum` is a finite sum  sum_k c_k exp(2 pi i t_k)  with integer
coefficients c_k and rational turns t_k in [0, 1).  Products and sums stay
exact; conversion to a complex float happens once, in :meth:`to_complex`.
The representation is not canonical (1 + w + w^2 is stored as three terms),
so compare values through :meth:`to_complex`.
"""

from __future__ import annotations

import cmath
from fractions import Fraction
from typing import Iterable


class PhaseSum:
    __slots__ = ("terms",)

    def __init__(self, terms: dict[Fraction, int] | None = None):
        self.terms: dict[Fraction, int] = {}
        if terms:
            for t, c in terms.items():
                self.add_term(c, t)

    @classmethod
    def root(cls, k: int, m: int, coeff: int = 1) -> "PhaseSum":
        """coeff * exp(2 pi i k / m)."""
        return cls({Fraction(k % m, m): coeff})

    @classmethod
    def integer(cls, value: int) -> "PhaseSum":
        return cls({Fraction(0): value})

    def add_term(self, coeff: int, turn: Fraction) -> None:
        if not coeff:
            return
        turn = turn - (turn.numerator // turn.denominator)
        c = self.terms.get(turn, 0) + coeff
        if c:
            self.terms[turn] = c
        else:
            self.terms.pop(turn, None)

    def __iadd__(self, other: "PhaseSum") -> "PhaseSum":
        for t, c in other.terms.items():
            self.add_term(c, t)
        return self

    def __add__(self, other: "PhaseSum") -> "PhaseSum":
        out = PhaseSum(self.terms)
        out += other
        return out

    def __mul__(self, other: "PhaseSum | int") -> "PhaseSum":
        if isinstance(other, int):
            return PhaseSum({t: c * other for t, c in self.terms.items()})
        out = PhaseSum()
        for t1, c1 in self.terms.items():
            for t2, c2 in other.terms.items():
                out.add_term(c1 * c2, t1 + t2)
        return out

    __rmul__ = __mul__

    def __bool__(self) -> bool:
        return bool(self.terms)

    def to_complex(self) -> complex:
        return sum(
            (c * cmath.exp(2j * cmath.pi * t) for t, c in sorted(self.terms.items())),
            0j,
        )

    def __repr__(self) -> str:
        body = " + ".join(f"{c}*e(2pi i {t})" for t, c in sorted(self.terms.items()))
        return f"PhaseSum({body or '0'})"


def total(parts: Iterable[PhaseSum]) -> PhaseSum:
    out = PhaseSum()
    for p in parts:
        out += p
    return out
