"""Conjugacy classes and irreducible characters of the symmetric group S_n."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from math import factorial, prod

from .tableaux import Partition, hook_lengths, partitions_of

MAX_N = 12


class SizeMismatch(ValueError):
    pass


@dataclass(frozen=True)
class CycleType:
    cycles: Partition

    @property
    def n(self) -> int:
        return self.cycles.size

    @property
    def cycle_count(self) -> int:
        return len(self.cycles)

    @property
    def sign(self) -> int:
        return -1 if (self.n - self.cycle_count) % 2 else 1

    @property
    def is_identity(self) -> bool:
        return all(c == 1 for c in self.cycles)

    def __str__(self) -> str:
        return "(" + ",".join(map(str, self.cycles)) + ")"


@dataclass(frozen=True)
class ClassData:
    cycle_type: CycleType
    class_size: int
    sign: int


def class_size(cycles: Partition) -> int:
    """n! / prod_k (k^{m_k} m_k!) for cycle multiplicities m_k."""
    mult = Counter(cycles)
    return factorial(sum(cycles)) // prod(k**m * factorial(m) for k, m in mult.items())


@lru_cache(maxsize=None)
def conjugacy_classes(n: int) -> tuple[ClassData, ...]:
    """One entry per cycle type of S_n, ordered lexicographically (identity first)."""
    if not 1 <= n <= MAX_N:
        raise ValueError(f"n must lie in 1..{MAX_N}, got {n}")
    types = sorted(partitions_of(n, n))
    return tuple(
        ClassData(CycleType(c), class_size(c), CycleType(c).sign)
        for c in types
    )


def sn_character(lam: Partition, cls: CycleType | Partition) -> int:
    """chi^lambda at the class with the given cycle type (Murnaghan-Nakayama)."""
    cycles = cls.cycles if isinstance(cls, CycleType) else Partition(cls)
    if lam.size != cycles.size:
        raise SizeMismatch(f"|lambda| = {lam.size} but the class lives in S_{cycles.size}")
    return _mn(tuple(lam), tuple(cycles))


@lru_cache(maxsize=None)
def _mn(lam: tuple[int, ...], cycles: tuple[int, ...]) -> int:
    if not cycles:
        return 1
    k, rest = cycles[0], cycles[1:]
    # beta-numbers: removing a k-rim hook moves one bead k places down
    length = len(lam)
    beads = [lam[i] + length - 1 - i for i in range(length)]
    occupied = set(beads)
    total = 0
    for idx, b in enumerate(beads):
        target = b - k
        if target < 0 or target in occupied:
            continue
        crossed = sum(1 for x in beads if target < x < b)
        moved = sorted((target if j == idx else x for j, x in enumerate(beads)), reverse=True)
        shape = [x - (length - 1 - i) for i, x in enumerate(moved)]
        while shape and shape[-1] == 0:
            shape.pop()
        total += (-1) ** crossed * _mn(tuple(shape), rest)
    return total


def sn_dimension(lam: Partition) -> int:
    """Hook-length formula."""
    return factorial(lam.size) // prod(hook_lengths(lam))


def irreps(n: int) -> list[Partition]:
    return partitions_of(n, n)
