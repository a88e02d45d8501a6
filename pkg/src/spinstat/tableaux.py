"""Partitions (Young diagrams) and the small combinatorial helpers built on them."""

from __future__ import annotations

from functools import lru_cache
from typing import Iterable, Iterator


class NotWeaklyDecreasing(ValueError):
    """Raised when a row-length sequence increases somewhere."""


class Partition(tuple):
    """A Young diagram stored as its row lengths, without trailing zeros.

    Being a tuple, partitions hash, compare and slice like the plain row
    sequence, so they serve directly as memo keys.
    """

    def __new__(cls, parts: Iterable[int] = ()) -> "Partition":
        rows = [int(p) for p in parts]
        for i, p in enumerate(rows):
            if p < 0:
                raise ValueError(f"negative row length {p} in {rows}")
            if i and p > rows[i - 1]:
                raise NotWeaklyDecreasing(f"row {i} ({p}) exceeds row {i - 1} ({rows[i - 1]}) in {rows}")
        while rows and rows[-1] == 0:
            rows.pop()
        return super().__new__(cls, rows)

    @property
    def size(self) -> int:
        return sum(self)

    @property
    def rows(self) -> int:
        return len(self)

    def row(self, i: int) -> int:
        """Length of row ``i`` (zero past the last row)."""
        return self[i] if i < len(self) else 0

    def conjugate(self) -> "Partition":
        return conjugate(self)

    def __repr__(self) -> str:
        return f"Partition{tuple(self)!r}"

    def __str__(self) -> str:
        return format_partition(self)


EMPTY = Partition()


def make_partition(parts: Iterable[int]) -> Partition:
    return Partition(parts)


def conjugate(p: Partition) -> Partition:
    if not p:
        return EMPTY
    return Partition(sum(1 for r in p if r > j) for j in range(p[0]))


def partitions_of(k: int, max_rows: int | None = None, max_part: int | None = None) -> list[Partition]:
    """All partitions of ``k`` with at most ``max_rows`` rows, in descending lexicographic order."""
    if k < 0:
        return []
    rows = k if max_rows is None else max_rows
    part = k if max_part is None else max_part
    return list(_partitions(k, rows, part))


@lru_cache(maxsize=None)
def _partitions(k: int, max_rows: int, max_part: int) -> tuple[Partition, ...]:
    if k == 0:
        return (EMPTY,)
    if max_rows == 0:
        return ()
    out = []
    for first in range(min(k, max_part), 0, -1):
        for rest in _partitions(k - first, max_rows - 1, first):
            out.append(Partition((first, *rest)))
    return tuple(out)


def contains(outer: Partition, inner: Partition) -> bool:
    """True iff the diagram of ``inner`` fits inside ``outer``."""
    if len(inner) > len(outer):
        return False
    return all(a >= b for a, b in zip(outer, inner))


def hook_lengths(p: Partition) -> Iterator[int]:
    conj = conjugate(p)
    for i, r in enumerate(p):
        for j in range(r):
            yield (r - j - 1) + (conj[j] - i - 1) + 1


def parse_partition(text: str) -> Partition:
    """Parse the comma-separated row syntax; ``"0"`` (or an empty string) is the empty diagram."""
    text = text.strip()
    if text in ("", "0", "()"):
        return EMPTY
    try:
        rows = [int(tok) for tok in text.strip("()[] ").split(",") if tok.strip()]
    except ValueError as exc:
        raise ValueError(f"cannot parse partition {text!r}") from exc
    return Partition(rows)


def format_partition(p: Partition) -> str:
    return ",".join(map(str, p)) if p else "0"


def format_spin(twice_s: int) -> str:
    """Render a twice-spin as ``"1/2"``, ``"1"``, ``"3/2"``..."""
    return str(twice_s // 2) if twice_s % 2 == 0 else f"{twice_s}/2"
