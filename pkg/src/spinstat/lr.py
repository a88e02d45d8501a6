"""Littlewood-Richardson coefficients, two-fold and c-fold.

Two-fold coefficients count LR skew tableaux: semistandard fillings of
gamma/alpha with content beta whose reverse reading word (rows top to
bottom, each row right to left) is a lattice word.  The c-fold coefficients
are built by multiplying the factors in one at a time while discarding every
intermediate shape that does not fit inside the target.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Iterator, Sequence

from .tableaux import EMPTY, Partition, contains


def lr_coefficient(gamma: Partition, alpha: Partition, beta: Partition) -> int:
    if gamma.size != alpha.size + beta.size:
        return 0
    if not (contains(gamma, alpha) and contains(gamma, beta)):
        return 0
    return _lr(tuple(gamma), tuple(alpha), tuple(beta))


@lru_cache(maxsize=None)
def _lr(gamma: tuple[int, ...], alpha: tuple[int, ...], beta: tuple[int, ...]) -> int:
    if not beta:
        return 1
    nletters = len(beta)
    g = Partition(gamma)
    a = Partition(alpha)

    def fill(r: int, above: dict[int, int], counts: tuple[int, ...]) -> int:
        if r == len(g):
            return 1 if list(counts) == list(beta) else 0
        lo, hi = a.row(r), g.row(r)
        total = 0
        for row in _row_fillings(lo, hi, min(r + 1, nletters), above, counts, beta):
            new_counts = list(counts)
            for letter in row.values():
                new_counts[letter - 1] += 1
            total += fill(r + 1, row, tuple(new_counts))
        return total

    return fill(0, {}, (0,) * nletters)


def _row_fillings(
    lo: int,
    hi: int,
    max_letter: int,
    above: dict[int, int],
    counts: Sequence[int],
    content: Sequence[int],
) -> Iterator[dict[int, int]]:
    """Weakly increasing fillings of columns lo..hi-1 of one row.

    Yields column -> letter maps satisfying column strictness against the
    row above, the content budget, and the lattice condition when the row is
    read right to left after all previous rows.
    """
    width = hi - lo
    mult = [0] * (max_letter + 1)

    def place(letter: int, col: int) -> Iterator[dict[int, int]]:
        if col == hi:
            # read right to left: larger letters first, so letter k is
            # compared with the count of k-1 from earlier rows only
            for k in range(2, max_letter + 1):
                if counts[k - 1] + mult[k] > counts[k - 2]:
                    return
            row = {}
            c = lo
            for k in range(1, max_letter + 1):
                for _ in range(mult[k]):
                    row[c] = k
                    c += 1
            yield row
            return
        if letter > max_letter:
            return
        budget = content[letter - 1] - counts[letter - 1]
        # columns col..col+m-1 get `letter`; each needs a strictly smaller entry above
        m = 0
        while True:
            mult[letter] = m
            yield from place(letter + 1, col + m)
            if m == budget or col + m == hi or above.get(col + m, 0) >= letter:
                break
            m += 1
        mult[letter] = 0

    if width == 0:
        yield {}
        return
    yield from place(1, lo)


def shapes_between(inner: Partition, outer: Partition, size: int) -> list[Partition]:
    """Partitions mu with inner <= mu <= outer (diagram containment) and |mu| = size."""
    if not contains(outer, inner) or not inner.size <= size <= outer.size:
        return []
    out: list[Partition] = []
    rows = len(outer)

    def build(i: int, prefix: list[int], remaining: int) -> None:
        if i == rows:
            if remaining == 0:
                out.append(Partition(prefix))
            return
        cap = outer[i] if i == 0 else min(outer[i], prefix[-1])
        tail_room = sum(outer[j] for j in range(i + 1, rows))
        for v in range(min(cap, remaining), inner.row(i) - 1, -1):
            if remaining - v > tail_room:
                break
            prefix.append(v)
            build(i + 1, prefix, remaining - v)
            prefix.pop()

    build(0, [], size)
    return out


def multiply_into(products: dict[Partition, int], factor: Partition, bound: Partition) -> dict[Partition, int]:
    """Multiply a truncated product of Schur functions by one more factor.

    ``products`` maps shapes to coefficients; only shapes contained in
    ``bound`` are kept, which loses nothing for the coefficient of ``bound``.
    """
    out: dict[Partition, int] = {}
    for delta, coeff in products.items():
        target = delta.size + factor.size
        for mu in shapes_between(delta, bound, target):
            c = lr_coefficient(mu, delta, factor)
            if c:
                out[mu] = out.get(mu, 0) + coeff * c
    return out


def lr_multi(gamma: Partition, factors: Sequence[Partition]) -> int:
    """c-fold coefficient Y^gamma_{beta_1..beta_c}; zero unless sizes add up."""
    if not factors:
        raise ValueError("lr_multi needs at least one factor")
    if sum(f.size for f in factors) != gamma.size:
        return 0
    if not all(contains(gamma, f) for f in factors):
        return 0
    return _lr_multi(gamma, tuple(factors))


@lru_cache(maxsize=None)
def _lr_multi(gamma: Partition, factors: tuple[Partition, ...]) -> int:
    products = {EMPTY: 1}
    for f in factors:
        products = multiply_into(products, f, gamma)
        if not products:
            return 0
    return products.get(gamma, 0)
