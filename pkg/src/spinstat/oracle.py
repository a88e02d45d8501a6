"""Independent route to the multiplicities: the character integral itself.

Nothing here touches Littlewood-Richardson or Clebsch-Gordan machinery.  For
each class [sigma] the integral over SU(2)^n x (constrained torus) reduces to
one angle psi_b per cycle (SU(2) class angle, rescaled by the cycle length) and
one free torus angle per cycle but the last (the last is fixed by the
constraint that the phases multiply to sgn(sigma)).  The integrand is a
trigonometric polynomial in every variable, so a uniform product grid with
enough nodes integrates it exactly up to rounding.

SU(2n) characters are evaluated as Schur functions of the 2n eigenvalues via
power sums, Newton's identities and the Jacobi-Trudi determinant.

Eigenphase order: cycle by cycle, then p = 1..|cycle|, with the +xi phase
before the -xi phase.  Every consumer is symmetric, so any fixed order works.
"""

from __future__ import annotations

import functools
import itertools
import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .engine import Problem, round_multiplicity, validate_fn
from .errors import InvalidProblem, NonIntegerResult
from .su2 import su2_character
from .symgroup import CycleType, conjugacy_classes, irreps, sn_character
from .tableaux import Partition, conjugate

CHUNK_POINTS = 1 << 17


class LengthMismatch(ValueError):
    pass


@dataclass(frozen=True)
class QuadratureSpec:
    nodes_per_variable: int | None = None
    tolerance: float = 1e-6

    def nodes_for(self, f: Partition, n: int, twice_s: int) -> int:
        if self.nodes_per_variable is not None:
            return self.nodes_per_variable
        return default_nodes(f, n, twice_s)


def default_nodes(f: Partition, n: int, twice_s: int) -> int:
    """2(|f| + n(2s+1)) + 5, comfortably above the integrand's bandwidth."""
    return 2 * (f.size + n * (twice_s + 1)) + 5


def _cycles(cls: CycleType | Partition | Sequence[int]) -> tuple[int, ...]:
    if isinstance(cls, CycleType):
        return tuple(cls.cycles)
    return tuple(Partition(cls))


def eigenphases_x(cls, xi_hats: Sequence, theta_hats: Sequence) -> np.ndarray:
    """Eigenphases (+-xi_b + theta_b + 2 pi p) / |cycle_b| for p = 1..|cycle_b|.

    Angle arguments may be scalars or mutually broadcastable arrays; the
    phases are stacked on a new last axis of length 2n.
    """
    cycles = _cycles(cls)
    if len(xi_hats) != len(cycles) or len(theta_hats) != len(cycles):
        raise LengthMismatch(
            f"{len(cycles)} cycles but {len(xi_hats)} xi angles and {len(theta_hats)} theta angles"
        )
    xi = np.broadcast_arrays(*[np.asarray(x, dtype=float) for x in xi_hats], *[np.asarray(t, dtype=float) for t in theta_hats])
    xis, thetas = xi[: len(cycles)], xi[len(cycles):]
    phases = []
    for length, x, t in zip(cycles, xis, thetas):
        for p in range(1, length + 1):
            phases.append((x + t + 2 * np.pi * p) / length)
            phases.append((-x + t + 2 * np.pi * p) / length)
    return np.stack(phases, axis=-1)


def power_sums(phases: np.ndarray, kmax: int) -> list[np.ndarray]:
    """p_1..p_kmax of exp(i phi_j) over the last axis."""
    z = np.exp(1j * np.asarray(phases, dtype=float))
    out = []
    zk = np.ones_like(z)
    for _ in range(kmax):
        zk = zk * z
        out.append(zk.sum(axis=-1))
    return out


def complete_from_power_sums(p: Sequence[np.ndarray], kmax: int, sign: int = 1) -> list[np.ndarray]:
    """Newton's identities: k h_k = sum_{i=1..k} p_i h_{k-i}.

    With ``sign=-1`` this gives the elementary symmetric values instead:
    k e_k = sum_{i=1..k} (-1)^{i-1} p_i e_{k-i}.
    """
    shape = np.broadcast_shapes(*(np.shape(x) for x in p[:kmax])) if kmax else ()
    h = [np.ones(shape, dtype=complex)]
    for k in range(1, kmax + 1):
        acc = np.array(np.broadcast_to(p[0] * h[k - 1], shape), dtype=complex)
        for i in range(2, k + 1):
            if sign < 0 and i % 2 == 0:
                acc -= p[i - 1] * h[k - i]
            else:
                acc += p[i - 1] * h[k - i]
        acc /= k
        h.append(acc)
    return h


def complete_homogeneous(z: np.ndarray, kmax: int) -> list[np.ndarray]:
    """h_0..h_kmax of the unit-modulus variables on the last axis."""
    if kmax <= 0:
        return [np.ones(z.shape[:-1], dtype=complex)]
    return complete_from_power_sums(power_sums(np.angle(z), kmax), kmax)


def jacobi_trudi(f: Partition, p: Sequence[np.ndarray]) -> np.ndarray:
    """s_f from power sums p_1.. via det(h_{f_i - i + j}), or det(e_{f'_i - i + j}) when f' has fewer rows."""
    g = conjugate(f)
    dual = len(g) < len(f)
    shape_ = g if dual else f
    rows = len(shape_)
    kmax = shape_[0] + rows - 1
    h = complete_from_power_sums(p, kmax, sign=-1 if dual else 1)
    zero = np.zeros_like(h[0])
    mat = [[h[shape_[i] - i + j] if shape_[i] - i + j >= 0 else zero for j in range(rows)] for i in range(rows)]
    return mat[0][0] if rows == 1 else det_entries(mat)


def schur_kmax(f: Partition) -> int:
    """Highest power sum :func:`jacobi_trudi` needs (the same for f and its conjugate)."""
    return f[0] + len(f) - 1 if f else 0


def det_entries(mat: list[list[np.ndarray]]) -> np.ndarray:
    """Determinant of a batch of square matrices given entry-wise as batch arrays.

    Gaussian elimination with partial pivoting, vectorised over the batch.
    """
    size = len(mat)
    # entries are only ever rebound, never written in place, so views are fine
    m = [list(row) for row in mat]
    det = np.ones(np.broadcast_shapes(*(np.shape(e) for row in m for e in row)), dtype=complex)
    for k in range(size):
        if k + 1 < size:
            best = np.abs(m[k][k])
            piv = np.zeros(best.shape, dtype=np.intp)
            for i in range(k + 1, size):
                mag = np.abs(m[i][k])
                better = mag > best
                best = np.where(better, mag, best)
                piv = np.where(better, i, piv)
            for i in range(k + 1, size):
                mask = piv == i
                if not mask.any():
                    continue
                for j in range(k, size):
                    top, low = m[k][j], m[i][j]
                    m[k][j] = np.where(mask, low, top)
                    m[i][j] = np.where(mask, top, low)
                det = np.where(mask, -det, det)
        pivot = m[k][k]
        det = det * pivot
        safe = np.where(pivot == 0, 1, pivot)
        for i in range(k + 1, size):
            factor = m[i][k] / safe
            for j in range(k + 1, size):
                m[i][j] = m[i][j] - factor * m[k][j]
    return det


def _det(m: np.ndarray) -> np.ndarray:
    """Batched determinant over the last two axes (see :func:`det_entries`)."""
    m = np.asarray(m, dtype=complex)
    size = m.shape[-1]
    return det_entries([[m[..., i, j] for j in range(size)] for i in range(size)])


def schur_eval(f: Partition, phases) -> np.ndarray | complex:
    """U(m) character of ``f`` at eigenvalues exp(i phi_j), phases on the last axis.

    Jacobi-Trudi: det(h_{f_i - i + j}), which has no trouble with coincident
    eigenvalues.  Returns zero when f has more rows than there are phases.
    """
    phases = np.asarray(phases, dtype=float)
    scalar = phases.ndim == 1
    if scalar:
        phases = phases[None, :]
    rows = len(f)
    batch = phases.shape[:-1]
    if rows == 0:
        out = np.ones(batch, dtype=complex)
    elif rows > phases.shape[-1]:
        out = np.zeros(batch, dtype=complex)
    else:
        out = jacobi_trudi(f, power_sums(phases, schur_kmax(f)))
    return complex(out[0]) if scalar else out


def x_slambda_char(lam: Partition, twice_s: int, cls, xi_hats: Sequence):
    """chi^lambda(sigma) * prod_b chi^s(xi_b)."""
    cycles = _cycles(cls)
    if len(xi_hats) != len(cycles):
        raise LengthMismatch(f"{len(cycles)} cycles but {len(xi_hats)} xi angles")
    val = sn_character(lam, Partition(cycles))
    out = np.asarray(float(val))
    for x in xi_hats:
        out = out * su2_character(twice_s, x)
    return out if out.ndim else float(out)


def x_f_char(f: Partition, n: int, cls, xi_hats: Sequence, theta_hats: Sequence):
    """K^f_{2n} at the eigenphases of x(U, sigma, Theta).

    The caller fixes the theta angles so that they sum to arg sgn(sigma).
    Power sums are accumulated cycle by cycle, so each cycle's eigenphases are
    only formed on the broadcast shape of its own two angles.
    """
    validate_fn(f, n)
    cycles = _cycles(cls)
    if sum(cycles) != n:
        raise InvalidProblem(f"class {cycles} is not a cycle type of S_{n}")
    if len(xi_hats) != len(cycles) or len(theta_hats) != len(cycles):
        raise LengthMismatch(
            f"{len(cycles)} cycles but {len(xi_hats)} xi angles and {len(theta_hats)} theta angles"
        )
    shape = np.broadcast_shapes(*(np.shape(a) for a in (*xi_hats, *theta_hats)))
    if not f:
        return np.ones(shape, dtype=complex) if shape else 1 + 0j
    kmax = schur_kmax(f)
    p = None
    for length, x, t in zip(cycles, xi_hats, theta_hats):
        block = power_sums(eigenphases_x((length,), [x], [t]), kmax)
        p = block if p is None else [a + b for a, b in zip(p, block)]
    out = np.broadcast_to(jacobi_trudi(f, p), shape)
    return out if shape else complex(out)


def _psi_weights(cycles: Sequence[int], twice_spins: Sequence[int], grid: np.ndarray) -> np.ndarray:
    """(1/pi) sin^2(L psi) chi^s(L psi) * (2 pi / N): trapezoid weights per spin, cycle, node."""
    nodes = len(grid)
    return np.array([
        [2.0 / nodes * np.sin(L * grid) ** 2 * su2_character(t, L * grid) for L in cycles]
        for t in twice_spins
    ])


def _reduce(vals: np.ndarray, weights: np.ndarray, idx: tuple[int, ...], c: int) -> np.ndarray:
    """Average a chunk over its free theta axes (the trailing c-1) and contract the psi axes."""
    lead = len(idx)
    rest = vals.ndim
    if c > 1:
        vals = vals.mean(axis=tuple(range(rest - (c - 1), rest)))
    out = np.zeros(weights.shape[0], dtype=complex)
    for si in range(weights.shape[0]):
        v = vals
        for b in range(c - 1, lead - 1, -1):
            v = v @ weights[si, b]
        scale = 1.0
        for b in range(lead):
            scale *= weights[si, b, idx[b]]
        out[si] = scale * v
    return out


def _folded_psi(nodes: int) -> tuple[np.ndarray, np.ndarray]:
    """Representatives of psi-nodes under psi -> -psi, with their multiplicities.

    Both the SU(2) weight and K^f are even in every psi_b (negating psi_b
    swaps the +xi and -xi eigenphases of that cycle), so mirror nodes carry
    equal terms.  Node 0 has weight sin^2(0) = 0 and is dropped.
    """
    reps = np.arange(1, nodes // 2 + 1)
    mult = np.where(2 * reps == nodes, 1.0, 2.0)
    return reps, mult


def class_integrals(f: Partition, n: int, cls, twice_spins: Sequence[int], nodes: int) -> np.ndarray:
    """Per-class integral  int dU dTheta  prod_b chi^s(xi_b) K^f(mu), one value per spin.

    Variables: psi_b = xi_b / |cycle_b| for every cycle (weight
    sin^2(xi)/pi, rewritten in psi) and theta_b for all cycles but the last,
    on a uniform N-node grid each (psi folded onto [0, pi], see
    :func:`_folded_psi`).  The last cycle's angle is
    arg sgn(sigma) - sum theta_b, which on the grid is node (sum j_b) mod N
    of the reflected grid, so every cycle's power sums come from a small
    table.  Power sums add over cycles; Newton and Jacobi-Trudi finish each point.
    """
    validate_fn(f, n)
    cycles = _cycles(cls)
    if sum(cycles) != n:
        raise InvalidProblem(f"class {cycles} is not a cycle type of S_{n}")
    c = len(cycles)
    phi = 0.0 if CycleType(Partition(cycles)).sign > 0 else math.pi
    grid = 2 * np.pi * np.arange(nodes) / nodes
    reps, mult = _folded_psi(nodes)
    psi = grid[reps]
    weights = _psi_weights(cycles, twice_spins, grid)[:, :, reps] * mult
    m = len(reps)
    kmax = schur_kmax(f)

    tables = []
    for b, L in enumerate(cycles):
        if c == 1:
            thetas = np.array([phi])
        elif b == c - 1:
            thetas = phi - grid
        else:
            thetas = grid
        phases = eigenphases_x((L,), [L * psi[:, None]], [thetas[None, :]])
        tables.append(power_sums(phases, kmax))

    sizes = [m] * c + [nodes] * (c - 1)
    lead = 0
    while lead < c and math.prod(sizes[lead:]) > CHUNK_POINTS:
        lead += 1
    rest = len(sizes) - lead

    def axis(pos: int) -> np.ndarray:
        shape = [1] * rest
        shape[pos] = sizes[lead + pos]
        return np.arange(sizes[lead + pos]).reshape(shape)

    theta_idx = [axis(c - lead + b) for b in range(c - 1)]
    last_idx = sum(theta_idx) % nodes if c > 1 else np.zeros([1] * rest, dtype=int)
    totals = np.zeros(len(twice_spins), dtype=complex)
    for idx in itertools.product(range(m), repeat=lead):
        psi_idx = [idx[b] if b < lead else axis(b - lead) for b in range(c)]
        th_idx = [*theta_idx, last_idx]
        if kmax:
            p = [sum(tables[b][k][psi_idx[b], th_idx[b]] for b in range(c)) for k in range(kmax)]
            vals = jacobi_trudi(f, p)
        else:
            vals = np.ones(())
        vals = np.broadcast_to(vals, tuple(sizes[lead:]))
        totals += _reduce(vals, weights, idx, c)
    return totals


def class_integrals_direct(f: Partition, n: int, cls, twice_spins: Sequence[int], nodes: int) -> np.ndarray:
    """Same integral as :func:`class_integrals`, evaluating :func:`x_f_char` at every node."""
    cycles = _cycles(cls)
    c = len(cycles)
    phi = 0.0 if CycleType(Partition(cycles)).sign > 0 else math.pi
    grid = 2 * np.pi * np.arange(nodes) / nodes
    weights = _psi_weights(cycles, twice_spins, grid)
    dims = 2 * c - 1
    mesh = np.meshgrid(*([grid] * dims), indexing="ij")
    psis, thetas = mesh[:c], mesh[c:]
    last = phi - sum(thetas) if thetas else np.full(psis[0].shape, phi)
    vals = x_f_char(f, n, cycles, [L * a for L, a in zip(cycles, psis)], [*thetas, last])
    return _reduce(np.broadcast_to(vals, (nodes,) * dims), weights, (), c)


def oracle_values(
    f: Partition,
    n: int,
    twice_spins: Iterable[int],
    lams: Sequence[Partition] | None = None,
    nodes: int | None = None,
) -> dict[tuple[int, Partition], complex]:
    """Unrounded nu for every requested (spin, lambda), sharing one grid per class."""
    validate_fn(f, n)
    spins = list(twice_spins)
    if not spins:
        return {}
    lams = list(lams) if lams is not None else irreps(n)
    if nodes is None:
        nodes = max(default_nodes(f, n, t) for t in spins)
    out = {(t, lam): 0j for t in spins for lam in lams}
    for cd in conjugacy_classes(n):
        ints = class_integrals(f, n, cd.cycle_type, spins, nodes)
        for lam in lams:
            chi = sn_character(lam, cd.cycle_type)
            if not chi:
                continue
            for t, val in zip(spins, ints):
                out[(t, lam)] += cd.class_size * chi * val
    fact = math.factorial(n)
    return {k: v / fact for k, v in out.items()}


def nu_oracle_value(p: Problem, q: QuadratureSpec = QuadratureSpec()) -> complex:
    nodes = q.nodes_for(p.f, p.n, p.twice_s)
    return oracle_values(p.f, p.n, [p.twice_s], [p.lam], nodes)[(p.twice_s, p.lam)]


def nu_oracle_with_residue(p: Problem, q: QuadratureSpec = QuadratureSpec()) -> tuple[int, float]:
    return round_multiplicity(nu_oracle_value(p, q), q.tolerance, context=f"(oracle, {p})")


def nu_oracle(p: Problem, q: QuadratureSpec = QuadratureSpec()) -> int:
    return nu_oracle_with_residue(p, q)[0]


def zero_weight_dim(f: Partition, n: int) -> int:
    """Number of SSYT of shape f over 1..2n with count(2j-1) + count(2j) = |f|/n for each j."""
    validate_fn(f, n)
    if f.size % n:
        return 0
    q = f.size // n
    return count_ssyt(f, 2 * n, lambda letter, used: used[(letter - 1) // 2] < q, pairs=n)


def count_ssyt(shape: Partition, alphabet: int, allow=None, pairs: int | None = None) -> int:
    """Backtracking count of semistandard tableaux of ``shape`` with entries 1..alphabet.

    ``allow(letter, used)`` may veto a letter given the per-pair usage counts
    so far (used only by :func:`zero_weight_dim`).
    """
    cells = [(i, j) for i, r in enumerate(shape) for j in range(r)]
    filled: dict[tuple[int, int], int] = {}
    used = [0] * (pairs if pairs else 1)

    def go(k: int) -> int:
        if k == len(cells):
            return 1
        i, j = cells[k]
        lo = 1
        if j > 0:
            lo = max(lo, filled[(i, j - 1)])
        if i > 0:
            lo = max(lo, filled[(i - 1, j)] + 1)
        total = 0
        for v in range(lo, alphabet + 1):
            if allow is not None and not allow(v, used):
                continue
            filled[(i, j)] = v
            if pairs:
                used[(v - 1) // 2] += 1
            total += go(k + 1)
            if pairs:
                used[(v - 1) // 2] -= 1
        filled.pop((i, j), None)
        return total

    return go(0)


def kostka(shape: Partition, content: Sequence[int]) -> int:
    """Number of SSYT of ``shape`` with content ``content`` (order-independent)."""
    if any(c < 0 for c in content) or sum(content) != Partition(shape).size:
        return 0
    return _kostka(tuple(shape), tuple(sorted((c for c in content if c), reverse=True)))


@functools.lru_cache(maxsize=None)
def _kostka(shape: tuple[int, ...], content: tuple[int, ...]) -> int:
    # strip the largest letter as a horizontal strip of size content[-1]
    if not content:
        return 1 if not shape else 0
    k, rest = content[-1], content[:-1]
    total = 0

    def strip(i: int, left: int, inner: list[int]) -> None:
        nonlocal total
        if i == len(shape):
            if left == 0:
                total += _kostka(tuple(r for r in inner if r), rest)
            return
        below = shape[i + 1] if i + 1 < len(shape) else 0
        for take in range(min(left, shape[i] - below) + 1):
            inner.append(shape[i] - take)
            strip(i + 1, left - take, inner)
            inner.pop()

    strip(0, k, [])
    return total


def equal_spin_dim(f: Partition, n: int) -> int:
    """Dimension of the part of the zero-weight space where all n spins agree.

    The multiplicity of the U(2)^n irrep (beta, ..., beta) in f is the
    alternating sum over the U(2) Weyl group in each slot of weight
    multiplicities (Kostka numbers), so this needs no Littlewood-Richardson data.
    """
    validate_fn(f, n)
    if f.size % n:
        return 0
    q = f.size // n
    total = 0
    for t in range(q % 2, q + 1, 2):
        b1, b2 = (q + t) // 2, (q - t) // 2
        mult = sum(
            (-1) ** k * math.comb(n, k) * kostka(f, [b1, b2] * (n - k) + [b2 - 1, b1 + 1] * k)
            for k in range(n + 1)
        )
        total += (t + 1) ** n * mult
    return total


__all__ = [
    "LengthMismatch",
    "NonIntegerResult",
    "QuadratureSpec",
    "class_integrals",
    "count_ssyt",
    "default_nodes",
    "equal_spin_dim",
    "eigenphases_x",
    "kostka",
    "nu_oracle",
    "nu_oracle_value",
    "oracle_values",
    "schur_eval",
    "x_f_char",
    "x_slambda_char",
    "zero_weight_dim",
]
