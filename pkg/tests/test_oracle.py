import itertools
from math import prod

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from spinstat.engine import Problem, a_identity, admissible_spins, classify, dimension_count, nu
from spinstat.errors import InvalidProblem, NonIntegerResult
from spinstat.oracle import (
    LengthMismatch,
    QuadratureSpec,
    class_integrals,
    class_integrals_direct,
    count_ssyt,
    default_nodes,
    eigenphases_x,
    equal_spin_dim,
    kostka,
    nu_oracle,
    nu_oracle_value,
    nu_oracle_with_residue,
    oracle_values,
    schur_eval,
    x_f_char,
    x_slambda_char,
    zero_weight_dim,
)
from spinstat.symgroup import conjugacy_classes, irreps, sn_dimension
from spinstat.tableaux import EMPTY, Partition, partitions_of
from strategies import partitions

P = Partition


def test_eigenphases_identity_class():
    ph = eigenphases_x(P((1, 1)), [0.3, 0.5], [0.1, -0.1])
    expected = np.array([0.4, -0.2, 0.4, -0.6]) + 2 * np.pi
    assert np.allclose(ph, expected)


def test_eigenphases_two_cycle():
    xi, th = 0.7, 0.2
    ph = eigenphases_x(P((2,)), [xi], [th])
    expected = [(s * xi + th + 2 * np.pi * p) / 2 for p in (1, 2) for s in (1, -1)]
    assert np.allclose(ph, expected)


def test_eigenphases_length_and_errors():
    for n in range(2, 6):
        for cd in conjugacy_classes(n):
            c = cd.cycle_type.cycle_count
            assert eigenphases_x(cd.cycle_type, [0.1] * c, [0.2] * c).shape == (2 * n,)
    with pytest.raises(LengthMismatch):
        eigenphases_x(P((2, 1)), [0.1], [0.1, 0.2])


def test_schur_examples():
    rng = np.random.default_rng(3)
    phi = rng.uniform(0, 2 * np.pi, 5)
    assert np.isclose(schur_eval(P((1,)), phi), np.exp(1j * phi).sum())
    assert np.isclose(schur_eval(P((2, 1)), np.zeros(3)), 8)
    a, b = 0.4, 1.9
    assert np.isclose(schur_eval(P((1, 1)), [a, b]), np.exp(1j * (a + b)))
    assert schur_eval(EMPTY, phi) == 1
    assert schur_eval(P((1, 1, 1)), [0.0, 0.0]) == 0


def _hook_content(f, m):
    num = prod(m + j - i for i, r in enumerate(f) for j in range(r))
    den = prod(r - j + sum(1 for rr in f[i + 1:] if rr > j) for i, r in enumerate(f) for j in range(r))
    return num // den


def test_schur_at_identity_counts_tableaux():
    for size in range(7):
        for f in partitions_of(size):
            for m in range(1, 7):
                val = schur_eval(f, np.zeros(m))
                assert abs(val - count_ssyt(f, m)) < 1e-8
                assert count_ssyt(f, m) == (_hook_content(f, m) if len(f) <= m else 0)


def test_schur_matches_monomial_expansion():
    # s_f(x) = sum over contents mu of K_{f,mu} x^mu
    rng = np.random.default_rng(4)
    for m in (2, 3, 4):
        phi = rng.uniform(0, 2 * np.pi, m)
        z = np.exp(1j * phi)
        for size in range(1, 5):
            for f in partitions_of(size, m):
                expected = sum(
                    kostka(f, mu) * np.prod(z ** np.array(mu))
                    for mu in itertools.product(range(size + 1), repeat=m)
                    if sum(mu) == size
                )
                assert abs(schur_eval(f, phi) - expected) < 1e-9


@settings(max_examples=50, deadline=None)
@given(partitions(7, max_rows=6), st.integers(0, 10**6))
def test_schur_permutation_invariance(f, seed):
    rng = np.random.default_rng(seed)
    phi = rng.uniform(0, 2 * np.pi, 6)
    assert abs(schur_eval(f, phi) - schur_eval(f, rng.permutation(phi))) < 1e-10


@settings(max_examples=40, deadline=None)
@given(partitions(7, max_rows=5), st.integers(0, 10**6))
def test_dual_form_agrees(f, seed):
    # the e-form for the conjugate shape is the same function as the h-form
    from spinstat.oracle import complete_homogeneous, det_entries

    rng = np.random.default_rng(seed)
    phi = rng.uniform(0, 2 * np.pi, 5)
    if not f:
        return
    rows = len(f)
    h = complete_homogeneous(np.exp(1j * phi)[None, :], f[0] + rows)
    zero = np.zeros_like(h[0])
    mat = [[h[f[i] - i + j] if f[i] - i + j >= 0 else zero for j in range(rows)] for i in range(rows)]
    direct = mat[0][0] if rows == 1 else det_entries(mat)
    assert abs(direct[0] - schur_eval(f, phi)) < 1e-9


def test_x_slambda_char():
    rng = np.random.default_rng(5)
    xi = rng.uniform(0, 2 * np.pi, 3)
    for lam in irreps(3):
        for t in range(4):
            assert x_slambda_char(lam, t, P((1, 1, 1)), [0, 0, 0]) == sn_dimension(lam) * (t + 1) ** 3
        assert x_slambda_char(P((2, 1)), 1, P((2, 1)), xi[:2]) == 0
    assert np.isclose(x_slambda_char(P((3,)), 1, P((3,)), [xi[0]]), 2 * np.cos(xi[0]))


def test_x_slambda_real_on_grid():
    grid = 2 * np.pi * np.arange(11) / 11
    for lam in irreps(3):
        for cd in conjugacy_classes(3):
            c = cd.cycle_type.cycle_count
            vals = x_slambda_char(lam, 3, cd.cycle_type, np.meshgrid(*[grid] * c))
            assert np.max(np.abs(np.imag(vals))) < 1e-12


def test_x_f_char_identity_is_dimension():
    for n in (2, 3):
        for f in partitions_of(4, 2 * n):
            assert abs(x_f_char(f, n, P([1] * n), [0] * n, [0] * n) - count_ssyt(f, 2 * n)) < 1e-8


def test_x_f_char_two_cycle_against_monomials():
    phases = eigenphases_x(P((2,)), [0.0], [np.pi])
    z = np.exp(1j * phases)
    h2 = sum(z[i] * z[j] for i in range(4) for j in range(i, 4))
    assert abs(x_f_char(P((2,)), 2, P((2,)), [0.0], [np.pi]) - h2) < 1e-12
    assert abs(schur_eval(P((2,)), phases) - h2) < 1e-12


def test_x_f_char_guards():
    with pytest.raises(InvalidProblem):
        x_f_char(P((1,)), 1, P((1,)), [0], [0])
    with pytest.raises(LengthMismatch):
        x_f_char(P((1,)), 2, P((2,)), [0, 0], [0])


@pytest.mark.parametrize("n, nodes", [(2, 21), (3, 9)])
def test_table_path_matches_direct(n, nodes):
    # both paths form the same quadrature sum at any node count; the direct
    # meshgrid is exponential in the number of variables, so keep grids small
    for size in (n, 2 * n):
        for f in partitions_of(size, 2 * n):
            spins = admissible_spins(f, n)
            for cd in conjugacy_classes(n):
                fast = class_integrals(f, n, cd.cycle_type, spins, nodes)
                slow = class_integrals_direct(f, n, cd.cycle_type, spins, nodes)
                assert np.max(np.abs(np.asarray(fast) - np.asarray(slow))) < 1e-10


@pytest.mark.parametrize("nodes", [8, 9])
def test_folding_even_and_odd_grids(nodes):
    f = P((2, 1))
    for cd in conjugacy_classes(3):
        fast = class_integrals(f, 3, cd.cycle_type, [1], nodes)
        slow = class_integrals_direct(f, 3, cd.cycle_type, [1], nodes)
        assert np.max(np.abs(np.asarray(fast) - np.asarray(slow))) < 1e-10


def test_oracle_golden():
    assert nu_oracle(Problem(P((2,)), 2, 1, P((1, 1)))) == 1
    assert nu_oracle(Problem(P((2, 1)), 3, 1, P((2, 1)))) == 1
    assert nu_oracle(Problem(P((2, 1)), 3, 1, P((3,)))) == 0
    assert nu_oracle(Problem(P((2, 1)), 3, 1, P((1, 1, 1)))) == 0


FIXTURES = [
    (P((2,)), 2, 1, P((1, 1))),
    (P((1, 1)), 2, 1, P((2,))),
    (P((3, 2, 1)), 2, 1, P((2,))),
    (P((2, 1)), 3, 1, P((2, 1))),
    (P((4,)), 2, 2, P((2,))),
]


@pytest.mark.parametrize("f, n, t, lam", FIXTURES)
def test_quadrature_doubling_stable(f, n, t, lam):
    p = Problem(f, n, t, lam)
    base = default_nodes(f, n, t)
    v1 = nu_oracle_value(p, QuadratureSpec(base))
    v2 = nu_oracle_value(p, QuadratureSpec(2 * base))
    assert abs(v1 - v2) < 1e-9
    assert nu_oracle(p) == nu(p)


def test_starved_grid_detected():
    p = Problem(P((4,)), 2, 2, P((2,)))
    with pytest.raises(NonIntegerResult):
        nu_oracle_with_residue(p, QuadratureSpec(4))


def test_oracle_values_shape():
    vals = oracle_values(P((3, 1)), 2, [0, 2])
    assert set(vals) == {(t, lam) for t in (0, 2) for lam in irreps(2)}
    assert oracle_values(P((3, 1)), 2, []) == {}


def test_zero_weight_dim_examples():
    assert zero_weight_dim(P((2, 1)), 3) == 16
    for n in (2, 3):
        for t in range(1, 4):
            assert zero_weight_dim(P((n * t,)), n) == (t + 1) ** n
    assert zero_weight_dim(P((3,)), 2) == 0
    assert zero_weight_dim(P((2, 1)), 2) == 0


def test_kostka():
    assert kostka(P((2, 1)), [1, 1, 1]) == 2
    assert kostka(P((3, 2, 1)), [1] * 6) == 16
    assert kostka(P((2, 1)), [1, 2]) == 1
    assert kostka(P((2, 1)), [3]) == 0
    assert kostka(P((2,)), [-1, 3]) == 0
    assert kostka(EMPTY, []) == 1


def test_kostka_sums_to_ssyt_count():
    for size in range(1, 6):
        for f in partitions_of(size, 3):
            total = sum(kostka(f, mu) for mu in itertools.product(range(size + 1), repeat=3) if sum(mu) == size)
            assert total == count_ssyt(f, 3)


def test_equal_spin_sector():
    # (3,1) at n=2 also carries spins (1,0) and (0,1): 15 = 9 + 3 + 3
    f = P((3, 1))
    assert zero_weight_dim(f, 2) == 15
    assert equal_spin_dim(f, 2) == 9 == dimension_count(classify(f, 2))
    assert equal_spin_dim(P((2, 1)), 3) == 16


@pytest.mark.parametrize("n", [2, 3])
def test_equal_spin_dim_matches_identity_terms(n):
    for size in range(0, 9, n):
        for f in partitions_of(size, 2 * n):
            expected = sum((t + 1) ** n * a_identity(f, n, t) for t in admissible_spins(f, n))
            assert equal_spin_dim(f, n) == expected
            assert equal_spin_dim(f, n) <= zero_weight_dim(f, n)
