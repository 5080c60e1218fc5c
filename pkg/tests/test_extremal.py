import numpy as np
import pytest
from numpy.polynomial import chebyshev as cheb
from scipy.optimize import linprog

from bernstein_lab import Polynomial, bernstein_bound_check, extremal_polynomial, sup_norm
from bernstein_lab.errors import SetError
from bernstein_lab.extremal import ChebyshevBasis, RecurrenceBasis, lobatto_nodes, local_maxima
from conftest import CANTOR2, PAIR, SEGMENT, UNEVEN
from oracles import chebyshev_t


def T(n, E=SEGMENT):
    return Polynomial.on_hull(E, np.eye(n + 1)[n])


def test_sup_norm_examples():
    assert sup_norm(SEGMENT, T(4)) == pytest.approx(1.0, abs=1e-15)
    assert sup_norm(SEGMENT, Polynomial.on_hull(SEGMENT, [-2.5])) == pytest.approx(2.5)
    assert sup_norm(PAIR, Polynomial.on_hull(PAIR, [0.0, 1.0])) == pytest.approx(1.0)


def test_sup_norm_finds_interior_peak():
    # p = 1 - 4(x - 0.3)^2 on [-1, 1]; peak 1 at 0.3, value at -1 is -5.76
    p = Polynomial(cheb.chebfromroots([0.3 - 0.5, 0.3 + 0.5]) * -4, ChebyshevBasis((-1.0, 1.0)))
    assert sup_norm(SEGMENT, p) == pytest.approx(5.76, rel=1e-13)
    q = Polynomial(np.array([0.0, 0.0, 0.0, 1.0]) * 0.25, ChebyshevBasis((-1.0, 1.0)))
    xs, vals = local_maxima(SEGMENT, q)
    assert vals.max() == pytest.approx(0.25, rel=1e-14)


def test_polynomial_evaluation_matches_closed_form():
    x = np.linspace(-1, 1, 17)
    assert T(5)(x) == pytest.approx(chebyshev_t(5, x), abs=1e-14)
    assert T(4).deriv(0.5) == pytest.approx(32 * 0.125 - 16 * 0.5)


def test_bound_check_examples():
    h = 1 / np.sqrt(0.75)
    assert bernstein_bound_check(SEGMENT, 0.5, T(4), h) == pytest.approx(4 * h - 4, abs=1e-12)
    assert bernstein_bound_check(SEGMENT, 0.0, Polynomial.on_hull(SEGMENT, [1.0]), 1.0) == 0.0
    assert bernstein_bound_check(SEGMENT, 0.0, T(3), 1.0) == pytest.approx(0.0, abs=1e-12)


def test_recurrence_basis_is_orthonormal_on_nodes():
    basis = RecurrenceBasis.for_set(PAIR, 12)
    k = 4 * 12 + 8
    k = max(k, 64)
    theta = (np.arange(k) + 0.5) * np.pi / k
    x = np.concatenate([0.5 * (a + b) + 0.5 * (b - a) * np.cos(theta) for a, b in PAIR.intervals])
    V = basis.vander(x, 12) / np.sqrt(x.size)
    assert V.T @ V == pytest.approx(np.eye(13), abs=1e-12)


def test_recurrence_derivative_by_finite_difference():
    basis = RecurrenceBasis.for_set(UNEVEN, 6)
    x, eps = 2.7, 1e-6
    fd = (basis.vander(x + eps, 6) - basis.vander(x - eps, 6)) / (2 * eps)
    assert basis.vander_deriv(x, 6) == pytest.approx(fd, rel=1e-6, abs=1e-6)


def test_to_chebyshev_roundtrip():
    basis = RecurrenceBasis.for_set(PAIR, 5)
    p = Polynomial(np.arange(1.0, 7.0), basis)
    q = p.to_chebyshev((-1.0, 1.0))
    x = np.linspace(-1, 1, 11)
    assert q(x) == pytest.approx(p(x), rel=1e-11, abs=1e-11)
    assert np.polynomial.Polynomial(q.to_power_basis())(x) == pytest.approx(p(x), rel=1e-10, abs=1e-10)


@pytest.mark.parametrize("n", [1, 3, 7, 15, 31])
def test_extremal_segment_odd_degrees(n):
    res = extremal_polynomial(SEGMENT, 0.0, n)
    assert res.value == pytest.approx(n, rel=1e-8)
    assert res.ratio == pytest.approx(1.0, abs=1e-8)
    assert res.certified_norm == pytest.approx(1.0, abs=1e-9)
    x = np.linspace(-1, 1, 201)
    p = res.poly(x)
    assert np.min(np.abs(p - chebyshev_t(n, x)), initial=0) < 1e-6 or np.allclose(np.abs(p), np.abs(chebyshev_t(n, x)), atol=1e-6)


def test_extremal_segment_even_degree():
    # even n: T_n'(0) = 0 and the best value is n - 1
    res = extremal_polynomial(SEGMENT, 0.0, 8)
    assert res.value == pytest.approx(7.0, rel=1e-8)


def test_extremal_degree_zero():
    res = extremal_polynomial(PAIR, 0.75, 0)
    assert res.value == 0.0 and res.ratio == 0.0


def test_extremal_rejects_non_interior():
    with pytest.raises(SetError):
        extremal_polynomial(PAIR, 0.5, 4)
    with pytest.raises(SetError):
        extremal_polynomial(PAIR, 0.0, 4)


@pytest.mark.parametrize("n", [4, 8, 12, 16, 24])
def test_extremal_pair_bracketed_by_highs(n):
    # HiGHS on a fixed fine grid gives an upper bound (|p| <= 1 only at nodes);
    # rescaling its solution by the true sup-norm gives a lower bound.
    grid = np.concatenate([lobatto_nodes(a, b, 2000) for a, b in PAIR.intervals])
    A = cheb.chebvander(grid, n)
    c = np.array([cheb.chebval(0.75, cheb.chebder(np.eye(n + 1)[k])) for k in range(n + 1)])
    ref = linprog(-c, A_ub=np.vstack([A, -A]), b_ub=np.ones(2 * A.shape[0]), bounds=[(None, None)] * (n + 1),
                  method="highs")
    upper = -ref.fun
    lower = upper / sup_norm(PAIR, Polynomial.on_hull(PAIR, ref.x))
    res = extremal_polynomial(PAIR, 0.75, n)
    assert lower * (1 - 1e-9) <= res.value <= upper * (1 + 1e-9)
    assert res.value == pytest.approx(upper, rel=1e-5)


def test_extremal_grid_independent():
    a = extremal_polynomial(PAIR, 0.75, 16)
    b = extremal_polynomial(PAIR, 0.75, 16, grid_per_interval=2 * (4 * 16 + 4))
    assert a.value == pytest.approx(b.value, rel=1e-8)


def test_extremal_cantor_respects_bound():
    res = extremal_polynomial(CANTOR2, 1 / 18, 10)
    assert 0 < res.ratio <= 1 + 1e-6
    assert res.certified_norm <= 1 + 1e-9


def test_grid_too_coarse():
    with pytest.raises(ValueError):
        extremal_polynomial(SEGMENT, 0.0, 10, grid_per_interval=20)
