"""Polynomials on E: sup-norms, the sharp Bernstein bound, and near-extremal
polynomials for p'(x0) under |p| <= 1 on E.

The extremal problem is a semi-infinite LP. It is discretized on Lobatto
grids per interval in a basis orthonormal on E, solved by the dense simplex, and then refined by an
exchange step: local maxima of |p| that exceed 1 are added to the grid until
the true sup-norm on E is within round-off of 1.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numpy.polynomial import chebyshev as cheb

from .bernstein import green_for, normal_derivative
from .config import DEFAULT, Tolerances
from .errors import NumericalInconsistency, SetError
from .sets import Location, RealCompactSet, classify_point
from .simplex import solve_bounded_lp

GOLDEN = (np.sqrt(5.0) - 1) / 2
EXCHANGE_TOL = 1e-9   # stop once the true sup-norm of the LP solution is this close to 1


@dataclass(frozen=True, eq=False)
class ChebyshevBasis:
    """T_k((2x - a - b)/(b - a)) on the interval ``domain`` = (a, b)."""

    domain: tuple[float, float]

    def _u(self, x):
        a, b = self.domain
        return (2 * np.asarray(x, dtype=float) - (a + b)) / (b - a)

    def vander(self, x, n: int) -> np.ndarray:
        return cheb.chebvander(self._u(x), n)

    def vander_deriv(self, x, n: int) -> np.ndarray:
        a, b = self.domain
        u = self._u(x)
        cols = [cheb.chebval(u, cheb.chebder(np.eye(n + 1)[k])) for k in range(n + 1)]
        return np.stack(np.broadcast_arrays(*cols), axis=-1) * 2 / (b - a)


@dataclass(frozen=True, eq=False)
class RecurrenceBasis:
    """Polynomials q_k orthonormal for a discrete measure on E.

    x q_k = beta_{k+1} q_{k+1} + alpha_k q_k + beta_k q_{k-1}, q_0 = 1/sqrt(mass).
    Coefficients in this basis stay O(1) for polynomials bounded on E, which
    Chebyshev coefficients on the hull do not when E has gaps.
    """

    alpha: np.ndarray
    beta: np.ndarray
    q0: float

    @classmethod
    def for_set(cls, E: RealCompactSet, n: int, per_interval: int | None = None) -> "RecurrenceBasis":
        """Lanczos (with full reorthogonalization) on arcsine-weighted Chebyshev nodes of each interval."""
        k = per_interval or max(4 * n + 8, 64)
        theta = (np.arange(k) + 0.5) * np.pi / k
        x = np.concatenate([0.5 * (a + b) + 0.5 * (b - a) * np.cos(theta) for a, b in E.intervals])
        sw = np.full(x.size, np.sqrt(1.0 / x.size))
        basis = [sw.copy()]
        alpha, beta = np.zeros(n + 1), np.zeros(n + 2)
        v_prev = np.zeros_like(sw)
        for j in range(n + 1):
            v = x * basis[-1] - beta[j] * v_prev
            alpha[j] = v @ basis[-1]
            v = v - alpha[j] * basis[-1]
            for _ in range(2):
                V = np.array(basis)
                v = v - V.T @ (V @ v)
            beta[j + 1] = np.linalg.norm(v)
            v_prev = basis[-1]
            basis.append(v / beta[j + 1])
        return cls(alpha, beta, 1.0)

    def vander(self, x, n: int) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        out = np.empty(x.shape + (n + 1,))
        prev, cur = np.zeros_like(x), np.full_like(x, self.q0)
        out[..., 0] = cur
        for k in range(n):
            prev, cur = cur, ((x - self.alpha[k]) * cur - self.beta[k] * prev) / self.beta[k + 1]
            out[..., k + 1] = cur
        return out

    def vander_deriv(self, x, n: int) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        out = np.empty(x.shape + (n + 1,))
        prev, cur = np.zeros_like(x), np.full_like(x, self.q0)
        dprev, dcur = np.zeros_like(x), np.zeros_like(x)
        out[..., 0] = 0.0
        for k in range(n):
            nxt = ((x - self.alpha[k]) * cur - self.beta[k] * prev) / self.beta[k + 1]
            dnxt = ((x - self.alpha[k]) * dcur + cur - self.beta[k] * dprev) / self.beta[k + 1]
            prev, cur, dprev, dcur = cur, nxt, dcur, dnxt
            out[..., k + 1] = dcur
        return out


@dataclass(frozen=True, eq=False)
class Polynomial:
    """Real polynomial of degree ``coeffs.size - 1`` in a fixed basis.

    The default basis is Chebyshev on the hull of E; extremal solutions come
    back in a basis orthonormal on E and convert with :meth:`to_chebyshev`.
    """

    coeffs: np.ndarray
    basis: ChebyshevBasis | RecurrenceBasis

    @property
    def degree(self) -> int:
        return self.coeffs.size - 1

    def __call__(self, x):
        if isinstance(self.basis, ChebyshevBasis):
            return cheb.chebval(self.basis._u(x), self.coeffs)
        return self.basis.vander(x, self.degree) @ self.coeffs

    def deriv(self, x):
        if isinstance(self.basis, ChebyshevBasis):
            a, b = self.basis.domain
            return cheb.chebval(self.basis._u(x), cheb.chebder(self.coeffs)) * 2 / (b - a)
        return self.basis.vander_deriv(x, self.degree) @ self.coeffs

    def scaled(self, factor: float) -> "Polynomial":
        return Polynomial(self.coeffs * factor, self.basis)

    def to_chebyshev(self, domain: tuple[float, float]) -> "Polynomial":
        if isinstance(self.basis, ChebyshevBasis) and self.basis.domain == tuple(domain):
            return self
        a, b = domain
        coeffs = cheb.chebinterpolate(lambda u: self(0.5 * (a + b) + 0.5 * (b - a) * u), self.degree)
        return Polynomial(coeffs, ChebyshevBasis(tuple(domain)))

    def to_power_basis(self) -> np.ndarray:
        """Ascending monomial coefficients in x."""
        if not isinstance(self.basis, ChebyshevBasis):
            raise TypeError("convert with to_chebyshev first")
        series = cheb.Chebyshev(self.coeffs, domain=list(self.basis.domain))
        return series.convert(kind=np.polynomial.Polynomial).coef

    @classmethod
    def on_hull(cls, E: RealCompactSet, coeffs) -> "Polynomial":
        return cls(np.asarray(coeffs, dtype=float), ChebyshevBasis(E.hull))


@dataclass(frozen=True, eq=False)
class ExtremalResult:
    poly: Polynomial
    value: float
    certified_norm: float
    ratio: float
    grid_size: int
    iterations: int
    pivots: int
    h: float


def lobatto_nodes(a: float, b: float, count: int) -> np.ndarray:
    k = np.arange(count)
    return 0.5 * (a + b) - 0.5 * (b - a) * np.cos(np.pi * k / (count - 1))


def _golden_max(f, lo: np.ndarray, hi: np.ndarray, iters: int = 80) -> tuple[np.ndarray, np.ndarray]:
    """Vectorized golden-section search for maxima of f on each [lo_i, hi_i]."""
    a, b = lo.copy(), hi.copy()
    c, d = b - GOLDEN * (b - a), a + GOLDEN * (b - a)
    fc, fd = f(c), f(d)
    for _ in range(iters):
        left = fc >= fd
        b = np.where(left, d, b)
        a = np.where(left, a, c)
        new_c = np.where(left, b - GOLDEN * (b - a), d)
        new_d = np.where(left, c, a + GOLDEN * (b - a))
        fnew = f(np.where(left, new_c, new_d))
        fc, fd = np.where(left, fnew, fd), np.where(left, fc, fnew)
        c, d = new_c, new_d
    x = np.where(fc >= fd, c, d)
    return x, f(x)


def local_maxima(E: RealCompactSet, p: Polynomial, per_interval: int | None = None, top: int | None = None):
    """Refined local maxima of |p| on each interval of E.

    Samples Lobatto nodes, keeps discrete local maxima (``top`` largest per
    interval if given), and polishes each with golden-section search between
    its neighbouring nodes. Returns (points, |p| values).
    """
    count = per_interval or 4 * p.degree + 16
    absp = lambda x: np.abs(p(x))
    lows, highs, xs_out, vals_out = [], [], [], []
    for a, b in E.intervals:
        x = lobatto_nodes(a, b, count)
        v = absp(x)
        padded = np.concatenate(([-np.inf], v, [-np.inf]))
        idx = np.nonzero((v >= padded[:-2]) & (v >= padded[2:]))[0]
        if top is not None:
            idx = idx[np.argsort(v[idx])[::-1][:top]]
        lows.append(x[np.maximum(idx - 1, 0)])
        highs.append(x[np.minimum(idx + 1, count - 1)])
        # the sampled maxima and the endpoints are candidates in their own right
        xs_out += [x[idx], x[[0, -1]]]
        vals_out += [v[idx], v[[0, -1]]]
    xr, vr = _golden_max(absp, np.concatenate(lows), np.concatenate(highs))
    return np.concatenate([xr] + xs_out), np.concatenate([vr] + vals_out)


def sup_norm(E: RealCompactSet, p: Polynomial) -> float:
    """max |p| over E (Chebyshev sampling plus golden-section polish of the top 3 per interval)."""
    _, vals = local_maxima(E, p, top=3)
    return float(vals.max())


def bernstein_bound_check(
    E: RealCompactSet, x0: float, p: Polynomial, h: float, norm: float | None = None
) -> float:
    """h * n * ||p||_E - |p'(x0)|; nonnegative for every real polynomial of degree n.

    Pass ``norm`` when the sup-norm is already known to skip recomputing it.
    """
    norm = sup_norm(E, p) if norm is None else norm
    return float(h * p.degree * norm - abs(p.deriv(x0)))


def extremal_polynomial(
    E: RealCompactSet,
    x0: float,
    n: int,
    grid_per_interval: int | None = None,
    h: float | None = None,
    max_exchanges: int = 40,
    tol: Tolerances = DEFAULT,
) -> ExtremalResult:
    """Near-extremal p in P_n for |p'(x0)| / ||p||_E, certified against the true sup-norm."""
    if classify_point(E, x0).location is not Location.INTERIOR:
        raise SetError(f"x0={x0!r} must be an interior point of E")
    if h is None:
        h = normal_derivative(green_for(E, tol), x0, tol.cauchy)
    if n == 0:
        return ExtremalResult(Polynomial.on_hull(E, [1.0]), 0.0, 1.0, 0.0, 0, 0, 0, h)
    count = grid_per_interval or 4 * n + 4
    if count < 4 * n:
        raise ValueError("grid_per_interval must be at least 4n")

    grid = np.concatenate([lobatto_nodes(a, b, count) for a, b in E.intervals])
    basis = RecurrenceBasis.for_set(E, n)
    objective = basis.vander_deriv(x0, n)
    pivots, warm = 0, None
    for it in range(1, max_exchanges + 1):
        lp = solve_bounded_lp(objective, basis.vander(grid, n), start_rows=warm)
        pivots += lp.pivots
        p = Polynomial(lp.x, basis)
        xs, vals = local_maxima(E, p, per_interval=max(count, 4 * n + 16))
        if vals.max() <= 1 + EXCHANGE_TOL:
            break
        basis_points = grid[lp.basis_rows]
        grid = np.union1d(grid, xs[vals > 1 + EXCHANGE_TOL])
        warm = np.searchsorted(grid, basis_points)
    norm = float(vals.max())
    p = p.scaled(1 / norm)
    value = float(p.deriv(x0))
    ratio = value / (h * n)
    if ratio > 1 + tol.ratio_ceiling:
        raise NumericalInconsistency(f"extremal ratio {ratio!r} exceeds the sharp bound; h or the norm is wrong")
    return ExtremalResult(p, value, sup_norm(E, p), ratio, grid.size, it, pivots, h)
