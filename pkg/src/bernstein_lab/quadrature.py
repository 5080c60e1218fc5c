"""Quadrature rules for inverse-square-root endpoint weights, smooth integrands,
half-line tails and logarithmic kernels against Chebyshev series."""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Sequence

import numpy as np
from scipy import fft

from .errors import DivergenceError

DEFAULT_ORDER = 200


@dataclass(frozen=True)
class QuadratureResult:
    value: float
    error_estimate: float
    nodes_used: int


@dataclass(frozen=True)
class WindowConfig:
    """Controls for the geometric window scheme of :func:`integrate_to_infinity`."""

    initial: float = 1.0
    growth: float = 2.0
    tol: float = 1e-12
    order: int = 64
    max_windows: int = 90
    min_extent: float = 0.0


@lru_cache(maxsize=None)
def _legendre(n: int) -> tuple[np.ndarray, np.ndarray]:
    x, w = np.polynomial.legendre.leggauss(n)
    x.setflags(write=False)
    w.setflags(write=False)
    return x, w


@lru_cache(maxsize=None)
def _cheb_angles(n: int) -> np.ndarray:
    theta = (np.arange(n) + 0.5) * np.pi / n
    theta.setflags(write=False)
    return theta


def _as_values(f: Callable, x: np.ndarray) -> np.ndarray:
    return np.broadcast_to(np.asarray(f(x), dtype=float), x.shape)


def _check_interval(a: float, b: float) -> None:
    if not a < b:
        raise ValueError(f"need a < b, got a={a!r}, b={b!r}")


def integrate_sqrt_singular(f: Callable, a: float, b: float, order: int = DEFAULT_ORDER) -> QuadratureResult:
    """Integral of f(x)/sqrt((x-a)(b-x)) over [a, b].

    With x = mid + half*cos(theta) the weight disappears and the midpoint rule
    in theta (Gauss-Chebyshev) is exact for polynomial f of degree < 2*order.
    """
    _check_interval(a, b)
    if order < 8:
        raise ValueError("order must be at least 8")
    mid, half = 0.5 * (a + b), 0.5 * (b - a)

    def rule(n):
        theta = _cheb_angles(n)
        return np.pi / n * np.sum(_as_values(f, mid + half * np.cos(theta)))

    coarse, fine = rule(order), rule(2 * order)
    return QuadratureResult(float(fine), float(abs(fine - coarse)), 3 * order)


def _gauss(f: Callable, a: float, b: float, n: int) -> float:
    x, w = _legendre(n)
    mid, half = 0.5 * (a + b), 0.5 * (b - a)
    return float(half * np.dot(w, _as_values(f, mid + half * x)))


def integrate_smooth(f: Callable, a: float, b: float, order: int = DEFAULT_ORDER) -> QuadratureResult:
    """Gauss-Legendre value at 2*order nodes; error from the order-node rule."""
    _check_interval(a, b)
    coarse, fine = _gauss(f, a, b, order), _gauss(f, a, b, 2 * order)
    return QuadratureResult(fine, abs(fine - coarse), 3 * order)


def integrate_to_infinity(
    f: Callable,
    a: float,
    config: WindowConfig = WindowConfig(),
    breakpoints: Sequence[float] = (),
) -> QuadratureResult:
    """Integral of f over [a, inf) by windows of geometrically growing width.

    Stops once a window contributes less than ``config.tol`` (and the windows
    cover at least ``config.min_extent``); the last contribution is the error
    estimate. Windows are split at any ``breakpoints`` they contain. The
    first piece uses x = a + s^2, so an integrable sqrt-type endpoint at a
    costs no accuracy.
    """
    bps = sorted(float(p) for p in breakpoints if p > a)
    total, lo, width, used = 0.0, float(a), float(config.initial), 0
    for k in range(config.max_windows):
        hi = lo + width
        cuts = [lo] + [p for p in bps if lo < p < hi] + [hi]
        pieces = list(zip(cuts, cuts[1:]))
        piece = sum(_gauss(f, c0, c1, config.order) for c0, c1 in pieces[int(k == 0):])
        if k == 0:
            # x = a + s^2 on the first piece smooths sqrt-type behaviour at a
            c0, c1 = pieces[0]
            piece += _gauss(lambda s: f(c0 + s * s) * 2 * s, 0.0, np.sqrt(c1 - c0), config.order)
        used += config.order * (len(cuts) - 1)
        total += piece
        if abs(piece) < config.tol and hi - a >= config.min_extent:
            return QuadratureResult(total, abs(piece), used)
        lo, width = hi, width * config.growth
    raise DivergenceError(
        f"tail integral from {a!r} did not settle after {config.max_windows} windows "
        f"(last window contributed {piece:.3e})"
    )


def chebyshev_coefficients(
    f: Callable, a: float, b: float, tol: float = 1e-15, min_n: int = 32, max_n: int = 1 << 17
) -> np.ndarray:
    """Chebyshev coefficients of f on [a, b], adaptively truncated.

    Samples at first-kind Chebyshev points and doubles the count until the
    trailing coefficients fall below ``tol`` relative to the largest one.
    """
    _check_interval(a, b)
    mid, half = 0.5 * (a + b), 0.5 * (b - a)
    n = min_n
    while True:
        vals = _as_values(f, mid + half * np.cos(_cheb_angles(n)))
        c = fft.dct(vals, type=2) / n
        c[0] /= 2
        scale = np.max(np.abs(c))
        tail = np.abs(c[-max(4, n // 8):])
        if np.all(tail <= tol * scale) or n >= max_n:
            break
        n *= 2
    keep = np.nonzero(np.abs(c) > tol * scale * 1e-2)[0]
    return c[: keep[-1] + 1].copy() if keep.size else c[:1].copy()


def joukowski_exterior(zeta: np.ndarray, zeta_minus=None, zeta_plus=None) -> np.ndarray:
    """Inverse Joukowski map zeta -> w with zeta = (w + 1/w)/2 and |w| >= 1.

    ``zeta_minus`` = zeta - 1 and ``zeta_plus`` = zeta + 1 may be supplied when
    they are known more accurately than the differences formed from zeta.
    """
    zeta = np.asarray(zeta, dtype=complex)
    zm = zeta - 1 if zeta_minus is None else zeta_minus
    zp = zeta + 1 if zeta_plus is None else zeta_plus
    root = np.sqrt(zm) * np.sqrt(zp)
    w = zeta + root
    inside = np.abs(w) < 1
    if np.any(inside):
        w = np.where(inside, zeta - root, w)
    return w


def log_kernel_integral(coeffs: np.ndarray, a: float, b: float, z) -> np.ndarray:
    """Complex integral of log(z - t) q(t)/sqrt((t-a)(b-t)) dt over [a, b].

    ``q`` is the Chebyshev series with ``coeffs`` on [a, b]. Uses the expansion
    log(zeta - cos t) = log(w/2) - sum_k 2 cos(k t)/(k w^k), so the result is
    exact up to series truncation for every z, including z on or near [a, b].
    The real part is the log|z - t| potential anywhere; the imaginary part
    follows the principal branch for Im z > 0.
    """
    z = np.asarray(z, dtype=complex)
    half = 0.5 * (b - a)
    # offsets from each endpoint keep z = a, b mapped exactly to -1, 1
    zm, zp = (z - b) / half, (z - a) / half
    w = joukowski_exterior(0.5 * (zm + zp), zm, zp)
    c = np.asarray(coeffs, dtype=float)
    k = np.arange(1, c.size)
    series = np.polynomial.polynomial.polyval(1.0 / w, np.concatenate(([0.0], c[1:] / k)))
    return np.pi * c[0] * (np.log(half / 2) + np.log(w)) - np.pi * series
