"""Logarithmic potential of the equilibrium measure, capacity, and the Green
function of the complement of E with pole at infinity."""
from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .config import DEFAULT, Tolerances
from .equilibrium import EquilibriumDensity
from .errors import NumericalInconsistency, SetError
from .quadrature import (
    QuadratureResult,
    WindowConfig,
    integrate_smooth,
    integrate_to_infinity,
    log_kernel_integral,
)
from .sets import Location, classify_point


def complex_potential(eq: EquilibriumDensity, z) -> np.ndarray:
    """Integral of log(z - t) d mu_E(t), principal branch for Im z > 0."""
    z = np.asarray(z, dtype=complex)
    total = np.zeros(z.shape, dtype=complex)
    for (a, b), series in zip(eq.set.intervals, eq.interval_series):
        total = total + log_kernel_integral(series, a, b, z)
    return total


def log_potential(eq: EquilibriumDensity, z) -> np.ndarray:
    """Integral of log|z - t| d mu_E(t); finite for every complex z."""
    return complex_potential(eq, z).real


@dataclass(frozen=True, eq=False)
class GreenEvaluator:
    eq: EquilibriumDensity
    robin: float                     # log cap E
    robin_crosscheck_spread: float

    @property
    def capacity(self) -> float:
        return float(np.exp(self.robin))

    def raw(self, z) -> np.ndarray:
        return log_potential(self.eq, z) - self.robin

    def __call__(self, z) -> np.ndarray:
        """g clamped at zero, and exactly zero at points of E."""
        return np.where(self.eq.set.member_mask(z), 0.0, np.maximum(self.raw(z), 0.0))


def robin_probe_points(eq: EquilibriumDensity) -> list[float]:
    """Midpoint of the longest interval first, then the other midpoints and a quarter point."""
    iv = eq.set.intervals
    longest = max(range(len(iv)), key=lambda j: iv[j][1] - iv[j][0])
    a, b = iv[longest]
    pts = [0.5 * (a + b)]
    pts += [0.5 * (c + d) for j, (c, d) in enumerate(iv) if j != longest]
    pts.append(a + 0.25 * (b - a))
    return pts


def build_green(eq: EquilibriumDensity, tol: Tolerances = DEFAULT) -> GreenEvaluator:
    pts = robin_probe_points(eq)
    values = log_potential(eq, np.array(pts))
    robin = float(values[0])
    spread = float(np.max(np.abs(values - robin)))
    if spread > tol.robin_fatal:
        raise NumericalInconsistency(f"Robin constant spread {spread:.3e} exceeds {tol.robin_fatal}")
    return GreenEvaluator(eq, robin, spread)


def green_value(G: GreenEvaluator, z):
    """g_Omega(z), clamped at zero; scalar in, scalar out."""
    out = G(z)
    return float(out) if np.ndim(out) == 0 else out


def lemma3_integral(G: GreenEvaluator, x0: float, order: int = 100, tol: float = 1e-13) -> QuadratureResult:
    """Integral of g(x)/(x - x0)^2 over the real line.

    Only gaps and the two outer rays contribute. Each gap uses x = mid + half*cos(t),
    and each ray starts with x = end +/- s^2, which absorb the square-root
    behaviour of g at the endpoints; the far tails use geometric windows.
    """
    E = G.eq.set
    loc = classify_point(E, x0).location
    if loc in (Location.GAP, Location.OUTSIDE_HULL):
        raise SetError(f"x0={x0!r} is not in E")
    if loc is Location.ENDPOINT:
        warnings.warn(f"x0={x0!r} is an endpoint of E; the integral diverges there", RuntimeWarning, stacklevel=2)

    def kernel(x):
        return G(x) / (x - x0) ** 2

    value, err, nodes = 0.0, 0.0, 0
    for left, right in E.gaps:
        mid, half = 0.5 * (left + right), 0.5 * (right - left)
        r = integrate_smooth(lambda t: kernel(mid + half * np.cos(t)) * half * np.sin(t), 0.0, np.pi, order)
        value, err, nodes = value + r.value, err + r.error_estimate, nodes + r.nodes_used

    lo, hi = E.hull
    span = hi - lo
    for end, sign in ((hi, 1.0), (lo, -1.0)):
        near = integrate_smooth(lambda s: kernel(end + sign * s**2) * 2 * s, 0.0, np.sqrt(span), order)
        far = integrate_to_infinity(
            lambda s: kernel(end + sign * s), span, WindowConfig(initial=span, tol=tol, order=48)
        )
        value += near.value + far.value
        err += near.error_estimate + far.error_estimate
        nodes += near.nodes_used + far.nodes_used
    return QuadratureResult(value, err, nodes)


def poisson_halfplane(
    boundary: Callable,
    x0: float,
    y: float,
    tol: float = 1e-13,
    breakpoints: Sequence[float] = (),
    order: int = 48,
) -> float:
    """Harmonic extension (y/pi) * int boundary(x)/((x-x0)^2 + y^2) dx at x0 + iy.

    ``boundary`` must accept numpy arrays. Points where it is not smooth can be
    passed as ``breakpoints`` so no quadrature window straddles them.
    """
    if not y > 0:
        raise ValueError("y must be positive")
    reach = max([abs(p - x0) for p in breakpoints], default=0.0) + y
    total = 0.0
    for sign in (1.0, -1.0):
        bps = [sign * (p - x0) for p in breakpoints]

        def integrand(s, sign=sign):
            vals = np.broadcast_to(np.asarray(boundary(x0 + sign * s), dtype=float), np.shape(s))
            return (y / np.pi) * vals / (s**2 + y**2)

        cfg = WindowConfig(initial=y, tol=tol, order=order, min_extent=reach)
        total += integrate_to_infinity(integrand, 0.0, cfg, breakpoints=[b for b in bps if b > 0]).value
    return float(total)
