"""Equilibrium measure of a finite union of intervals.

For E = [a_1, b_1] u ... u [a_m, b_m] the equilibrium density is

    omega(x) = |Q(x)| / (pi * sqrt|R(x)|),   R(x) = prod_j (x - a_j)(x - b_j),

where Q is monic of degree m - 1 and integrates to zero against 1/sqrt|R|
over every gap. Those conditions are linear in the lower coefficients of Q.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numpy.polynomial import polynomial as P

from .config import DEFAULT, Tolerances
from .errors import NumericalInconsistency, SetError
from .quadrature import (
    DEFAULT_ORDER,
    chebyshev_coefficients,
    integrate_smooth,
    integrate_sqrt_singular,
)
from .sets import RealCompactSet


@dataclass(frozen=True, eq=False)
class EquilibriumDensity:
    set: RealCompactSet
    center: float
    q_coeffs: np.ndarray          # ascending powers of (t - center); last entry 1
    mass_check: float
    interval_masses: np.ndarray
    gap_residuals: np.ndarray
    # Chebyshev coefficients of |Q|/(pi sqrt|R / ((t-a_j)(b_j-t))|) on interval j
    interval_series: tuple[np.ndarray, ...]

    def q(self, t):
        return P.polyval(np.asarray(t, dtype=float) - self.center, self.q_coeffs)

    def abs_r(self, t, skip=()):
        """|R(t)| with the factors for the endpoint indices in ``skip`` left out."""
        t = np.asarray(t, dtype=float)
        out = np.ones_like(t)
        for i, e in enumerate(self.set.endpoints):
            if i not in skip:
                out = out * np.abs(t - e)
        return out

    def weight(self, j: int):
        """Smooth factor q_j(t) with omega(t) = q_j(t)/sqrt((t-a_j)(b_j-t)) on interval j."""
        skip = (2 * j, 2 * j + 1)
        return lambda t: np.abs(self.q(t)) / (np.pi * np.sqrt(self.abs_r(t, skip)))

    def gap_roots(self) -> np.ndarray:
        roots = P.polyroots(self.q_coeffs) + self.center if self.q_coeffs.size > 1 else np.array([])
        return np.sort(roots.real[np.abs(roots.imag) < 1e-9])


def _gap_weight(E: RealCompactSet, k: int, fn):
    """t -> fn(t)/sqrt|R(t)| with the gap-end factors (b_k, a_{k+1}) removed."""
    ends = E.endpoints
    others = np.delete(ends, [2 * k + 1, 2 * k + 2])

    def f(t):
        t = np.asarray(t, dtype=float)
        return fn(t) / np.sqrt(np.prod(np.abs(t[..., None] - others), axis=-1))

    return f


def solve_gap_polynomial(
    E: RealCompactSet, order: int = DEFAULT_ORDER, tol: Tolerances = DEFAULT
) -> EquilibriumDensity:
    m = E.m
    lo, hi = E.hull
    center, scale = 0.5 * (lo + hi), 0.5 * (hi - lo)
    if m == 1:
        coeffs = np.array([1.0])
    else:
        # moments of u^j, u = (t - center)/scale, over each gap
        moments = np.empty((m - 1, m))
        for k, (b, a) in enumerate(E.gaps):
            for j in range(m):
                f = _gap_weight(E, k, lambda t, j=j: ((t - center) / scale) ** j)
                moments[k, j] = integrate_sqrt_singular(f, b, a, order).value
        try:
            beta = np.linalg.solve(moments[:, :-1], -moments[:, -1])
        except np.linalg.LinAlgError as exc:
            raise NumericalInconsistency(f"singular gap system: {exc}") from exc
        u_coeffs = np.append(beta, 1.0)
        coeffs = u_coeffs * scale ** (m - 1 - np.arange(m))

    proto = EquilibriumDensity(E, center, coeffs, np.nan, np.array([]), np.array([]), ())
    residuals = np.array([
        integrate_sqrt_singular(_gap_weight(E, k, proto.q), b, a, order).value
        for k, (b, a) in enumerate(E.gaps)
    ])
    masses = np.array([
        integrate_sqrt_singular(proto.weight(j), a, b, order).value for j, (a, b) in enumerate(E.intervals)
    ])
    mass = float(masses.sum())
    if abs(mass - 1) > tol.mass:
        raise NumericalInconsistency(f"equilibrium mass {mass!r} differs from 1 by more than {tol.mass}")
    if residuals.size and np.max(np.abs(residuals)) > tol.gap:
        raise NumericalInconsistency(f"gap conditions not met: residuals {residuals}")
    series = tuple(chebyshev_coefficients(proto.weight(j), a, b) for j, (a, b) in enumerate(E.intervals))
    return EquilibriumDensity(E, center, coeffs, mass, masses, residuals, series)


def density(eq: EquilibriumDensity, x: float) -> float:
    """Equilibrium density at an interior point of E."""
    j = eq.set.component(x)
    a, b = eq.set.intervals[j]
    if x in (a, b):
        raise SetError(f"density diverges at the endpoint {x!r}")
    return float(eq.weight(j)(x) / np.sqrt((x - a) * (b - x)))


def cdf(eq: EquilibriumDensity, x0: float) -> float:
    """mu_E(E n (-inf, x0])."""
    total = 0.0
    for j, (a, b) in enumerate(eq.set.intervals):
        if b <= x0:
            total += eq.interval_masses[j]
        elif a < x0:
            mid, half = 0.5 * (a + b), 0.5 * (b - a)
            theta0 = float(np.arccos(np.clip((x0 - mid) / half, -1.0, 1.0)))
            qj = eq.weight(j)
            total += integrate_smooth(lambda th: qj(mid + half * np.cos(th)), theta0, np.pi).value
    return float(total)
