"""The comb map f(z) = i*(int log(z - t) d mu_E(t) - log cap E) on the upper half-plane.

Im f = g_Omega, and f carries the upper half-plane onto a comb domain: the
half-plane minus vertical slits standing on the real axis. Along E the real
part of f increases (Cauchy-Riemann with dg/dy > 0), so the boundary value
reached from above at x0 in E is -pi * mu_E(E n [x0, inf)).
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .config import DEFAULT, Tolerances
from .equilibrium import EquilibriumDensity, cdf
from .errors import DivergenceError, NumericalInconsistency, SetError
from .green import GreenEvaluator, complex_potential
from .limits import best_extrapolant, cauchy_spread, richardson


@dataclass(frozen=True)
class CombValue:
    z: complex
    w: complex


@dataclass(frozen=True, eq=False)
class AngularProbe:
    x0: float
    y_values: np.ndarray
    quotients: np.ndarray
    extrapolated: float
    tail_spread: float


def comb_map(G: GreenEvaluator, z) -> np.ndarray:
    """Vectorized f(z); every point must have Im z > 0."""
    z = np.asarray(z, dtype=complex)
    if np.any(z.imag <= 0):
        raise ValueError("the comb map is evaluated on Im z > 0 only")
    return 1j * (complex_potential(G.eq, z) - G.robin)


def comb_value(G: GreenEvaluator, z: complex, tol: Tolerances = DEFAULT) -> CombValue:
    w = complex(comb_map(G, z))
    g = float(G(z))
    if abs(w.imag - g) > tol.comb or not w.imag > 0:
        raise NumericalInconsistency(f"Im f(z)={w.imag!r} disagrees with g(z)={g!r}")
    return CombValue(complex(z), w)


def base_point(eq: EquilibriumDensity, x0: float) -> float:
    """w0 = -pi * mu_E(E n (-inf, x0])."""
    if not eq.set.contains(x0):
        raise SetError(f"x0={x0!r} is not in E")
    return -np.pi * cdf(eq, x0)


def boundary_value(eq: EquilibriumDensity, x0: float) -> float:
    """lim_{y->0+} Re f(x0 + iy) = -pi * mu_E(E n [x0, inf)) for the principal branch."""
    if not eq.set.contains(x0):
        raise SetError(f"x0={x0!r} is not in E")
    return -np.pi * (1.0 - cdf(eq, x0))


def angular_derivative_probe(
    G: GreenEvaluator,
    x0: float,
    y_min: float = 1e-6,
    y_max: float = 1e-3,
    levels: int = 13,
    tol: float = DEFAULT.cauchy,
) -> AngularProbe:
    """Limit of (f(x0 + iy) - w0)/(iy) along the vertical ray.

    The ladder y_k is geometric; real parts are Richardson-extrapolated and the
    last three extrapolants must agree to ``tol`` (relative), otherwise the
    point has no finite angular derivative and DivergenceError is raised.
    """
    if not 0 < y_min < y_max or levels < 3:
        raise ValueError("need 0 < y_min < y_max and levels >= 3")
    w0 = boundary_value(G.eq, x0)
    ys = y_max * (y_min / y_max) ** (np.arange(levels) / (levels - 1))
    quotients = (comb_map(G, x0 + 1j * ys) - w0) / (1j * ys)
    ratio = ys[1] / ys[0]
    extr = richardson(quotients.real, ratio, levels=2)
    spread = cauchy_spread(extr)
    if spread > tol or not extr[-1] > 0:
        raise DivergenceError(f"no angular derivative at x0={x0!r}: Richardson tail spread {spread:.3e}")
    return AngularProbe(float(x0), ys, quotients, best_extrapolant(extr), spread)
