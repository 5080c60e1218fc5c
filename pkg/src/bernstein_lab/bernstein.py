"""The Bernstein factor h(x0, E) = dg/dn at x0, computed three ways, plus the
E_delta limit and a numerical probe of Lipschitz continuity of g at x0."""
from __future__ import annotations

import enum
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .comb import angular_derivative_probe
from .config import DEFAULT, Tolerances
from .equilibrium import EquilibriumDensity, density, solve_gap_polynomial
from .errors import DivergenceError, SetError
from .green import GreenEvaluator, build_green
from .limits import best_extrapolant, cauchy_spread, richardson
from .sets import Location, RealCompactSet, classify_point, dilate

NORMAL_LADDER = 1e-2 * 2.0 ** -np.arange(17)


class Verdict(str, enum.Enum):
    LIPSCHITZ = "lipschitz"
    NON_LIPSCHITZ = "non_lipschitz"
    INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class LipschitzVerdict:
    ratios: list[tuple[float, float]]
    verdict: Verdict
    exponent_estimate: float


@dataclass(frozen=True)
class BernsteinReport:
    x0: float
    h_normal: float
    h_density: float
    h_comb: float
    consistency_spread: float
    delta_table: list[tuple[float, float]]
    lipschitz: LipschitzVerdict

    def as_dict(self) -> dict:
        return {
            "x0": self.x0,
            "h_normal": self.h_normal,
            "h_density": self.h_density,
            "h_comb": self.h_comb,
            "spread": self.consistency_spread,
            "delta_table": [list(row) for row in self.delta_table],
            "lipschitz": {
                "verdict": self.lipschitz.verdict.value,
                "exponent_estimate": self.lipschitz.exponent_estimate,
                "ratios": [list(row) for row in self.lipschitz.ratios],
            },
        }


def green_for(E: RealCompactSet, tol: Tolerances = DEFAULT) -> GreenEvaluator:
    return build_green(solve_gap_polynomial(E, tol=tol), tol)


def _require_member(E: RealCompactSet, x0: float) -> Location:
    loc = classify_point(E, x0).location
    if loc in (Location.GAP, Location.OUTSIDE_HULL):
        raise SetError(f"x0={x0!r} is not in E")
    return loc


def normal_derivative(G: GreenEvaluator, x0: float, tol: float = DEFAULT.cauchy) -> float:
    """lim_{y->0+} g(x0 + iy)/y by Richardson extrapolation on y = 1e-2 * 2^-k."""
    _require_member(G.eq.set, x0)
    ys = NORMAL_LADDER
    quotients = G.raw(x0 + 1j * ys) / ys
    extr = richardson(quotients, 0.5, levels=2)
    spread = cauchy_spread(extr)
    if spread > tol:
        raise DivergenceError(f"normal derivative at x0={x0!r} does not settle (tail spread {spread:.3e})")
    return best_extrapolant(extr)


def interior_density_factor(eq: EquilibriumDensity, x0: float) -> float:
    """pi * omega(x0), the Bernstein factor at interior points."""
    if classify_point(eq.set, x0).location is not Location.INTERIOR:
        raise SetError(f"x0={x0!r} is not an interior point of E")
    return np.pi * density(eq, x0)


def _threads() -> int:
    try:
        return max(1, int(os.environ.get("BERNSTEIN_LAB_THREADS", "1")))
    except ValueError:
        return 1


def dilation_limit(
    E: RealCompactSet, x0: float, delta_seq: Sequence[float], tol: Tolerances = DEFAULT
) -> list[tuple[float, float]]:
    """[(delta, h(x0, E_delta))] with E_delta = E u [x0 - delta, x0 + delta]."""
    _require_member(E, x0)
    if any(not d > 0 for d in delta_seq):
        raise SetError("every delta must be positive")

    def one(delta):
        return float(delta), normal_derivative(green_for(dilate(E, x0, delta), tol), x0, tol.cauchy)

    with ThreadPoolExecutor(max_workers=_threads()) as pool:
        return list(pool.map(one, delta_seq))


def default_radii(E: RealCompactSet, x0: float, count: int = 8) -> np.ndarray:
    dist = min(abs(x0 - e) for e in E.endpoints)
    lo, hi = E.hull
    if dist > 0:
        base = 0.5 * min(dist, hi - lo)
    else:
        base = 0.2 * min(b - a for a, b in E.intervals)
    return base * 4.0 ** -np.arange(count)


def lipschitz_probe(
    G: GreenEvaluator, x0: float, radii: Sequence[float] | None = None, angles: int = 17, fit_window: int = 4
) -> LipschitzVerdict:
    """max g(z)/|z - x0| over upper semicircles of shrinking radius.

    Bounded ratios (last/first <= 2) read as Lipschitz. Otherwise the log-log
    slope over the last ``fit_window`` radii is the exponent estimate; a clearly
    negative slope with consistent local slopes reads as non-Lipschitz.
    """
    _require_member(G.eq.set, x0)
    radii = default_radii(G.eq.set, x0) if radii is None else np.asarray(radii, dtype=float)
    theta = np.linspace(0.0, np.pi, angles)
    ratios = []
    for r in radii:
        z = x0 + r * np.exp(1j * theta)
        ratios.append(float(np.max(G(z)) / r))
    lr, lq = np.log(radii[-fit_window:]), np.log(ratios[-fit_window:])
    slope = float(np.polyfit(lr, lq, 1)[0])
    local = np.diff(lq) / np.diff(lr)
    table = list(zip(map(float, radii), ratios))
    if ratios[-1] / ratios[0] <= 2:
        verdict = Verdict.LIPSCHITZ
    elif slope < -0.15 and np.all(np.abs(local - slope) <= 0.15):
        verdict = Verdict.NON_LIPSCHITZ
    else:
        verdict = Verdict.INCONCLUSIVE
    return LipschitzVerdict(table, verdict, slope)


def gap_function(G: GreenEvaluator, G_delta: GreenEvaluator, z) -> np.ndarray:
    """u_delta(z) = g_Omega(z) - g_{Omega_delta}(z)."""
    return G(z) - G_delta(z)


def default_deltas(E: RealCompactSet, x0: float) -> list[float]:
    dist = min(abs(x0 - e) for e in E.endpoints)
    if dist == 0:
        dist = 0.1 * min(b - a for a, b in E.intervals)
    return [2.0 * dist, 1.5 * dist, 1.1 * dist, 0.5 * dist]


def bernstein_report(
    E: RealCompactSet,
    x0: float,
    delta_seq: Sequence[float] | None = None,
    tol: Tolerances = DEFAULT,
) -> BernsteinReport:
    G = green_for(E, tol)
    lip = lipschitz_probe(G, x0)
    h_normal = normal_derivative(G, x0, tol.cauchy)
    h_density = interior_density_factor(G.eq, x0)
    h_comb = angular_derivative_probe(G, x0, tol=tol.cauchy).extrapolated
    hs = np.array([h_normal, h_density, h_comb])
    spread = float((hs.max() - hs.min()) / hs.min())
    deltas = default_deltas(E, x0) if delta_seq is None else list(delta_seq)
    table = dilation_limit(E, x0, deltas, tol) if deltas else []
    return BernsteinReport(float(x0), h_normal, h_density, h_comb, spread, table, lip)
