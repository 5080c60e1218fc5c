"""One-shot invariant checks for a set E and a list of interior points."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .bernstein import (
    Verdict,
    dilation_limit,
    green_for,
    interior_density_factor,
    lipschitz_probe,
    normal_derivative,
)
from .comb import angular_derivative_probe, boundary_value, comb_map
from .config import DEFAULT, Tolerances
from .equilibrium import cdf
from .errors import LabError
from .extremal import Polynomial, bernstein_bound_check, extremal_polynomial, sup_norm
from .green import poisson_halfplane
from .sets import Location, RealCompactSet, classify_point


@dataclass(frozen=True)
class Check:
    name: str
    residual: float
    tolerance: float
    passed: bool
    note: str = ""


@dataclass
class VerifyReport:
    checks: list[Check] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def add(self, name: str, residual: float, tolerance: float, note: str = "") -> None:
        residual = float(residual)
        self.checks.append(Check(name, residual, tolerance, bool(residual <= tolerance), note))

    def table(self) -> str:
        width = max(len(c.name) for c in self.checks)
        lines = [f"{'check':<{width}}  {'residual':>12}  {'tolerance':>10}  result"]
        for c in self.checks:
            mark = "PASS" if c.passed else "FAIL"
            extra = f"  ({c.note})" if c.note else ""
            lines.append(f"{c.name:<{width}}  {c.residual:12.3e}  {c.tolerance:10.1e}  {mark}{extra}")
        return "\n".join(lines)


def _random_points_off_set(E: RealCompactSet, rng, count: int) -> np.ndarray:
    lo, hi = E.hull
    span = hi - lo
    re = rng.uniform(lo - span, hi + span, count)
    im = rng.uniform(0.01 * span, span, count)
    return re + 1j * im


def _interior_points(E: RealCompactSet, rng, count: int) -> np.ndarray:
    j = rng.integers(0, E.m, count)
    a, b = E.lefts[j], E.rights[j]
    return a + (b - a) * rng.uniform(0.05, 0.95, count)


def _record_error(report: VerifyReport, name: str, exc: Exception) -> None:
    report.checks.append(Check(name, float("inf"), 0.0, False, f"{type(exc).__name__}: {exc}"))


def verify_suite(
    E: RealCompactSet,
    x0_list: Sequence[float] | None = None,
    tol: Tolerances = DEFAULT,
    seed: int = 20240611,
    random_polys: int = 200,
) -> VerifyReport:
    rng = np.random.default_rng(seed)
    report = VerifyReport()
    G = green_for(E, tol)
    eq = G.eq
    if x0_list is None:
        x0_list = [0.5 * (a + b) for a, b in E.intervals]

    report.add("equilibrium mass", abs(eq.mass_check - 1), tol.mass)
    report.add("gap conditions", np.max(np.abs(eq.gap_residuals), initial=0.0), tol.gap)
    report.add("Robin cross-check spread", G.robin_crosscheck_spread, tol.robin)
    frost = G.raw(_interior_points(E, rng, 5))
    report.add("Frostman equality at 5 interior points", np.max(np.abs(frost)), tol.robin)
    roots = eq.gap_roots()
    one_per_gap = len(roots) == len(E.gaps) and all(b < r < a for r, (b, a) in zip(roots, E.gaps))
    report.add("one zero of Q per gap", 0.0 if one_per_gap else 1.0, 0.0)

    grid = np.linspace(E.hull[0] - 1, E.hull[1] + 1, 401)
    values = np.array([cdf(eq, x) for x in grid])
    report.add("cdf nondecreasing", max(0.0, -np.min(np.diff(values))), 1e-12)
    report.add("cdf(max E) = 1", abs(cdf(eq, E.hull[1]) - 1), tol.mass)

    z = _random_points_off_set(E, rng, 100)
    report.add("Im f = g (100 points)", np.max(np.abs(comb_map(G, z).imag - G(z))), tol.comb)
    report.add("reflection g(conj z) = g(z)", np.max(np.abs(G.raw(z) - G.raw(np.conj(z)))), tol.reflection)
    report.add("positivity off E", float(np.sum(G(z) <= 0)), 0.0)
    far = 1e6 * np.exp(1j * np.linspace(0.1, 3.0, 7))
    report.add("asymptotics g - log|z| -> -robin", np.max(np.abs(G.raw(far) - np.log(np.abs(far)) + G.robin)), 1e-5)
    report.add(
        "Poisson oracle 1/(1+x^2) at i",
        abs(poisson_halfplane(lambda x: 1.0 / (1.0 + x * x), 0.0, 1.0) - 0.5),
        tol.poisson,
    )

    for x0 in x0_list:
        tag = f"x0={x0:.6g}"
        if classify_point(E, x0).location is not Location.INTERIOR:
            report.checks.append(Check(f"{tag}: interior point", 1.0, 0.0, False, "skipped, not interior"))
            continue
        try:
            lip = lipschitz_probe(G, x0)
            report.add(f"{tag}: Lipschitz verdict", 0.0 if lip.verdict is Verdict.LIPSCHITZ else 1.0, 0.0,
                       lip.verdict.value)
            h = normal_derivative(G, x0, tol.cauchy)
            hd = interior_density_factor(eq, x0)
            hc = angular_derivative_probe(G, x0, tol=tol.cauchy).extrapolated
            hs = np.array([h, hd, hc])
            report.add(f"{tag}: three-route h spread", (hs.max() - hs.min()) / hs.min(), tol.h)
            report.add(f"{tag}: angular probe vs h", abs(hc - h) / h, 1e-4)
            ray = comb_map(G, x0 + 1e-6j).real
            report.add(f"{tag}: ray limit of Re f", abs(ray - boundary_value(eq, x0)), 1e-4)

            worst = 0.0
            for _ in range(random_polys):
                deg = int(rng.integers(1, 21))
                p = Polynomial.on_hull(E, rng.uniform(-1, 1, deg + 1))
                norm = sup_norm(E, p)
                worst = max(worst, -bernstein_bound_check(E, x0, p, h, norm) / (h * deg * norm))
            report.add(f"{tag}: Bernstein bound on random polynomials", max(worst, 0.0), tol.bound_slack)
            ext = extremal_polynomial(E, x0, 8, h=h, tol=tol)
            report.add(f"{tag}: extremal ratio ceiling (n=8)", max(ext.ratio - 1, 0.0), tol.ratio_ceiling,
                       f"ratio {ext.ratio:.6f}")

            dist = min(abs(x0 - e) for e in E.endpoints)
            deltas = [2.0 * dist, 1.5 * dist, 1.1 * dist, 0.5 * dist]
            table = [hh for _, hh in dilation_limit(E, x0, deltas, tol)]
            above = max(0.0, max(table) - h) / h
            drops = max(0.0, -np.min(np.diff(table))) / h
            report.add(f"{tag}: dilation h(E_delta) <= h(E)", above, tol.dilation)
            report.add(f"{tag}: dilation monotone as delta decreases", drops, tol.dilation)
            report.add(f"{tag}: dilation absorbed (delta < dist)", abs(table[-1] - h) / h, tol.dilation)

            s, c = 2.5, -0.75
            hs_scaled = normal_derivative(green_for(E.affine(s, c), tol), s * x0 + c, tol.cauchy)
            report.add(f"{tag}: scaling covariance of h", abs(hs_scaled * s / h - 1), tol.scaling)
        except LabError as exc:
            _record_error(report, f"{tag}: computation", exc)
    return report
