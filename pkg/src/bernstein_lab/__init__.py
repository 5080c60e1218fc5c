"""Equilibrium measures, Green functions, comb maps and sharp Bernstein
factors for finite unions of real intervals."""
from .bernstein import (
    BernsteinReport,
    LipschitzVerdict,
    Verdict,
    bernstein_report,
    dilation_limit,
    green_for,
    interior_density_factor,
    lipschitz_probe,
    normal_derivative,
)
from .comb import angular_derivative_probe, base_point, boundary_value, comb_map, comb_value
from .config import DEFAULT, Tolerances
from .equilibrium import EquilibriumDensity, cdf, density, solve_gap_polynomial
from .errors import DivergenceError, LabError, LPError, NumericalInconsistency, SetError
from .extremal import ExtremalResult, Polynomial, bernstein_bound_check, extremal_polynomial, sup_norm
from .green import GreenEvaluator, build_green, green_value, lemma3_integral, poisson_halfplane
from .quadrature import integrate_sqrt_singular, integrate_to_infinity
from .sets import RealCompactSet, cantor_generation, classify_point, dilate, parse_set, serialize
from .verify import VerifyReport, verify_suite

__all__ = [name for name in dir() if not name.startswith("_")]
