"""Central tolerance record; the CLI exposes overrides for a few of these."""
from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class Tolerances:
    mass: float = 1e-8
    gap: float = 1e-10
    robin: float = 1e-7          # Frostman cross-check spread
    robin_fatal: float = 1e-6    # spread beyond this aborts build_green
    comb: float = 1e-8           # |Im f - g|
    reflection: float = 1e-12
    h: float = 1e-3              # three-route spread of the Bernstein factor
    cauchy: float = 1e-6         # Richardson tail for normal derivatives
    scaling: float = 1e-8
    poisson: float = 1e-8
    bound_slack: float = 1e-9    # relative slack in |p'(x0)| <= h n ||p||
    ratio_ceiling: float = 1e-6
    dilation: float = 1e-6


DEFAULT = Tolerances()
