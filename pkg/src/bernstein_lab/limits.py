"""Richardson extrapolation on geometric ladders."""
from __future__ import annotations

import numpy as np


def richardson(values, ratio: float, levels: int = 2) -> np.ndarray:
    """Extrapolants of A(y_k) sampled on y_{k+1} = ratio * y_k.

    Assumes A(y) = A0 + c1*y + c2*y^2 + ...; each level removes one power.
    Returns the last level, one entry shorter per level than ``values``.
    """
    table = np.asarray(values, dtype=complex if np.iscomplexobj(values) else float)
    for p in range(1, levels + 1):
        r = ratio**p
        table = (table[1:] - r * table[:-1]) / (1 - r)
    return table


def cauchy_spread(extrapolants, tail: int = 3) -> float:
    """Relative spread of the last ``tail`` extrapolants."""
    last = np.asarray(extrapolants)[-tail:]
    scale = np.max(np.abs(last))
    if scale == 0:
        return 0.0
    return float((np.max(last.real) - np.min(last.real)) / scale)


def best_extrapolant(extrapolants) -> float:
    """Extrapolant whose neighbours agree with it best (rounding noise grows down the ladder)."""
    e = np.asarray(extrapolants).real
    if e.size < 3:
        return float(e[-1])
    gaps = np.abs(np.diff(e))
    local = np.maximum(gaps[:-1], gaps[1:])
    return float(e[1 + int(np.argmin(local))])
