"""Closed-form concurrence curves at special phase shifts.

These serve as ground truth for the verification suite.  Only the cases with
known exact expressions are available: the small and separated configurations
at phi = 0 (exponential relaxation toward the steady value 1/4, at rates
gamma/2gamma and 4gamma/8gamma respectively) and the braided configuration at
phi = pi/2 or 3pi/2 (lossless oscillatory transfer).  Everything else returns
None.
"""

from __future__ import annotations

import math

import numpy as np

_PHI_MATCH_TOL = 1e-12

# (config, pair) -> curve, keyed per supported phase shift family
_SMALL_SEPARATED_PAIRS = ("ac", "bd", "ab")


def _relaxation(pair: str, rate: float, t: np.ndarray) -> np.ndarray:
    decay = np.exp(-rate * t)
    if pair == "ac":
        return 0.25 * (1.0 + 2.0 * decay + decay ** 2)
    if pair == "bd":
        return 0.25 * (1.0 - 2.0 * decay + decay ** 2)
    return 0.25 * (1.0 - decay ** 2)


def has_analytic_case(config: str, pair: str, phi: float) -> bool:
    """True if an exact curve exists for this combination."""
    if config in ("small", "separated"):
        return pair in _SMALL_SEPARATED_PAIRS and abs(phi) <= _PHI_MATCH_TOL
    if config == "braided":
        near_half = abs(phi - 0.5 * math.pi) <= _PHI_MATCH_TOL
        near_three_half = abs(phi - 1.5 * math.pi) <= _PHI_MATCH_TOL
        return pair in _SMALL_SEPARATED_PAIRS and (near_half or near_three_half)
    return False


def analytic_concurrence(config: str, pair: str, phi: float, t,
                         gamma: float = 1.0):
    """Exact concurrence at time(s) t, or None if no closed form exists.

    t may be a scalar or an array; negative times raise.
    """
    t_arr = np.asarray(t, dtype=float)
    if np.any(t_arr < 0.0):
        raise ValueError("time must be non-negative")
    if not has_analytic_case(config, pair, phi):
        return None

    if config == "small":
        values = _relaxation(pair, gamma, t_arr)
    elif config == "separated":
        values = _relaxation(pair, 4.0 * gamma, t_arr)
    else:  # braided at phi = pi/2 or 3pi/2
        if pair == "ac":
            values = np.cos(gamma * t_arr) ** 2
        elif pair == "bd":
            values = np.sin(gamma * t_arr) ** 2
        else:
            values = 0.5 * np.abs(np.sin(2.0 * gamma * t_arr))

    return float(values) if np.isscalar(t) or t_arr.ndim == 0 else values
