"""Time series, phase-time sweep grids, and peak search.

All heavy lifting stays vectorized over the time axis; a sweep is one
independent evolution per phase value, so results never depend on evaluation
order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .coefficients import CoefficientSet, coefficients_for
from .dynamics import amplitude_series, density_series
from .entanglement import (
    PAIRS,
    pair_concurrence_from_amplitudes,
    pair_concurrence_from_density,
)
from .layouts import ConnectionLayout, GROUND_INDEX

_INV_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


@dataclass(frozen=True)
class EvolutionSeries:
    """Concurrences of all six pairs plus excited-state population over time."""

    times: np.ndarray
    concurrence: dict[str, np.ndarray]
    norm: np.ndarray


def evolve_series(coeffs: CoefficientSet, times, method: str = "amplitude",
                  initial_sign: int = 1) -> EvolutionSeries:
    """Evaluate the six pair concurrences on a time grid with either engine.

    The lindblad method needs a uniform grid starting at 0; the amplitude
    method accepts any non-negative times.
    """
    t = np.asarray(times, dtype=float)
    if method == "amplitude":
        xs = amplitude_series(coeffs, t, initial_sign)
        conc = {pair: pair_concurrence_from_amplitudes(xs, pair) for pair in PAIRS}
        norm = np.sum(np.abs(xs) ** 2, axis=-1)
    elif method == "lindblad":
        rhos = density_series(coeffs, t, initial_sign=initial_sign)
        conc = {pair: pair_concurrence_from_density(rhos, pair) for pair in PAIRS}
        norm = 1.0 - rhos[..., GROUND_INDEX, GROUND_INDEX].real
    else:
        raise ValueError(f"unknown method {method!r}")
    return EvolutionSeries(times=t, concurrence=conc, norm=norm)


@dataclass(frozen=True)
class SweepGrid:
    """Concurrence of one pair over a phase x time grid, values[i_phi, i_t]."""

    phi_values: np.ndarray
    t_values: np.ndarray
    pair: str
    config: str
    values: np.ndarray


def sweep_grid(config: str, pair: str, phi_values, t_values,
               gamma: float = 1.0, layout: ConnectionLayout | None = None,
               method: str = "amplitude", initial_sign: int = 1) -> SweepGrid:
    """One evolution per phase value; rows follow the phase axis."""
    phis = np.asarray(phi_values, dtype=float)
    ts = np.asarray(t_values, dtype=float)
    values = np.empty((phis.size, ts.size), dtype=float)
    for i, phi in enumerate(phis):
        coeffs = coefficients_for(config, float(phi), gamma, layout)
        series = evolve_series(coeffs, ts, method=method, initial_sign=initial_sign)
        values[i] = series.concurrence[pair]
    return SweepGrid(phi_values=phis, t_values=ts, pair=pair, config=config,
                     values=values)


@dataclass(frozen=True)
class PeakReport:
    """Result of a concurrence peak search over a time window."""

    phi: float
    t_at_peak: float
    value: float
    t_window_lo: float
    t_window_hi: float
    coarse_samples: int
    refine_tolerance: float

    def as_dict(self) -> dict:
        return {
            "phi": self.phi,
            "t_at_peak": self.t_at_peak,
            "value": self.value,
            "t_window_lo": self.t_window_lo,
            "t_window_hi": self.t_window_hi,
            "coarse_samples": self.coarse_samples,
            "refine_tolerance": self.refine_tolerance,
        }


def _golden_max(f, lo: float, hi: float, tol: float) -> tuple[float, float]:
    """Golden-section search for the maximum of f on [lo, hi]."""
    left = hi - _INV_GOLDEN * (hi - lo)
    right = lo + _INV_GOLDEN * (hi - lo)
    f_left, f_right = f(left), f(right)
    while hi - lo > tol:
        if f_left > f_right:
            hi, right, f_right = right, left, f_left
            left = hi - _INV_GOLDEN * (hi - lo)
            f_left = f(left)
        else:
            lo, left, f_left = left, right, f_right
            right = lo + _INV_GOLDEN * (hi - lo)
            f_right = f(right)
    mid = 0.5 * (lo + hi)
    return mid, f(mid)


def find_peak(coeffs: CoefficientSet, pair: str, t_horizon: float = 50.0,
              coarse_samples: int = 10000, method: str = "amplitude",
              initial_sign: int = 1) -> PeakReport:
    """Maximal concurrence over [0, t_horizon].

    A uniform coarse scan brackets the best sample, then golden-section
    refinement narrows the peak time to within 1e-6 / gamma.
    """
    if t_horizon <= 0.0:
        raise ValueError("t_horizon must be positive")

    grid = np.linspace(0.0, t_horizon, coarse_samples)
    series = evolve_series(coeffs, grid, method=method, initial_sign=initial_sign)
    coarse = series.concurrence[pair]
    best = int(np.argmax(coarse))
    lo = grid[max(0, best - 1)]
    hi = grid[min(coarse_samples - 1, best + 1)]

    def value_at(t: float) -> float:
        single = evolve_series(coeffs, np.array([0.0, t]) if method == "lindblad"
                               else np.array([t]),
                               method=method, initial_sign=initial_sign)
        return float(single.concurrence[pair][-1])

    tol = 1e-6 / coeffs.gamma
    t_peak, peak = _golden_max(value_at, float(lo), float(hi), tol)
    if coarse[best] > peak:  # guard against a flat bracket
        t_peak, peak = float(grid[best]), float(coarse[best])
    return PeakReport(phi=coeffs.phi, t_at_peak=float(t_peak), value=float(peak),
                      t_window_lo=float(lo), t_window_hi=float(hi),
                      coarse_samples=coarse_samples, refine_tolerance=tol)
