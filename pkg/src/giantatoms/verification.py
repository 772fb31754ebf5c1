"""Built-in verification suite.

Each check compares a simulated quantity against an independent reference
(closed-form coefficient expressions, analytic concurrence curves, the second
dynamics engine, or the generic spin-flip concurrence) and records
name / expected / got / tolerance / pass-fail, so the report is machine
readable and the whole suite is reproducible from a fixed seed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .analytic import analytic_concurrence
from .coefficients import coefficients_closed_form, coefficients_for
from .dynamics import amplitude_series, density_series
from .entanglement import (
    PAIRS,
    XStateMatrix,
    concurrence_wootters,
    concurrence_x,
    pair_concurrence_from_amplitudes,
    pair_concurrence_from_density,
)
from .layouts import AMPLITUDE_INDEX, ATOMS, PRESETS
from .sweeps import _golden_max, find_peak

DEFAULT_SEED = 20240901

_CROSS_PHASES = (0.0, math.pi / 3, math.pi / 2, 2 * math.pi / 3, math.pi,
                 4 * math.pi / 3, 3 * math.pi / 2, 2 * math.pi - 0.1)
_PRIMARY_PAIRS = ("ac", "bd", "ab")


@dataclass(frozen=True)
class CheckResult:
    name: str
    expected: float
    got: float
    tolerance: float
    passed: bool
    detail: str = ""

    def format_line(self) -> str:
        line = (f"{self.name}: expected={self.expected:.10g} "
                f"got={self.got:.10g} tol={self.tolerance:.3g} "
                f"{'PASS' if self.passed else 'FAIL'}")
        if self.detail:
            line += f"  # {self.detail}"
        return line


@dataclass
class VerificationReport:
    checks: list[CheckResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def num_failed(self) -> int:
        return sum(1 for c in self.checks if not c.passed)

    def by_name(self, name: str) -> CheckResult:
        for check in self.checks:
            if check.name == name:
                return check
        raise KeyError(name)

    def select(self, prefix: str) -> list[CheckResult]:
        return [c for c in self.checks if c.name.startswith(prefix)]

    def to_dict(self) -> dict:
        return {
            "passed": self.passed,
            "num_checks": len(self.checks),
            "num_failed": self.num_failed,
            "checks": [
                {
                    "name": c.name,
                    "expected": c.expected,
                    "got": c.got,
                    "tolerance": c.tolerance,
                    "passed": c.passed,
                    "detail": c.detail,
                }
                for c in self.checks
            ],
        }

    def format_lines(self) -> list[str]:
        lines = [c.format_line() for c in self.checks]
        lines.append(f"{len(self.checks)} checks, "
                     f"{len(self.checks) - self.num_failed} passed, "
                     f"{self.num_failed} failed")
        return lines


def _max_abs(a) -> float:
    return float(np.max(np.abs(a)))


def _deviation_check(name: str, got: float, tol: float,
                     detail: str = "") -> CheckResult:
    got = float(got)
    return CheckResult(name=name, expected=0.0, got=got, tolerance=tol,
                       passed=bool(got <= tol), detail=detail)


def _value_check(name: str, expected: float, got: float, tol: float,
                 detail: str = "") -> CheckResult:
    got = float(got)
    return CheckResult(name=name, expected=expected, got=got, tolerance=tol,
                       passed=bool(abs(got - expected) <= tol), detail=detail)


class _XCollector:
    """Accumulates every reduced X matrix the checks produce, in batches."""

    def __init__(self):
        self.matrices: list[np.ndarray] = []
        self.shortcut: list[np.ndarray] = []

    def add_amplitudes(self, xs: np.ndarray, pairs=PAIRS) -> None:
        for pair in pairs:
            ip, iq = AMPLITUDE_INDEX[pair[0]], AMPLITUDE_INDEX[pair[1]]
            self._add(np.abs(xs[..., ip]) ** 2, np.abs(xs[..., iq]) ** 2,
                      xs[..., ip] * np.conj(xs[..., iq]))

    def add_densities(self, rhos: np.ndarray, pairs=PAIRS) -> None:
        for pair in pairs:
            ip, iq = AMPLITUDE_INDEX[pair[0]], AMPLITUDE_INDEX[pair[1]]
            self._add(rhos[..., ip, ip].real, rhos[..., iq, iq].real,
                      rhos[..., ip, iq])

    def _add(self, pop_eg, pop_ge, coh) -> None:
        pop_eg = np.atleast_1d(pop_eg)
        pop_ge = np.atleast_1d(pop_ge)
        coh = np.atleast_1d(coh)
        batch = np.zeros(pop_eg.shape + (4, 4), dtype=complex)
        batch[..., 1, 1] = pop_eg
        batch[..., 2, 2] = pop_ge
        batch[..., 1, 2] = coh
        batch[..., 2, 1] = np.conj(coh)
        batch[..., 3, 3] = 1.0 - pop_eg - pop_ge
        self.matrices.append(batch.reshape(-1, 4, 4))
        self.shortcut.append(np.minimum(1.0, 2.0 * np.abs(coh)).reshape(-1))


# --------------------------------------------------------------------------
# individual check groups
# --------------------------------------------------------------------------

def _coefficient_agreement(rng: np.random.Generator) -> list[CheckResult]:
    checks = []
    fields_of = ("g_ab", "g_cd", "gamma_ab", "gamma_cd")
    for preset in PRESETS:
        phis = rng.uniform(0.0, 2.0 * math.pi, 1000)
        gammas = rng.uniform(0.1, 2.0, 1000)
        worst = 0.0
        for phi, gamma in zip(phis, gammas):
            lhs = coefficients_for(preset, phi, gamma)
            rhs = coefficients_closed_form(preset, phi, gamma)
            for atom in ATOMS:
                worst = max(worst,
                            abs(lhs.lamb_shift[atom] - rhs.lamb_shift[atom]),
                            abs(lhs.gamma_individual[atom]
                                - rhs.gamma_individual[atom]))
            for name in fields_of:
                worst = max(worst, abs(getattr(lhs, name) - getattr(rhs, name)))
        checks.append(_deviation_check(
            f"coeff_agreement_{preset}", worst, 1e-12,
            "layout double sums vs closed forms, 1000 random (phi, gamma)"))
    return checks


def _analytic_curve_checks(collector: _XCollector) -> list[CheckResult]:
    checks = []
    t_grid = np.linspace(0.0, 20.0, 2000)

    cases = (
        ("braided", math.pi / 2, "braided"),
        ("small", 0.0, "small"),
        ("separated", 0.0, "separated"),
    )
    for config, phi, tag in cases:
        coeffs = coefficients_for(config, phi)
        xs = amplitude_series(coeffs, t_grid)
        collector.add_amplitudes(xs, pairs=_PRIMARY_PAIRS)
        for pair in _PRIMARY_PAIRS:
            simulated = pair_concurrence_from_amplitudes(xs, pair)
            reference = analytic_concurrence(config, pair, phi, t_grid)
            checks.append(_deviation_check(
                f"{tag}_match_{pair}", _max_abs(simulated - reference), 1e-10,
                f"2000 samples on gamma*t in [0, 20], phi={phi:.6g}"))

    # complete transfer in the braided lossless case
    coeffs = coefficients_for("braided", math.pi / 2)
    peak = find_peak(coeffs, "bd", t_horizon=10.0)
    checks.append(_value_check(
        "braided_transfer_max", 1.0, peak.value, 1e-9,
        f"peak at gamma*t={peak.t_at_peak:.6f}"))
    xs = amplitude_series(coeffs, t_grid)
    total = (pair_concurrence_from_amplitudes(xs, "ac")
             + pair_concurrence_from_amplitudes(xs, "bd"))
    checks.append(_deviation_check(
        "braided_transfer_sum", _max_abs(total - 1.0), 1e-10,
        "C_ac + C_bd stays 1 during lossless transfer"))

    # steady values of the dissipative relaxation cases
    late = np.array([20.0])
    coeffs = coefficients_for("small", 0.0)
    xs = amplitude_series(coeffs, late)
    worst = max(abs(float(pair_concurrence_from_amplitudes(xs, p)[0]) - 0.25)
                for p in _PRIMARY_PAIRS)
    checks.append(_deviation_check(
        "small_steady_value", worst, 1e-3,
        "all three pair concurrences at gamma*t=20 vs 1/4"))

    checks.append(_separated_rate_fit())
    return checks


def _separated_rate_fit() -> CheckResult:
    """Fit the relaxation rate of C_ac - 1/4 for the separated case at phi=0.

    The curve is a two-term family (2 e^{-r t} + e^{-2 r t})/4; a
    single-exponential fit would be biased by the fast term, so the fit is a
    one-parameter least-squares over the full family.
    """
    t_grid = np.linspace(0.0, 1.0, 501)
    coeffs = coefficients_for("separated", 0.0)
    xs = amplitude_series(coeffs, t_grid)
    observed = pair_concurrence_from_amplitudes(xs, "ac") - 0.25

    def sse(rate: float) -> float:
        model = 0.25 * (2.0 * np.exp(-rate * t_grid)
                        + np.exp(-2.0 * rate * t_grid))
        return -float(np.sum((observed - model) ** 2))

    rate, _ = _golden_max(sse, 1.0, 8.0, 1e-10)
    return _value_check(
        "separated_rate_fit", 4.0, rate, 0.04,
        "least-squares rate of the (2e^{-rt}+e^{-2rt})/4 family on "
        "gamma*t in [0, 1]")


def _decoupling_checks() -> list[CheckResult]:
    checks = []
    t_grid = np.linspace(0.0, 10.0, 501)
    for config in ("separated", "nested"):
        coeffs = coefficients_for(config, math.pi)
        xs = amplitude_series(coeffs, t_grid)
        dev = max(
            _max_abs(pair_concurrence_from_amplitudes(xs, "ac") - 1.0),
            _max_abs(pair_concurrence_from_amplitudes(xs, "bd")),
            _max_abs(pair_concurrence_from_amplitudes(xs, "ab")),
        )
        checks.append(_deviation_check(
            f"decoupled_{config}", dev, 1e-12,
            "phi=pi leaves the initial entanglement frozen"))
    return checks


def _nested_peak_checks() -> list[CheckResult]:
    checks = []

    def peak_value(phi: float, pair: str, horizon: float) -> float:
        coeffs = coefficients_for("nested", phi)
        return find_peak(coeffs, pair, t_horizon=horizon).value

    checks.append(_value_check(
        "nested_peak_bd_third", 0.33,
        peak_value(math.pi / 3, "bd", 50.0), 0.01))
    checks.append(_value_check(
        "nested_peak_bd_five_thirds", 0.33,
        peak_value(5 * math.pi / 3, "bd", 50.0), 0.01))
    checks.append(_value_check(
        "nested_peak_ab_third", 0.39,
        peak_value(math.pi / 3, "ab", 50.0), 0.01))

    ridge = peak_value(math.pi - 0.01, "bd", 200.0)
    checks.append(_value_check(
        "nested_ridge_probe", 0.42, ridge, 0.02,
        "known discrepancy: at phi=pi-0.01 the ridge value is 0.4735 "
        "(cross-checked against dense matrix exponentials and adaptive "
        "integration) and converges to 0.5 as phi -> pi, because the "
        "coherent half-swing transfers half the population when the "
        "detuning equals the coupling; the 0.42 reading corresponds to a "
        "coarser phase offset near pi/100, see nested_ridge_coarse_offset"))
    checks.append(_value_check(
        "nested_ridge_probe_half_offset", 0.486439,
        peak_value(math.pi - 0.005, "bd", 400.0), 0.005,
        "confirming probe at half the offset; trend toward the 0.5 limit"))
    checks.append(_value_check(
        "nested_ridge_coarse_offset", 0.424233,
        peak_value(math.pi - math.pi / 100, "bd", 200.0), 0.005,
        "ridge value at a phase offset of pi/100 reproduces the 0.42 "
        "reading of coarse phase grids"))
    return checks


def _engine_cross_validation(collector: _XCollector) -> list[CheckResult]:
    checks = []
    t_grid = np.linspace(0.0, 10.0, 501)
    equality_dev = 0.0
    trace_dev = 0.0
    herm_dev = 0.0
    most_negative = 0.0

    for preset in PRESETS:
        agreement = 0.0
        for phi in _CROSS_PHASES:
            coeffs = coefficients_for(preset, phi)
            xs = amplitude_series(coeffs, t_grid)
            rhos = density_series(coeffs, t_grid)
            collector.add_amplitudes(xs)
            collector.add_densities(rhos)

            amp = {p: pair_concurrence_from_amplitudes(xs, p) for p in PAIRS}
            lind = {p: pair_concurrence_from_density(rhos, p) for p in PAIRS}
            for pair in _PRIMARY_PAIRS:
                agreement = max(agreement, _max_abs(amp[pair] - lind[pair]))
            for series in (amp, lind):
                for pair in ("cd", "ad", "bc"):
                    equality_dev = max(equality_dev,
                                       _max_abs(series[pair] - series["ab"]))

            trace_dev = max(trace_dev, _max_abs(
                rhos.trace(axis1=1, axis2=2).real - 1.0))
            herm_dev = max(herm_dev, _max_abs(
                rhos - rhos.conj().transpose(0, 2, 1)))
            most_negative = min(most_negative,
                                float(np.min(np.linalg.eigvalsh(rhos))))

        checks.append(_deviation_check(
            f"engine_agreement_{preset}", agreement, 1e-6,
            "amplitude vs master-equation concurrences, 8 phases, "
            "pairs ac/bd/ab, 501 samples on gamma*t in [0, 10]"))

    checks.append(_deviation_check(
        "pair_equalities", equality_dev, 1e-10,
        "C_cd = C_ad = C_bc = C_ab across the cross-validation grid, "
        "both engines"))
    checks.append(_deviation_check("lindblad_trace", trace_dev, 1e-9))
    checks.append(_deviation_check("lindblad_hermiticity", herm_dev, 1e-10))
    checks.append(_deviation_check(
        "lindblad_positivity", max(0.0, -most_negative), 1e-9,
        f"most negative eigenvalue {most_negative:.3g}"))
    return checks


def _periodicity_checks(rng: np.random.Generator) -> list[CheckResult]:
    checks = []
    t_grid = np.linspace(0.0, 10.0, 201)
    phis = rng.uniform(0.0, 2.0 * math.pi, 50)

    def worst_shift(config: str, shift: float) -> float:
        worst = 0.0
        for phi in phis:
            base = amplitude_series(coefficients_for(config, phi), t_grid)
            moved = amplitude_series(coefficients_for(config, phi + shift),
                                     t_grid)
            for pair in PAIRS:
                worst = max(worst, _max_abs(
                    pair_concurrence_from_amplitudes(base, pair)
                    - pair_concurrence_from_amplitudes(moved, pair)))
        return worst

    for config in ("small", "braided"):
        checks.append(_deviation_check(
            f"periodicity_pi_{config}", worst_shift(config, math.pi), 1e-10,
            "C(phi + pi) = C(phi), 50 random phases, all pairs"))
    for config in PRESETS:
        checks.append(_deviation_check(
            f"periodicity_2pi_{config}",
            worst_shift(config, 2.0 * math.pi), 1e-10,
            "C(phi + 2pi) = C(phi), 50 random phases, all pairs"))
    return checks


def _random_x_matrices(rng: np.random.Generator, n: int) -> list[XStateMatrix]:
    pops = rng.dirichlet(np.ones(4), size=n)
    inner_frac = rng.uniform(0.0, 1.0, n)
    outer_frac = rng.uniform(0.0, 1.0, n)
    inner_phase = np.exp(1j * rng.uniform(0.0, 2.0 * math.pi, n))
    outer_phase = np.exp(1j * rng.uniform(0.0, 2.0 * math.pi, n))
    out = []
    for i in range(n):
        ee, eg, ge, gg = pops[i]
        out.append(XStateMatrix(
            pop_ee=ee, pop_eg=eg, pop_ge=ge, pop_gg=gg,
            coh_inner=inner_frac[i] * math.sqrt(eg * ge) * inner_phase[i],
            coh_outer=outer_frac[i] * math.sqrt(ee * gg) * outer_phase[i],
        ))
    return out


def _wootters_checks(rng: np.random.Generator,
                     collector: _XCollector) -> list[CheckResult]:
    checks = []
    randoms = _random_x_matrices(rng, 1000)
    batch = np.stack([x.matrix() for x in randoms])
    shortcut = np.array([concurrence_x(x) for x in randoms])
    generic = concurrence_wootters(batch)
    checks.append(_deviation_check(
        "wootters_vs_xstate_random", _max_abs(shortcut - generic), 1e-9,
        "1000 random valid X matrices"))

    matrices = np.concatenate(collector.matrices)
    shortcut = np.concatenate(collector.shortcut)
    generic = concurrence_wootters(matrices)
    checks.append(_deviation_check(
        "wootters_vs_xstate_reduced", _max_abs(shortcut - generic), 1e-9,
        f"{matrices.shape[0]} reduced matrices collected from the "
        "analytic-curve and cross-validation checks"))
    return checks


def run_all_checks(seed: int = DEFAULT_SEED) -> VerificationReport:
    """Run the complete suite; deterministic for a fixed seed."""
    rng = np.random.default_rng(seed)
    collector = _XCollector()
    checks: list[CheckResult] = []
    checks += _coefficient_agreement(rng)
    checks += _analytic_curve_checks(collector)
    checks += _decoupling_checks()
    checks += _nested_peak_checks()
    checks += _engine_cross_validation(collector)
    checks += _periodicity_checks(rng)
    checks += _wootters_checks(rng, collector)
    return VerificationReport(checks=checks)
