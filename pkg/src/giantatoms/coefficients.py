"""Master-equation coefficients as functions of the phase shift.

Two routes produce the same numbers and are kept deliberately independent so
each can check the other:

* ``coefficients_from_layout`` evaluates the generic double sums over
  connection-point pairs, phase phi * |p_n - p_m| per pair: Lamb shifts and
  exchange couplings collect (gamma/2) sin terms, individual and collective
  decays collect gamma cos terms.  Self pairs (n = m) contribute sin 0 = 0 to
  the shifts and cos 0 = 1, i.e. gamma per point, to the decays.
* ``coefficients_closed_form`` evaluates the per-configuration trigonometric
  expressions verbatim.

Individual decays are sums |sum_n exp(i phi p_n)|^2 and therefore cannot be
negative for any layout; the check below guards custom inputs against
numerical surprises anyway.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .layouts import ATOMS, WAVEGUIDE_PAIRS, ConnectionLayout, preset_layout

_NEGATIVE_DECAY_TOL = -1e-12


@dataclass(frozen=True)
class CoefficientSet:
    """All rates entering the dynamics, in units fixed by gamma.

    lamb_shift and gamma_individual map atom labels to the per-atom Lamb
    shift and decay rate; g_ab / g_cd are the intra-waveguide exchange
    couplings and gamma_ab / gamma_cd the collective decays.  gamma is the
    per-connection-point radiative rate and phi the phase shift the set was
    evaluated at.
    """

    lamb_shift: dict[str, float]
    g_ab: float
    g_cd: float
    gamma_individual: dict[str, float]
    gamma_ab: float
    gamma_cd: float
    gamma: float
    phi: float

    def as_dict(self) -> dict:
        return {
            "lamb_shift": dict(self.lamb_shift),
            "g_ab": self.g_ab,
            "g_cd": self.g_cd,
            "gamma_individual": dict(self.gamma_individual),
            "gamma_ab": self.gamma_ab,
            "gamma_cd": self.gamma_cd,
            "gamma": self.gamma,
            "phi": self.phi,
        }

    def max_rate(self) -> float:
        """Largest rate magnitude, used to pick integrator steps."""
        rates = [self.gamma, abs(self.g_ab), abs(self.g_cd),
                 abs(self.gamma_ab), abs(self.gamma_cd)]
        rates += [abs(v) for v in self.lamb_shift.values()]
        rates += [abs(v) for v in self.gamma_individual.values()]
        return max(rates)


def _check_inputs(phi: float, gamma: float) -> None:
    if not (math.isfinite(phi) and math.isfinite(gamma)):
        raise ValueError("phi and gamma must be finite")
    if gamma <= 0.0:
        raise ValueError("gamma must be positive")


def coefficients_from_layout(layout: ConnectionLayout, phi: float,
                             gamma: float = 1.0) -> CoefficientSet:
    """Evaluate the generic pairwise-phase sums for an arbitrary layout."""
    _check_inputs(phi, gamma)
    lamb = {}
    decay = {}
    for atom in ATOMS:
        pts = layout.points[atom]
        shift = 0.0
        rate = 0.0
        for pn in pts:
            for pm in pts:
                d = abs(pn - pm)
                shift += 0.5 * gamma * math.sin(phi * d)
                rate += gamma * math.cos(phi * d)
        if rate < _NEGATIVE_DECAY_TOL:
            raise ValueError(f"unphysical individual decay for atom {atom!r}")
        lamb[atom] = shift
        decay[atom] = rate

    exchange = {}
    collective = {}
    for lhs, rhs in WAVEGUIDE_PAIRS:
        g = 0.0
        rate = 0.0
        for pn in layout.points[lhs]:
            for pm in layout.points[rhs]:
                d = abs(pn - pm)
                g += 0.5 * gamma * math.sin(phi * d)
                rate += gamma * math.cos(phi * d)
        exchange[lhs + rhs] = g
        collective[lhs + rhs] = rate

    return CoefficientSet(
        lamb_shift=lamb,
        g_ab=exchange["ab"],
        g_cd=exchange["cd"],
        gamma_individual=decay,
        gamma_ab=collective["ab"],
        gamma_cd=collective["cd"],
        gamma=gamma,
        phi=phi,
    )


def coefficients_closed_form(config: str, phi: float,
                             gamma: float = 1.0) -> CoefficientSet:
    """Evaluate the per-preset trigonometric expressions directly."""
    _check_inputs(phi, gamma)
    sin, cos = math.sin, math.cos

    if config == "small":
        lamb = {atom: 0.0 for atom in ATOMS}
        g = 0.5 * gamma * sin(phi)
        decay = {atom: gamma for atom in ATOMS}
        coll = gamma * cos(phi)
    elif config == "separated":
        lamb = {atom: gamma * sin(phi) for atom in ATOMS}
        g = 0.5 * gamma * (sin(phi) + 2.0 * sin(2.0 * phi) + sin(3.0 * phi))
        decay = {atom: 2.0 * gamma + 2.0 * gamma * cos(phi) for atom in ATOMS}
        coll = gamma * (cos(phi) + 2.0 * cos(2.0 * phi) + cos(3.0 * phi))
    elif config == "braided":
        lamb = {atom: gamma * sin(2.0 * phi) for atom in ATOMS}
        g = 0.5 * gamma * (3.0 * sin(phi) + sin(3.0 * phi))
        decay = {atom: 2.0 * gamma + 2.0 * gamma * cos(2.0 * phi) for atom in ATOMS}
        coll = gamma * (3.0 * cos(phi) + cos(3.0 * phi))
    elif config == "nested":
        # outer atoms (a, c) span three spacings, inner atoms (b, d) one
        outer_shift = gamma * sin(3.0 * phi)
        inner_shift = gamma * sin(phi)
        lamb = {"a": outer_shift, "c": outer_shift,
                "b": inner_shift, "d": inner_shift}
        g = gamma * (sin(phi) + sin(2.0 * phi))
        outer_decay = 2.0 * gamma + 2.0 * gamma * cos(3.0 * phi)
        inner_decay = 2.0 * gamma + 2.0 * gamma * cos(phi)
        decay = {"a": outer_decay, "c": outer_decay,
                 "b": inner_decay, "d": inner_decay}
        coll = 2.0 * gamma * (cos(phi) + cos(2.0 * phi))
    else:
        raise ValueError("closed-form coefficients require a named preset")

    return CoefficientSet(
        lamb_shift=lamb,
        g_ab=g,
        g_cd=g,
        gamma_individual=decay,
        gamma_ab=coll,
        gamma_cd=coll,
        gamma=gamma,
        phi=phi,
    )


def coefficients_for(config: str, phi: float, gamma: float = 1.0,
                     layout: ConnectionLayout | None = None) -> CoefficientSet:
    """Resolve a configuration name (or custom layout) to a coefficient set.

    Presets go through the layout engine; "custom" requires an explicit
    layout.
    """
    if config == "custom":
        if layout is None:
            raise ValueError("custom configuration requires a layout")
        return coefficients_from_layout(layout, phi, gamma)
    return coefficients_from_layout(preset_layout(config), phi, gamma)
