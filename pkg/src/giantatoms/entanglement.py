"""Pair reductions and concurrence.

Every reduced two-qubit state produced by the single-excitation dynamics has
X form on the ordered basis (ee, eg, ge, gg): populations on the diagonal and
the single eg-ge coherence off it (the double-excitation population and the
ee-gg coherence vanish identically).  Concurrence is available both through
the X-state shortcut and through the generic spin-flip eigenvalue formula;
the two must agree and are cross-checked in the test suite.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .layouts import AMPLITUDE_INDEX

PAIRS = ("ac", "bd", "ab", "cd", "ad", "bc")

# sigma_y tensor sigma_y, the spin-flip kernel (real in this basis)
_SPIN_FLIP = np.array([
    [0.0, 0.0, 0.0, -1.0],
    [0.0, 0.0, 1.0, 0.0],
    [0.0, 1.0, 0.0, 0.0],
    [-1.0, 0.0, 0.0, 0.0],
])


def _pair_indices(pair: str) -> tuple[int, int]:
    if pair not in PAIRS:
        raise ValueError(f"unknown atom pair {pair!r}")
    return AMPLITUDE_INDEX[pair[0]], AMPLITUDE_INDEX[pair[1]]


@dataclass(frozen=True)
class XStateMatrix:
    """Two-qubit X-form density matrix on the basis (ee, eg, ge, gg).

    pop_* are the diagonal populations; coh_inner is the eg-ge coherence and
    coh_outer the ee-gg coherence.
    """

    pop_ee: float
    pop_eg: float
    pop_ge: float
    pop_gg: float
    coh_inner: complex
    coh_outer: complex = 0.0

    def matrix(self) -> np.ndarray:
        z = complex(self.coh_inner)
        w = complex(self.coh_outer)
        return np.array([
            [self.pop_ee, 0.0, 0.0, w],
            [0.0, self.pop_eg, z, 0.0],
            [0.0, np.conj(z), self.pop_ge, 0.0],
            [np.conj(w), 0.0, 0.0, self.pop_gg],
        ], dtype=complex)

    def validate(self, tol: float = 1e-12) -> None:
        """Raise if populations or coherences are unphysical beyond tol."""
        pops = (self.pop_ee, self.pop_eg, self.pop_ge, self.pop_gg)
        if min(pops) < -tol:
            raise ValueError("negative population")
        if abs(sum(pops) - 1.0) > 1e-9:
            raise ValueError("populations do not sum to one")
        if abs(self.coh_inner) ** 2 > self.pop_eg * self.pop_ge + tol:
            raise ValueError("eg-ge coherence exceeds its population bound")
        if abs(self.coh_outer) ** 2 > self.pop_ee * self.pop_gg + tol:
            raise ValueError("ee-gg coherence exceeds its population bound")


def reduce_from_amplitudes(state, pair: str) -> XStateMatrix:
    """Reduced pair state from single-excitation amplitudes.

    Accepts an AmplitudeState or a length-4 amplitude array.  The leftover
    population (other excited states plus the decayed ground component) is
    folded into pop_gg so the matrix has unit trace.
    """
    x = state.as_array() if hasattr(state, "as_array") else np.asarray(state, dtype=complex)
    ip, iq = _pair_indices(pair)
    pop_eg = float(abs(x[ip]) ** 2)
    pop_ge = float(abs(x[iq]) ** 2)
    return XStateMatrix(
        pop_ee=0.0,
        pop_eg=pop_eg,
        pop_ge=pop_ge,
        pop_gg=1.0 - pop_eg - pop_ge,
        coh_inner=complex(x[ip] * np.conj(x[iq])),
    )


def reduce_from_density(rho: np.ndarray, pair: str) -> XStateMatrix:
    """Reduced pair state from the 5x5 density matrix (partial trace)."""
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (5, 5):
        raise ValueError("density matrix must be 5x5")
    if np.max(np.abs(rho - rho.conj().T)) > 1e-10:
        raise ValueError("density matrix is not Hermitian")
    if abs(rho.trace().real - 1.0) > 1e-9:
        raise ValueError("density matrix trace deviates from one")
    ip, iq = _pair_indices(pair)
    pop_eg = float(rho[ip, ip].real)
    pop_ge = float(rho[iq, iq].real)
    return XStateMatrix(
        pop_ee=0.0,
        pop_eg=pop_eg,
        pop_ge=pop_ge,
        pop_gg=1.0 - pop_eg - pop_ge,
        coh_inner=complex(rho[ip, iq]),
    )


def concurrence_x(x: XStateMatrix) -> float:
    """X-state concurrence, clipped to the physical range [0, 1]."""
    inner = abs(x.coh_inner) - math.sqrt(max(0.0, x.pop_ee * x.pop_gg))
    outer = abs(x.coh_outer) - math.sqrt(max(0.0, x.pop_eg * x.pop_ge))
    return min(1.0, 2.0 * max(0.0, inner, outer))


def concurrence_wootters(rho4: np.ndarray) -> float | np.ndarray:
    """Concurrence from the spin-flip eigenvalue formula.

    rho4 may be a single 4x4 density matrix or a stacked array (..., 4, 4);
    the return value is scalar or (...,) accordingly.  Inputs must be
    Hermitian, unit-trace, and positive semidefinite within 1e-9.

    The square roots of the spin-flip product's eigenvalues are obtained as
    the singular values of sqrt(rho) S conj(sqrt(rho)): computing them in
    rooted form avoids the sqrt-of-noise blowup that plagues the direct
    eigenvalue route whenever the product is rank deficient, which is the
    generic situation for states reduced from a single excitation.
    """
    rho = np.asarray(rho4, dtype=complex)
    if rho.shape[-2:] != (4, 4):
        raise ValueError("expected 4x4 density matrices")
    scalar = rho.ndim == 2
    rho = rho.reshape((-1, 4, 4))

    if np.max(np.abs(rho - rho.conj().transpose(0, 2, 1))) > 1e-9:
        raise ValueError("invalid density matrix: not Hermitian")
    if np.max(np.abs(rho.trace(axis1=1, axis2=2).real - 1.0)) > 1e-9:
        raise ValueError("invalid density matrix: trace deviates from one")

    spectra, basis = np.linalg.eigh(rho)
    if np.min(spectra) < -1e-9:
        raise ValueError("invalid density matrix: negative eigenvalue")
    spectra = np.clip(spectra, 0.0, None)
    root = (basis * np.sqrt(spectra)[..., None, :]) @ np.conj(
        np.swapaxes(basis, -1, -2))
    flipped = root @ _SPIN_FLIP @ np.conj(root)
    singulars = np.linalg.svd(flipped, compute_uv=False)  # descending
    c = np.clip(singulars[:, 0] - singulars[:, 1] - singulars[:, 2]
                - singulars[:, 3], 0.0, 1.0)
    return float(c[0]) if scalar else c


def pair_concurrence_from_amplitudes(xs: np.ndarray, pair: str) -> np.ndarray:
    """Vectorized concurrence 2 |x_p x_q*| from amplitudes of shape (..., 4).

    Exactly concurrence_x(reduce_from_amplitudes(...)) for every entry: the
    double-excitation population is zero, so only the coherence term enters.
    """
    ip, iq = _pair_indices(pair)
    xs = np.asarray(xs, dtype=complex)
    return np.minimum(1.0, 2.0 * np.abs(xs[..., ip] * np.conj(xs[..., iq])))


def pair_concurrence_from_density(rhos: np.ndarray, pair: str) -> np.ndarray:
    """Vectorized concurrence 2 |rho_pq| from density matrices (..., 5, 5)."""
    ip, iq = _pair_indices(pair)
    rhos = np.asarray(rhos, dtype=complex)
    return np.minimum(1.0, 2.0 * np.abs(rhos[..., ip, iq]))
