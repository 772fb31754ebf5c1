"""Time evolution of the four-atom single-excitation system.

Two engines evolve the same initial state (e_a + s * e_c)/sqrt(2) with
s = +-1:

* the amplitude engine applies closed-form 2x2 exponentials of the
  non-Hermitian blocks, exact up to floating point;
* the Lindblad engine integrates the full 5x5 density-matrix master equation
  with a fixed-step classical 4th-order scheme.

Basis ordering is fixed throughout the package: amplitudes (x1, x2, x3, x4)
belong to the singly excited states (e_a, e_c, e_b, e_d), and the density
matrix appends the global ground state as index 4.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .coefficients import CoefficientSet
from .layouts import AMPLITUDE_INDEX, GROUND_INDEX

INV_SQRT2 = 1.0 / math.sqrt(2.0)

# relative discriminant size below which a block is treated as defective
_DEFECTIVE_TOL = 1e-12


@dataclass(frozen=True)
class AmplitudeState:
    """Single-excitation amplitudes at one time."""

    x1: complex
    x2: complex
    x3: complex
    x4: complex
    t: float

    @property
    def norm(self) -> float:
        """Total excited-state population, in [0, 1] for physical rates."""
        return (abs(self.x1) ** 2 + abs(self.x2) ** 2
                + abs(self.x3) ** 2 + abs(self.x4) ** 2)

    def as_array(self) -> np.ndarray:
        return np.array([self.x1, self.x2, self.x3, self.x4], dtype=complex)


@dataclass(frozen=True)
class BlockHamiltonian:
    """The two decoupled 2x2 non-Hermitian blocks of the effective Hamiltonian.

    block_ab acts on (x1, x3) and block_cd on (x2, x4); both are complex
    symmetric: diagonal lamb_shift - i*gamma_individual/2, off-diagonal
    g - i*gamma_collective/2.
    """

    block_ab: np.ndarray
    block_cd: np.ndarray


def effective_hamiltonian(coeffs: CoefficientSet) -> BlockHamiltonian:
    """Assemble the non-Hermitian blocks from a coefficient set."""
    def block(j, k, g, coll):
        diag_j = coeffs.lamb_shift[j] - 0.5j * coeffs.gamma_individual[j]
        diag_k = coeffs.lamb_shift[k] - 0.5j * coeffs.gamma_individual[k]
        off = g - 0.5j * coll
        return np.array([[diag_j, off], [off, diag_k]], dtype=complex)

    return BlockHamiltonian(
        block_ab=block("a", "b", coeffs.g_ab, coeffs.gamma_ab),
        block_cd=block("c", "d", coeffs.g_cd, coeffs.gamma_cd),
    )


def _block_propagators(block: np.ndarray, times: np.ndarray) -> np.ndarray:
    """exp(-i * block * t) for an array of times, shape (..., 2, 2).

    The block is complex symmetric, so with mean diagonal m and traceless
    part T (T^2 = mu^2 * I) the exponential is a combination of the two
    eigenphases exp(-i (m +- mu) t).  Working with the eigenphases directly
    keeps every factor bounded for decaying systems even at large t, where
    the equivalent cos/sinc form would overflow.  Near an exceptional point
    (discriminant small against the block norm) the Jordan limit
    exp(-i m t) (I - i t T) is used instead.
    """
    t = np.asarray(times, dtype=float)
    m00, m01, m11 = block[0, 0], block[0, 1], block[1, 1]
    mean = 0.5 * (m00 + m11)
    traceless = np.array([[0.5 * (m00 - m11), m01],
                          [m01, -0.5 * (m00 - m11)]], dtype=complex)
    identity = np.eye(2, dtype=complex)

    disc = (m00 - m11) ** 2 + 4.0 * m01 * m01
    norm_sq = abs(m00) ** 2 + 2.0 * abs(m01) ** 2 + abs(m11) ** 2
    if abs(disc) <= _DEFECTIVE_TOL * norm_sq:
        phase = np.exp(-1j * mean * t)
        return (phase[..., None, None]
                * (identity - 1j * t[..., None, None] * traceless))

    mu = np.sqrt(0.25 * disc)
    upper = np.exp(-1j * (mean + mu) * t)
    lower = np.exp(-1j * (mean - mu) * t)
    even = 0.5 * (upper + lower)
    odd = 0.5 * (upper - lower) / mu
    return (even[..., None, None] * identity
            + odd[..., None, None] * traceless)


def _check_initial_sign(initial_sign: int) -> int:
    if initial_sign not in (1, -1):
        raise ValueError("initial_sign must be +1 or -1")
    return initial_sign


def amplitude_series(coeffs: CoefficientSet, times, initial_sign: int = 1) -> np.ndarray:
    """Amplitudes (x1, x2, x3, x4) at each time, shape (..., 4).

    (x1, x3) come from block_ab applied to (1/sqrt(2), 0) and (x2, x4) from
    block_cd applied to (initial_sign/sqrt(2), 0).
    """
    sign = _check_initial_sign(initial_sign)
    t = np.asarray(times, dtype=float)
    if np.any(t < 0.0):
        raise ValueError("time must be non-negative")
    blocks = effective_hamiltonian(coeffs)
    u_ab = _block_propagators(blocks.block_ab, t)
    u_cd = _block_propagators(blocks.block_cd, t)
    x = np.empty(t.shape + (4,), dtype=complex)
    x[..., 0] = u_ab[..., 0, 0] * INV_SQRT2
    x[..., 2] = u_ab[..., 1, 0] * INV_SQRT2
    x[..., 1] = u_cd[..., 0, 0] * (sign * INV_SQRT2)
    x[..., 3] = u_cd[..., 1, 0] * (sign * INV_SQRT2)
    return x


def evolve_amplitudes(coeffs: CoefficientSet, t: float,
                      initial_sign: int = 1) -> AmplitudeState:
    """State at a single time t >= 0."""
    x = amplitude_series(coeffs, float(t), initial_sign)
    return AmplitudeState(x1=complex(x[0]), x2=complex(x[1]),
                          x3=complex(x[2]), x4=complex(x[3]), t=float(t))


# ---------------------------------------------------------------------------
# Lindblad engine on the 5-dimensional single-excitation + ground space
# ---------------------------------------------------------------------------

def hamiltonian_matrix(coeffs: CoefficientSet) -> np.ndarray:
    """Hermitian Hamiltonian embedded in the 5-dim space (ground row/col zero)."""
    h = np.zeros((5, 5), dtype=complex)
    for atom, shift in coeffs.lamb_shift.items():
        i = AMPLITUDE_INDEX[atom]
        h[i, i] = shift
    ia, ib = AMPLITUDE_INDEX["a"], AMPLITUDE_INDEX["b"]
    ic, idx = AMPLITUDE_INDEX["c"], AMPLITUDE_INDEX["d"]
    h[ia, ib] = h[ib, ia] = coeffs.g_ab
    h[ic, idx] = h[idx, ic] = coeffs.g_cd
    return h


def decay_matrix(coeffs: CoefficientSet) -> np.ndarray:
    """Hermitian matrix K collecting individual and collective decay rates.

    The dissipator is -1/2 {K, rho} plus the refilling term Tr(K rho) into
    the ground state, which reproduces the individual and cross jump terms
    of the master equation.
    """
    k = np.zeros((5, 5), dtype=complex)
    for atom, rate in coeffs.gamma_individual.items():
        i = AMPLITUDE_INDEX[atom]
        k[i, i] = rate
    ia, ib = AMPLITUDE_INDEX["a"], AMPLITUDE_INDEX["b"]
    ic, idx = AMPLITUDE_INDEX["c"], AMPLITUDE_INDEX["d"]
    k[ia, ib] = k[ib, ia] = coeffs.gamma_ab
    k[ic, idx] = k[idx, ic] = coeffs.gamma_cd
    return k


def lindblad_rhs(coeffs: CoefficientSet, rho: np.ndarray) -> np.ndarray:
    """d(rho)/dt for the 5x5 density matrix."""
    rho = np.asarray(rho, dtype=complex)
    h = hamiltonian_matrix(coeffs)
    k = decay_matrix(coeffs)
    out = -1j * (h @ rho - rho @ h)
    out -= 0.5 * (k @ rho + rho @ k)
    out[GROUND_INDEX, GROUND_INDEX] += np.trace(k @ rho)
    return out


def liouvillian(coeffs: CoefficientSet) -> np.ndarray:
    """The 25x25 generator acting on row-major vectorized density matrices.

    Built column by column from lindblad_rhs so the two stay consistent by
    construction.
    """
    gen = np.zeros((25, 25), dtype=complex)
    basis = np.zeros((5, 5), dtype=complex)
    for idx in range(25):
        basis.flat[idx] = 1.0
        gen[:, idx] = lindblad_rhs(coeffs, basis).reshape(25)
        basis.flat[idx] = 0.0
    return gen


def initial_density(initial_sign: int = 1) -> np.ndarray:
    """rho(0) for the maximally entangled a-c initial state."""
    sign = _check_initial_sign(initial_sign)
    psi = np.zeros(5, dtype=complex)
    psi[AMPLITUDE_INDEX["a"]] = INV_SQRT2
    psi[AMPLITUDE_INDEX["c"]] = sign * INV_SQRT2
    return np.outer(psi, psi.conj())


def default_timestep(coeffs: CoefficientSet) -> float:
    """1e-3 over the largest rate in the set (includes gamma itself)."""
    return 1e-3 / coeffs.max_rate()


@dataclass(frozen=True)
class LindbladTrajectory:
    """Density matrices sampled at every integrator step."""

    times: np.ndarray   # (n+1,)
    rhos: np.ndarray    # (n+1, 5, 5)


def integrate_lindblad(coeffs: CoefficientSet, t_max: float,
                       dt: float | None = None,
                       initial_sign: int = 1) -> LindbladTrajectory:
    """Fixed-step 4th-order integration of the master equation.

    Samples are returned at every step, t = 0 included.  If dt does not
    divide t_max it is shrunk to t_max / ceil(t_max / dt) so the grid ends
    exactly at t_max.  After each step the state is re-Hermitized and, if the
    trace has drifted by more than 1e-12, renormalized.  A negative
    eigenvalue below -1e-6 at any checked step aborts with advice to reduce
    dt.

    For the constant generator L the classical 4-stage update collapses to
    one application of the quartic Taylor polynomial of exp(dt * L), which is
    what the loop applies.
    """
    if t_max <= 0.0:
        raise ValueError("t_max must be positive")
    if dt is None:
        dt = default_timestep(coeffs)
    if not (dt > 0.0):
        raise ValueError("dt must be positive")

    ratio = t_max / dt
    if abs(ratio - round(ratio)) <= 1e-9 * max(1.0, ratio):
        n_steps = int(round(ratio))  # dt was meant to divide t_max exactly
    else:
        n_steps = math.ceil(ratio)
    n_steps = max(1, n_steps)
    step = t_max / n_steps

    gen = liouvillian(coeffs)
    a = step * gen
    propagator = np.eye(25, dtype=complex)
    term = np.eye(25, dtype=complex)
    for order in range(1, 5):
        term = term @ a / order
        propagator = propagator + term

    rho = initial_density(initial_sign)
    rhos = np.empty((n_steps + 1, 5, 5), dtype=complex)
    rhos[0] = rho
    vec = rho.reshape(25)

    eig_check_every = max(1, n_steps // 500)
    for i in range(1, n_steps + 1):
        vec = propagator @ vec
        rho = vec.reshape(5, 5)
        rho = 0.5 * (rho + rho.conj().T)
        trace = rho.trace().real
        if abs(trace - 1.0) > 1e-12:
            rho = rho / trace
        rhos[i] = rho
        vec = rho.reshape(25)
        if i % eig_check_every == 0 or i == n_steps:
            if np.linalg.eigvalsh(rho)[0] < -1e-6:
                raise ValueError(
                    "density matrix lost positivity; the time step is too "
                    "large, reduce dt")

    times = np.arange(n_steps + 1) * step
    times[-1] = t_max
    return LindbladTrajectory(times=times, rhos=rhos)


def density_series(coeffs: CoefficientSet, times, dt: float | None = None,
                   initial_sign: int = 1) -> np.ndarray:
    """Density matrices at the requested uniform grid, shape (n, 5, 5).

    The grid must start at 0 and be uniformly spaced; the integrator step is
    chosen as an exact divisor of the grid spacing no larger than the default
    step, so every requested time is hit by a whole number of steps.
    """
    t = np.asarray(times, dtype=float)
    if t.ndim != 1 or t.size < 2:
        raise ValueError("times must be a 1-d grid with at least two points")
    if abs(t[0]) > 1e-15:
        raise ValueError("times must start at 0")
    spacing = t[1] - t[0]
    if spacing <= 0 or np.max(np.abs(np.diff(t) - spacing)) > 1e-9 * spacing:
        raise ValueError("times must be uniformly increasing")

    if dt is None:
        dt = default_timestep(coeffs)
    sub_ratio = spacing / dt
    if abs(sub_ratio - round(sub_ratio)) <= 1e-9 * max(1.0, sub_ratio):
        substeps = max(1, int(round(sub_ratio)))
    else:
        substeps = max(1, math.ceil(sub_ratio))
    traj = integrate_lindblad(coeffs, t_max=float(t[-1]),
                              dt=spacing / substeps,
                              initial_sign=initial_sign)
    return traj.rhos[::substeps]
