"""Entanglement transfer between atom pairs coupled to two 1-D waveguides."""

__version__ = "0.1.0"

from .analytic import analytic_concurrence, has_analytic_case
from .coefficients import (
    CoefficientSet,
    coefficients_closed_form,
    coefficients_for,
    coefficients_from_layout,
)
from .dynamics import (
    AmplitudeState,
    BlockHamiltonian,
    LindbladTrajectory,
    amplitude_series,
    density_series,
    effective_hamiltonian,
    evolve_amplitudes,
    integrate_lindblad,
    lindblad_rhs,
)
from .entanglement import (
    PAIRS,
    XStateMatrix,
    concurrence_wootters,
    concurrence_x,
    reduce_from_amplitudes,
    reduce_from_density,
)
from .layouts import (
    ATOMS,
    PRESETS,
    ConnectionLayout,
    layout_from_dict,
    load_layout,
    preset_layout,
)
from .sweeps import EvolutionSeries, PeakReport, SweepGrid, evolve_series, find_peak, sweep_grid
from .verification import CheckResult, VerificationReport, run_all_checks

__all__ = [
    "__version__",
    "analytic_concurrence",
    "has_analytic_case",
    "CoefficientSet",
    "coefficients_closed_form",
    "coefficients_for",
    "coefficients_from_layout",
    "AmplitudeState",
    "BlockHamiltonian",
    "LindbladTrajectory",
    "amplitude_series",
    "density_series",
    "effective_hamiltonian",
    "evolve_amplitudes",
    "integrate_lindblad",
    "lindblad_rhs",
    "PAIRS",
    "XStateMatrix",
    "concurrence_wootters",
    "concurrence_x",
    "reduce_from_amplitudes",
    "reduce_from_density",
    "ATOMS",
    "PRESETS",
    "ConnectionLayout",
    "layout_from_dict",
    "load_layout",
    "preset_layout",
    "EvolutionSeries",
    "PeakReport",
    "SweepGrid",
    "evolve_series",
    "find_peak",
    "sweep_grid",
    "CheckResult",
    "VerificationReport",
    "run_all_checks",
]
