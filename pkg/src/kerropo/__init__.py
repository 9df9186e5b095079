"""kerropo: truncated Fock-space simulation of number-selective parametric
oscillation in Kerr resonators, plus the material feasibility calculator."""

from ._backend import COMPILED, backend_name
from .hamiltonians import (
    DetuningWeights,
    KerrSystem,
    PumpModel,
    ShapingParams,
    chain_hamiltonian,
    detuning_weights,
    h0_diagonal,
    kerr_frequency,
    kerr_rotation_phases,
    two_mode_hamiltonian,
    xi_parameter,
)
from .materials import ConstraintReport, MaterialSpec, figure_of_merit, full_report
from .observables import (
    NumberDistribution,
    PeakReport,
    WignerGrid,
    detect_peaks,
    fidelity,
    number_distribution,
    predicted_spacing,
    purity,
    purity_estimate,
    quadrant_weights,
    sinc_envelope,
    wigner,
)
from .propagate import (
    EvolveConfig,
    LossConfig,
    apply_kerr_rotation,
    evolve_chain,
    evolve_chain_exact,
    evolve_lindblad,
    evolve_three_mode,
    schedule_evolve,
)
from .states import (
    ChainState,
    ThreeModeState,
    TwoModeDensityMatrix,
    TwoModeState,
    coherent_chain,
    coherent_pump_product,
    embed_chain,
    extract_chain,
    pure_to_density,
    squeezed_vacuum_chain,
    uniform_chain,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
