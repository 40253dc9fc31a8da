"""Phonon-induced quantum discord between two quantum-dot excitonic qubits."""

__version__ = "0.1.0"

from .correlations import (BlochDecomposition, DiscordReport, bloch_decompose, concurrence,
                           discord_report, geometric_discord_lower, geometric_discord_upper,
                           initial_x_discord, purity, rescaled_discord, x_state_geometric_discord)
from .dynamics import (PropagationSettings, TwoQubitState, initial_x_from_alpha,
                       normalized_coherences, propagate, pure_product_state, x_state)
from .errors import ConfigError, ResolutionError, StateError
from .oracle import MeasurementGrid, oracle_one_sided, sandwich_check
from .phonon_spectral import (BathSpec, DephasingKernel, MaterialParams, SpectralGrid,
                              asymptotic_b, compute_kernel, coupling_density, thermal_factor)
