"""Classical trajectory synthesis from 1-D quantum probability densities.

For any normalized wavefunction the package constructs the classical
trajectory x(t) whose uniform-in-time position histogram reproduces
|psi(x)|^2, by inverting the cumulative integral of the density.  On top
of that single construction sit the momentum-space observables, the
velocity-PDF pathology diagnostic, the effective potential obeying
Newton's second law, the time-marginal reduction for non-stationary
states, and a Bohmian-trajectory comparison.
"""

from .wavefunctions import (DEFAULT_N_POINTS, GridDomain, OutOfDomainError,
                            PhysicalParams, TimeDependentWaveFunction,
                            WaveFunction, box_eigenstate, box_energy,
                            from_callable, plane_wave, stationary,
                            superposition, tabulated)
from .trajectory import (CumulativeMap, SuperluminalReport, Trajectory,
                         cumulative, ensemble, invert, min_period_for_cap,
                         position_at, sample_trajectory, superluminal_measure,
                         velocity_at)
from .nonstationary import MarginalDensity, time_marginal, trajectory_from_marginal
from .observables import (EffectivePotentialTable, MomentumAmplitude,
                          UncertaintyReport, VelocityPdf,
                          classical_velocity_pdf, effective_potential,
                          effective_potential_marginal, momentum_amplitude,
                          newton_residual, phase_roundtrip, uncertainty_product)
from .bohm import (BohmTrajectory, DivergenceReport, NodeError,
                   bohm_trajectory, bohm_velocity, compare,
                   probability_current)
from .verify import (Histogram, MatchReport, chi_square, histogram,
                     l1_distance, pdf_match_report)

__version__ = "0.1.0"

__all__ = [
    "DEFAULT_N_POINTS", "GridDomain", "OutOfDomainError", "PhysicalParams",
    "TimeDependentWaveFunction", "WaveFunction", "box_eigenstate",
    "box_energy", "from_callable", "plane_wave", "stationary",
    "superposition", "tabulated",
    "CumulativeMap", "SuperluminalReport", "Trajectory", "cumulative",
    "ensemble", "invert", "min_period_for_cap", "position_at",
    "sample_trajectory", "superluminal_measure", "velocity_at",
    "MarginalDensity", "time_marginal", "trajectory_from_marginal",
    "EffectivePotentialTable", "MomentumAmplitude", "UncertaintyReport",
    "VelocityPdf", "classical_velocity_pdf", "effective_potential",
    "effective_potential_marginal", "momentum_amplitude", "newton_residual",
    "phase_roundtrip", "uncertainty_product",
    "BohmTrajectory", "DivergenceReport", "NodeError", "bohm_trajectory",
    "bohm_velocity", "compare", "probability_current",
    "Histogram", "MatchReport", "chi_square", "histogram", "l1_distance",
    "pdf_match_report",
    "__version__",
]
