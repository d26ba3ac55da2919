"""Time-marginal position density for non-stationary states.

A superposition Psi(x,t) has a breathing density.  Averaging it
uniformly over a window (t_start, t_start + T_avg) produces a single
marginal density p_X(x), which then drives the trajectory machinery
exactly as |psi|^2 does in the stationary case.  Over a full beat period
the oscillating cross terms integrate away and the marginal collapses to
the weighted sum of component densities.

The averaging window is decoupled from the traversal period T: the
marginal only requires uniform sampling in time over the window, so
T_avg is a free parameter (default equal to T in the command layer).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np
from scipy.interpolate import PchipInterpolator

from . import quadrature, trajectory
from .wavefunctions import (GridDomain, PhysicalParams, TimeDependentWaveFunction,
                            WaveFunction)

MARGINAL_NORM_TOL = 1e-6
DEFAULT_N_T = 257


class MarginalDensity:
    """Normalized time-averaged density table on a grid domain.

    Quacks like a state for the trajectory engine: exposes ``domain``,
    ``density(x)`` and ``density_grid()``, so cumulative maps, sampled
    trajectories and effective potentials accept it directly.
    """

    def __init__(self, domain: GridDomain, values: np.ndarray,
                 window: Tuple[float, float] = (0.0, 0.0)):
        values = np.asarray(values, dtype=float)
        if values.shape != (domain.n_points,):
            raise ValueError("values must match the domain grid")
        if np.any(values < 0):
            raise ValueError("density table must be non-negative")
        norm = quadrature.integrate(values, domain.dx)
        if abs(norm - 1.0) > MARGINAL_NORM_TOL:
            raise ValueError(f"marginal not normalized: integral = {norm!r}")
        self.domain = domain
        self.values = values
        self.window = window
        self._interp = PchipInterpolator(domain.grid(), values)

    @classmethod
    def from_stationary(cls, wf: WaveFunction) -> "MarginalDensity":
        """Wrap a stationary |psi|^2 table; the window is degenerate."""
        return cls(wf.domain, wf.density_grid(), window=(0.0, 0.0))

    def density(self, x):
        """Interpolated density p_X(x), clipped to stay non-negative."""
        self.domain.require_inside(x)
        return np.clip(self._interp(x), 0.0, None)

    def density_grid(self) -> np.ndarray:
        return self.values

    def __repr__(self):
        t0, T = self.window
        return f"MarginalDensity(window=[{t0}, {t0 + T}])"


def time_marginal(Psi: TimeDependentWaveFunction, t_start: float,
                  T_avg: float, n_t: int = DEFAULT_N_T) -> MarginalDensity:
    """Average |Psi(x,t)|^2 over a time window into a marginal density.

    p_X(x) = (1/T_avg) int_{t_start}^{t_start+T_avg} |Psi(x,t)|^2 dt,
    computed by composite Simpson in t at every grid x, then renormalized
    in x to absorb the quadrature residue.

    Parameters
    ----------
    Psi : TimeDependentWaveFunction
    t_start : float
        Window start.
    T_avg : float
        Window length, > 0.
    n_t : int
        Simpson node count in t; odd, at least 9.
    """
    if not T_avg > 0:
        raise ValueError(f"T_avg must be positive, got {T_avg!r}")
    if n_t < 9 or n_t % 2 == 0:
        raise ValueError(f"n_t must be odd and >= 9, got {n_t}")
    t = np.linspace(t_start, t_start + T_avg, n_t)
    dt = t[1] - t[0]
    w = quadrature.simpson_weights(n_t, dt)

    amps = Psi.component_grid()                      # (n_comp, n_x)
    coeffs = np.array([c for _, c, _ in Psi.components])
    energies = np.array([E for _, _, E in Psi.components])
    phases = np.exp(-1j * np.outer(t, energies) / Psi.hbar) * coeffs  # (n_t, n_comp)
    field = phases @ amps                            # (n_t, n_x)
    dens = field.real ** 2 + field.imag ** 2
    p = (w @ dens) / T_avg
    p /= quadrature.integrate(p, Psi.domain.dx)
    return MarginalDensity(Psi.domain, p, window=(t_start, T_avg))


def trajectory_from_marginal(p: MarginalDensity, params: PhysicalParams,
                             n: int, **kwargs) -> trajectory.Trajectory:
    """Sample a trajectory whose histogram reproduces p_X.

    Thin delegation: the marginal satisfies the density-provider
    protocol, so every trajectory contract (inversion tolerance, node
    plateaus, sampling modes) carries over unchanged.
    """
    return trajectory.sample_trajectory(p, params, n, **kwargs)
