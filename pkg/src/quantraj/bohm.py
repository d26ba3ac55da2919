"""Bohmian trajectories and their contrast with density-synthesized paths.

The Bohm velocity field is j/|Psi|^2 with j the probability current

    j(x,t) = (i hbar / 2m) [Psi dPsi*/dx - Psi* dPsi/dx].

For a real stationary state j vanishes identically, so the Bohm particle
sits still while the density-synthesized trajectory sweeps the whole
domain once per period T: the two pictures reproduce the same position
histogram only in the ensemble sense, not path by path.  ``compare``
quantifies the gap.

The bracket above is evaluated literally; in IEEE arithmetic the two
terms are exact conjugates, so the imaginary residue is zero at the
float level and is asserted, not cleaned up silently.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Tuple

import numpy as np

from .trajectory import Trajectory
from .wavefunctions import (OutOfDomainError, PhysicalParams,
                            TimeDependentWaveFunction)

BOHM_NODE_CUTOFF = 1e-6
CURRENT_IMAG_TOL = 1e-12


class NodeError(ValueError):
    """Raised when a density node makes the Bohm velocity singular."""


def _current_raw(Psi: TimeDependentWaveFunction, x, t: float,
                 params: PhysicalParams):
    a = np.asarray(Psi.amplitude(x, t), dtype=complex)
    da = np.asarray(Psi.derivative_x(x, t), dtype=complex)
    bracket = a * np.conj(da) - np.conj(a) * da
    j = 0.5j * Psi.hbar / params.m * bracket
    residue = float(np.max(np.abs(np.atleast_1d(j.imag))))
    if residue > CURRENT_IMAG_TOL:
        raise ValueError(f"current has imaginary residue {residue:.3e}")
    return j.real if j.ndim else float(j.real)


def probability_current(Psi: TimeDependentWaveFunction, x, t: float,
                        params: PhysicalParams = PhysicalParams()):
    """Probability current j(x,t), real by construction.

    Spatial derivatives come from the state (analytic for catalog
    components, interpolated otherwise).  hbar is taken from Psi so the
    current stays consistent with its time evolution; the mass comes
    from params.  Boundary points are rejected: the current is an
    interior quantity here.
    """
    xa = np.asarray(x, dtype=float)
    if np.any(xa <= Psi.domain.x_min) or np.any(xa >= Psi.domain.x_max):
        raise OutOfDomainError("current requires interior x")
    return _current_raw(Psi, x, t, params)


def bohm_velocity(Psi: TimeDependentWaveFunction, x, t: float,
                  params: PhysicalParams = PhysicalParams(),
                  node_cutoff: float = BOHM_NODE_CUTOFF):
    """Bohm velocity dx/dt = j(x,t) / |Psi(x,t)|^2.

    Raises NodeError when the local density falls below ``node_cutoff``;
    the velocity field is singular at nodes and the caller decides how
    to halt.
    """
    rho = np.asarray(Psi.density(x, t), dtype=float)
    if np.any(rho < node_cutoff):
        raise NodeError(f"density below {node_cutoff:g} at a node")
    j = _current_raw(Psi, x, t, params)
    out = j / rho
    return float(out) if np.ndim(out) == 0 else out


@dataclass
class BohmTrajectory:
    """RK4-integrated Bohm path; status records why integration stopped."""

    t: np.ndarray
    x: np.ndarray
    v: np.ndarray
    x0: float
    dt: float
    status: str                    # 'ok' | 'node' | 'left-domain'

    def __len__(self):
        return self.t.shape[0]


def bohm_trajectory(Psi: TimeDependentWaveFunction, x0: float,
                    t_span: Tuple[float, float], dt: float,
                    params: PhysicalParams = PhysicalParams(),
                    node_cutoff: float = BOHM_NODE_CUTOFF) -> BohmTrajectory:
    """Integrate the Bohm velocity field with classic fixed-step RK4.

    Integration halts early with status 'node' when any stage meets a
    density below ``node_cutoff``, or 'left-domain' when the path exits
    the grid domain; the partial trajectory up to the last good point is
    returned.  Starting on a node is an error.
    """
    if not dt > 0:
        raise ValueError(f"dt must be positive, got {dt!r}")
    t_start, t_end = float(t_span[0]), float(t_span[1])
    if not t_end > t_start:
        raise ValueError("t_span must have positive length")
    Psi.domain.require_inside(x0)
    if float(Psi.density(x0, t_start)) < node_cutoff:
        raise ValueError("initial position sits on a density node")

    def vel(xx: float, tt: float) -> float:
        return float(bohm_velocity(Psi, xx, tt, params, node_cutoff))

    ts = [t_start]
    xs = [float(x0)]
    vs = [vel(x0, t_start)]
    status = "ok"
    t, x = t_start, float(x0)
    while t < t_end - 1e-12 * max(1.0, abs(t_end)):
        h = min(dt, t_end - t)
        try:
            k1 = vel(x, t)
            k2 = vel(x + 0.5 * h * k1, t + 0.5 * h)
            k3 = vel(x + 0.5 * h * k2, t + 0.5 * h)
            k4 = vel(x + h * k3, t + h)
            x_new = x + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
            if not Psi.domain.contains(x_new):
                status = "left-domain"
                break
            v_new = vel(x_new, t + h)
        except NodeError:
            status = "node"
            break
        except OutOfDomainError:
            status = "left-domain"
            break
        t, x = t + h, x_new
        ts.append(t)
        xs.append(x)
        vs.append(v_new)
    return BohmTrajectory(t=np.array(ts), x=np.array(xs), v=np.array(vs),
                          x0=float(x0), dt=dt, status=status)


@dataclass
class DivergenceReport:
    """Pointwise gap between the two trajectory constructions."""

    t: np.ndarray
    x_classical: np.ndarray
    x_bohm: np.ndarray
    gap: np.ndarray
    max_gap: float
    mean_gap: float
    v_classical: np.ndarray
    v_bohm: np.ndarray


def compare(classical: Trajectory, bohm: BohmTrajectory) -> DivergenceReport:
    """Measure |x_classical(t) - x_bohm(t)| over the overlapping span.

    Both paths are linearly interpolated onto the union of their sample
    times inside the overlap.  Velocity profiles ride along for plots;
    infinities in the classical profile (node crossings) are kept as is.
    """
    lo = max(classical.t[0], bohm.t[0])
    hi = min(classical.t[-1], bohm.t[-1])
    if lo > hi:
        raise ValueError("trajectories do not overlap in time")
    tc = classical.t[(classical.t >= lo) & (classical.t <= hi)]
    tb = bohm.t[(bohm.t >= lo) & (bohm.t <= hi)]
    t = np.unique(np.concatenate([tc, tb, [lo, hi]]))
    xc = np.interp(t, classical.t, classical.x)
    xb = np.interp(t, bohm.t, bohm.x)
    vc = np.interp(t, classical.t, classical.v)
    vb = np.interp(t, bohm.t, bohm.v)
    gap = np.abs(xc - xb)
    return DivergenceReport(t=t, x_classical=xc, x_bohm=xb, gap=gap,
                            max_gap=float(np.max(gap)),
                            mean_gap=float(np.mean(gap)),
                            v_classical=vc, v_bohm=vb)
