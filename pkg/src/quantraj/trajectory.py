"""Classical trajectory synthesis from a quantum probability density.

The construction: integrate the density into a cumulative map
u = g(x) = int_{x_min}^x |psi|^2 dx', then read the trajectory off the
inverse, x(t) = g^{-1}((t - t0)/T).  A particle following x(t) at
constant speed in u spends time in each dx proportional to |psi|^2, so a
uniform-in-time position histogram reproduces the quantum density.  The
traversal period T and the time offset t0 are free parameters; t0 is the
only stochastic element (drawn uniform on [0, T) for ensembles).

Velocities follow v = direction / (T |psi(x)|^2) and diverge at density
nodes; the divergence is reported as a signed infinity marker, never an
error.  Where the density is below ``NODE_DENSITY_EPS`` the map has a
flat plateau and inversion returns the plateau's left edge, so the
trajectory crosses a node within a single time step.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import List, NamedTuple, Optional, Sequence, Tuple

import numpy as np
from scipy.interpolate import PchipInterpolator
from scipy.optimize import brentq

from . import quadrature
from .wavefunctions import GridDomain, PhysicalParams, WaveFunction

INVERT_TOL = 1e-10
NODE_DENSITY_EPS = 1e-24


class CumulativeMap:
    """Monotone map u = g(x) from position to accumulated probability.

    Tabulated on the state's grid via cumulative composite Simpson,
    clamped to [0, 1] and interpolated with a monotone cubic so the
    continuous map never overshoots the table.
    """

    def __init__(self, domain: GridDomain, values: np.ndarray):
        values = np.asarray(values, dtype=float)
        if values.shape != (domain.n_points,):
            raise ValueError("values must match the domain grid")
        if np.any(np.diff(values) < 0):
            raise ValueError("cumulative values must be non-decreasing")
        if abs(values[0]) > 1e-8 or abs(values[-1] - 1.0) > 1e-8:
            raise ValueError("cumulative values must run from 0 to 1")
        self.domain = domain
        self.values = values
        self._grid = domain.grid()
        self._interp = PchipInterpolator(self._grid, values)

    def __call__(self, x):
        """Forward map g(x), clipped to [0, 1]."""
        self.domain.require_inside(x)
        return np.clip(self._interp(x), 0.0, 1.0)

    def invert(self, u):
        """Inverse map: position x with |g(x) - u| < 1e-10.

        Vectorized.  Locates the bracketing grid cell by binary search,
        then refines with bisection alternated with secant steps.  On a
        flat (zero-density) plateau the left edge is returned.
        """
        u_in = np.asarray(u, dtype=float)
        scalar = u_in.ndim == 0
        uu = np.atleast_1d(u_in).astype(float)
        if np.any(uu < -1e-12) or np.any(uu > 1.0 + 1e-12):
            raise ValueError("u must lie in [0, 1]")
        uu = np.clip(uu, 0.0, 1.0)

        vals, grid = self.values, self._grid
        idx = np.searchsorted(vals, uu, side="left")
        idx = np.clip(idx, 0, vals.shape[0] - 1)
        x = grid[idx].copy()

        # exact table hits (includes plateau left edges, u=0 and u=1)
        exact = vals[idx] == uu
        # cells whose probability increment is below tolerance: any point
        # inside satisfies the residual bound, keep the left edge
        flat = ~exact & (idx > 0) & (vals[idx] - vals[np.maximum(idx - 1, 0)] < INVERT_TOL)
        x[flat] = grid[np.maximum(idx[flat] - 1, 0)]

        active = np.flatnonzero(~exact & ~flat & (idx > 0))
        if active.size:
            lo = grid[idx[active] - 1]
            hi = grid[idx[active]]
            flo = vals[idx[active] - 1] - uu[active]
            fhi = vals[idx[active]] - uu[active]
            target = uu[active]
            out = np.empty(active.size)
            live = np.arange(active.size)
            for it in range(120):
                if it % 2 == 0:
                    cand = 0.5 * (lo + hi)
                else:
                    denom = fhi - flo
                    with np.errstate(divide="ignore", invalid="ignore"):
                        cand = lo - flo * (hi - lo) / denom
                    bad = ~np.isfinite(cand) | (cand <= lo) | (cand >= hi)
                    cand[bad] = 0.5 * (lo[bad] + hi[bad])
                fc = self._interp(cand) - target
                done = (np.abs(fc) < INVERT_TOL) | (hi - lo < 1e-14 * self.domain.length)
                out[live[done]] = cand[done]
                if np.all(done):
                    break
                keep = ~done
                lo, hi = lo[keep], hi[keep]
                flo, fhi = flo[keep], fhi[keep]
                cand, fc = cand[keep], fc[keep]
                target, live = target[keep], live[keep]
                neg = fc < 0
                lo[neg] = cand[neg]
                flo[neg] = fc[neg]
                hi[~neg] = cand[~neg]
                fhi[~neg] = fc[~neg]
            else:
                out[live] = 0.5 * (lo + hi)
            x[active] = out

        return float(x[0]) if scalar else x


def cumulative(wf: WaveFunction) -> CumulativeMap:
    """Integrate |psi|^2 into the cumulative map g(x).

    Uses cumulative composite Simpson on the state's grid; the running
    values are forced non-decreasing, rescaled so g(x_max) = 1 exactly,
    and clamped to [0, 1].
    """
    rho = wf.density_grid()
    raw = quadrature.cumulative(rho, wf.domain.dx)
    raw = np.maximum.accumulate(raw)
    vals = np.clip(raw / raw[-1], 0.0, 1.0)
    vals[0] = 0.0
    vals[-1] = 1.0
    return CumulativeMap(wf.domain, vals)


def invert(g: CumulativeMap, u):
    """Module-level alias for :meth:`CumulativeMap.invert`."""
    return g.invert(u)


def _phase_to_u(phase, direction: int, mode: str):
    phase = np.asarray(phase, dtype=float)
    if mode == "single-pass":
        if np.any(phase < -1e-12) or np.any(phase > 1.0 + 1e-12):
            raise ValueError("single-pass phase (t - t0)/T must lie in [0, 1]")
        u = np.clip(phase, 0.0, 1.0)
    elif mode == "periodic":
        folded = np.mod(phase, 2.0)
        u = np.where(folded <= 1.0, folded, 2.0 - folded)
    else:
        raise ValueError(f"unknown mode {mode!r}")
    if direction == -1:
        u = 1.0 - u
    elif direction != 1:
        raise ValueError(f"direction must be +1 or -1, got {direction!r}")
    return u


def position_at(g: CumulativeMap, t, params: PhysicalParams,
                t0: float = 0.0, direction: int = 1, mode: str = "single-pass"):
    """Position x(t) = g^{-1} of the (folded) phase (t - t0)/T.

    Single-pass runs once across the domain; periodic folds the phase
    through the triangular map (period 2T per to-and-fro cycle).
    Direction -1 mirrors the pass, starting from x_max.
    """
    phase = (np.asarray(t, dtype=float) - t0) / params.T
    return g.invert(_phase_to_u(phase, direction, mode))


def velocity_at(wf: WaveFunction, x, params: PhysicalParams, direction=1):
    """Velocity v = direction / (T |psi(x)|^2); signed inf at nodes."""
    rho = np.asarray(wf.density(x), dtype=float)
    d = np.asarray(direction, dtype=float)
    with np.errstate(divide="ignore"):
        v = np.where(rho > NODE_DENSITY_EPS, d / (params.T * np.maximum(rho, NODE_DENSITY_EPS)),
                     d * np.inf)
    return float(v) if v.ndim == 0 else v


@dataclass
class Trajectory:
    """Sampled classical trajectory with its generating parameters."""

    t: np.ndarray
    x: np.ndarray
    v: np.ndarray
    T: float
    t0: float
    direction: int
    mode: str
    domain: GridDomain
    member_id: int = 0

    def __len__(self):
        return self.t.shape[0]


def sample_trajectory(wf: WaveFunction, params: PhysicalParams, n: int,
                      sampling: str = "uniform-grid", t0: float = 0.0,
                      direction: int = 1, mode: str = "single-pass",
                      seed=None, t_span: Optional[Tuple[float, float]] = None,
                      g: Optional[CumulativeMap] = None,
                      member_id: int = 0) -> Trajectory:
    """Sample the trajectory at n times, uniformly gridded or random.

    Single-pass covers [t0, t0 + T]; periodic covers ``t_span`` (default
    one full to-and-fro cycle, [t0, t0 + 2T]).  Uniform-random sampling
    draws times i.i.d. uniform over the span and sorts them.  A
    prebuilt cumulative map may be passed to avoid rebuilding it.
    """
    if n < 2:
        raise ValueError(f"need at least 2 samples, got {n}")
    if g is None:
        g = cumulative(wf)
    if mode == "single-pass":
        span = (t0, t0 + params.T)
    elif mode == "periodic":
        span = t_span if t_span is not None else (t0, t0 + 2.0 * params.T)
    else:
        raise ValueError(f"unknown mode {mode!r}")
    if sampling == "uniform-grid":
        t = np.linspace(span[0], span[1], n)
    elif sampling == "uniform-random":
        rng = np.random.default_rng(seed)
        t = np.sort(rng.uniform(span[0], span[1], n))
    else:
        raise ValueError(f"unknown sampling {sampling!r}")
    x = position_at(g, t, params, t0=t0, direction=direction, mode=mode)
    if mode == "periodic":
        folded = np.mod((t - t0) / params.T, 2.0)
        leg = np.where(folded <= 1.0, 1.0, -1.0)
    else:
        leg = 1.0
    v = velocity_at(wf, x, params, direction=direction * leg)
    return Trajectory(t=t, x=np.atleast_1d(x), v=np.atleast_1d(v), T=params.T,
                      t0=t0, direction=direction, mode=mode,
                      domain=wf.domain, member_id=member_id)


def ensemble(wf: WaveFunction, params: PhysicalParams, n_members: int, seed,
             n: int = 129, sampling: str = "uniform-grid",
             mode: str = "periodic",
             t_span: Optional[Tuple[float, float]] = None) -> List[Trajectory]:
    """Family of trajectories differing only in the random offset t0.

    Each member draws t0 i.i.d. uniform on [0, T) from its own spawned
    generator, so members can be produced concurrently and still match
    sequential generation bit for bit.  All members share one cumulative
    map and are sampled over a common absolute time span (default
    [0, 2T]).
    """
    if n_members < 1:
        raise ValueError(f"need at least 1 member, got {n_members}")
    g = cumulative(wf)
    if t_span is None:
        t_span = (0.0, 2.0 * params.T)
    members = []
    children = np.random.SeedSequence(seed).spawn(n_members)
    for k, child in enumerate(children):
        rng = np.random.default_rng(child)
        t0 = float(rng.uniform(0.0, params.T))
        members.append(sample_trajectory(
            wf, params, n, sampling=sampling, t0=t0, direction=1,
            mode=mode, seed=rng, t_span=t_span, g=g, member_id=k))
    return members


class SuperluminalReport(NamedTuple):
    intervals: List[Tuple[float, float]]
    total_measure: float


def superluminal_measure(wf: WaveFunction, params: PhysicalParams) -> SuperluminalReport:
    """Sub-level set where |v| exceeds the speed cap c.

    |v| > c wherever |psi(x)|^2 < 1/(T c).  The set is located by a grid
    scan and each boundary refined by bracketed root finding on the exact
    density.  Returns the intervals and their total length.
    """
    thr = 1.0 / (params.T * params.c)
    grid = wf.domain.grid()
    rho = wf.density_grid()
    below = rho < thr
    intervals = []
    i = 0
    n = grid.shape[0]
    fun = lambda xx: float(wf.density(xx)) - thr
    while i < n:
        if not below[i]:
            i += 1
            continue
        j = i
        while j + 1 < n and below[j + 1]:
            j += 1
        x_lo = grid[i]
        if i > 0:
            x_lo = brentq(fun, grid[i - 1], grid[i], xtol=1e-13)
        x_hi = grid[j]
        if j + 1 < n:
            x_hi = brentq(fun, grid[j], grid[j + 1], xtol=1e-13)
        intervals.append((float(x_lo), float(x_hi)))
        i = j + 1
    total = float(sum(hi - lo for lo, hi in intervals))
    return SuperluminalReport(intervals, total)


def min_period_for_cap(wf: WaveFunction, c: float, epsilon: float) -> float:
    """Smallest period T keeping the superluminal set no larger than epsilon.

    The measure of {|v| > c} shrinks monotonically as T grows (the
    density threshold 1/(Tc) falls), so the minimal T is found by
    geometric bracketing followed by bisection to 1e-6 relative width.
    For densities bounded away from zero the set empties outright at
    T = 1/(c min|psi|^2) and that boundary value is returned.
    """
    if not c > 0:
        raise ValueError("speed cap c must be positive")
    if not epsilon > 0:
        raise ValueError("epsilon must be positive")
    if epsilon >= wf.domain.length:
        raise ValueError("epsilon at or above the domain length is vacuous")

    def measure(T: float) -> float:
        return superluminal_measure(wf, PhysicalParams(T=T, c=c)).total_measure

    t_hi = 1.0
    for _ in range(400):
        if measure(t_hi) <= epsilon:
            break
        t_hi *= 2.0
    else:
        raise RuntimeError("no finite period satisfies the cap")
    t_lo = t_hi / 2.0
    for _ in range(400):
        if measure(t_lo) > epsilon:
            break
        t_hi = t_lo
        t_lo /= 2.0
    else:
        raise RuntimeError("failed to bracket the minimal period")
    while t_hi - t_lo > 1e-6 * t_hi:
        mid = 0.5 * (t_lo + t_hi)
        if measure(mid) <= epsilon:
            t_hi = mid
        else:
            t_lo = mid
    return t_hi
