"""Histogram goodness-of-fit between sampled trajectories and densities.

The central empirical claim is that uniform-in-time position samples of
the synthesized trajectory, binned at resolution dx, reproduce the
quantum density.  This module bins, measures the L1 gap against a
target density at bin centers, and runs a Pearson chi-square test with
low-count bins merged so every group carries at least 5 expected counts.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional, Tuple

import numpy as np

from .trajectory import Trajectory
from .wavefunctions import GridDomain

MIN_EXPECTED = 5.0
DEFAULT_BIN_FRACTION = 0.02    # dx = 0.02 * domain length by default
DEFAULT_L1_TOL = 0.02
CHI2_UPPER_SIGMAS = 4.0


@dataclass(frozen=True)
class Histogram:
    """Right-open uniform bins (last bin closed) over a grid domain."""

    bin_edges: np.ndarray
    counts: np.ndarray
    normalized_density: np.ndarray

    @property
    def n_samples(self) -> int:
        return int(self.counts.sum())

    @property
    def centers(self) -> np.ndarray:
        return 0.5 * (self.bin_edges[:-1] + self.bin_edges[1:])

    @property
    def widths(self) -> np.ndarray:
        return np.diff(self.bin_edges)


def histogram(samples, domain: GridDomain, dx: float) -> Histogram:
    """Bin positions at resolution dx across the full domain.

    If dx does not divide the domain length (within 1e-9) the final bin
    is shortened to land exactly on x_max.  The normalized density is
    counts/(N * width) per bin, so it integrates to one exactly.
    """
    samples = np.asarray(samples, dtype=float)
    if samples.size == 0:
        raise ValueError("empty sample set")
    if not dx > 0:
        raise ValueError(f"bin width must be positive, got {dx!r}")
    if not np.all(domain.contains(samples)):
        raise ValueError("samples outside the domain")
    length = domain.length
    n_bins = int(round(length / dx))
    if n_bins >= 1 and abs(n_bins * dx - length) <= 1e-9:
        edges = np.linspace(domain.x_min, domain.x_max, n_bins + 1)
    else:
        n_bins = int(np.ceil(length / dx - 1e-12))
        edges = domain.x_min + dx * np.arange(n_bins + 1)
        edges[-1] = domain.x_max
    counts, _ = np.histogram(samples, bins=edges)
    widths = np.diff(edges)
    density = counts / (samples.size * widths)
    return Histogram(bin_edges=edges, counts=counts, normalized_density=density)


def l1_distance(h: Histogram, target: Callable) -> float:
    """Sum over bins of |empirical density - target(center)| * width."""
    diff = np.abs(h.normalized_density - np.asarray(target(h.centers), dtype=float))
    return float(np.sum(diff * h.widths))


def chi_square(h: Histogram, target: Callable, N: Optional[int] = None
               ) -> Tuple[float, int]:
    """Pearson statistic against expected counts N * target * width.

    Bins are merged left to right, accumulating until each group holds
    at least 5 expected counts; a deficient trailing group is folded
    into its predecessor.  This absorbs the near-empty bins at the
    domain edges and around interior nodes.  Returns (statistic, dof)
    with dof = group count - 1.
    """
    if N is None:
        N = h.n_samples
    expected = N * np.asarray(target(h.centers), dtype=float) * h.widths
    observed = h.counts.astype(float)

    group_obs, group_exp = [], []
    acc_o = acc_e = 0.0
    for o, e in zip(observed, expected):
        acc_o += o
        acc_e += e
        if acc_e >= MIN_EXPECTED:
            group_obs.append(acc_o)
            group_exp.append(acc_e)
            acc_o = acc_e = 0.0
    if acc_e > 0.0 and group_exp:
        group_obs[-1] += acc_o
        group_exp[-1] += acc_e
    if len(group_exp) < 2:
        raise ValueError("not enough expected counts to form a chi-square test")
    go = np.array(group_obs)
    ge = np.array(group_exp)
    stat = float(np.sum((go - ge) ** 2 / ge))
    return stat, len(ge) - 1


@dataclass(frozen=True)
class MatchReport:
    """Bundle of histogram fit metrics with a pass/fail verdict."""

    dx: float
    n_samples: int
    l1: float
    l1_tol: float
    chi2: float
    dof: int
    chi2_limit: float
    passed: bool
    hist: Histogram


def pdf_match_report(traj: Trajectory, target: Callable,
                     dx: Optional[float] = None,
                     l1_tol: float = DEFAULT_L1_TOL) -> MatchReport:
    """Histogram a trajectory and judge it against a target density.

    The verdict requires L1 < l1_tol and the chi-square statistic under
    the one-sided upper band dof + 4 sqrt(2 dof); deterministic grid
    sampling produces near-zero statistics, so no lower band is imposed.
    """
    if dx is None:
        dx = DEFAULT_BIN_FRACTION * traj.domain.length
    h = histogram(traj.x, traj.domain, dx)
    l1 = l1_distance(h, target)
    stat, dof = chi_square(h, target)
    limit = dof + CHI2_UPPER_SIGMAS * math.sqrt(2.0 * dof)
    passed = (l1 < l1_tol) and (stat <= limit)
    return MatchReport(dx=dx, n_samples=h.n_samples, l1=l1, l1_tol=l1_tol,
                       chi2=stat, dof=dof, chi2_limit=limit,
                       passed=passed, hist=h)
