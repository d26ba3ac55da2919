"""Catalog of 1-D quantum states delivered as normalized density providers.

All states live on a uniform grid domain and expose vectorized
``amplitude(x)`` / ``density(x)`` evaluation plus a spatial derivative
(analytic where the state is from the catalog, interpolated or finite
difference otherwise).  Natural units hbar = m = 1 are the defaults
throughout; nothing assumes them.

Densities are computed as ``re**2 + im**2`` everywhere so that states
differing by an exact unit phase (i, -1) produce bit-identical density
tables.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional, Sequence

import numpy as np
from scipy.interpolate import PchipInterpolator

from . import quadrature

DEFAULT_N_POINTS = 4097
NORM_TOL = 1e-8
COEFF_NORM_TOL = 1e-10
ORTHO_TOL = 1e-6
MIN_TABLE_SAMPLES = 33


class OutOfDomainError(ValueError):
    """Raised when a position falls outside a state's grid domain."""


@dataclass(frozen=True)
class GridDomain:
    """Uniform 1-D coordinate grid with n_points nodes on [x_min, x_max]."""

    x_min: float
    x_max: float
    n_points: int = DEFAULT_N_POINTS

    def __post_init__(self):
        if not self.x_min < self.x_max:
            raise ValueError(f"x_min must be < x_max, got [{self.x_min}, {self.x_max}]")
        if self.n_points < MIN_TABLE_SAMPLES:
            raise ValueError(f"n_points must be >= {MIN_TABLE_SAMPLES}, got {self.n_points}")

    @property
    def length(self) -> float:
        return self.x_max - self.x_min

    @property
    def dx(self) -> float:
        return (self.x_max - self.x_min) / (self.n_points - 1)

    def grid(self) -> np.ndarray:
        return np.linspace(self.x_min, self.x_max, self.n_points)

    def contains(self, x) -> np.ndarray:
        slack = 1e-12 * self.length
        x = np.asarray(x)
        return (x >= self.x_min - slack) & (x <= self.x_max + slack)

    def require_inside(self, x) -> None:
        if not np.all(self.contains(x)):
            raise OutOfDomainError(
                f"position outside domain [{self.x_min}, {self.x_max}]")


@dataclass(frozen=True)
class PhysicalParams:
    """Mass, reduced Planck constant, traversal period and speed cap."""

    m: float = 1.0
    hbar: float = 1.0
    T: float = 1.0
    c: float = 10.0

    def __post_init__(self):
        for name in ("m", "hbar", "T", "c"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be strictly positive")


class WaveFunction:
    """Normalized complex amplitude psi(x) on a grid domain.

    Parameters
    ----------
    domain : GridDomain
        Coordinate grid the state lives on.
    amplitude : callable
        Vectorized map x -> complex amplitude.  Must already be normalized:
        the constructor verifies the composite-Simpson norm on the grid.
    derivative : callable, optional
        Vectorized d(psi)/dx.  Falls back to centered finite differences.
    label : str
        Human-readable description.
    """

    def __init__(self, domain: GridDomain, amplitude: Callable,
                 derivative: Optional[Callable] = None, label: str = ""):
        self.domain = domain
        self.label = label
        self._amp = amplitude
        self._damp = derivative
        self._density_grid: Optional[np.ndarray] = None
        norm = quadrature.integrate(self._density_raw(domain.grid()), domain.dx)
        if abs(norm - 1.0) > NORM_TOL:
            raise ValueError(
                f"state not normalized: integral of |psi|^2 = {norm!r}")

    def _density_raw(self, x) -> np.ndarray:
        a = np.asarray(self._amp(np.asarray(x, dtype=float)), dtype=complex)
        return a.real ** 2 + a.imag ** 2

    def amplitude(self, x):
        """Complex amplitude psi(x); raises OutOfDomainError outside the grid."""
        self.domain.require_inside(x)
        return np.asarray(self._amp(np.asarray(x, dtype=float)), dtype=complex)

    def density(self, x):
        """Probability density |psi(x)|^2 >= 0."""
        self.domain.require_inside(x)
        return self._density_raw(x)

    def derivative(self, x):
        """Spatial derivative d(psi)/dx, analytic when available."""
        self.domain.require_inside(x)
        x = np.asarray(x, dtype=float)
        if self._damp is not None:
            return np.asarray(self._damp(x), dtype=complex)
        return self._fd_derivative(x)

    def _fd_derivative(self, x: np.ndarray) -> np.ndarray:
        h = self.domain.length * 1e-7
        lo, hi = self.domain.x_min, self.domain.x_max
        xp = np.minimum(x + h, hi)
        xm = np.maximum(x - h, lo)
        return (np.asarray(self._amp(xp), dtype=complex)
                - np.asarray(self._amp(xm), dtype=complex)) / (xp - xm)

    def density_grid(self) -> np.ndarray:
        """Density table on the domain grid (cached)."""
        if self._density_grid is None:
            self._density_grid = self._density_raw(self.domain.grid())
        return self._density_grid

    def __repr__(self):
        return f"WaveFunction({self.label or 'anonymous'})"


class TimeDependentWaveFunction:
    """Superposition Psi(x,t) = sum_n c_n psi_n(x) exp(-i E_n t / hbar).

    Built through :func:`superposition`; components share one grid domain,
    are pairwise orthonormal, and the coefficients carry unit total weight.
    """

    def __init__(self, components: Sequence[tuple], hbar: float = 1.0):
        self.components = tuple((wf, complex(c), float(E)) for wf, c, E in components)
        self.hbar = float(hbar)
        self.domain = self.components[0][0].domain
        self._amps_grid: Optional[np.ndarray] = None

    def _phases(self, t: float) -> np.ndarray:
        energies = np.array([E for _, _, E in self.components])
        return np.exp(-1j * energies * t / self.hbar)

    def amplitude(self, x, t: float):
        """Complex amplitude Psi(x, t)."""
        phases = self._phases(t)
        total = 0j
        for (wf, c, _), p in zip(self.components, phases):
            total = total + c * p * wf.amplitude(x)
        return total

    def density(self, x, t: float):
        """|Psi(x, t)|^2."""
        a = np.asarray(self.amplitude(x, t), dtype=complex)
        return a.real ** 2 + a.imag ** 2

    def derivative_x(self, x, t: float):
        """Spatial derivative of Psi at fixed t."""
        phases = self._phases(t)
        total = 0j
        for (wf, c, _), p in zip(self.components, phases):
            total = total + c * p * wf.derivative(x)
        return total

    def component_grid(self) -> np.ndarray:
        """Component amplitudes on the grid, shape (n_components, n_points)."""
        if self._amps_grid is None:
            g = self.domain.grid()
            self._amps_grid = np.array([wf.amplitude(g) for wf, _, _ in self.components])
        return self._amps_grid

    def __repr__(self):
        labels = ", ".join(wf.label or "?" for wf, _, _ in self.components)
        return f"TimeDependentWaveFunction[{labels}]"


def from_callable(f: Callable, x_min: float, x_max: float,
                  derivative: Optional[Callable] = None,
                  n_points: int = DEFAULT_N_POINTS, label: str = "") -> WaveFunction:
    """Wrap an arbitrary amplitude function, renormalizing it on the grid.

    The returned state divides ``f`` by the composite-Simpson norm of
    |f|^2 on the grid, so any square-integrable callable is accepted.
    """
    domain = GridDomain(x_min, x_max, n_points)
    g = domain.grid()
    vals = np.asarray(f(g), dtype=complex)
    norm = quadrature.integrate(vals.real ** 2 + vals.imag ** 2, domain.dx)
    if norm <= 0.0:
        raise ValueError("amplitude is identically zero on the grid")
    scale = 1.0 / np.sqrt(norm)
    damp = None if derivative is None else (lambda x: scale * np.asarray(derivative(x), dtype=complex))
    return WaveFunction(domain, lambda x: scale * np.asarray(f(x), dtype=complex),
                        derivative=damp, label=label)


def box_eigenstate(n: int, L: float, convention: str = "centered",
                   n_points: int = DEFAULT_N_POINTS) -> WaveFunction:
    """Eigenstate of the infinite square well of width L.

    Parameters
    ----------
    n : int
        Quantum number, n >= 1.
    L : float
        Box length.
    convention : {'centered', 'wall'}
        'centered' puts the box on [-L/2, L/2]: sqrt(2/L) cos(n pi x / L)
        for odd n and sqrt(2/L) sin(n pi x / L) for even n.  'wall' puts it
        on [0, L]: sqrt(2/L) sin(n pi x / L).

    Returns
    -------
    WaveFunction
        Normalized eigenstate with analytic derivative.
    """
    if not (isinstance(n, (int, np.integer)) and n >= 1):
        raise ValueError(f"quantum number n must be a positive integer, got {n!r}")
    if not L > 0:
        raise ValueError(f"box length L must be positive, got {L!r}")
    a = np.sqrt(2.0 / L)
    k = n * np.pi / L
    if convention == "centered":
        if n % 2 == 1:
            amp = lambda x: a * np.cos(k * x) + 0j
            damp = lambda x: -a * k * np.sin(k * x) + 0j
        else:
            amp = lambda x: a * np.sin(k * x) + 0j
            damp = lambda x: a * k * np.cos(k * x) + 0j
        domain = GridDomain(-L / 2.0, L / 2.0, n_points)
    elif convention == "wall":
        amp = lambda x: a * np.sin(k * x) + 0j
        damp = lambda x: a * k * np.cos(k * x) + 0j
        domain = GridDomain(0.0, L, n_points)
    else:
        raise ValueError(f"unknown convention {convention!r}")
    return WaveFunction(domain, amp, derivative=damp,
                        label=f"box n={n} ({convention}, L={L})")


def box_energy(n: int, L: float, m: float = 1.0, hbar: float = 1.0) -> float:
    """Energy n^2 pi^2 hbar^2 / (2 m L^2) of the n-th box eigenstate."""
    return n ** 2 * np.pi ** 2 * hbar ** 2 / (2.0 * m * L ** 2)


def plane_wave(k: float, L: float, x_min: float = 0.0,
               n_points: int = DEFAULT_N_POINTS) -> WaveFunction:
    """Plane wave exp(i k x) / sqrt(L) on [x_min, x_min + L].

    Uniform density 1/L; used for current and momentum checks.  With
    k = 2 pi j / L the state is periodic over the domain.
    """
    if not L > 0:
        raise ValueError(f"length L must be positive, got {L!r}")
    a = 1.0 / np.sqrt(L)
    domain = GridDomain(x_min, x_min + L, n_points)
    return WaveFunction(domain,
                        lambda x: a * np.exp(1j * k * np.asarray(x, dtype=float)),
                        derivative=lambda x: 1j * k * a * np.exp(1j * k * np.asarray(x, dtype=float)),
                        label=f"plane wave k={k}")


def tabulated(x_samples, values, n_points: Optional[int] = None) -> WaveFunction:
    """Ingest a sampled amplitude, interpolating and renormalizing it.

    Real and imaginary parts are interpolated separately with monotone
    cubics (no overshoot, keeps |psi|^2 from dipping below zero between
    samples).  The result is renormalized on a uniform grid spanning the
    sample range.

    Parameters
    ----------
    x_samples : array_like
        Strictly increasing positions, at least 33 of them.
    values : array_like
        Complex amplitude samples; must not be identically zero.
    n_points : int, optional
        Uniform evaluation grid size; defaults to max(4097, len(x_samples))
        rounded up to an odd count.
    """
    x = np.asarray(x_samples, dtype=float)
    v = np.asarray(values, dtype=complex)
    if x.ndim != 1 or x.shape != v.shape:
        raise ValueError("x_samples and values must be 1-D and equal length")
    if x.shape[0] < MIN_TABLE_SAMPLES:
        raise ValueError(f"need at least {MIN_TABLE_SAMPLES} samples, got {x.shape[0]}")
    if not np.all(np.diff(x) > 0):
        raise ValueError("x_samples must be strictly increasing")
    if not np.any(v != 0):
        raise ValueError("values are identically zero")
    re = PchipInterpolator(x, v.real)
    im = PchipInterpolator(x, v.imag)
    dre = re.derivative()
    dim = im.derivative()
    if n_points is None:
        n_points = max(DEFAULT_N_POINTS, x.shape[0])
    if n_points % 2 == 0:
        n_points += 1
    return from_callable(lambda xx: re(xx) + 1j * im(xx), x[0], x[-1],
                         derivative=lambda xx: dre(xx) + 1j * dim(xx),
                         n_points=n_points, label="tabulated")


def superposition(states: Sequence[WaveFunction], coeffs, energies,
                  hbar: float = 1.0) -> TimeDependentWaveFunction:
    """Assemble Psi(x,t) = sum_n c_n psi_n(x) exp(-i E_n t / hbar).

    Requires equal-length inputs, coefficients with sum |c_n|^2 = 1 within
    1e-10, components on one common grid and pairwise orthonormal within
    1e-6 (checked by quadrature).
    """
    coeffs = np.asarray(coeffs, dtype=complex)
    energies = np.asarray(energies, dtype=float)
    if not (len(states) == coeffs.shape[0] == energies.shape[0]):
        raise ValueError("states, coeffs and energies must have equal lengths")
    if len(states) == 0:
        raise ValueError("need at least one component state")
    total = float(np.sum(coeffs.real ** 2 + coeffs.imag ** 2))
    if abs(total - 1.0) > COEFF_NORM_TOL:
        raise ValueError(f"sum of |c_n|^2 must be 1, got {total!r}")
    domain = states[0].domain
    for wf in states[1:]:
        if wf.domain != domain:
            raise ValueError("component states must share one grid domain")
    g = domain.grid()
    amps = [wf.amplitude(g) for wf in states]
    for i in range(len(states)):
        for j in range(i + 1, len(states)):
            overlap = quadrature.integrate((np.conj(amps[i]) * amps[j]).real, domain.dx) \
                + 1j * quadrature.integrate((np.conj(amps[i]) * amps[j]).imag, domain.dx)
            if abs(overlap) > ORTHO_TOL:
                raise ValueError(
                    f"components {i} and {j} not orthogonal: overlap {abs(overlap):.3e}")
    return TimeDependentWaveFunction(list(zip(states, coeffs, energies)), hbar=hbar)


def stationary(wf: WaveFunction, energy: float = 0.0,
               hbar: float = 1.0) -> TimeDependentWaveFunction:
    """Wrap a stationary state as a single-component Psi(x,t)."""
    return TimeDependentWaveFunction([(wf, 1.0 + 0j, energy)], hbar=hbar)
