"""Momentum-space view, velocity-PDF diagnostic and effective potential.

Three observable layers on top of the trajectory construction:

* the momentum amplitude Phi(mu) with the Heisenberg uncertainty
  product, connecting the classical trajectory picture back to standard
  quantum expectation values;
* the classical velocity PDF obtained by transforming the uniform-time
  density through v(x) = 1/(T |psi|^2).  This object is genuinely
  ill-defined at velocity extrema and below the minimum speed; flags
  report the pathology rather than papering over it;
* the effective potential Vbar(x) = -m/(2 T^2) |psi(x)|^-4 under which
  the synthesized trajectory obeys Newton's second law, plus a residual
  check of that law with two independent code paths.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple, Optional, Tuple

import numpy as np
from scipy.optimize import brentq, minimize_scalar

from . import quadrature
from .nonstationary import MarginalDensity
from .wavefunctions import GridDomain, PhysicalParams, WaveFunction

DEFAULT_N_MU = 1024
DEFAULT_MU_MAX = 40.0
DEFAULT_CUTOFF_DENSITY = 1e-4
CAPTURE_THRESHOLD = 0.999


@dataclass(frozen=True)
class MomentumAmplitude:
    """Momentum amplitude Phi on a symmetric mu grid, unit normalized.

    ``truncated`` flags a grid that captured less than 99.9% of the
    |Phi|^2 mass before renormalization; moments taken on such a grid
    undercount the tails.
    """

    mu_grid: np.ndarray
    values: np.ndarray
    hbar: float
    truncated: bool
    captured: float

    @property
    def d_mu(self) -> float:
        return float(self.mu_grid[1] - self.mu_grid[0])

    def abs2(self) -> np.ndarray:
        return self.values.real ** 2 + self.values.imag ** 2


def momentum_amplitude(wf: WaveFunction, n_mu: int = DEFAULT_N_MU,
                       mu_max: float = DEFAULT_MU_MAX,
                       params: PhysicalParams = PhysicalParams()) -> MomentumAmplitude:
    """Fourier transform psi into momentum space.

    Phi(mu) = (2 pi hbar)^{-1/2} int psi(x) exp(-i mu x / hbar) dx by
    composite Simpson on the position grid, evaluated on a symmetric mu
    grid of n_mu points spanning [-mu_max, mu_max], then renormalized.
    """
    if n_mu < 64:
        raise ValueError(f"n_mu must be at least 64, got {n_mu}")
    if not mu_max > 0:
        raise ValueError(f"mu_max must be positive, got {mu_max!r}")
    hbar = params.hbar
    x = wf.domain.grid()
    psi = wf.amplitude(x)
    w = quadrature.simpson_weights(wf.domain.n_points, wf.domain.dx)
    mu = np.linspace(-mu_max, mu_max, n_mu)
    kernel = np.exp(-1j * np.outer(mu, x) / hbar)
    phi = kernel @ (w * psi) / np.sqrt(2.0 * np.pi * hbar)
    mass = quadrature.integrate(phi.real ** 2 + phi.imag ** 2, mu[1] - mu[0])
    truncated = mass < CAPTURE_THRESHOLD
    phi = phi / np.sqrt(mass)
    return MomentumAmplitude(mu_grid=mu, values=phi, hbar=hbar,
                             truncated=truncated, captured=float(mass))


class UncertaintyReport(NamedTuple):
    dx: float
    dmu: float
    product: float


def uncertainty_product(wf: WaveFunction, Phi: MomentumAmplitude,
                        params: PhysicalParams = PhysicalParams()) -> UncertaintyReport:
    """Standard deviations of position and momentum and their product.

    Position moments come from |psi|^2 on the grid.  Momentum moments
    use the position-space operator identities

        <mu>   = hbar * Im int psi* psi' dx
        <mu^2> = hbar^2 int |psi'|^2 dx

    which equal the |Phi|^2 moments by Plancherel but do not lose the
    slow |Phi|^2 tail that falls outside any finite mu grid (for hard
    wall states the tail carries a few percent of <mu^2>, enough to
    corrupt the product at the 1e-2 level).  The grid-level Phi is kept
    as an argument for first-moment cross-checks.
    """
    hbar = params.hbar
    x = wf.domain.grid()
    dx_step = wf.domain.dx
    rho = wf.density_grid()
    mean_x = quadrature.integrate(x * rho, dx_step)
    var_x = quadrature.integrate((x - mean_x) ** 2 * rho, dx_step)

    psi = wf.amplitude(x)
    dpsi = wf.derivative(x)
    mean_mu = hbar * quadrature.integrate((np.conj(psi) * dpsi).imag, dx_step)
    mu2 = hbar ** 2 * quadrature.integrate(dpsi.real ** 2 + dpsi.imag ** 2, dx_step)
    var_mu = mu2 - mean_mu ** 2

    dx = math.sqrt(max(var_x, 0.0))
    dmu = math.sqrt(max(var_mu, 0.0))
    return UncertaintyReport(dx=dx, dmu=dmu, product=dx * dmu)


@dataclass(frozen=True)
class VelocityPdf:
    """Velocity-PDF evaluation: a value when well posed, a flag when not."""

    v: float
    value: Optional[float]
    flag: str                      # 'ok' | 'singular' | 'no-preimage'
    preimages: Tuple[float, ...] = ()


def classical_velocity_pdf(wf: WaveFunction, v: float,
                           params: PhysicalParams = PhysicalParams()) -> VelocityPdf:
    """Transform the position density to velocity space at one velocity.

    With direction +1, v(x) = 1/(T |psi(x)|^2), and the change of
    variables gives

        p_V(v) = sum over preimages x of  |psi(x)|^3 / (2 |v| |d|psi|/dx|)

    (multi-branch Jacobian rule).  The construction is ill-defined at
    velocity extrema, where d|psi|/dx = 0 and the Jacobian vanishes:
    those points return flag 'singular'.  Velocities below the minimum
    speed 1/(T max|psi|^2) have no preimage and return 'no-preimage'.
    """
    T = params.T
    if v == 0.0:
        return VelocityPdf(v=v, value=None, flag="singular")
    if v < 0.0:
        return VelocityPdf(v=v, value=None, flag="no-preimage")
    target = 1.0 / (T * v)
    grid = wf.domain.grid()
    rho = wf.density_grid()
    f = rho - target
    tangent_tol = 1e-9 * float(np.max(rho))

    # a density extremum sitting at the target level is a velocity
    # extremum: the Jacobian vanishes and the transformation is singular
    # there (tolerance band absorbs float-level grazing, e.g. a density
    # maximum of 2 + 4e-16 against a target of exactly 2)
    d = np.diff(rho)
    turning = np.flatnonzero(((d[:-1] >= 0) & (d[1:] <= 0))
                             | ((d[:-1] <= 0) & (d[1:] >= 0))) + 1
    graze = turning[np.abs(f[turning]) < tangent_tol]
    if graze.size:
        runs = np.split(graze, np.flatnonzero(np.diff(graze) > 1) + 1)
        return VelocityPdf(v=v, value=None, flag="singular",
                           preimages=tuple(float(grid[r[0]]) for r in runs))

    preimages = []
    singular = False
    sign_change = np.flatnonzero(f[:-1] * f[1:] < 0)
    fun = lambda xx: float(wf.density(xx)) - target
    for i in sign_change:
        preimages.append(brentq(fun, grid[i], grid[i + 1], xtol=1e-13))
    exact = np.flatnonzero(f == 0.0)
    preimages.extend(grid[exact].tolist())
    if not preimages:
        return VelocityPdf(v=v, value=None, flag="no-preimage")

    total = 0.0
    for x_i in sorted(preimages):
        a = complex(wf.amplitude(x_i))
        mod = abs(a)
        if mod == 0.0:
            singular = True
            continue
        dmod = (a.conjugate() * complex(wf.derivative(x_i))).real / mod
        if abs(dmod) < 1e-10:
            singular = True
            continue
        total += mod ** 3 / (2.0 * abs(v) * abs(dmod))
    if singular:
        return VelocityPdf(v=v, value=None, flag="singular",
                           preimages=tuple(sorted(preimages)))
    return VelocityPdf(v=v, value=total, flag="ok",
                       preimages=tuple(sorted(preimages)))


@dataclass(frozen=True)
class EffectivePotentialTable:
    """Tabulated Vbar(x); -inf marks entries below the density cutoff."""

    domain: GridDomain
    values: np.ndarray
    cutoff_density: float


def effective_potential_marginal(p: MarginalDensity, params: PhysicalParams,
                                 cutoff_density: float = DEFAULT_CUTOFF_DENSITY
                                 ) -> EffectivePotentialTable:
    """Effective potential from a marginal density table.

    Vbar(x) = -m / (2 T^2) * p_X(x)^-2 where p_X >= cutoff; entries in
    the cutoff region are -inf (the potential is unbounded below toward
    density nodes, acting as a classical barrier of attraction).
    """
    if not cutoff_density > 0:
        raise ValueError("cutoff_density must be positive")
    rho = p.density_grid()
    pref = -params.m / (2.0 * params.T ** 2)
    with np.errstate(divide="ignore"):
        vals = np.where(rho >= cutoff_density,
                        pref / np.maximum(rho, cutoff_density) ** 2,
                        -np.inf)
    return EffectivePotentialTable(domain=p.domain, values=vals,
                                   cutoff_density=cutoff_density)


def effective_potential(wf: WaveFunction, params: PhysicalParams,
                        cutoff_density: float = DEFAULT_CUTOFF_DENSITY
                        ) -> EffectivePotentialTable:
    """Effective potential -m/(2 T^2) |psi(x)|^-4 for a stationary state.

    Delegates to the marginal-density path with p_X = |psi|^2, so the
    stationary and marginal formulas share one code path and agree bit
    for bit on identical density tables.
    """
    return effective_potential_marginal(MarginalDensity.from_stationary(wf),
                                        params, cutoff_density)


def newton_residual(wf: WaveFunction, params: PhysicalParams, x: float,
                    h: float = 1e-4,
                    cutoff_density: float = DEFAULT_CUTOFF_DENSITY) -> float:
    """Residual of Newton's second law along the trajectory at x.

    Two independent code paths: the force -dVbar/dx by centered finite
    difference of the potential formula, and the acceleration from
    m dv/dt = -2 m (d|psi|/dx) / (T^2 |psi|^5) evaluated analytically
    from the amplitude and its derivative.  Returns |F - m a|, which
    shrinks as O(h^2); NaN when |psi(x +/- h)|^2 falls below the cutoff.
    """
    T, m = params.T, params.m
    lo, hi = wf.domain.x_min, wf.domain.x_max
    if not (lo <= x - h and x + h <= hi):
        return math.nan
    rho_p = float(wf.density(x + h))
    rho_m = float(wf.density(x - h))
    if rho_p < cutoff_density or rho_m < cutoff_density:
        return math.nan
    pref = -m / (2.0 * T ** 2)
    force_fd = -(pref / rho_p ** 2 - pref / rho_m ** 2) / (2.0 * h)

    a = complex(wf.amplitude(x))
    mod = abs(a)
    dmod = (a.conjugate() * complex(wf.derivative(x))).real / mod
    accel = -2.0 * m * dmod / (T ** 2 * mod ** 5)
    return abs(force_fd - accel)


def phase_roundtrip(wf: WaveFunction, Phi: MomentumAmplitude) -> float:
    """Inverse-transform Phi and report the sup-norm misfit with psi.

    Reconstructs psi(x) = (2 pi hbar)^{-1/2} int Phi(mu) exp(i mu x /
    hbar) dmu on the position grid and minimizes the sup-norm of the
    difference over a constant global phase (seeded by the L2-optimal
    phase, then polished numerically).  The residue measures how much
    amplitude information the finite mu window loses; phase structure in
    psi survives the round trip, unlike in the trajectory route, which
    sees only |psi|^2.
    """
    hbar = Phi.hbar
    x = wf.domain.grid()
    mu = Phi.mu_grid
    w = quadrature.simpson_weights(mu.shape[0], Phi.d_mu)
    kernel = np.exp(1j * np.outer(x, mu) / hbar)
    rec = kernel @ (w * Phi.values) / np.sqrt(2.0 * np.pi * hbar)
    psi = wf.amplitude(x)

    overlap = np.vdot(psi, rec)     # angle aligning exp(i theta) psi with rec
    theta0 = float(np.angle(overlap)) if overlap != 0 else 0.0

    def misfit(theta: float) -> float:
        return float(np.max(np.abs(rec - np.exp(1j * theta) * psi)))

    res = minimize_scalar(misfit, bounds=(theta0 - 0.5, theta0 + 0.5),
                          method="bounded", options={"xatol": 1e-12})
    return float(min(misfit(theta0), res.fun))
