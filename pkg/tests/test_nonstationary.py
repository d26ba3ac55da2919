import numpy as np
import pytest

import quantraj as qt
from quantraj import quadrature

PARAMS = qt.PhysicalParams()


@pytest.fixture(scope="module")
def beat():
    """Equal-weight superposition of the two lowest box states."""
    psi1 = qt.box_eigenstate(1, 1.0)
    psi2 = qt.box_eigenstate(2, 1.0)
    E1, E2 = qt.box_energy(1, 1.0), qt.box_energy(2, 1.0)
    Psi = qt.superposition([psi1, psi2],
                           [1.0 / np.sqrt(2.0), 1.0 / np.sqrt(2.0)],
                           [E1, E2])
    period = 2.0 * np.pi / (E2 - E1)            # 4 / (3 pi)
    mixed = 0.5 * (psi1.density_grid() + psi2.density_grid())
    return Psi, period, mixed


def test_stationary_reduces_to_density():
    wf = qt.box_eigenstate(1, 1.0)
    Psi = qt.stationary(wf, qt.box_energy(1, 1.0))
    p = qt.time_marginal(Psi, 0.0, 0.7)
    assert np.max(np.abs(p.values - wf.density_grid())) < 1e-10
    assert p.window == (0.0, 0.7)


def test_full_beat_window_collapses_cross_term(beat):
    Psi, period, mixed = beat
    p = qt.time_marginal(Psi, 0.0, period)
    assert np.max(np.abs(p.values - mixed)) < 1e-6


def test_quarter_beat_window_keeps_cross_term(beat):
    Psi, period, mixed = beat
    p = qt.time_marginal(Psi, 0.0, period / 4.0)
    assert np.max(np.abs(p.values - mixed)) > 0.1


def test_half_beat_from_zero_also_cancels(beat):
    # the cosine cross term integrates to zero over any half cycle
    # starting at a phase multiple of pi, so this window collapses too
    Psi, period, mixed = beat
    p = qt.time_marginal(Psi, 0.0, period / 2.0)
    assert np.max(np.abs(p.values - mixed)) < 1e-6
    # shifting the same half-beat window off the symmetric phase revives it
    q = qt.time_marginal(Psi, period / 8.0, period / 2.0)
    assert np.max(np.abs(q.values - mixed)) > 0.1


def test_window_additivity(beat):
    Psi, period, _ = beat
    full = qt.time_marginal(Psi, 0.0, period, n_t=257)
    a = qt.time_marginal(Psi, 0.0, period / 2.0, n_t=129)
    b = qt.time_marginal(Psi, period / 2.0, period / 2.0, n_t=129)
    # aligned sample times make composite Simpson split exactly
    assert np.max(np.abs(full.values - 0.5 * (a.values + b.values))) < 1e-10


def test_marginal_normalized(beat):
    Psi, period, _ = beat
    p = qt.time_marginal(Psi, 0.13, 0.21 * period)
    assert quadrature.integrate(p.values, p.domain.dx) == pytest.approx(1.0, abs=1e-12)
    assert np.all(p.values >= 0.0)


def test_time_marginal_validation(beat):
    Psi, _, _ = beat
    with pytest.raises(ValueError):
        qt.time_marginal(Psi, 0.0, 0.0)
    with pytest.raises(ValueError):
        qt.time_marginal(Psi, 0.0, 1.0, n_t=100)    # even
    with pytest.raises(ValueError):
        qt.time_marginal(Psi, 0.0, 1.0, n_t=7)      # too coarse


def test_marginal_density_validation():
    dom = qt.GridDomain(0.0, 1.0, 101)
    with pytest.raises(ValueError):
        qt.MarginalDensity(dom, np.full(101, -1.0), window=(0.0, 1.0))
    with pytest.raises(ValueError):
        qt.MarginalDensity(dom, np.full(101, 3.0), window=(0.0, 1.0))


def test_from_stationary_matches_pipeline():
    wf = qt.box_eigenstate(2, 1.0)
    direct = qt.MarginalDensity.from_stationary(wf)
    via_time = qt.time_marginal(qt.stationary(wf, qt.box_energy(2, 1.0)),
                                0.0, 1.0)
    assert np.max(np.abs(direct.values - via_time.values)) < 1e-12
    assert np.max(np.abs(direct.values - wf.density_grid())) < 1e-12


def test_marginal_interpolation_clips():
    wf = qt.box_eigenstate(1, 1.0)
    p = qt.MarginalDensity.from_stationary(wf)
    x = np.linspace(-0.5, 0.5, 777)
    assert np.all(p.density(x) >= 0.0)
    assert np.max(np.abs(p.density(x) - wf.density(x))) < 1e-7


def test_uniform_marginal_gives_linear_motion():
    dom = qt.GridDomain(0.0, 1.0, 201)
    p = qt.MarginalDensity(dom, np.ones(201), window=(0.0, 1.0))
    tr = qt.trajectory_from_marginal(p, PARAMS, 101)
    assert np.max(np.abs(tr.x - tr.t)) < 1e-9
    assert np.max(np.abs(tr.v[1:-1] - 1.0)) < 1e-9


def test_marginal_trajectory_histogram(beat):
    # the quarter-beat marginal is an asymmetric two-hump profile; the
    # trajectory built from it must reproduce it in distribution
    Psi, period, _ = beat
    p = qt.time_marginal(Psi, 0.0, period / 4.0)
    tr = qt.trajectory_from_marginal(p, PARAMS, 100_000,
                                     sampling="uniform-random", seed=3)
    rep = qt.pdf_match_report(tr, p.density, dx=0.02)
    assert rep.l1 < 0.02
