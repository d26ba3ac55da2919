import numpy as np
import pytest

import quantraj as qt

PARAMS = qt.PhysicalParams()


def _beat(c1=1.0 / np.sqrt(2.0), c2=1.0 / np.sqrt(2.0)):
    return qt.superposition(
        [qt.box_eigenstate(1, 1.0), qt.box_eigenstate(2, 1.0)],
        [c1, c2],
        [qt.box_energy(1, 1.0), qt.box_energy(2, 1.0)])


@pytest.fixture(scope="module")
def plane():
    return qt.stationary(qt.plane_wave(2.0 * np.pi, 1.0), energy=2.0 * np.pi ** 2)


# --------------------------------------------------------------- current

def test_current_real_and_zero_for_stationary():
    Psi = qt.stationary(qt.box_eigenstate(1, 1.0), qt.box_energy(1, 1.0))
    x = np.linspace(-0.49, 0.49, 301)
    j = qt.probability_current(Psi, x, 0.37, PARAMS)
    assert j.dtype == np.float64
    assert np.max(np.abs(j)) < 1e-10


def test_current_plane_wave(plane):
    x = np.linspace(0.05, 0.95, 101)
    j = qt.probability_current(plane, x, 0.0, PARAMS)
    assert np.max(np.abs(j - 2.0 * np.pi)) < 1e-10


def test_current_scales_with_hbar_and_mass(plane):
    heavy = qt.PhysicalParams(m=2.0)
    j1 = qt.probability_current(plane, 0.3, 0.0, PARAMS)
    j2 = qt.probability_current(plane, 0.3, 0.0, heavy)
    assert j2 == pytest.approx(j1 / 2.0, rel=1e-12)


def test_current_requires_interior_point(plane):
    with pytest.raises(qt.OutOfDomainError):
        qt.probability_current(plane, 0.0, 0.0, PARAMS)
    with pytest.raises(qt.OutOfDomainError):
        qt.probability_current(plane, 1.2, 0.0, PARAMS)


def test_continuity_equation():
    Psi = _beat()
    x = np.linspace(-0.45, 0.45, 181)
    t, ht, hx = 0.11, 1e-5, 1e-5
    drho = (Psi.density(x, t + ht) - Psi.density(x, t - ht)) / (2.0 * ht)
    dj = (qt.probability_current(Psi, x + hx, t, PARAMS)
          - qt.probability_current(Psi, x - hx, t, PARAMS)) / (2.0 * hx)
    assert np.max(np.abs(drho + dj)) < 1e-4


# -------------------------------------------------------------- velocity

def test_bohm_velocity_node_error():
    Psi = _beat()
    # at t=0 the sum cos(pi x)(1 + 2 sin(pi x)) has an interior node
    assert Psi.density(-1.0 / 6.0, 0.0) < 1e-12
    with pytest.raises(qt.NodeError):
        qt.bohm_velocity(Psi, -1.0 / 6.0, 0.0, PARAMS)


def test_bohm_velocity_finite_off_node():
    Psi = _beat()
    v = qt.bohm_velocity(Psi, 0.2, 0.05, PARAMS)
    assert np.isfinite(v)


# ------------------------------------------------------------ integration

def test_stationary_state_is_static():
    Psi = qt.stationary(qt.box_eigenstate(1, 1.0), qt.box_energy(1, 1.0))
    tr = qt.bohm_trajectory(Psi, 0.2, (0.0, 1.0), 0.01)
    assert tr.status == "ok"
    assert np.all(tr.x == 0.2)
    # velocities carry only multiplication-order dust from the phase factor
    assert np.max(np.abs(tr.v)) < 1e-14


def test_plane_wave_moves_linearly(plane):
    k = 2.0 * np.pi
    tr = qt.bohm_trajectory(plane, 0.1, (0.0, 0.1), 0.001)
    assert tr.status == "ok"
    assert np.max(np.abs(tr.x - (0.1 + k * tr.t))) < 1e-10


def test_plane_wave_exits_domain(plane):
    tr = qt.bohm_trajectory(plane, 0.5, (0.0, 1.0), 0.001)
    assert tr.status == "left-domain"
    assert tr.x[-1] <= 1.0
    assert tr.t[-1] < 1.0


def test_rk4_convergence_order():
    # unequal weights keep the local error term from cancelling by
    # symmetry, which an equal-weight mix at midline does
    Psi = _beat(np.sqrt(0.9), np.sqrt(0.1))
    ends = []
    for dt in (0.01, 0.005, 0.0025):
        tr = qt.bohm_trajectory(Psi, 0.1, (0.0, 0.3), dt)
        assert tr.status == "ok"
        ends.append(tr.x[-1])
    d1 = abs(ends[0] - ends[1])
    d2 = abs(ends[1] - ends[2])
    assert 12.0 < d1 / d2 < 20.0
    assert d2 < 1e-8


def test_bohm_trajectory_validation():
    Psi = _beat()
    with pytest.raises(ValueError):
        qt.bohm_trajectory(Psi, 0.2, (0.0, 1.0), 0.0)
    with pytest.raises(ValueError):
        qt.bohm_trajectory(Psi, 0.2, (1.0, 1.0), 0.01)
    with pytest.raises(ValueError):
        qt.bohm_trajectory(Psi, -1.0 / 6.0, (0.0, 1.0), 0.01)  # node start


def test_node_halt_returns_partial():
    # drive toward the moving node region; equal-weight beat develops
    # strong currents that push paths into low density
    Psi = _beat()
    tr = qt.bohm_trajectory(Psi, -0.15, (0.0, 2.0), 0.002)
    assert tr.status in ("ok", "node", "left-domain")
    assert len(tr) == len(tr.t) == len(tr.x) == len(tr.v)
    if tr.status != "ok":
        assert tr.t[-1] < 2.0


# ---------------------------------------------------------------- compare

def test_compare_identical_is_zero():
    Psi = qt.stationary(qt.box_eigenstate(1, 1.0), qt.box_energy(1, 1.0))
    b = qt.bohm_trajectory(Psi, 0.2, (0.0, 0.5), 0.01)
    fake = qt.Trajectory(t=b.t, x=b.x, v=b.v, T=1.0, t0=0.0, direction=1,
                         mode="single-pass", domain=Psi.domain)
    rep = qt.compare(fake, b)
    assert rep.max_gap == 0.0
    assert rep.mean_gap == 0.0


def test_compare_stationary_sweep_gap():
    wf = qt.box_eigenstate(1, 1.0)
    Psi = qt.stationary(wf, qt.box_energy(1, 1.0))
    classical = qt.sample_trajectory(wf, PARAMS, 501)
    bohm = qt.bohm_trajectory(Psi, 0.2, (0.0, 1.0), 0.01)
    rep = qt.compare(classical, bohm)
    # the classical path sweeps the box while the Bohm particle is static
    assert rep.max_gap > 0.55
    assert np.all(rep.x_bohm == 0.2)


def test_compare_disjoint_times_error():
    Psi = qt.stationary(qt.box_eigenstate(1, 1.0), qt.box_energy(1, 1.0))
    b1 = qt.bohm_trajectory(Psi, 0.2, (0.0, 0.5), 0.01)
    b2 = qt.bohm_trajectory(Psi, 0.2, (2.0, 2.5), 0.01)
    fake = qt.Trajectory(t=b2.t, x=b2.x, v=b2.v, T=1.0, t0=2.0, direction=1,
                         mode="single-pass", domain=Psi.domain)
    with pytest.raises(ValueError):
        qt.compare(fake, b1)


def test_compare_matched_plane_wave(plane):
    # a uniform density synthesized at T = 1/(2 pi) moves at exactly the
    # Bohm speed of the k = 2 pi plane wave, so the gap stays put
    uni = qt.from_callable(lambda x: np.ones_like(x, dtype=complex), 0.0, 1.0)
    fast = qt.PhysicalParams(T=1.0 / (2.0 * np.pi))
    classical = qt.sample_trajectory(uni, fast, 201, t_span=(0.0, 0.02))
    bohm = qt.bohm_trajectory(plane, 0.1, (0.0, 0.02), 0.0005)
    rep = qt.compare(classical, bohm)
    assert np.max(rep.gap) - np.min(rep.gap) < 1e-6
