"""Bohm trajectories against density-synthesized ones.

Both constructions reproduce |Psi|^2 statistically, but the paths could
hardly differ more.  The Bohm velocity j/|Psi|^2 vanishes identically
for a real stationary state: the Bohm particle parks at x0 forever.
The density-synthesized particle sweeps the box once per period T.  The
divergence between them grows to order L within a single traversal.

For a plane wave the two pictures can be tuned into agreement: the
current is hbar k / (m L), the Bohm particle moves at hbar k / m, and a
uniform density with T = m L / (hbar k) synthesizes the same straight
line.  The comparison then reduces to the initial offset.

Run:  python3 demos/bohm_comparison.py
"""

import matplotlib
matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

import quantraj as qt

params = qt.PhysicalParams()

# stationary ground state: parked Bohm particle vs sweeping synthesis
wf = qt.box_eigenstate(1, 1.0)
Psi = qt.stationary(wf, qt.box_energy(1, 1.0))
bohm = qt.bohm_trajectory(Psi, 0.2, (0.0, 1.0), dt=0.005)
classical = qt.sample_trajectory(wf, params, 401, mode="periodic",
                                 t_span=(0.0, 1.0))
rep = qt.compare(classical, bohm)
print(f"stationary state: max gap = {rep.max_gap:.3f}, "
      f"mean gap = {rep.mean_gap:.3f} (Bohm parked at 0.2)")

# plane wave vs uniform-density synthesis at matched speed
k = 2.0 * np.pi
pw = qt.plane_wave(k, 1.0)
current = qt.probability_current(qt.stationary(pw, 0.5 * k ** 2), 0.5, 0.0)
print(f"plane-wave current j = {current:.12f}  (hbar k / (m L) = {k:.12f})")

uni = qt.from_callable(lambda x: np.ones_like(x, dtype=complex), 0.0, 1.0,
                       derivative=lambda x: np.zeros_like(x, dtype=complex),
                       label="uniform")
matched = qt.PhysicalParams(T=1.0 / k)       # L / T = hbar k / m
lin = qt.sample_trajectory(uni, matched, 101, mode="single-pass")
pw_bohm = qt.bohm_trajectory(qt.stationary(pw, 0.5 * k ** 2), 0.1,
                             (0.0, 1.0 / k), dt=1e-4)
rep2 = qt.compare(lin, pw_bohm)
print(f"matched plane wave: gap stays {rep2.gap.min():.6f}..{rep2.gap.max():.6f} "
      "(constant = initial offset)")

fig, axes = plt.subplots(1, 2, figsize=(9.5, 3.6))

ax = axes[0]
ax.plot(rep.t, rep.x_classical, lw=1.2, label="synthesized x(t)")
ax.plot(rep.t, rep.x_bohm, lw=1.2, label="Bohm x(t)")
ax.fill_between(rep.t, rep.x_classical, rep.x_bohm, alpha=0.15)
ax.set_xlabel("t")
ax.set_ylabel("x")
ax.set_title("stationary box state: parked vs sweeping")
ax.legend(frameon=False)

ax = axes[1]
ax.plot(rep2.t, rep2.x_classical, lw=1.2, label="uniform-density synthesis")
ax.plot(rep2.t, rep2.x_bohm, "--", lw=1.2, label="plane-wave Bohm")
ax.set_xlabel("t")
ax.set_ylabel("x")
ax.set_title("matched speeds: parallel lines")
ax.legend(frameon=False)

fig.tight_layout()
fig.savefig("demos/figures/bohm_comparison.png", dpi=150)
print("wrote demos/figures/bohm_comparison.png")
