"""The one-parameter stochastic family x(t; t0).

The synthesized trajectory is deterministic except for the unknowable
time offset t0.  Drawing t0 uniform on [0, T) produces a family of
curves that are pure time-translates of one another, and the velocity
at a given position is the same for every member (t0 never enters the
velocity law).

Observed at one common instant t, the traversal phase (t - t0)/T mod 1
is uniform across the family, so the member positions g^{-1}(phase) are
distributed exactly as |psi|^2.  (The bounce-back extension has period
2T; snapshots of it would need offsets spread over the full cycle, so
the phase wrap is the clean way to see the snapshot statistics.)

Run:  python3 demos/ensemble_family.py
"""

import matplotlib
matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

import quantraj as qt

wf = qt.box_eigenstate(1, 1.0)
params = qt.PhysicalParams()

members = qt.ensemble(wf, params, 12, seed=31, n=513)
print("t0 draws:", ", ".join(f"{m.t0:.3f}" for m in members))

# snapshot statistics: observe a big family at one instant, wrapping
# each member's traversal phase mod 1
big = qt.ensemble(wf, params, 20_000, seed=8, n=2)
t0s = np.array([m.t0 for m in big])
g = qt.cumulative(wf)
phase = np.mod((0.37 - t0s) / params.T, 1.0)
snapshot = g.invert(phase)
h = qt.histogram(snapshot, wf.domain, 0.05)
l1 = qt.l1_distance(h, wf.density)
print(f"snapshot histogram (family observed at t = 0.37): L1 = {l1:.4f}")

fig, axes = plt.subplots(1, 2, figsize=(9.5, 3.6))

ax = axes[0]
for m in members:
    ax.plot(m.t, m.x, lw=0.8, alpha=0.7)
ax.set_xlabel("t")
ax.set_ylabel("x")
ax.set_title("family of time-translates x(t; t0)")

ax = axes[1]
ax.bar(h.centers, h.normalized_density, width=h.widths, alpha=0.5,
       label="ensemble snapshot")
grid = wf.domain.grid()
ax.plot(grid, wf.density(grid), "k-", lw=1.2, label=r"$|\psi|^2$")
ax.set_xlabel("x")
ax.set_ylabel("density")
ax.set_title("one instant across the family")
ax.legend(frameon=False)

fig.tight_layout()
fig.savefig("demos/figures/ensemble_family.png", dpi=150)
print("wrote demos/figures/ensemble_family.png")
