"""Ground-state box trajectory and its position histogram.

The classical trajectory x(t) is built so that the time it spends in
each interval dx is proportional to |psi(x)|^2.  For the centered box
ground state the cumulative map has the closed form

    g(x) = x + sin(2 pi x) / (2 pi) + 1/2,

and x(t) = g^{-1}(t/T) slows down near the center (high density) and
whips through the walls (nodes).  Sampling positions at uniform random
times and binning them at dx = 0.02 reproduces the quantum density
2 cos^2(pi x), which is the whole point of the construction.

Run:  python3 demos/box_trajectory.py
"""

import matplotlib
matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

import quantraj as qt

wf = qt.box_eigenstate(1, 1.0)            # centered, L = 1
params = qt.PhysicalParams()              # m = hbar = T = 1, c = 10

# one deterministic pass for the x(t) curve, plus a big random-time draw
path = qt.sample_trajectory(wf, params, 2001)
draw = qt.sample_trajectory(wf, params, 1_000_000,
                            sampling="uniform-random", seed=2024)

report = qt.pdf_match_report(draw, wf.density, dx=0.02)
print(f"histogram vs 2cos^2(pi x): L1 = {report.l1:.4f}  "
      f"chi2 = {report.chi2:.1f} (dof {report.dof})  passed = {report.passed}")

fig, axes = plt.subplots(1, 3, figsize=(12.5, 3.6))

ax = axes[0]
ax.plot(path.t, path.x, lw=1.2)
ax.set_xlabel("t / T")
ax.set_ylabel("x(t)")
ax.set_title("single traversal")

ax = axes[1]
finite = np.isfinite(path.v)
ax.plot(path.x[finite], path.v[finite], lw=1.2)
ax.axhline(params.c, color="crimson", ls="--", lw=0.8, label="speed cap c")
ax.set_yscale("log")
ax.set_xlabel("x")
ax.set_ylabel("v(x) = 1 / (T |psi|^2)")
ax.set_title("velocity diverges at the walls")
ax.legend(frameon=False)

ax = axes[2]
h = report.hist
ax.bar(h.centers, h.normalized_density, width=h.widths, alpha=0.5,
       label="binned samples")
grid = wf.domain.grid()
ax.plot(grid, wf.density(grid), "k-", lw=1.2, label=r"$2\cos^2(\pi x)$")
ax.set_xlabel("x")
ax.set_ylabel("density")
ax.set_title(f"1e6 random-time samples, L1 = {report.l1:.4f}")
ax.legend(frameon=False)

fig.tight_layout()
fig.savefig("demos/figures/box_trajectory.png", dpi=150)
print("wrote demos/figures/box_trajectory.png")
