"""Where the synthesized trajectory would break the speed limit.

The velocity law v = 1/(T |psi|^2) has no ceiling: near a density node
the particle must cross arbitrarily fast to keep the histogram right.
The sub-level set {x : |psi|^2 < 1/(T c)} collects every superluminal
stretch; its measure shrinks as the traversal period T grows, so any
cap can be honored on all but an arbitrarily small set.

For the centered ground state the set is two wall slivers whose total
width solves 2 cos^2(pi x) = 1/(T c) in closed form; the module's
grid-scan + bisection result lands on that value to  ~1e-13.

Run:  python3 demos/superluminal_regions.py
"""

import matplotlib
matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

import quantraj as qt

wf = qt.box_eigenstate(1, 1.0)
c = 10.0

rep = qt.superluminal_measure(wf, qt.PhysicalParams(T=1.0, c=c))
analytic = 1.0 - (2.0 / np.pi) * np.arccos(np.sqrt(1.0 / (2.0 * c)))
print(f"T=1: total superluminal measure = {rep.total_measure:.12f}")
print(f"     closed-form oracle          = {analytic:.12f}")
for lo, hi in rep.intervals:
    print(f"     interval [{lo:+.5f}, {hi:+.5f}]  width {hi - lo:.5f}")

# measure vs period: monotone decay
Ts = np.logspace(-1, 3, 60)
measures = [qt.superluminal_measure(wf, qt.PhysicalParams(T=t, c=c)).total_measure
            for t in Ts]

T_star = qt.min_period_for_cap(wf, c, epsilon=0.01)
print(f"smallest T keeping the set below 0.01: {T_star:.4f}")

fig, axes = plt.subplots(1, 2, figsize=(9.5, 3.6))

ax = axes[0]
grid = wf.domain.grid()
ax.plot(grid, wf.density(grid), "k-", lw=1.2)
ax.axhline(1.0 / c, color="crimson", ls="--", lw=0.9,
           label="threshold 1/(Tc), T=1")
for lo, hi in rep.intervals:
    ax.axvspan(lo, hi, color="crimson", alpha=0.25)
ax.set_xlabel("x")
ax.set_ylabel(r"$|\psi|^2$")
ax.set_title("superluminal slivers at the walls")
ax.legend(frameon=False)

ax = axes[1]
ax.loglog(Ts, measures, lw=1.2)
ax.axvline(T_star, color="gray", ls=":", lw=0.9)
ax.axhline(0.01, color="gray", ls=":", lw=0.9)
ax.set_xlabel("traversal period T")
ax.set_ylabel("measure of {|v| > c}")
ax.set_title("longer periods tame the excursions")

fig.tight_layout()
fig.savefig("demos/figures/superluminal_regions.png", dpi=150)
print("wrote demos/figures/superluminal_regions.png")
