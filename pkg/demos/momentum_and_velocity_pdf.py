"""Momentum space, the uncertainty product, and the velocity-PDF trap.

Two complementary momentum views of the same ground state:

* The quantum one.  Fourier-transforming psi gives Phi(mu); position and
  momentum spreads obey Delta-x Delta-mu >= hbar/2.  For the box ground
  state the product is 0.56786 hbar, comfortably above the bound.
  (Second moments are taken through the position-space derivative route;
  a finite mu grid clips the slow |Phi|^2 tail of hard-wall states.)

* The classical one.  Transforming the uniform-time density through
  v(x) = 1/(T |psi|^2) should give a velocity PDF, but the Jacobian
  d|psi|/dx vanishes at the velocity minimum v = L/(2T): the would-be
  PDF diverges there, and below it there is no preimage at all.  The
  scan below maps the three regimes (no-preimage, singular, finite).

Run:  python3 demos/momentum_and_velocity_pdf.py
"""

import matplotlib
matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

import quantraj as qt

wf = qt.box_eigenstate(1, 1.0)
params = qt.PhysicalParams()

Phi = qt.momentum_amplitude(wf)
rep = qt.uncertainty_product(wf, Phi, params)
print(f"Delta x = {rep.dx:.6f}   Delta mu = {rep.dmu:.6f}")
print(f"product = {rep.product:.6f} hbar   (bound 0.5 hbar)")
print(f"mu grid captured {Phi.captured:.6f} of |Phi|^2 mass; "
      f"truncated = {Phi.truncated}")

# scan the classical velocity axis; v = 0.5 is the singular edge
vs = np.linspace(0.3, 3.0, 271)
pdf_vals = np.full(vs.shape, np.nan)
flags = []
for i, v in enumerate(vs):
    res = qt.classical_velocity_pdf(wf, float(v), params)
    flags.append(res.flag)
    if res.flag == "ok":
        pdf_vals[i] = res.value
edge = qt.classical_velocity_pdf(wf, 0.5, params)
print(f"v = 0.5 (velocity minimum): flag = {edge.flag} at x = {edge.preimages}")
print(f"v = 1.0: p_V = {qt.classical_velocity_pdf(wf, 1.0, params).value:.6f} "
      f"(closed form 1/pi = {1/np.pi:.6f})")

fig, axes = plt.subplots(1, 2, figsize=(9.5, 3.6))

ax = axes[0]
ax.plot(Phi.mu_grid, Phi.abs2(), lw=1.2)
for mark in (-np.pi, np.pi):
    ax.axvline(mark, color="gray", ls=":", lw=0.8)
ax.set_xlim(-25, 25)
ax.set_xlabel(r"$\mu$")
ax.set_ylabel(r"$|\Phi(\mu)|^2$")
ax.set_title("momentum density (peak at 0, shoulders near $\\pm\\pi$)")

ax = axes[1]
ok = np.isfinite(pdf_vals)
ax.plot(vs[ok], pdf_vals[ok], ".", ms=3)
ax.axvline(0.5, color="crimson", ls="--", lw=0.9, label="singular edge v = L/(2T)")
ax.axvspan(vs[0], 0.5, color="0.85", label="no preimage")
ax.set_xlabel("v")
ax.set_ylabel(r"$p_V(v)$")
ax.set_title("classical velocity PDF: ill-defined at the edge")
ax.legend(frameon=False, fontsize=8)

fig.tight_layout()
fig.savefig("demos/figures/momentum_and_velocity_pdf.png", dpi=150)
print("wrote demos/figures/momentum_and_velocity_pdf.png")
