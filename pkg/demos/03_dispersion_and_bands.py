"""Dispersion relations and the instability quartic.

Without cross-diffusion every perturbation mode decays; switching the
cross terms on pushes a band of wavenumbers across zero.  This script
plots max Re(lambda) and h(k^2) against k^2 for several predation rates
and reprints the bundled reference table of unstable bands.

Run:  python demos/03_dispersion_and_bands.py
"""

import os

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from turing_lab import coexistence_equilibrium, dispersion_scan, h_of_k2, quartic_coeffs
from turing_lab.cli import run_table_reproduction
from turing_lab.model import PARAM_FIELDS
from turing_lab.presets import BAND_REFERENCE_CASES, CROSS_DIFFUSION, SELF_DIFFUSION

OUT = os.path.join(os.path.dirname(__file__), "output")
os.makedirs(OUT, exist_ok=True)

k2 = np.linspace(0.0, 2.5, 401)
fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(11, 4))

for eta2 in (2.0, 2.25, 2.5):
    p = CROSS_DIFFUSION.with_overrides(eta2=eta2)
    e = coexistence_equilibrium(p)
    scan = dispersion_scan(p, e, k2)
    ax1.plot(k2, scan.max_real_part, label=f"eta2 = {eta2}")
    ax2.plot(k2, scan.h, label=f"eta2 = {eta2}")
    print(f"eta2 = {eta2}: band {scan.band}")

# the self-diffusion set stays below zero everywhere
e0 = coexistence_equilibrium(SELF_DIFFUSION)
scan0 = dispersion_scan(SELF_DIFFUSION, e0, k2)
ax1.plot(k2, scan0.max_real_part, "k--", label="no cross-diffusion")
ax2.plot(k2, scan0.h, "k--", label="no cross-diffusion")
print("no cross-diffusion: band", scan0.band)

for ax, ylabel in ((ax1, "max Re lambda(k^2)"), (ax2, "h(k^2)")):
    ax.axhline(0, color="gray", lw=0.6)
    ax.set(xlabel="k^2", ylabel=ylabel)
    ax.legend()
ax2.set_ylim(-1, 4)
fig.tight_layout()
fig.savefig(os.path.join(OUT, "dispersion_and_quartic.png"), dpi=130)
print("figure written to", OUT)

# reference band table, recomputed
rows = [
    (case.label, {k: getattr(case.params, k) for k in PARAM_FIELDS}, case.reference)
    for case in BAND_REFERENCE_CASES
]
print("\nreference bands (computed vs tabulated):")
for entry in run_table_reproduction(CROSS_DIFFUSION, rows):
    print(
        f"  {entry['label']:34s} [{entry['k2_lo']:.6f}, {entry['k2_hi']:.6f}]"
        f"  ref [{entry['ref_lo']:.6f}, {entry['ref_hi']:.6f}]"
        f"  err {max(entry['err_lo'], entry['err_hi']):.1e}"
    )
