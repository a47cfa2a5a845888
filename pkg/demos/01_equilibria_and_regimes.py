"""Steady states and long-time regime classification.

Walks the four spatially homogeneous steady states of the baseline
parameter set, checks them against the reaction terms, and shows how the
predicted long-time regime flips as the predation rate eta2 crosses the
threshold lambda1*sigma2/sigma1.

Run:  python demos/01_equilibria_and_regimes.py
"""

import numpy as np

from turing_lab import classify_regime, equilibria, reaction_rhs
from turing_lab.model import reaction_residual
from turing_lab.presets import BASELINE, SELF_DIFFUSION

p = BASELINE
print("parameter set:", p, "\n")

print("steady states (u1 = predator, u2 = prey, v1/v2 = signals):")
for e in equilibria(p):
    rhs = reaction_rhs(p, e.state)
    print(
        f"  {e.kind.value:14s} ({e.u1e:.6f}, {e.u2e:.6f}, {e.v1e:.6f}, {e.v2e:.6f})"
        f"   max|reaction| = {np.max(np.abs(rhs)):.2e}"
        f"   residual = {reaction_residual(p, e.state):.2e}"
    )

# The coexistence state exists iff lambda1*sigma2 > eta2*sigma1, i.e.
# eta2 below lambda1*sigma2/sigma1 = 3 for these rates.
print("\nregime classification while raising the predation rate eta2:")
print(f"  threshold lambda1*sigma2/sigma1 = {p.lambda1 * p.sigma2 / p.sigma1}")
for eta2 in (2.0, 2.9, 3.0, 3.1, 4.0):
    # the self-diffusion set keeps the smallness conditions satisfied, so
    # the sufficient-condition machinery gives definite answers
    report = classify_regime(SELF_DIFFUSION.with_overrides(eta2=eta2))
    print(f"  eta2 = {eta2:4.2f} -> {report.regime.value}")

print("\nsufficient-condition details for eta2 = 2 (self-diffusion set):")
for check in classify_regime(SELF_DIFFUSION).smallness_checks:
    status = "ok  " if check.satisfied else "FAIL"
    print(f"  [{status}] {check.name}: {check.left:.4g} < {check.right:.4g}")
