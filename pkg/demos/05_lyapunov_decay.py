"""Energy decay: exponential below the threshold, algebraic at it.

Two simulations on a 48x48 grid:

* self-diffusion set (eta2 = 2, below the threshold 3): the coexistence
  energy E1 decays exponentially until it hits the rounding floor;
* eta2 = 3 exactly: prey mass dies off like 1/t, so 1/E2 grows linearly.

Run:  python demos/05_lyapunov_decay.py
"""

import os

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from turing_lab import LyapunovConfig, classify_regime, coexistence_equilibrium, decay_report, run
from turing_lab.lyapunov import make_probe
from turing_lab.model import EquilibriumKind, equilibria
from turing_lab.pde import GridSpec, InitSpec
from turing_lab.presets import SELF_DIFFUSION

OUT = os.path.join(os.path.dirname(__file__), "output")
os.makedirs(OUT, exist_ok=True)

g = GridSpec(48, 48, 1.0, 1.0)

# --- exponential branch -------------------------------------------------
p = SELF_DIFFUSION
coex = coexistence_equilibrium(p)
cfg = LyapunovConfig.defaults(p, coex)
probe = make_probe(p, g, cfg, "coexistence", coex)
_, series, _ = run(p, g, InitSpec(coex, seed=1), dt=0.01, t_end=120.0,
                   sample_every=100, energy_probe=probe)
regime = classify_regime(p)
fit = decay_report(series, regime, burn_in=5.0)
print(f"regime: {regime.regime.value}")
print(f"exponential fit: slope {fit.slope:.4f}, r2 {fit.r2:.6f}, "
      f"monotone fraction {fit.monotone_fraction}")

# --- algebraic branch ---------------------------------------------------
pb = SELF_DIFFUSION.with_overrides(eta2=3.0)
base = [e for e in equilibria(pb) if e.kind is EquilibriumKind.PREDATOR_ONLY][0]
probe_b = make_probe(pb, g, LyapunovConfig.defaults(pb, None), "prey_vanishing")
_, series_b, _ = run(pb, g, InitSpec(base, seed=1), dt=0.01, t_end=400.0,
                     sample_every=100, energy_probe=probe_b)
regime_b = classify_regime(pb)
fit_b = decay_report(series_b, regime_b, burn_in=40.0)
print(f"regime at the threshold: {regime_b.regime.value}")
print(f"algebraic fit: slope {fit_b.slope:.3e}, r2 {fit_b.r2:.6f}")

fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(11, 4))
t = np.asarray(series.times)
E = np.asarray(series.energy)
ax1.semilogy(t, np.maximum(E, 1e-300), ".", ms=3)
win = E > 1e-20 * E.max()
ax1.semilogy(t[win], np.exp(fit.intercept + fit.slope * t[win]), "r-",
             label=f"slope {fit.slope:.3f}, r2 {fit.r2:.4f}")
ax1.set(xlabel="t", ylabel="E1", title="exponential decay (eta2 = 2)")
ax1.legend()

tb = np.asarray(series_b.times)
Eb = np.asarray(series_b.energy)
ax2.plot(tb, 1.0 / Eb, ".", ms=3)
ax2.plot(tb, fit_b.intercept + fit_b.slope * tb, "r-",
         label=f"slope {fit_b.slope:.2e}, r2 {fit_b.r2:.4f}")
ax2.set(xlabel="t", ylabel="1 / E2", title="algebraic decay at the threshold (eta2 = 3)")
ax2.legend()
fig.tight_layout()
fig.savefig(os.path.join(OUT, "lyapunov_decay.png"), dpi=130)
print("figure written to", OUT)
