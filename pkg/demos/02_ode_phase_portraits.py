"""Non-spatial dynamics: convergence, nullclines and phase portraits.

Integrates the four-variable reaction system from (u1, u2, v1, v2) =
(1, 2, 0, 0) and draws the species nullclines plus all six 2D
projections of the trajectory, which spiral into the coexistence state.

Run:  python demos/02_ode_phase_portraits.py
(figures land in demos/output/)
"""

import os

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from turing_lab import coexistence_equilibrium, integrate, nullclines
from turing_lab.presets import PHASE_PORTRAIT

OUT = os.path.join(os.path.dirname(__file__), "output")
os.makedirs(OUT, exist_ok=True)

p = PHASE_PORTRAIT
coex = coexistence_equilibrium(p)
print("coexistence state:", coex.state)

traj = integrate(p, (1.0, 2.0, 0.0, 0.0), t_end=40.0, dt=0.001, thin=20)
print(f"integrated {len(traj.times)} samples to t = {traj.times[-1]:g}")
print("final state:", traj.final, " gap:", np.abs(traj.final - coex.state).max())

# time series + nullclines
fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(11, 4))
for k, (name, color) in enumerate(
    [("u1 predator", "tab:red"), ("u2 prey", "tab:green"), ("v1", "tab:blue"), ("v2", "tab:orange")]
):
    ax1.plot(traj.times, traj.states[:, k], color=color, label=name)
ax1.set(xlabel="t", ylabel="density / concentration", title="relaxation to coexistence")
ax1.legend()

predator_nc, prey_nc = nullclines(p, (0.0, 2.5), (0.0, 2.5), n=200)
ax2.plot(predator_nc[:, 0], predator_nc[:, 1], "r--", label="predator nullcline")
ax2.plot(prey_nc[:, 0], prey_nc[:, 1], "g--", label="prey nullcline")
ax2.plot(traj.states[:, 0], traj.states[:, 1], "k", lw=0.8, label="trajectory")
ax2.plot(*coex.state[:2], "k*", ms=12)
ax2.set(xlabel="u1", ylabel="u2", xlim=(0, 2.5), ylim=(0, 2.5), title="species plane")
ax2.legend()
fig.tight_layout()
fig.savefig(os.path.join(OUT, "ode_timeseries_nullclines.png"), dpi=130)

# the six pairwise projections
names = ["u1", "u2", "v1", "v2"]
pairs = [(i, j) for i in range(4) for j in range(i + 1, 4)]
fig, axes = plt.subplots(2, 3, figsize=(12, 7))
for ax, (i, j) in zip(axes.ravel(), pairs):
    ax.plot(traj.states[:, i], traj.states[:, j], lw=0.7)
    ax.plot(coex.state[i], coex.state[j], "k*", ms=10)
    ax.set(xlabel=names[i], ylabel=names[j])
fig.suptitle("phase portraits: every projection ends at the coexistence point")
fig.tight_layout()
fig.savefig(os.path.join(OUT, "ode_phase_portraits.png"), dpi=130)
print("figures written to", OUT)
