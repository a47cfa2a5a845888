"""Non-spatial dynamics: RK4 time series, phase portraits, nullclines."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .model import ModelParams

__all__ = ["Trajectory", "NegativeStateError", "integrate", "nullclines"]


@dataclass(frozen=True)
class Trajectory:
    """Sampled solution of the four-variable reaction system."""

    times: np.ndarray  # strictly increasing, shape (n,)
    states: np.ndarray  # shape (n, 4): columns u1, u2, v1, v2
    dt: float

    @property
    def final(self) -> np.ndarray:
        return self.states[-1]


class NegativeStateError(RuntimeError):
    """A component dropped below -1e-9: the step size is too large."""


def integrate(
    p: ModelParams,
    init,
    t_end: float,
    dt: float = 0.001,
    thin: int = 1,
) -> Trajectory:
    """Classical fixed-step RK4 from ``init = (u1, u2, v1, v2)``.

    Samples every ``thin``-th step (the final state is always included).
    The loop works on plain floats: a 10^6-step run finishes in a couple
    of seconds, which an array-per-step formulation would not.
    """
    if dt <= 0 or t_end < 0:
        raise ValueError("need dt > 0 and t_end >= 0")
    if thin < 1:
        raise ValueError("thin must be >= 1")
    u1, u2, v1, v2 = (float(x) for x in init)
    if min(u1, u2, v1, v2) < 0:
        raise ValueError("initial state must be componentwise nonnegative")

    s1, s2 = p.sigma1, p.sigma2
    l1, l2 = p.lambda1, p.lambda2
    e1, e2 = p.eta1, p.eta2
    a1, a2, b1, b2 = p.a1, p.a2, p.b1, p.b2

    n = int(round(t_end / dt))
    half, sixth = 0.5 * dt, dt / 6.0
    times = [0.0]
    states = [(u1, u2, v1, v2)]
    for k in range(1, n + 1):
        p1 = u1 * (s1 - l1 * u1 + e1 * u2)
        q1 = u2 * (s2 - l2 * u2 - e2 * u1)
        r1 = a1 * u2 - b1 * v1
        w1 = a2 * u1 - b2 * v2

        xu1, xu2, xv1, xv2 = u1 + half * p1, u2 + half * q1, v1 + half * r1, v2 + half * w1
        p2 = xu1 * (s1 - l1 * xu1 + e1 * xu2)
        q2 = xu2 * (s2 - l2 * xu2 - e2 * xu1)
        r2 = a1 * xu2 - b1 * xv1
        w2 = a2 * xu1 - b2 * xv2

        xu1, xu2, xv1, xv2 = u1 + half * p2, u2 + half * q2, v1 + half * r2, v2 + half * w2
        p3 = xu1 * (s1 - l1 * xu1 + e1 * xu2)
        q3 = xu2 * (s2 - l2 * xu2 - e2 * xu1)
        r3 = a1 * xu2 - b1 * xv1
        w3 = a2 * xu1 - b2 * xv2

        xu1, xu2, xv1, xv2 = u1 + dt * p3, u2 + dt * q3, v1 + dt * r3, v2 + dt * w3
        p4 = xu1 * (s1 - l1 * xu1 + e1 * xu2)
        q4 = xu2 * (s2 - l2 * xu2 - e2 * xu1)
        r4 = a1 * xu2 - b1 * xv1
        w4 = a2 * xu1 - b2 * xv2

        u1 += sixth * (p1 + 2 * (p2 + p3) + p4)
        u2 += sixth * (q1 + 2 * (q2 + q3) + q4)
        v1 += sixth * (r1 + 2 * (r2 + r3) + r4)
        v2 += sixth * (w1 + 2 * (w2 + w3) + w4)

        if u1 < -1e-9 or u2 < -1e-9 or v1 < -1e-9 or v2 < -1e-9:
            raise NegativeStateError(
                f"state component fell below -1e-9 at t={k * dt:.6g}: "
                f"({u1!r}, {u2!r}, {v1!r}, {v2!r}); reduce dt"
            )
        if k % thin == 0 or k == n:
            times.append(k * dt)
            states.append((u1, u2, v1, v2))
    return Trajectory(np.array(times), np.array(states), dt)


def nullclines(
    p: ModelParams,
    u1_range: tuple[float, float],
    u2_range: tuple[float, float],
    n: int = 200,
) -> tuple[np.ndarray, np.ndarray]:
    """Polylines of the two species nullclines in the (u1, u2) plane.

    Predator nullcline: sigma1 - lambda1 u1 + eta1 u2 = 0 (a vertical
    line u1 = sigma1/lambda1 when eta1 = 0).  Prey nullcline:
    sigma2 - lambda2 u2 - eta2 u1 = 0.  Each polyline is an (n, 2) array
    of (u1, u2) points sampled inside the given ranges.
    """
    if n < 2:
        raise ValueError("need n >= 2")
    u1_lo, u1_hi = u1_range
    u2_lo, u2_hi = u2_range
    u1_grid = np.linspace(u1_lo, u1_hi, n)

    if p.eta1 == 0.0:
        u1_line = np.full(n, p.sigma1 / p.lambda1)
        predator = np.column_stack([u1_line, np.linspace(u2_lo, u2_hi, n)])
    else:
        predator = np.column_stack([u1_grid, (p.lambda1 * u1_grid - p.sigma1) / p.eta1])
    prey = np.column_stack([u1_grid, (p.sigma2 - p.eta2 * u1_grid) / p.lambda2])
    return predator, prey
