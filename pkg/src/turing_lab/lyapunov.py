"""Energy functionals along trajectories and convergence-rate checks.

Two nonnegative functionals certify convergence.  Near the coexistence
state (u1*, u2*, v1*, v2*):

    E1 = int H(u1; u1*) + (eta1/eta2) int H(u2; u2*)
         + (delta1/2) int (v1 - v1*)^2 + (delta2/2) int (v2 - v2*)^2

with the entropy-like kernel H(u; c) = u - c - c ln(u/c) >= 0, and the
squared-distance sum

    f1 = sum of the four int (field - equilibrium)^2.

Near the prey-vanishing state (sigma1/lambda1, 0, 0, sigma1 a2/(lambda1 b2)):

    E2 = int H(u1; sigma1/lambda1) + (eta1/eta2) int u2
         + (delta3/2) int v1^2 + (delta4/2) int (v2 - v2ref)^2

with f2 analogous (the u2 term enters linearly, squared in f2).  Along
solutions dE/dt <= -eps f, which gives exponential decay of E1 (and of
E2 above the interaction threshold) and an algebraic 1/t decay of E2
exactly at the threshold; :func:`decay_report` fits both laws to a
recorded series.

The delta weights must sit inside parameter-dependent admissible
intervals whose endpoints involve sup-norm estimates of u1, u2; the
intervals and the chosen values are kept on the config so users can
re-check admissibility against observed suprema.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .model import Equilibrium, EquilibriumKind, ModelParams, Regime, RegimeReport
from .pde import DiagnosticsSeries, FieldSet, GridSpec, grid_integral

__all__ = [
    "LyapunovConfig",
    "DecayReport",
    "E1",
    "f1",
    "E2",
    "f2",
    "make_probe",
    "decay_report",
]


def _entropy_kernel(u: np.ndarray, center: float) -> np.ndarray:
    """H(u; c) = u - c - c*ln(u/c), evaluated without cancellation.

    Written as c*(w - log1p(w)) with w = (u - c)/c; for |w| < 1e-4 the
    series c*w^2*(1/2 - w/3 + w^2/4) is used, keeping relative accuracy
    ~1e-12 where the direct form would lose every significant digit.
    """
    w = (u - center) / center
    with np.errstate(invalid="ignore"):  # the series branch is taken where w is tiny
        direct = w - np.log1p(w)
    series = w * w * (0.5 - w / 3.0 + w * w * 0.25)
    return center * np.where(np.abs(w) < 1e-4, series, direct)


def _geometric_pick(lo: float, hi: float, name: str, warnings: list[str]) -> float:
    """Default weight inside (lo, hi): geometric midpoint, with fallbacks."""
    if lo < hi:
        return float(np.sqrt(lo * hi)) if lo > 0 else 0.5 * hi
    warnings.append(
        f"{name}: admissible interval ({lo!r}, {hi!r}) is empty; "
        "using lower endpoint * 1.01"
    )
    return lo * 1.01


@dataclass(frozen=True)
class LyapunovConfig:
    """Weights and auxiliary constants of the two functionals.

    delta1, delta2 weigh the signal terms of E1; delta3, delta4 those of
    E2.  gamma1 in (0, lambda2), gamma2 in (0, lambda1), eta3 in
    (0, delta3*b1) and eta4 in (0, lambda1) are the splitting constants
    of the underlying decay estimates; sup_u1, sup_u2 are the sup-norm
    estimates entering the interval endpoints.  ``notes`` records any
    empty-interval fallbacks taken while building defaults.
    """

    delta1: float
    delta2: float
    delta3: float
    delta4: float
    gamma1: float
    gamma2: float
    eta3: float
    eta4: float
    sup_u1: float
    sup_u2: float
    notes: tuple[str, ...] = ()

    @staticmethod
    def admissible_intervals(
        p: ModelParams,
        e: Equilibrium | None,
        sup_u1: float,
        sup_u2: float,
    ) -> dict[str, tuple[float, float]]:
        """Open intervals the delta weights must lie in (when defined)."""
        out: dict[str, tuple[float, float]] = {}
        hi_shared = 4.0 * p.b1 * p.eta1 * p.lambda2 / (p.a1**2 * p.eta2)
        if e is not None and e.kind is EquilibriumKind.COEXISTENCE:
            out["delta1"] = (
                p.d12**2 * e.u1e / (4.0 * p.d11 * p.d3 * sup_u1**2),
                hi_shared,
            )
            out["delta2"] = (
                p.d22**2 * e.u2e * p.eta1 / (4.0 * p.d21 * p.d4 * p.eta2 * sup_u2**2),
                4.0 * p.b2 * p.lambda1 / p.a2**2,
            )
        out["delta3"] = (
            p.d12**2 * p.sigma1 / (4.0 * p.d11 * p.d3 * p.lambda1 * sup_u1**2),
            hi_shared,
        )
        out["delta4"] = (0.0, 4.0 * p.b2 * p.lambda1 / p.a2**2)
        return out

    @classmethod
    def defaults(
        cls,
        p: ModelParams,
        e: Equilibrium | None = None,
        sup_u1: float | None = None,
        sup_u2: float | None = None,
    ) -> "LyapunovConfig":
        """Midpoint choices for every weight.

        Sup-norm estimates default to the coexistence components when a
        coexistence state is supplied, else to sigma_i/lambda_i.  Deltas
        take the geometric midpoint of their admissible interval (upper
        half-point when the lower endpoint is 0); an empty interval falls
        back to lower endpoint * 1.01 and is flagged in ``notes``.
        """
        if sup_u1 is None:
            sup_u1 = e.u1e if e is not None and e.u1e > 0 else p.sigma1 / p.lambda1
        if sup_u2 is None:
            sup_u2 = e.u2e if e is not None and e.u2e > 0 else p.sigma2 / p.lambda2
        if not (sup_u1 > 0 and sup_u2 > 0):
            raise ValueError("sup-norm estimates must be strictly positive")
        warnings: list[str] = []
        iv = cls.admissible_intervals(p, e, sup_u1, sup_u2)
        if "delta1" in iv:
            delta1 = _geometric_pick(*iv["delta1"], "delta1", warnings)
            delta2 = _geometric_pick(*iv["delta2"], "delta2", warnings)
        else:
            delta1 = delta2 = 1.0  # coexistence functional not applicable
        delta3 = _geometric_pick(*iv["delta3"], "delta3", warnings)
        delta4 = _geometric_pick(*iv["delta4"], "delta4", warnings)
        return cls(
            delta1=delta1,
            delta2=delta2,
            delta3=delta3,
            delta4=delta4,
            gamma1=0.5 * p.lambda2,
            gamma2=0.5 * p.lambda1,
            eta3=0.5 * delta3 * p.b1,
            eta4=0.5 * p.lambda1,
            sup_u1=float(sup_u1),
            sup_u2=float(sup_u2),
            notes=tuple(warnings),
        )


def _require_positive(values: np.ndarray, name: str) -> None:
    if values.min() <= 0:
        raise ValueError(f"{name} must be strictly positive to take logarithms")


def E1(f: FieldSet, p: ModelParams, e: Equilibrium, c: LyapunovConfig, g: GridSpec) -> float:
    """Coexistence energy; zero exactly at the coexistence state."""
    if e.kind is not EquilibriumKind.COEXISTENCE:
        raise ValueError("E1 is defined relative to the coexistence state")
    _require_positive(f.u1, "u1")
    _require_positive(f.u2, "u2")
    return (
        grid_integral(_entropy_kernel(f.u1, e.u1e), g)
        + (p.eta1 / p.eta2) * grid_integral(_entropy_kernel(f.u2, e.u2e), g)
        + 0.5 * c.delta1 * grid_integral((f.v1 - e.v1e) ** 2, g)
        + 0.5 * c.delta2 * grid_integral((f.v2 - e.v2e) ** 2, g)
    )


def f1(f: FieldSet, e: Equilibrium, g: GridSpec) -> float:
    """Sum of the four squared L2 distances to the equilibrium ``e``."""
    ref = e.state
    return float(sum(grid_integral((f.w[k] - ref[k]) ** 2, g) for k in range(4)))


def _prey_vanishing_refs(p: ModelParams) -> tuple[float, float]:
    return p.sigma1 / p.lambda1, p.sigma1 * p.a2 / (p.lambda1 * p.b2)


def E2(f: FieldSet, p: ModelParams, c: LyapunovConfig, g: GridSpec) -> float:
    """Prey-vanishing energy; zero exactly at the prey-vanishing state.

    The logarithm is normalized as ln(u1*lambda1/sigma1) so that the u1
    term vanishes at u1 = sigma1/lambda1 (and stays dimensionless).
    """
    _require_positive(f.u1, "u1")
    u1_ref, v2_ref = _prey_vanishing_refs(p)
    return (
        grid_integral(_entropy_kernel(f.u1, u1_ref), g)
        + (p.eta1 / p.eta2) * grid_integral(f.u2, g)
        + 0.5 * c.delta3 * grid_integral(f.v1**2, g)
        + 0.5 * c.delta4 * grid_integral((f.v2 - v2_ref) ** 2, g)
    )


def f2(f: FieldSet, p: ModelParams, g: GridSpec) -> float:
    """Squared L2 distance to the prey-vanishing state, all four fields."""
    u1_ref, v2_ref = _prey_vanishing_refs(p)
    return (
        grid_integral((f.u1 - u1_ref) ** 2, g)
        + grid_integral(f.u2**2, g)
        + grid_integral(f.v1**2, g)
        + grid_integral((f.v2 - v2_ref) ** 2, g)
    )


def make_probe(
    p: ModelParams,
    g: GridSpec,
    c: LyapunovConfig,
    kind: str,
    e: Equilibrium | None = None,
):
    """Callable FieldSet -> (E, f) for diagnostics tracking.

    ``kind`` is 'coexistence' (E1/f1, requires the coexistence state) or
    'prey_vanishing' (E2/f2).
    """
    if kind == "coexistence":
        if e is None or e.kind is not EquilibriumKind.COEXISTENCE:
            raise ValueError("coexistence probe needs the coexistence equilibrium")

        def probe(f: FieldSet) -> tuple[float, float]:
            return E1(f, p, e, c, g), f1(f, e, g)

        return probe
    if kind == "prey_vanishing":

        def probe(f: FieldSet) -> tuple[float, float]:
            return E2(f, p, c, g), f2(f, p, g)

        return probe
    raise ValueError(f"unknown probe kind {kind!r}")


@dataclass(frozen=True)
class DecayReport:
    """Fit of a decay law to a recorded energy series.

    ``monotone_fraction`` is the fraction of consecutive sample pairs with
    E(t+dt) <= E(t) + 1e-12.  ``fit_kind`` is 'exponential' (slope/r2 of
    ln E against t) or 'algebraic' (slope/r2 of 1/E against t); the fit
    window drops samples before ``burn_in`` and, for the exponential law,
    samples that have decayed below ``floor_rel`` times the window
    maximum, where rounding noise replaces signal.
    """

    monotone_fraction: float
    fit_kind: str
    slope: float
    intercept: float
    r2: float
    n_fit: int
    n_total: int
    burn_in: float

    def as_text(self) -> str:
        lines = [
            f"monotone_fraction = {self.monotone_fraction!r}",
            f"fit_kind = {self.fit_kind}",
            f"slope = {self.slope!r}",
            f"intercept = {self.intercept!r}",
            f"r2 = {self.r2!r}",
            f"n_fit = {self.n_fit}",
            f"n_total = {self.n_total}",
            f"burn_in = {self.burn_in!r}",
        ]
        return "\n".join(lines) + "\n"


_MONOTONE_SLACK = 1e-12


def _line_fit(x: np.ndarray, y: np.ndarray) -> tuple[float, float, float]:
    slope, intercept = np.polyfit(x, y, 1)
    resid = y - (slope * x + intercept)
    ss_res = float(np.sum(resid**2))
    ss_tot = float(np.sum((y - y.mean()) ** 2))
    # a (numerically) constant series is fit perfectly by its own mean
    floor = (1e-12 * max(1.0, float(np.max(np.abs(y))))) ** 2 * y.size
    r2 = 1.0 if ss_tot <= floor else 1.0 - ss_res / ss_tot
    return float(slope), float(intercept), r2


def decay_report(
    series: DiagnosticsSeries,
    regime: RegimeReport,
    burn_in: float = 0.0,
    floor_rel: float = 1e-20,
) -> DecayReport:
    """Fit the regime-appropriate decay law to the tracked energy values."""
    t = np.asarray(series.times)
    E = np.asarray(series.energy, dtype=float)
    usable = np.isfinite(E) & (t >= burn_in)
    t, E = t[usable], E[usable]
    if t.size < 10:
        raise ValueError(f"need at least 10 samples beyond burn_in, got {t.size}")

    diffs = np.diff(E)
    monotone = float(np.mean(diffs <= _MONOTONE_SLACK)) if diffs.size else 1.0

    if regime.regime is Regime.BORDERLINE:
        keep = E > 0
        if int(keep.sum()) < 10:
            raise ValueError("need at least 10 positive energy samples for the 1/E fit")
        slope, intercept, r2 = _line_fit(t[keep], 1.0 / E[keep])
        return DecayReport(monotone, "algebraic", slope, intercept, r2, int(keep.sum()), t.size, burn_in)

    # exponential law: ignore the tail that sits at the rounding floor
    keep = E > floor_rel * float(E.max(initial=0.0))
    if int(keep.sum()) < 10:
        raise ValueError("need at least 10 samples above the rounding floor for the log fit")
    slope, intercept, r2 = _line_fit(t[keep], np.log(E[keep]))
    return DecayReport(monotone, "exponential", slope, intercept, r2, int(keep.sum()), t.size, burn_in)
