"""Reaction kinetics, equilibria and stability-regime classification.

The model couples a predator density u1 and a prey density u2 to two
chemical signals: v1 is released by the prey (and attracts predators),
v2 is released by the predator (and repels prey).  The reaction part is

    du1/dt = u1 (sigma1 - lambda1 u1 + eta1 u2)
    du2/dt = u2 (sigma2 - lambda2 u2 - eta2 u1)
    dv1/dt = a1 u2 - b1 v1
    dv2/dt = a2 u1 - b2 v2

with all sixteen coefficients strictly positive.  Diffusion (including
the cross terms d12, d22) lives in :mod:`turing_lab.pde`; everything in
this module is spatially homogeneous.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, replace

import numpy as np

__all__ = [
    "ModelParams",
    "Violation",
    "ValidationResult",
    "EquilibriumKind",
    "Equilibrium",
    "Regime",
    "SmallnessCheck",
    "RegimeReport",
    "validate_params",
    "require_valid",
    "reaction_rhs",
    "reaction_residual",
    "equilibria",
    "coexistence_equilibrium",
    "classify_regime",
]


@dataclass(frozen=True)
class ModelParams:
    """The sixteen positive constants of the model.

    d11, d21, d3, d4   self-diffusion coefficients (area/time)
    d12, d22           cross-diffusion coefficients (area/time)
    sigma1, sigma2     growth rates of predator / prey (1/time)
    lambda1, lambda2   intraspecific interaction rates (1/(density*time))
    eta1, eta2         interspecific interaction rates (1/(density*time))
    a1, a2             signal production rates (1/time)
    b1, b2             signal decay rates (1/time)

    Construction does not validate; call :func:`validate_params` (or
    :func:`require_valid`) to check positivity and the parabolicity
    conditions 4*d11*d3 > d12**2 and 4*d21*d4 > d22**2.
    """

    d11: float
    d12: float
    d21: float
    d22: float
    d3: float
    d4: float
    sigma1: float
    sigma2: float
    lambda1: float
    lambda2: float
    eta1: float
    eta2: float
    a1: float
    a2: float
    b1: float
    b2: float

    def with_overrides(self, **kwargs: float) -> "ModelParams":
        """Copy with the named fields replaced."""
        return replace(self, **kwargs)


PARAM_FIELDS = tuple(ModelParams.__dataclass_fields__)


@dataclass(frozen=True)
class Violation:
    """A failed constraint, stated as ``left > right`` with both sides evaluated."""

    name: str
    left: float
    right: float

    def __str__(self) -> str:
        return f"{self.name}: {self.left!r} <= {self.right!r}"


@dataclass(frozen=True)
class ValidationResult:
    ok: bool
    violations: tuple[Violation, ...]


def validate_params(p: ModelParams) -> ValidationResult:
    """Check positivity of all sixteen constants and the parabolicity conditions."""
    violations = []
    for name in PARAM_FIELDS:
        value = float(getattr(p, name))
        if name in ("d12", "d22"):
            # zero cross-diffusion switches the coupling off and is a
            # legitimate (and heavily used) sub-model
            if value < 0.0 or not math.isfinite(value):
                violations.append(Violation(f"{name} >= 0", value, 0.0))
        elif not (value > 0.0) or not math.isfinite(value):
            violations.append(Violation(f"{name} > 0", value, 0.0))
    lhs1 = 4.0 * p.d11 * p.d3
    if not lhs1 > p.d12**2:
        violations.append(Violation("4*d11*d3 > d12^2", lhs1, p.d12**2))
    lhs2 = 4.0 * p.d21 * p.d4
    if not lhs2 > p.d22**2:
        violations.append(Violation("4*d21*d4 > d22^2", lhs2, p.d22**2))
    return ValidationResult(not violations, tuple(violations))


def require_valid(p: ModelParams) -> None:
    """Raise ``ValueError`` listing every violated constraint."""
    result = validate_params(p)
    if not result.ok:
        msg = "; ".join(str(v) for v in result.violations)
        raise ValueError(f"invalid model parameters: {msg}")


class EquilibriumKind(enum.Enum):
    TRIVIAL = "trivial"
    PREY_ONLY = "prey_only"
    PREDATOR_ONLY = "predator_only"
    COEXISTENCE = "coexistence"


@dataclass(frozen=True)
class Equilibrium:
    """A spatially homogeneous steady state (u1e, u2e, v1e, v2e)."""

    kind: EquilibriumKind
    u1e: float
    u2e: float
    v1e: float
    v2e: float

    @property
    def state(self) -> np.ndarray:
        return np.array([self.u1e, self.u2e, self.v1e, self.v2e])


def reaction_rhs(p: ModelParams, state) -> np.ndarray:
    """Evaluate the four reaction terms at ``state = (u1, u2, v1, v2)``.

    Components may be scalars or equally shaped arrays; the result is
    stacked along a leading axis of length 4.
    """
    u1, u2, v1, v2 = state
    return np.stack(
        [
            np.asarray(u1 * (p.sigma1 - p.lambda1 * u1 + p.eta1 * u2), dtype=float),
            np.asarray(u2 * (p.sigma2 - p.lambda2 * u2 - p.eta2 * u1), dtype=float),
            np.asarray(p.a1 * u2 - p.b1 * v1, dtype=float),
            np.asarray(p.a2 * u1 - p.b2 * v2, dtype=float),
        ]
    )


def reaction_residual(p: ModelParams, state) -> float:
    """Max reaction residual, relative to the largest term magnitude per equation.

    Zero (to rounding) exactly at the steady states.
    """
    u1, u2, v1, v2 = (float(x) for x in state)
    rows = [
        (u1 * p.sigma1, -p.lambda1 * u1 * u1, p.eta1 * u1 * u2),
        (u2 * p.sigma2, -p.lambda2 * u2 * u2, -p.eta2 * u1 * u2),
        (p.a1 * u2, -p.b1 * v1),
        (p.a2 * u1, -p.b2 * v2),
    ]
    worst = 0.0
    for terms in rows:
        scale = max(max(abs(t) for t in terms), 1e-300)
        worst = max(worst, abs(sum(terms)) / scale)
    return worst


RESIDUAL_TOL = 1e-12


def is_equilibrium_of(p: ModelParams, e: Equilibrium, tol: float = RESIDUAL_TOL) -> bool:
    return reaction_residual(p, e.state) < tol


def equilibria(p: ModelParams) -> list[Equilibrium]:
    """All spatially homogeneous steady states.

    Always returns the trivial, prey-only and predator-only states; the
    coexistence state is included iff lambda1*sigma2 > eta2*sigma1
    (exact comparison of the two products, which is also the condition
    for its u2 component to be strictly positive).
    """
    require_valid(p)
    out = [
        Equilibrium(EquilibriumKind.TRIVIAL, 0.0, 0.0, 0.0, 0.0),
        Equilibrium(
            EquilibriumKind.PREY_ONLY,
            0.0,
            p.sigma2 / p.lambda2,
            p.a1 * p.sigma2 / (p.lambda2 * p.b1),
            0.0,
        ),
        Equilibrium(
            EquilibriumKind.PREDATOR_ONLY,
            p.sigma1 / p.lambda1,
            0.0,
            0.0,
            p.a2 * p.sigma1 / (p.lambda1 * p.b2),
        ),
    ]
    if p.lambda1 * p.sigma2 > p.eta2 * p.sigma1:
        den = p.lambda1 * p.lambda2 + p.eta1 * p.eta2
        u1s = (p.lambda2 * p.sigma1 + p.eta1 * p.sigma2) / den
        u2s = (p.lambda1 * p.sigma2 - p.eta2 * p.sigma1) / den
        out.append(
            Equilibrium(
                EquilibriumKind.COEXISTENCE,
                u1s,
                u2s,
                p.a1 * u2s / p.b1,
                p.a2 * u1s / p.b2,
            )
        )
    return out


def coexistence_equilibrium(p: ModelParams) -> Equilibrium | None:
    """The positive steady state, or ``None`` when lambda1*sigma2 <= eta2*sigma1."""
    for e in equilibria(p):
        if e.kind is EquilibriumKind.COEXISTENCE:
            return e
    return None


class Regime(enum.Enum):
    COEXISTENCE_STABLE = "coexistence_stable"
    PREY_EXTINCTION = "prey_extinction"
    BORDERLINE = "borderline"
    INDETERMINATE = "indeterminate"


@dataclass(frozen=True)
class SmallnessCheck:
    """One sufficient-condition inequality ``left < right``, with both sides kept."""

    name: str
    satisfied: bool
    left: float
    right: float


@dataclass(frozen=True)
class RegimeReport:
    regime: Regime
    threshold: float  # lambda1*sigma2/sigma1, compared against eta2
    smallness_checks: tuple[SmallnessCheck, ...]


def _check(name: str, left: float, right: float) -> SmallnessCheck:
    return SmallnessCheck(name, left < right, left, right)


def classify_regime(
    p: ModelParams, sup_bounds: tuple[float, float] | None = None
) -> RegimeReport:
    """Classify the long-time behaviour suggested by the sufficient conditions.

    ``sup_bounds`` are estimates of the solution sup-norms of (u1, u2);
    they default to the coexistence values when those exist and to
    sigma_i/lambda_i otherwise.  The smallness inequalities depend on
    these bounds, so the raw left/right values are always reported for
    re-evaluation with better estimates.

    The verdicts:

    * ``COEXISTENCE_STABLE``: eta2*sigma1 < lambda1*sigma2 and both
      cross-diffusion smallness conditions for the coexistence state hold;
    * ``PREY_EXTINCTION``: eta2*sigma1 > lambda1*sigma2 (strictly) and the
      prey-vanishing smallness condition holds;
    * ``BORDERLINE``: eta2*sigma1 == lambda1*sigma2 exactly (convergence is
      expected at an algebraic rather than exponential rate);
    * ``INDETERMINATE``: none of the sufficient-condition sets hold.
    """
    require_valid(p)
    coex = coexistence_equilibrium(p)
    if sup_bounds is None:
        if coex is not None:
            sup_u1, sup_u2 = coex.u1e, coex.u2e
        else:
            sup_u1, sup_u2 = p.sigma1 / p.lambda1, p.sigma2 / p.lambda2
    else:
        sup_u1, sup_u2 = (float(x) for x in sup_bounds)
        if not (sup_u1 > 0 and sup_u2 > 0):
            raise ValueError("sup_bounds must be strictly positive")

    checks = [
        _check("parabolicity_d12: d12^2 < 4*d11*d3", p.d12**2, 4 * p.d11 * p.d3),
        _check("parabolicity_d22: d22^2 < 4*d21*d4", p.d22**2, 4 * p.d21 * p.d4),
    ]
    den = p.lambda1 * p.lambda2 + p.eta1 * p.eta2
    coex_ok = None
    if coex is not None:
        bound12 = (
            16 * p.d11 * p.d3 * p.b1 * p.eta1 * p.lambda2 * den * sup_u1**2
        ) / (p.a1**2 * p.eta2 * (p.lambda2 * p.sigma1 + p.eta1 * p.sigma2))
        bound22 = (
            16 * p.d21 * p.d4 * p.b2 * p.eta2 * p.lambda1 * den * sup_u2**2
        ) / (p.a2**2 * p.eta1 * (p.lambda1 * p.sigma2 - p.eta2 * p.sigma1))
        c12 = _check("coexistence_smallness_d12", p.d12**2, bound12)
        c22 = _check("coexistence_smallness_d22", p.d22**2, bound22)
        checks += [c12, c22]
        coex_ok = checks[0].satisfied and checks[1].satisfied and c12.satisfied and c22.satisfied

    bound_pv = (
        16 * p.d11 * p.d3 * p.b1 * p.eta1 * p.lambda1 * p.lambda2 * sup_u1**2
    ) / (p.a1**2 * p.sigma1 * p.eta2)
    pv = _check("prey_vanishing_smallness_d12", p.d12**2, bound_pv)
    checks.append(pv)
    pv_ok = checks[0].satisfied and pv.satisfied

    lhs, rhs = p.eta2 * p.sigma1, p.lambda1 * p.sigma2
    if lhs == rhs:
        regime = Regime.BORDERLINE
    elif lhs < rhs and coex_ok:
        regime = Regime.COEXISTENCE_STABLE
    elif lhs > rhs and pv_ok:
        regime = Regime.PREY_EXTINCTION
    else:
        regime = Regime.INDETERMINATE
    return RegimeReport(regime, p.lambda1 * p.sigma2 / p.sigma1, tuple(checks))
