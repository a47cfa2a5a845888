"""Linearized analysis: Jacobians, dispersion relations and Turing bands.

A spatial perturbation ``exp(lambda t + i k.x)`` of a homogeneous steady
state evolves under the linearized operator ``J - k^2 D``, where J is
the reaction Jacobian and D the (cross-)diffusion matrix.  Its
characteristic polynomial is ``lambda^4 + A1 lambda^3 + A2 lambda^2 +
A3 lambda + A4`` with ``A4 = det(k^2 D - J)``; a sign change of A4
signals at least one growing mode.  Collecting A4 in powers of
``x = k^2`` gives the quartic

    h(x) = w1 x^4 + w2 x^3 + w3 x^2 + w4 x + w5,

whose negative-sign interval in x is the unstable band of squared
wavenumbers.  Both a closed-form root formula and a companion-matrix
eigenvalue solve are provided; the companion path is the production
route, the closed form is kept for cross-validation (it is numerically
fragile near repeated roots and signals such degeneracy explicitly).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .model import (
    Equilibrium,
    EquilibriumKind,
    ModelParams,
    is_equilibrium_of,
)

__all__ = [
    "Jacobian4",
    "QuarticCoeffs",
    "DispersionScan",
    "SelfDiffusionWitness",
    "DegenerateQuartic",
    "jacobian_at",
    "diffusion_matrix",
    "quartic_coeffs",
    "h_of_k2",
    "dispersion_eigenvalues",
    "quartic_roots_closed_form",
    "quartic_roots",
    "unstable_band",
    "dispersion_scan",
    "self_diffusion_stable",
]


@dataclass(frozen=True)
class Jacobian4:
    """Reaction Jacobian at a steady state, with trace and determinant."""

    matrix: np.ndarray
    trace: float
    det: float


def jacobian_at(p: ModelParams, e: Equilibrium) -> Jacobian4:
    """Jacobian of the reaction terms at the steady state ``e``.

    At coexistence the diagonal species entries reduce to -lambda1*u1e
    and -lambda2*u2e via the steady-state identities; the signal rows are
    (0, a1, -b1, 0) and (a2, 0, 0, -b2).
    """
    if not is_equilibrium_of(p, e):
        raise ValueError(f"state {e.state} is not an equilibrium of the given parameters")
    u1, u2 = e.u1e, e.u2e
    J = np.array(
        [
            [p.sigma1 - 2 * p.lambda1 * u1 + p.eta1 * u2, p.eta1 * u1, 0.0, 0.0],
            [-p.eta2 * u2, p.sigma2 - 2 * p.lambda2 * u2 - p.eta2 * u1, 0.0, 0.0],
            [0.0, p.a1, -p.b1, 0.0],
            [p.a2, 0.0, 0.0, -p.b2],
        ]
    )
    return Jacobian4(J, float(np.trace(J)), float(np.linalg.det(J)))


def diffusion_matrix(p: ModelParams) -> np.ndarray:
    """The 4x4 diffusion operator matrix.

    Note the sign of the (2,4) entry: the prey flux runs *down* the
    gradient of the predator signal, so d22 enters with a minus sign.
    """
    return np.array(
        [
            [p.d11, 0.0, p.d12, 0.0],
            [0.0, p.d21, 0.0, -p.d22],
            [0.0, 0.0, p.d3, 0.0],
            [0.0, 0.0, 0.0, p.d4],
        ]
    )


@dataclass(frozen=True)
class QuarticCoeffs:
    """Coefficients of h(x) = w1 x^4 + w2 x^3 + w3 x^2 + w4 x + w5, x = k^2."""

    omega1: float
    omega2: float
    omega3: float
    omega4: float
    omega5: float

    def as_array(self) -> np.ndarray:
        return np.array([self.omega1, self.omega2, self.omega3, self.omega4, self.omega5])


def quartic_coeffs(p: ModelParams, e: Equilibrium) -> QuarticCoeffs:
    """Collect det(k^2 D - J) at the coexistence state in powers of k^2.

    w1 = d3*d4*d11*d21 and w5 = b1*b2*u1e*u2e*(lambda1*lambda2+eta1*eta2)
    are always positive, so h(0) > 0 and h -> +inf: any unstable band is
    a bounded interval away from k^2 = 0.
    """
    if e.kind is not EquilibriumKind.COEXISTENCE:
        raise ValueError("quartic coefficients are defined at the coexistence state only")
    if not is_equilibrium_of(p, e):
        raise ValueError("state fails the equilibrium residual check")
    u1, u2 = e.u1e, e.u2e
    d11, d12, d21, d22, d3, d4 = p.d11, p.d12, p.d21, p.d22, p.d3, p.d4
    l1, l2, e1, e2 = p.lambda1, p.lambda2, p.eta1, p.eta2
    a1, a2, b1, b2 = p.a1, p.a2, p.b1, p.b2

    w1 = d3 * d4 * d11 * d21
    w2 = l1 * d3 * d4 * d21 * u1 + l2 * d3 * d4 * d11 * u2 + b1 * d4 * d11 * d21 + b2 * d3 * d11 * d21
    w3 = (
        l2 * b1 * d4 * d11 * u2
        + l2 * b2 * d3 * d11 * u2
        + l1 * b1 * d4 * d21 * u1
        + l1 * b2 * d3 * d21 * u1
        + l1 * l2 * d3 * d4 * u1 * u2
        + a1 * a2 * d12 * d22
        + b1 * b2 * d11 * d21
        + d3 * d4 * e1 * e2 * u1 * u2
        - a1 * d4 * d12 * e2 * u2
        - a2 * d3 * d22 * e1 * u1
    )
    w4 = (
        l1 * l2 * b1 * d4 * u1 * u2
        + l1 * b1 * b2 * d21 * u1
        + l2 * b1 * b2 * d11 * u2
        + l1 * l2 * b2 * d3 * u1 * u2
        + b1 * d4 * e1 * e2 * u1 * u2
        + b2 * d3 * e1 * e2 * u1 * u2
        - a2 * b1 * d22 * e1 * u1
        - a1 * b2 * d12 * e2 * u2
    )
    w5 = b1 * b2 * u1 * u2 * (l1 * l2 + e1 * e2)
    return QuarticCoeffs(w1, w2, w3, w4, w5)


def h_of_k2(c: QuarticCoeffs, k2):
    """Horner evaluation of the quartic at x = k^2 (scalar or array)."""
    x = np.asarray(k2, dtype=float)
    val = (((c.omega1 * x + c.omega2) * x + c.omega3) * x + c.omega4) * x + c.omega5
    return float(val) if np.isscalar(k2) else val


def dispersion_eigenvalues(p: ModelParams, e: Equilibrium, k2: float) -> np.ndarray:
    """Eigenvalues of J - k^2 D, sorted by descending real part.

    The product of their negatives equals h(k^2) = det(k^2 D - J).
    """
    if k2 < 0:
        raise ValueError("k2 must be nonnegative")
    J = jacobian_at(p, e).matrix
    vals = np.linalg.eigvals(J - k2 * diffusion_matrix(p))
    order = np.lexsort((-vals.imag, -vals.real))
    return vals[order]


class DegenerateQuartic(ValueError):
    """The closed-form root expressions hit a vanishing denominator.

    Raised when the intermediate quantities beta3 or beta4 are (nearly)
    zero, which happens at (nearly) repeated roots; callers should fall
    back to :func:`quartic_roots`.
    """


# Threshold below which beta3/beta4 are treated as vanished, relative to
# the magnitudes of the terms that formed them.
_DEGENERATE_REL = 1e-12


def quartic_roots_closed_form(c: QuarticCoeffs) -> np.ndarray:
    """The four roots of h via the explicit radical formula.

    Follows the resolvent-cubic route: with

        beta1 = w3^2 - 3 w2 w4 + 12 w1 w5
        beta2 = 2 w3^3 - 9 w2 w3 w4 - 72 w1 w3 w5 + 27 w1 w4^2 + 27 w2^2 w5
        beta3 = beta2 + sqrt(beta2^2 - 4 beta1^3)
        beta4 = sqrt(w2^2/(4 w1^2) - 2 w3/(3 w1)
                     + 2^(1/3) beta1 / (3 w1 beta3^(1/3))
                     + beta3^(1/3) / (3 2^(1/3) w1))

    the roots are -w2/(4 w1) -/+ beta4/2 +/- a square root whose argument
    carries the linear-coefficient correction with opposite signs for the
    two beta4 branches.  All branches are principal; intermediates are
    evaluated in extended precision to tame the cancellation in beta3.
    Raises :class:`DegenerateQuartic` when beta3 or beta4 vanish.
    """
    if c.omega1 == 0:
        raise ValueError("leading coefficient must be nonzero")
    w1, w2, w3, w4, w5 = (np.longdouble(w) for w in c.as_array())

    b1 = w3 * w3 - 3 * w2 * w4 + 12 * w1 * w5
    b2 = 2 * w3**3 - 9 * w2 * w4 * w3 - 72 * w1 * w5 * w3 + 27 * w1 * w4**2 + 27 * w2**2 * w5
    root_disc = np.sqrt(np.clongdouble(b2 * b2 - 4 * b1**3))
    b3 = np.clongdouble(b2) + root_disc
    b3_scale = abs(np.clongdouble(b2)) + abs(root_disc)
    if b3_scale == 0 or abs(b3) <= _DEGENERATE_REL * b3_scale:
        raise DegenerateQuartic("beta3 vanishes")

    cbrt_b3 = b3 ** (np.clongdouble(1) / 3)
    two_cbrt = np.longdouble(2) ** (np.longdouble(1) / 3)
    pair = two_cbrt * np.clongdouble(b1) / (3 * w1 * cbrt_b3) + cbrt_b3 / (3 * two_cbrt * w1)
    core = np.clongdouble(w2 * w2 / (4 * w1 * w1) - 2 * w3 / (3 * w1))
    b4_sq = core + pair
    b4_scale = abs(core) + abs(pair)
    if b4_scale == 0 or abs(b4_sq) <= _DEGENERATE_REL * b4_scale:
        raise DegenerateQuartic("beta4 vanishes")
    b4 = np.sqrt(b4_sq)

    base = np.clongdouble(w2 * w2 / (2 * w1 * w1) - 4 * w3 / (3 * w1)) - pair
    qterm = np.clongdouble(w2**3 / w1**3 - 4 * w3 * w2 / w1**2 + 8 * w4 / w1) / (4 * b4)
    offset = np.clongdouble(-w2 / (4 * w1))
    s_minus = np.sqrt(base + qterm)
    s_plus = np.sqrt(base - qterm)
    roots = [
        offset - b4 / 2 - s_minus / 2,
        offset - b4 / 2 + s_minus / 2,
        offset + b4 / 2 - s_plus / 2,
        offset + b4 / 2 + s_plus / 2,
    ]
    return np.array([complex(r) for r in roots])


def quartic_roots(c: QuarticCoeffs) -> np.ndarray:
    """The four roots of h via companion-matrix eigenvalues (production path)."""
    return np.roots(c.as_array())


def _bisect_root(c: QuarticCoeffs, guess: float, xtol: float = 1e-8) -> float:
    """Refine a simple real root of h by bisection to absolute tolerance ``xtol``."""
    delta = max(1e-7, 1e-7 * abs(guess))
    lo, hi = guess - delta, guess + delta
    flo, fhi = h_of_k2(c, lo), h_of_k2(c, hi)
    grew = 0
    while flo * fhi > 0 and grew < 60:
        delta *= 2.0
        lo, hi = guess - delta, guess + delta
        flo, fhi = h_of_k2(c, lo), h_of_k2(c, hi)
        grew += 1
    if flo * fhi > 0:
        return guess  # no sign change (double root); keep the eigenvalue estimate
    while hi - lo > xtol:
        mid = 0.5 * (lo + hi)
        fmid = h_of_k2(c, mid)
        if fmid == 0.0:
            return mid
        if flo * fmid <= 0:
            hi = mid
        else:
            lo, flo = mid, fmid
    return 0.5 * (lo + hi)


def unstable_band(p: ModelParams, e: Equilibrium) -> list[tuple[float, float]]:
    """Intervals of k^2 > 0 on which h(k^2) < 0.

    Root locations come from the companion-matrix solve and are refined
    by bisection to absolute 1e-8.  The common outcome is a single
    interval; with four positive real roots every sign-negative interval
    is reported separately.  An empty list means h >= 0 on (0, inf), i.e.
    no diffusion-driven instability.
    """
    c = quartic_coeffs(p, e)
    roots = quartic_roots(c)
    scale = max(1.0, float(np.max(np.abs(roots))))
    real = sorted(
        float(r.real)
        for r in roots
        if abs(r.imag) <= 1e-9 * scale and r.real > 0.0
    )
    if len(real) < 2:
        return []
    refined = [_bisect_root(c, r) for r in real]
    bands = []
    for left, right in zip(refined[:-1], refined[1:]):
        if right > left and h_of_k2(c, 0.5 * (left + right)) < 0.0:
            bands.append((left, right))
    return bands


@dataclass(frozen=True)
class DispersionScan:
    """Per-k^2 linearization records over a scan grid.

    ``eigenvalues[i]`` are the four eigenvalues of J - k2[i] * D sorted by
    descending real part; ``band`` lists the refined unstable intervals and
    is None when no sampled h value is negative.
    """

    k2: np.ndarray
    eigenvalues: np.ndarray  # shape (n, 4), complex
    max_real_part: np.ndarray
    h: np.ndarray
    band: list[tuple[float, float]] | None


def dispersion_scan(p: ModelParams, e: Equilibrium, k2_values) -> DispersionScan:
    """Eigenvalues and h over an ordered grid of squared wavenumbers."""
    k2 = np.asarray(k2_values, dtype=float)
    c = quartic_coeffs(p, e)
    eigs = np.empty((k2.size, 4), dtype=complex)
    for i, x in enumerate(k2):
        eigs[i] = dispersion_eigenvalues(p, e, float(x))
    h = h_of_k2(c, k2)
    band = unstable_band(p, e) if bool(np.any(h < 0)) else None
    return DispersionScan(k2, eigs, eigs.real.max(axis=1), np.atleast_1d(h), band)


@dataclass(frozen=True)
class SelfDiffusionWitness:
    stable: bool
    first_failing_k2: float | None


def self_diffusion_stable(
    p: ModelParams,
    e: Equilibrium,
    k2_max: float = 100.0,
    n_samples: int = 10_000,
) -> SelfDiffusionWitness:
    """Trace/determinant test of the 2x2 species block over sampled k^2.

    The block ignores the cross-diffusion coupling; its determinant is
    (k^2 d11 + lambda1 u1e)(k^2 d21 + lambda2 u2e) + eta1 eta2 u1e u2e,
    positive for every k^2 >= 0, so self-diffusion alone cannot
    destabilize the coexistence state.  Sampling is uniform on
    [0, k2_max] (k2_max = 0 degenerates to the single point k^2 = 0,
    the plain ODE test).
    """
    if k2_max < 0:
        raise ValueError("k2_max must be nonnegative")
    if not is_equilibrium_of(p, e):
        raise ValueError("state fails the equilibrium residual check")
    if k2_max == 0.0:
        samples = np.array([0.0])
    else:
        samples = np.linspace(0.0, k2_max, max(2, int(n_samples)))
    u1, u2 = e.u1e, e.u2e
    for x in samples:
        tr = -x * p.d11 - p.lambda1 * u1 - x * p.d21 - p.lambda2 * u2
        det = (x * p.d11 + p.lambda1 * u1) * (x * p.d21 + p.lambda2 * u2) + p.eta1 * p.eta2 * u1 * u2
        if not (tr < 0.0 and det > 0.0):
            return SelfDiffusionWitness(False, float(x))
    return SelfDiffusionWitness(True, None)


def strongest_mode(p: ModelParams, e: Equilibrium, k2: float):
    """Dominant eigenvalue and (real, normalized) eigenvector of J - k^2 D.

    Convenience for seeding single-mode simulations; raises if the
    dominant eigenvalue is complex (its eigenvector direction then
    rotates in time and a fixed seed profile is not meaningful).
    """
    J = jacobian_at(p, e).matrix
    vals, vecs = np.linalg.eig(J - k2 * diffusion_matrix(p))
    i = int(np.argmax(vals.real))
    lam, v = vals[i], vecs[:, i]
    if abs(lam.imag) > 1e-10 * max(1.0, abs(lam.real)):
        raise ValueError(f"dominant eigenvalue at k2={k2} is complex: {lam}")
    v = v.real
    v = v / v[np.argmax(np.abs(v))]
    return float(lam.real), v
