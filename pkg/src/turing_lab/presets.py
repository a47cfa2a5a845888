"""Canonical parameter sets used by the demos, CLI and regression tests.

All sets share the interaction structure sigma1=2, sigma2=3, lambda1=2,
lambda2=1 unless noted; the coexistence state of the baseline set is
(16/11, 1/11, 1/11, 16/11).  ``BAND_REFERENCE_CASES`` lists parameter
variations together with externally tabulated unstable-band endpoints
(6 decimals) used as regression anchors for the dispersion analysis.
"""

from __future__ import annotations

from dataclasses import dataclass

from .model import ModelParams

__all__ = [
    "BASELINE",
    "PHASE_PORTRAIT",
    "SELF_DIFFUSION",
    "CROSS_DIFFUSION",
    "SLOW_SIGNALS",
    "SLOW_SIGNALS_WEAK_GROWTH",
    "STRONG_PREY_DISPERSAL",
    "FAST_SIGNALS_A",
    "FAST_SIGNALS_B",
    "BandCase",
    "BAND_REFERENCE_CASES",
]

# Interaction-only baseline (diffusion fields are placeholders for ODE use).
BASELINE = ModelParams(
    d11=0.1, d12=1.0, d21=1.0, d22=2.0, d3=3.0, d4=2.0,
    sigma1=2.0, sigma2=3.0, lambda1=2.0, lambda2=1.0,
    eta1=10.0, eta2=2.0, a1=0.5, a2=0.5, b1=0.5, b2=0.5,
)

# Same interactions with unit production and faster signal decay; the
# classic phase-portrait configuration started from (1, 2, 0, 0).
PHASE_PORTRAIT = BASELINE.with_overrides(a1=1.0, a2=1.0, b1=2.0, b2=2.0)

# Self-diffusion only: linearly stable at every wavenumber.
SELF_DIFFUSION = BASELINE.with_overrides(d12=0.0, d22=0.0)

# Adds the two cross terms; the instability band opens up.
CROSS_DIFFUSION = BASELINE

# Large species mobility with slowly diffusing signals.
SLOW_SIGNALS = ModelParams(
    d11=3.25, d12=3.0, d21=5.0, d22=3.0, d3=0.75, d4=0.75,
    sigma1=2.0, sigma2=1.0, lambda1=2.0, lambda2=1.0,
    eta1=5.0, eta2=0.95, a1=0.5, a2=0.5, b1=0.5, b2=0.5,
)

# Same mobilities with weak growth/interaction rates.
SLOW_SIGNALS_WEAK_GROWTH = SLOW_SIGNALS.with_overrides(
    sigma1=0.5, sigma2=0.1, lambda1=0.5, lambda2=0.1, eta2=0.075,
)

# Strong prey dispersal (d21, d22 large).
STRONG_PREY_DISPERSAL = ModelParams(
    d11=1.0, d12=1.0, d21=5.0, d22=5.0, d3=1.0, d4=1.5,
    sigma1=2.0, sigma2=3.0, lambda1=2.0, lambda2=1.0,
    eta1=10.0, eta2=1.0, a1=0.5, a2=0.5, b1=0.5, b2=0.5,
)

# Fast signal production/decay (a = b = 5) in two diffusion regimes.
FAST_SIGNALS_A = ModelParams(
    d11=0.1, d12=1.0, d21=0.1, d22=1.0, d3=3.0, d4=3.0,
    sigma1=2.0, sigma2=3.0, lambda1=2.0, lambda2=1.0,
    eta1=5.0, eta2=1.5, a1=5.0, a2=5.0, b1=5.0, b2=5.0,
)
FAST_SIGNALS_B = FAST_SIGNALS_A.with_overrides(d21=1.0, d22=2.0, d4=2.0)


@dataclass(frozen=True)
class BandCase:
    """One regression row: parameters plus reference band endpoints."""

    label: str
    params: ModelParams
    reference: tuple[float, float]


BAND_REFERENCE_CASES: tuple[BandCase, ...] = (
    BandCase("cross-diffusion eta2=2", CROSS_DIFFUSION.with_overrides(eta2=2.0), (0.253661, 0.925807)),
    BandCase("cross-diffusion eta2=2.25", CROSS_DIFFUSION.with_overrides(eta2=2.25), (0.138333, 1.255916)),
    BandCase("cross-diffusion eta2=2.5", CROSS_DIFFUSION.with_overrides(eta2=2.5), (0.074781, 1.526103)),
    BandCase("cross-diffusion eta2=2.65", CROSS_DIFFUSION.with_overrides(eta2=2.65), (0.047290, 1.673559)),
    BandCase("cross-diffusion eta2=2.75", CROSS_DIFFUSION.with_overrides(eta2=2.75), (0.031782, 1.767353)),
    BandCase("cross-diffusion eta2=2.9", CROSS_DIFFUSION.with_overrides(eta2=2.9), (0.011695, 1.902321)),
    BandCase("slow-signals eta1=5 eta2=0.95", SLOW_SIGNALS.with_overrides(eta1=5.0, eta2=0.95), (0.026322, 0.092956)),
    BandCase("slow-signals eta1=10 eta2=0.25", SLOW_SIGNALS.with_overrides(eta1=10.0, eta2=0.25), (0.100961, 0.512843)),
    BandCase("slow-signals eta1=10 eta2=0.75", SLOW_SIGNALS.with_overrides(eta1=10.0, eta2=0.75), (0.027417, 0.442167)),
    BandCase("weak-growth eta1=5 eta2=0.075", SLOW_SIGNALS_WEAK_GROWTH.with_overrides(eta1=5.0), (0.001004, 0.433782)),
    BandCase("weak-growth eta1=10 eta2=0.075", SLOW_SIGNALS_WEAK_GROWTH.with_overrides(eta1=10.0), (0.000455, 0.803716)),
    BandCase("strong-prey-dispersal eta2=1", STRONG_PREY_DISPERSAL.with_overrides(eta2=1.0), (0.185205, 0.581330)),
    BandCase("strong-prey-dispersal eta2=1.5", STRONG_PREY_DISPERSAL.with_overrides(eta2=1.5), (0.110821, 0.675433)),
    BandCase("fast-signals A", FAST_SIGNALS_A, (1.102053, 12.303332)),
    BandCase("fast-signals B", FAST_SIGNALS_B, (0.485184, 5.105713)),
)
