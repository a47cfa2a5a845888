import numpy as np
import pytest

from turing_lab.lyapunov import (
    E1,
    E2,
    LyapunovConfig,
    decay_report,
    f1,
    f2,
    make_probe,
)
from turing_lab.model import (
    EquilibriumKind,
    Regime,
    classify_regime,
    coexistence_equilibrium,
    equilibria,
)
from turing_lab.pde import DiagnosticsSeries, FieldSet, GridSpec, InitSpec, grid_integral, init_fields, run
from turing_lab.presets import BASELINE, SELF_DIFFUSION

GRID = GridSpec(16, 16, 1.0, 1.0)
COEX = coexistence_equilibrium(BASELINE)
CFG = LyapunovConfig.defaults(BASELINE, COEX)


def fields_at(state, time=0.0) -> FieldSet:
    w = np.empty((4, GRID.ny, GRID.nx))
    for k in range(4):
        w[k] = state[k]
    return FieldSet(w, time)


class TestE1:
    def test_zero_at_equilibrium(self):
        assert E1(fields_at(COEX.state), BASELINE, COEX, CFG, GRID) == 0.0

    def test_single_quadratic_term(self):
        state = COEX.state.copy()
        state[2] += 1.0  # v1 shifted by one
        value = E1(fields_at(state), BASELINE, COEX, CFG, GRID)
        assert value == pytest.approx(0.5 * CFG.delta1 * GRID.area, rel=1e-12)

    def test_nonnegative_on_random_states(self, rng):
        for _ in range(50):
            w = np.empty((4, GRID.ny, GRID.nx))
            for k in range(4):
                w[k] = COEX.state[k] * rng.uniform(0.2, 3.0, (GRID.ny, GRID.nx))
            assert E1(FieldSet(w), BASELINE, COEX, CFG, GRID) >= 0.0

    def test_rejects_nonpositive_species(self):
        state = COEX.state.copy()
        state[0] = 0.0
        with pytest.raises(ValueError, match="strictly positive"):
            E1(fields_at(state), BASELINE, COEX, CFG, GRID)

    def test_requires_coexistence_reference(self):
        prey = [e for e in equilibria(BASELINE) if e.kind is EquilibriumKind.PREY_ONLY][0]
        with pytest.raises(ValueError):
            E1(fields_at(COEX.state), BASELINE, prey, CFG, GRID)

    def test_sandwich_bounds(self, rng):
        # for relative perturbations <= 0.1 the entropy term is pinched
        # between the two quadratic bounds
        for _ in range(50):
            r = rng.uniform(-0.1, 0.1, (GRID.ny, GRID.nx))
            u1 = COEX.u1e * (1.0 + r)
            kernel = u1 - COEX.u1e - COEX.u1e * np.log(u1 / COEX.u1e)
            term = grid_integral(kernel, GRID)
            quad = grid_integral((u1 - COEX.u1e) ** 2, GRID)
            assert quad / (4 * COEX.u1e) <= term <= 3 * quad / (4 * COEX.u1e)


class TestF1:
    def test_zero_at_equilibrium(self):
        assert f1(fields_at(COEX.state), COEX, GRID) == 0.0

    def test_constant_offset(self):
        state = COEX.state.copy()
        state[0] += 1.0
        assert f1(fields_at(state), COEX, GRID) == pytest.approx(GRID.area, rel=1e-12)

    def test_positive_iff_off_equilibrium(self, rng):
        w = np.empty((4, GRID.ny, GRID.nx))
        for k in range(4):
            w[k] = COEX.state[k] + 1e-8 * rng.random((GRID.ny, GRID.nx))
        assert f1(FieldSet(w), COEX, GRID) > 0.0


SEMI_TRIVIAL = np.array(
    [
        BASELINE.sigma1 / BASELINE.lambda1,
        0.0,
        0.0,
        BASELINE.sigma1 * BASELINE.a2 / (BASELINE.lambda1 * BASELINE.b2),
    ]
)


class TestE2:
    def test_zero_at_semi_trivial_state(self):
        assert E2(fields_at(SEMI_TRIVIAL), BASELINE, CFG, GRID) == 0.0
        assert f2(fields_at(SEMI_TRIVIAL), BASELINE, GRID) == 0.0

    def test_linear_prey_term(self):
        state = SEMI_TRIVIAL.copy()
        state[1] = 0.3
        expected = (BASELINE.eta1 / BASELINE.eta2) * 0.3 * GRID.area
        assert E2(fields_at(state), BASELINE, CFG, GRID) == pytest.approx(expected, rel=1e-12)

    def test_nonnegative_on_random_states(self, rng):
        for _ in range(50):
            w = np.empty((4, GRID.ny, GRID.nx))
            w[0] = SEMI_TRIVIAL[0] * rng.uniform(0.2, 3.0, (GRID.ny, GRID.nx))
            w[1] = rng.uniform(0.0, 2.0, (GRID.ny, GRID.nx))
            w[2] = rng.uniform(0.0, 2.0, (GRID.ny, GRID.nx))
            w[3] = SEMI_TRIVIAL[3] * rng.uniform(0.2, 3.0, (GRID.ny, GRID.nx))
            assert E2(FieldSet(w), BASELINE, CFG, GRID) >= 0.0

    def test_rejects_nonpositive_predator(self):
        state = SEMI_TRIVIAL.copy()
        state[0] = 0.0
        with pytest.raises(ValueError):
            E2(fields_at(state), BASELINE, CFG, GRID)


class TestConfigDefaults:
    def test_deltas_inside_admissible_intervals(self):
        # zero cross-diffusion: every interval is (0, hi), trivially nonempty
        p = SELF_DIFFUSION
        e = coexistence_equilibrium(p)
        cfg = LyapunovConfig.defaults(p, e)
        iv = LyapunovConfig.admissible_intervals(p, e, cfg.sup_u1, cfg.sup_u2)
        for name in ("delta1", "delta2", "delta3", "delta4"):
            lo, hi = iv[name]
            assert lo < getattr(cfg, name) < hi
        assert cfg.notes == ()

    def test_baseline_delta2_interval_is_empty_and_flagged(self):
        # the strong d22 of the Turing-unstable set leaves no admissible
        # delta2 at the default sup-norm estimates; the fallback is flagged
        iv = LyapunovConfig.admissible_intervals(BASELINE, COEX, CFG.sup_u1, CFG.sup_u2)
        lo, hi = iv["delta2"]
        assert lo >= hi
        assert any("delta2" in note for note in CFG.notes)
        assert CFG.delta2 == pytest.approx(lo * 1.01)

    def test_zero_lower_endpoint_uses_half_upper(self):
        cfg = LyapunovConfig.defaults(SELF_DIFFUSION, coexistence_equilibrium(SELF_DIFFUSION))
        iv = LyapunovConfig.admissible_intervals(
            SELF_DIFFUSION, coexistence_equilibrium(SELF_DIFFUSION), cfg.sup_u1, cfg.sup_u2
        )
        assert iv["delta1"][0] == 0.0
        assert cfg.delta1 == pytest.approx(0.5 * iv["delta1"][1])

    def test_empty_interval_flagged(self):
        # shrink the sup-norm estimate until the lower endpoint crosses hi
        cfg = LyapunovConfig.defaults(BASELINE, COEX, sup_u1=1e-6, sup_u2=1e-6)
        assert cfg.notes  # fallback recorded

    def test_auxiliary_constants_in_range(self):
        assert 0 < CFG.gamma1 < BASELINE.lambda2
        assert 0 < CFG.gamma2 < BASELINE.lambda1
        assert 0 < CFG.eta3 < CFG.delta3 * BASELINE.b1
        assert 0 < CFG.eta4 < BASELINE.lambda1


def series_with(times, energies) -> DiagnosticsSeries:
    s = DiagnosticsSeries(COEX)
    s.times = list(times)
    s.energy = list(energies)
    return s


class TestDecayReport:
    def test_constant_series(self):
        t = np.linspace(0, 10, 20)
        report = decay_report(series_with(t, np.full(20, 2.5)), classify_regime(SELF_DIFFUSION))
        assert report.monotone_fraction == 1.0
        assert report.slope == pytest.approx(0.0, abs=1e-14)
        assert report.r2 == 1.0

    def test_synthetic_exponential(self):
        t = np.linspace(0, 10, 200)
        report = decay_report(series_with(t, 3.0 * np.exp(-0.7 * t)), classify_regime(SELF_DIFFUSION))
        assert report.fit_kind == "exponential"
        assert report.slope == pytest.approx(-0.7, rel=1e-10)
        assert report.r2 > 0.999999
        assert report.monotone_fraction == 1.0

    def test_synthetic_algebraic_in_borderline_regime(self):
        regime = classify_regime(SELF_DIFFUSION.with_overrides(eta2=3.0))
        assert regime.regime is Regime.BORDERLINE
        t = np.linspace(0, 100, 300)
        report = decay_report(series_with(t, 1.0 / (0.5 + 0.25 * t)), regime)
        assert report.fit_kind == "algebraic"
        assert report.slope == pytest.approx(0.25, rel=1e-10)
        assert report.r2 > 0.999999

    def test_floor_samples_excluded_from_fit(self):
        t = np.linspace(0, 100, 101)
        E = 5.0 * np.exp(-t)
        E[60:] = 1e-30  # rounding floor
        report = decay_report(series_with(t, E), classify_regime(SELF_DIFFUSION))
        assert report.n_fit < len(t)
        assert report.slope == pytest.approx(-1.0, rel=1e-6)
        assert report.r2 > 0.9999

    def test_too_few_samples(self):
        with pytest.raises(ValueError, match="at least 10"):
            decay_report(series_with([0, 1, 2], [3, 2, 1]), classify_regime(SELF_DIFFUSION))


class TestAlongSimulation:
    def test_e1_decays_monotonically_on_stable_run(self):
        coex = coexistence_equilibrium(SELF_DIFFUSION)
        cfg = LyapunovConfig.defaults(SELF_DIFFUSION, coex)
        probe = make_probe(SELF_DIFFUSION, GRID, cfg, "coexistence", coex)
        _, series, _ = run(
            SELF_DIFFUSION, GRID, InitSpec(coex), dt=0.01, t_end=20.0,
            sample_every=50, energy_probe=probe,
        )
        E = np.asarray(series.energy)
        assert np.all(np.isfinite(E))
        assert E[0] > 0
        assert np.all(np.diff(E) <= 1e-12)
        assert E[-1] < 1e-6 * E[0]
