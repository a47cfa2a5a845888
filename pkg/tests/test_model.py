import numpy as np
import pytest

from turing_lab.model import (
    EquilibriumKind,
    ModelParams,
    Regime,
    classify_regime,
    coexistence_equilibrium,
    equilibria,
    reaction_residual,
    reaction_rhs,
    validate_params,
)
from turing_lab.presets import BASELINE, SELF_DIFFUSION

from conftest import random_valid_params


class TestValidateParams:
    def test_cross_diffusion_set_is_valid(self):
        # 4*0.1*3 = 1.2 > 1 and 4*1*2 = 8 > 4
        assert validate_params(BASELINE).ok

    def test_parabolicity_violation_reports_both_sides(self):
        p = BASELINE.with_overrides(d12=2.0)
        result = validate_params(p)
        assert not result.ok
        (v,) = result.violations
        assert v.name == "4*d11*d3 > d12^2"
        assert v.left == pytest.approx(1.2)
        assert v.right == pytest.approx(4.0)

    def test_positivity_boundary(self):
        result = validate_params(BASELINE.with_overrides(sigma1=0.0))
        assert not result.ok
        assert any(v.name == "sigma1 > 0" for v in result.violations)


class TestEquilibria:
    def test_baseline_coexistence_values(self):
        coex = coexistence_equilibrium(BASELINE)
        assert coex is not None
        np.testing.assert_allclose(
            coex.state, [16 / 11, 1 / 11, 1 / 11, 16 / 11], rtol=1e-14
        )
        # oracle: all four reaction expressions vanish there
        assert reaction_residual(BASELINE, coex.state) < 1e-14

    def test_all_four_kinds_present(self):
        kinds = {e.kind for e in equilibria(BASELINE)}
        assert kinds == set(EquilibriumKind)

    def test_weak_coupling_approaches_decoupled_logistic_limits(self):
        p = BASELINE.with_overrides(eta1=1e-13, eta2=1e-13)
        coex = coexistence_equilibrium(p)
        expected = [
            p.sigma1 / p.lambda1,
            p.sigma2 / p.lambda2,
            p.a1 * p.sigma2 / (p.lambda2 * p.b1),
            p.a2 * p.sigma1 / (p.lambda1 * p.b2),
        ]
        np.testing.assert_allclose(coex.state, expected, rtol=1e-10)

    def test_no_coexistence_at_threshold(self):
        # eta2*sigma1 = 6 = lambda1*sigma2: u2* would be exactly 0
        p = BASELINE.with_overrides(eta2=3.0)
        assert coexistence_equilibrium(p) is None
        assert len(equilibria(p)) == 3

    def test_rejects_invalid_params(self):
        with pytest.raises(ValueError):
            equilibria(BASELINE.with_overrides(sigma1=-1.0))

    def test_residual_property_random_draws(self, rng):
        hits = 0
        for _ in range(1000):
            p = random_valid_params(rng)
            for e in equilibria(p):
                assert reaction_residual(p, e.state) < 1e-12
                if e.kind is EquilibriumKind.COEXISTENCE:
                    hits += 1
            # threshold consistency, exact comparison
            assert (coexistence_equilibrium(p) is not None) == (
                p.lambda1 * p.sigma2 > p.eta2 * p.sigma1
            )
        assert hits > 0  # the draw ranges do produce coexistence cases


class TestReactionRhs:
    def test_zero_at_every_equilibrium(self):
        for e in equilibria(BASELINE):
            np.testing.assert_allclose(reaction_rhs(BASELINE, e.state), 0.0, atol=1e-13)

    def test_zero_at_origin(self):
        np.testing.assert_array_equal(reaction_rhs(BASELINE, (0, 0, 0, 0)), 0.0)

    def test_direct_substitution(self):
        np.testing.assert_allclose(
            reaction_rhs(BASELINE, (1.0, 1.0, 0.0, 0.0)), [10.0, 0.0, 0.5, 0.5]
        )

    def test_broadcasts_over_arrays(self, rng):
        u = rng.uniform(0.1, 2.0, size=(4, 5, 6))
        out = reaction_rhs(BASELINE, u)
        assert out.shape == (4, 5, 6)
        np.testing.assert_allclose(
            out[:, 2, 3], reaction_rhs(BASELINE, u[:, 2, 3])
        )


class TestClassifyRegime:
    def test_baseline_below_threshold(self):
        report = classify_regime(BASELINE)
        assert report.threshold == pytest.approx(3.0)
        assert report.regime not in (Regime.BORDERLINE, Regime.PREY_EXTINCTION)

    def test_self_diffusion_coexistence_stable(self):
        # zero cross-diffusion satisfies every smallness condition
        assert classify_regime(SELF_DIFFUSION).regime is Regime.COEXISTENCE_STABLE

    def test_borderline_at_exact_equality(self):
        report = classify_regime(BASELINE.with_overrides(eta2=3.0))
        assert report.regime is Regime.BORDERLINE

    def test_prey_extinction_above_threshold(self):
        report = classify_regime(SELF_DIFFUSION.with_overrides(eta2=4.0))
        assert report.regime is Regime.PREY_EXTINCTION

    def test_indeterminate_when_smallness_fails(self):
        # tiny sup-norm estimates shrink the smallness bounds to nothing
        report = classify_regime(BASELINE, sup_bounds=(1e-9, 1e-9))
        assert report.regime is Regime.INDETERMINATE
        assert any(not c.satisfied for c in report.smallness_checks)

    def test_checks_carry_both_sides(self):
        report = classify_regime(BASELINE)
        for check in report.smallness_checks:
            assert np.isfinite(check.left)
            assert check.satisfied == (check.left < check.right)

    def test_pure_function(self):
        assert classify_regime(BASELINE) == classify_regime(BASELINE)

    def test_rejects_nonpositive_sup_bounds(self):
        with pytest.raises(ValueError):
            classify_regime(BASELINE, sup_bounds=(0.0, 1.0))
