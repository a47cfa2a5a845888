import numpy as np
import pytest

from turing_lab.model import ModelParams


def random_valid_params(rng: np.random.Generator) -> ModelParams:
    """A random parameter set satisfying positivity and parabolicity.

    Rates are log-uniform over [0.05, 20]; the cross-diffusion
    coefficients are drawn below their parabolicity caps.
    """
    def rate() -> float:
        return float(np.exp(rng.uniform(np.log(0.05), np.log(20.0))))

    d11, d21, d3, d4 = rate(), rate(), rate(), rate()
    d12 = float(rng.uniform(0.05, 0.95)) * 2.0 * np.sqrt(d11 * d3)
    d22 = float(rng.uniform(0.05, 0.95)) * 2.0 * np.sqrt(d21 * d4)
    return ModelParams(
        d11=d11, d12=d12, d21=d21, d22=d22, d3=d3, d4=d4,
        sigma1=rate(), sigma2=rate(), lambda1=rate(), lambda2=rate(),
        eta1=rate(), eta2=rate(), a1=rate(), a2=rate(), b1=rate(), b2=rate(),
    )


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20260810)
