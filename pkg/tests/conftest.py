import numpy as np
import pytest

from plasmaskin import compute_coefficients, find_zeros, count_zeros, make_params

PANEL_GAMMAS = (0.1, 0.5, 0.9, 1.0, 1.3)
EPSILON = 1e-3
V_C = 1e-3


@pytest.fixture(scope="session")
def base_params():
    """The tame reference point: all derived constants are O(1)."""
    return make_params(1e-3, 1e-3, 1e-3)


@pytest.fixture(scope="session")
def base_coeffs(base_params):
    return compute_coefficients(base_params)


@pytest.fixture(scope="session")
def panel():
    """(params, coefficients) for the acceptance panel, computed once."""
    out = []
    for g in PANEL_GAMMAS:
        p = make_params(g, EPSILON, V_C)
        info = find_zeros(p, count_zeros(p))
        out.append((p, compute_coefficients(p, spectrum_info=info)))
    return out


@pytest.fixture()
def rng():
    return np.random.default_rng(20240817)
