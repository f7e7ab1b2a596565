"""Independent direct solvers against the expansion solution."""

import math

import numpy as np
import pytest

from plasmaskin import (
    OracleConfig,
    fd_profile,
    field_e,
    fourier_impedance,
    impedance,
    make_params,
)
from plasmaskin.oracle import default_config, field_wavenumber, response_kernel
from plasmaskin.solution import e_prime_at_surface


class TestFourierImpedance:
    def test_agreement_at_base_point(self, base_params):
        za = impedance(base_params).Z
        zf = fourier_impedance(base_params)
        assert abs(za - zf) <= 1e-6 * abs(za)

    def test_agreement_near_resonance(self):
        p = make_params(0.999, 1e-3, 1e-3)
        za = impedance(p).Z
        zf = fourier_impedance(p)
        assert abs(za - zf) <= 1e-5 * abs(za)

    def test_invariant_under_kmax_doubling(self, base_params):
        cfg = default_config(base_params)
        z1 = fourier_impedance(base_params, cfg)
        cfg2 = OracleConfig(k_max=2.0 * cfg.k_max, n_k=cfg.n_k,
                            mu_nodes=cfg.mu_nodes, x_max=cfg.x_max, n_x=cfg.n_x)
        z2 = fourier_impedance(base_params, cfg2)
        assert abs(z1 - z2) <= 1e-9 * abs(z1)

    def test_kernel_local_limit_value(self):
        p = make_params(1e-3, 1e-3, 1e-6)
        k0 = complex(response_kernel(0.0, p))
        assert k0 == pytest.approx(1j * p.alpha / p.z0, rel=1e-14)

    def test_kernel_flattens_in_local_regime(self):
        # With v_c -> 0 the field support shrinks to k ~ k_f, over which
        # the kernel is constant to O((k_f/|z0|)^2): the local limit.
        p = make_params(1e-3, 1e-3, 1e-6)
        kf = field_wavenumber(p)
        k0 = complex(response_kernel(0.0, p))
        kk = complex(response_kernel(kf, p))
        assert abs(kk - k0) / abs(k0) < 1e-3


class TestFdProfile:
    def test_surface_value_imposed(self, base_params):
        prof = fd_profile(base_params)
        assert prof.e_values[0] == 1.0

    def test_agreement_with_expansion(self, base_params, base_coeffs):
        prof = fd_profile(base_params)
        mask = prof.x_grid <= 5.0
        ana = field_e(prof.x_grid[mask], base_coeffs, base_params)
        diff = float(np.max(np.abs(ana.e_values - prof.e_values[mask])))
        assert diff <= max(1e-3, 3.0 * prof.error_estimate)

    def test_surface_slope_against_closed_form(self, base_params, base_coeffs):
        prof = fd_profile(base_params)
        x, e = prof.x_grid, prof.e_values
        d1, d2 = x[1] - x[0], x[2] - x[1]
        fd = (-(2 * d1 + d2) / (d1 * (d1 + d2)) * e[0]
              + (d1 + d2) / (d1 * d2) * e[1]
              - d1 / (d2 * (d1 + d2)) * e[2])
        exact = e_prime_at_surface(base_coeffs, base_params)
        assert abs(fd - exact) <= 1e-3 * abs(exact)

    def test_grid_doubling_convergence(self):
        p = make_params(0.1, 1e-3, 1e-3)
        coarse = OracleConfig(k_max=100.0, mu_nodes=16, n_x=120)
        fine = OracleConfig(k_max=100.0, mu_nodes=32, n_x=240)
        e1 = fd_profile(p, coarse).error_estimate
        e2 = fd_profile(p, fine).error_estimate
        assert e1 / e2 >= 3.0


def test_both_oracles_agree_on_surface_slope(base_params):
    # Fourier route: e'(0) = 4*pi*i*Q/(c*Z); finite differences: direct.
    zf = fourier_impedance(base_params)
    ep_fourier = 4j * math.pi * base_params.Q / zf
    prof = fd_profile(base_params)
    x, e = prof.x_grid, prof.e_values
    d1, d2 = x[1] - x[0], x[2] - x[1]
    ep_fd = (-(2 * d1 + d2) / (d1 * (d1 + d2)) * e[0]
             + (d1 + d2) / (d1 * d2) * e[1]
             - d1 / (d2 * (d1 + d2)) * e[2])
    assert abs(ep_fd - ep_fourier) <= 1e-3 * abs(ep_fourier)


def test_config_validation():
    with pytest.raises(Exception):
        OracleConfig(k_max=-1.0)
    with pytest.raises(Exception):
        OracleConfig(k_max=10.0, n_x=4)
