"""Quadrature, principal values, Newton, and winding numbers."""

import math

import numpy as np
import pytest
from scipy.integrate import quad

from plasmaskin import (
    ContourZeroError,
    DomainError,
    NewtonError,
    PathSegment,
    QuadratureError,
    QuadratureSpec,
    integrate_finite,
    integrate_principal_value,
    integrate_semi_infinite,
    make_params,
    newton_refine,
    winding_number,
)
from plasmaskin.dispersion import lam_imag_axis
from plasmaskin.numerics import rectangle_path

TIGHT = QuadratureSpec(rel_tol=1e-13, abs_tol=1e-15, max_subdivisions=4000)


def circle(radius=1.0, center=0j, samples=64):
    pts = [center + radius * np.exp(2j * math.pi * k / 8) for k in range(8)]
    return [PathSegment(a, b, samples) for a, b in zip(pts, pts[1:] + pts[:1])]


class TestSemiInfinite:
    def test_exponential(self):
        val = integrate_semi_infinite(lambda t: np.exp(-t), TIGHT)
        assert val == pytest.approx(1.0, abs=1e-12)

    def test_lorentzian(self):
        val = integrate_semi_infinite(lambda t: 1.0 / (1.0 + t * t), TIGHT)
        assert val == pytest.approx(math.pi / 2.0, abs=1e-12)

    def test_two_transforms_agree_on_dispersion_integrand(self):
        p = make_params(1e-3, 1e-3, 1e-3)

        def f(t):
            return 1.0 / lam_imag_axis(t, p)

        a = integrate_semi_infinite(f, transform="rational")
        b = integrate_semi_infinite(f, transform="tangent")
        assert a != 0
        assert abs(a - b) <= 1e-9 * abs(a)

    def test_determinism(self):
        f = lambda t: np.exp(-t) * np.cos(3 * t)
        a = integrate_semi_infinite(f)
        b = integrate_semi_infinite(f)
        assert a == b  # bit-identical

    def test_budget_error_carries_estimate(self):
        starving = QuadratureSpec(rel_tol=1e-15, abs_tol=0.0, max_subdivisions=2)
        with pytest.raises(QuadratureError) as err:
            integrate_semi_infinite(lambda t: 1.0 / (1.0 + t**2.000001), starving)
        assert err.value.estimate == pytest.approx(math.pi / 2, rel=1e-3)
        assert err.value.error_bound > 0


class TestFinite:
    def test_polynomial_exact(self):
        val = integrate_finite(lambda x: 3 * x * x, 0.0, 2.0, TIGHT)
        assert val == pytest.approx(8.0, abs=1e-13)

    def test_breakpoints_help_kinks(self):
        f = lambda x: np.abs(x - 0.3)
        val = integrate_finite(f, 0.0, 1.0, TIGHT, breakpoints=(0.3,))
        assert val == pytest.approx(0.5 * 0.3**2 + 0.5 * 0.7**2, abs=1e-13)

    def test_rejects_bad_interval(self):
        with pytest.raises(DomainError):
            integrate_finite(lambda x: x, 1.0, 1.0)


class TestPrincipalValue:
    def test_constant_numerator_symmetric(self):
        val = integrate_principal_value(lambda x: np.ones_like(x), 0.0, -1.0, 1.0, TIGHT)
        assert abs(val) < 1e-13

    def test_linear_numerator(self):
        val = integrate_principal_value(lambda x: np.asarray(x), 0.0, -1.0, 1.0, TIGHT)
        assert val == pytest.approx(2.0, abs=1e-13)

    def test_gaussian_against_excision_limit(self):
        g = lambda x: np.exp(-np.asarray(x) ** 2)
        pole, a, b = 0.5, -3.0, 3.0
        val = integrate_principal_value(g, pole, a, b, TIGHT)

        def excised(d):
            left, _ = quad(lambda x: math.exp(-x * x) / (x - pole), a, pole - d,
                           epsabs=1e-14, limit=300)
            right, _ = quad(lambda x: math.exp(-x * x) / (x - pole), pole + d, b,
                            epsabs=1e-14, limit=300)
            return left + right

        # symmetric excision error is O(d); Richardson-extrapolate d -> 0
        e1, e2 = excised(1e-3), excised(5e-4)
        oracle = 2 * e2 - e1
        assert val == pytest.approx(oracle, abs=1e-8)

    def test_pole_outside_rejected(self):
        with pytest.raises(DomainError):
            integrate_principal_value(lambda x: np.ones_like(x), 2.0, -1.0, 1.0)


class TestNewton:
    def test_known_quadratic_root(self):
        root = newton_refine(lambda z: z * z + 1.0, lambda z: 2.0 * z,
                             0.2 + 0.8j, tol=1e-12)
        assert root == pytest.approx(1j, abs=1e-12)

    def test_linear_one_step(self):
        root = newton_refine(lambda z: z - 1.0, lambda z: 1.0 + 0j, 57.0, tol=1e-14)
        assert root == pytest.approx(1.0, abs=1e-14)

    def test_residual_contract(self):
        f = lambda z: (z - 2.0) * (z + 3.0)
        fp = lambda z: 2.0 * z + 1.0
        root = newton_refine(f, fp, 1.5, tol=1e-13)
        assert abs(f(root)) < 1e-13

    def test_divergence_reports_trace(self):
        with pytest.raises(NewtonError) as err:
            newton_refine(lambda z: z * z + 1.0, lambda z: 2.0 * z,
                          10.0 + 0j, tol=1e-15, max_iter=3)
        assert len(err.value.iterates) >= 2


class TestWinding:
    def test_identity_on_unit_circle(self):
        assert winding_number(lambda z: z, circle()) == 1

    def test_square_on_radius_two(self):
        assert winding_number(lambda z: z * z, circle(radius=2.0)) == 2

    def test_pole_counts_negative(self):
        assert winding_number(lambda z: 1.0 / z, circle()) == -1

    def test_shifted_zero_outside(self):
        assert winding_number(lambda z: z - 3.0, circle()) == 0

    def test_rectangle_additivity(self):
        f = lambda z: (z - (0.2 + 0.3j)) * (z + 0.5 - 0.4j) * (z - 1.4j)
        whole = winding_number(f, rectangle_path(-1, 1, -1, 1, 32))
        left = winding_number(f, rectangle_path(-1, 0, -1, 1, 32))
        right = winding_number(f, rectangle_path(0, 1, -1, 1, 32))
        assert whole == left + right == 2

    def test_zero_on_contour_detected(self):
        with pytest.raises(ContourZeroError):
            winding_number(lambda z: z - 1.0, circle(), min_modulus=1e-8)

    def test_open_path_rejected(self):
        segs = [PathSegment(0j, 1 + 0j, 4), PathSegment(1 + 0j, 1 + 1j, 4)]
        with pytest.raises(DomainError):
            winding_number(lambda z: z + 2.0, segs)

    def test_needs_refinement_high_order(self):
        # z^9 with coarse initial sampling forces midpoint insertion
        segs = circle(samples=2)
        assert winding_number(lambda z: z**9, segs) == 9


class TestSpecs:
    def test_quadrature_spec_validation(self):
        with pytest.raises(DomainError):
            QuadratureSpec(rel_tol=0.0)
        with pytest.raises(DomainError):
            QuadratureSpec(abs_tol=-1.0)
        with pytest.raises(DomainError):
            QuadratureSpec(max_subdivisions=0)

    def test_path_segment_validation(self):
        with pytest.raises(DomainError):
            PathSegment(0j, 1j, samples=1)
