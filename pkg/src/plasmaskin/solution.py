"""Assembly of the eigenfunction-expansion solution.

Given the discrete spectrum, the expansion coefficients follow in closed
form from the boundary-value structure of 1/lam:

    J    = (1/pi) int_0^oo dtau / lam(i*tau)      (imaginary-axis integral)
    C1   = e_s / (a*z0*J)
    B_k  = A_k * eta_k**2 * exp(-eta_k**2) = -sqrt(pi)*C1 / lam'(eta_k)

B_k (the amplitude folded with its Gaussian weight) is the stored
quantity: the raw A_k involve exp(+eta_k**2), which overflows the double
range whenever Re(eta_k**2) is large and negative-definite quantities
cancel only analytically.  The continuum coefficient is evaluated in the
cancellation-free product form

    A(eta) = -C1*a*eta / (lam_plus(eta)*lam_minus(eta)),

identical to C1*exp(eta**2)/(2*sqrt(pi)*i*eta**2) * (1/lam_plus -
1/lam_minus) because the boundary-value jump is 2i*sqrt(pi)*a*eta**3*
exp(-eta**2); in particular A(eta) -> 0 linearly as eta -> 0+.

The fields are the discrete sums plus continuum integrals; the surface
impedance in Gaussian units is

    Z = -8*pi*i*Q*J / (c*z0),   Z = R*Z0,   R = (2*pi/c)*sqrt(2*eps*gamma),

a sign/normalization fixed by the collision-dominated limit Z0 -> 1 - i
and equivalent to Z = 4*pi*i*(omega l/c^2) * e(0)/e'(0) with
e'(0) = -z0/(2*J).  Z0 never depends on the dimensional scale c.

Identity residuals (field normalization at the surface, the reciprocal
sum fixing C1, and the resolvent representation of 1/lam) are exposed as
numeric checks; they fail loudly if a zero was missed or a quadrature is
defective.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from . import spectrum as _spectrum
from .dispersion import (
    PlasmaParams,
    boundary_arrays,
    lam,
    lam_boundary,
    lam_imag_axis,
    zero_scale_estimate,
)
from .errors import (
    BoundaryProximityError,
    DegenerateImpedanceError,
    DomainError,
    SpectralDegeneracyError,
)
from .numerics import (
    DEFAULT_QUAD,
    QuadratureSpec,
    integrate_finite,
    integrate_principal_value,
    integrate_semi_infinite,
)
from .specfun import SQRT_PI
from .spectrum import SpectrumInfo

_LAM_FLOOR = 1e-12
_IDENTITY_QUAD = QuadratureSpec(rel_tol=1e-10, abs_tol=0.0, max_subdivisions=4000)
_FIELD_QUAD = QuadratureSpec(rel_tol=1e-9, abs_tol=1e-16, max_subdivisions=4000)


@dataclass(frozen=True)
class SolutionCoefficients:
    """Closed-form expansion coefficients for one parameter point."""

    J: complex
    C1: complex
    discrete_weights: tuple   # B_k = A_k*eta_k**2*exp(-eta_k**2)
    spectrum: SpectrumInfo
    e_s: float = 1.0
    c1_split_difference: float | None = None

    @property
    def A_discrete(self) -> tuple:
        """Raw discrete amplitudes A_k = B_k*exp(eta_k**2)/eta_k**2.

        For deep zeros |Re eta_k**2| exceeds the double exponent range,
        so A_k saturates to inf (or underflows to 0); every computation
        in this package uses the folded weights B_k instead.
        """
        out = []
        for bk, eta in zip(self.discrete_weights, self.spectrum.zeros):
            w = eta * eta
            if w.real > 700.0:
                out.append(complex(math.inf, math.inf))
            else:
                out.append(bk * cmath.exp(w) / w)
        return tuple(out)


@dataclass
class FieldProfile:
    """Sampled field values on a user grid."""

    x_grid: np.ndarray
    e_values: np.ndarray
    h_samples: dict | None = None
    error_estimate: float | None = None


@dataclass(frozen=True)
class ImpedanceResult:
    """Surface impedance in Gaussian units plus its dimensionless form."""

    Z: complex
    R: float
    Z0: complex


def _imag_axis_integrand(p: PlasmaParams):
    def f(tau):
        vals = lam_imag_axis(tau, p)
        m = np.abs(vals)
        if m.size and np.min(m) < _LAM_FLOOR:
            i = int(np.argmin(m))
            raise SpectralDegeneracyError(
                f"dispersion function vanishes on the imaginary axis near "
                f"tau = {np.asarray(tau).ravel()[i]:.6g}")
        return 1.0 / vals
    return f


def _spike_breakpoints(p: PlasmaParams, scale: float):
    """tau positions where |lam(i*tau)| has sharp minima (near-zeros)."""
    taus = np.geomspace(1e-3 * scale, 1e3 * scale, 600)
    mods = np.abs(lam_imag_axis(taus, p))
    bps = []
    for i in range(1, len(taus) - 1):
        if mods[i] < mods[i - 1] and mods[i] < mods[i + 1] and mods[i] < 0.5:
            bps.append(taus[i])
    return bps


def compute_J(p: PlasmaParams, spec: QuadratureSpec = DEFAULT_QUAD, *,
              path: str = "erfcx") -> complex:
    """The imaginary-axis integral J = (1/pi) int_0^oo dtau/lam(i*tau).

    ``path`` selects the evaluation of lam on the axis: "erfcx" (stable
    closed form, default) or "complex" (the general off-axis formula at
    z = i*tau), kept as an independent cross-check route.
    """
    scale = max(1.0, zero_scale_estimate(p))
    if path == "erfcx":
        f = _imag_axis_integrand(p)
    elif path == "complex":
        from .dispersion import lam_many

        def f(tau):
            vals = lam_many(1j * np.asarray(tau, dtype=float), p)
            return 1.0 / vals
    else:
        raise DomainError(f"unknown path {path!r}")
    bps = _spike_breakpoints(p, scale)
    val = integrate_semi_infinite(f, spec, scale=scale, breakpoints=bps)
    return val / math.pi


def compute_coefficients(p: PlasmaParams, *, spectrum_info: SpectrumInfo | None = None,
                         e_s: float = 1.0,
                         spec: QuadratureSpec = DEFAULT_QUAD) -> SolutionCoefficients:
    """J, C1 and the discrete weights B_k for one parameter point."""
    info = spectrum_info if spectrum_info is not None else _spectrum.analyze(p)
    J = compute_J(p, spec)
    C1 = e_s / (p.a * p.z0 * J)
    weights = tuple(-SQRT_PI * C1 / d for d in info.lambda_prime_at_zeros)
    split = None
    if info.n_zeros == 4:
        # The same constant must cancel the pole at both eta_0 and eta_1;
        # report the relative spread of the two reconstructions.
        vals = [-(1.0 / SQRT_PI) * bk * d
                for bk, d in zip(weights, info.lambda_prime_at_zeros)]
        split = abs(vals[0] - vals[1]) / abs(C1)
    return SolutionCoefficients(J=J, C1=C1, discrete_weights=weights,
                                spectrum=info, e_s=e_s, c1_split_difference=split)


def continuum_coefficient(eta: float, coeffs: SolutionCoefficients,
                          p: PlasmaParams) -> complex:
    """Continuum-spectrum coefficient A(eta) for eta > 0.

    Evaluated in the product form -C1*a*eta/(lam_plus*lam_minus); the
    eta -> 0+ limit is 0 (linear in eta) and needs no special casing.
    """
    eta = float(eta)
    if not (eta > 0.0 and math.isfinite(eta)):
        raise DomainError("eta must be positive and finite")
    bv = lam_boundary(eta, p)
    denom = bv.lambda_plus * bv.lambda_minus
    if abs(denom) < _LAM_FLOOR:
        raise BoundaryProximityError(
            f"boundary values of lam vanish near eta = {eta}", mu=eta)
    return -coeffs.C1 * p.a * eta / denom


def _continuum_weight(eta, coeffs, p):
    """eta**2*exp(-eta**2)*A(eta), vectorized (the integrand weight)."""
    eta = np.asarray(eta, dtype=float)
    lp, lm = boundary_arrays(eta, p)
    return -coeffs.C1 * p.a * eta**3 * np.exp(-eta * eta) / (lp * lm)


def _recip_jump(eta, coeffs, p):
    """1/lam_plus - 1/lam_minus on the positive axis, cancellation-free."""
    eta = np.asarray(eta, dtype=float)
    lp, lm = boundary_arrays(eta, p)
    return -2j * SQRT_PI * p.a * eta**3 * np.exp(-eta * eta) / (lp * lm)


def field_e(x_grid, coeffs: SolutionCoefficients, p: PlasmaParams,
            spec: QuadratureSpec = _FIELD_QUAD) -> FieldProfile:
    """Electric-field profile e(x) on a grid of depths x >= 0."""
    xs = np.asarray(x_grid, dtype=float)
    if xs.ndim != 1 or xs.size == 0:
        raise DomainError("x_grid must be a non-empty 1-d array")
    if np.any(xs < 0.0) or not np.all(np.isfinite(xs)):
        raise DomainError("depths must be finite and >= 0")
    pref = p.a * p.z0 / SQRT_PI
    zeros = coeffs.spectrum.zeros
    evals = np.empty(xs.size, dtype=complex)
    for i, x in enumerate(xs):
        disc = sum(bk * cmath.exp(-p.z0 * x / eta)
                   for bk, eta in zip(coeffs.discrete_weights, zeros))

        def integrand(eta, _x=x):
            eta = np.asarray(eta, dtype=float)
            w = _continuum_weight(eta, coeffs, p)
            out = np.zeros_like(w)
            pos = eta > 0.0
            out[pos] = w[pos] * np.exp(-p.z0 * _x / eta[pos])
            return out

        bps = [(0.5 * x) ** (1.0 / 3.0)] if x > 0 else []
        cont = integrate_semi_infinite(integrand, spec, scale=2.0,
                                       breakpoints=bps)
        evals[i] = pref * (disc + cont)
    return FieldProfile(x_grid=xs.copy(), e_values=evals)


def field_h(x: float, mu: float, coeffs: SolutionCoefficients, p: PlasmaParams,
            spec: QuadratureSpec = _FIELD_QUAD) -> complex:
    """Distribution-function amplitude h(x, mu) at one phase-space point.

    For mu > 0 the continuum integral is a principal value across
    eta = mu plus the delta-term contribution lam(mu)*A(mu)*
    exp(-z0*x/mu); for mu <= 0 the integrand is regular on (0, oo).
    """
    x = float(x)
    mu = float(mu)
    if not (x >= 0.0 and math.isfinite(x) and math.isfinite(mu)):
        raise DomainError("need finite x >= 0 and finite mu")
    for eta in coeffs.spectrum.zeros:
        if abs(eta.real - mu) < 1e-12:
            raise DomainError(
                f"mu = {mu} coincides with the real part of the discrete "
                f"zero {eta}; the configuration is rejected as measure-zero")

    disc = sum(bk * eta / (eta - mu) * cmath.exp(-p.z0 * x / eta)
               for bk, eta in zip(coeffs.discrete_weights,
                                  coeffs.spectrum.zeros))
    disc *= p.a / SQRT_PI

    def smooth(eta):
        eta = np.asarray(eta, dtype=float)
        w = _continuum_weight(eta, coeffs, p)  # eta^2 e^{-eta^2} A(eta)
        out = np.zeros_like(w)
        pos = eta > 0.0
        out[pos] = ((p.a / SQRT_PI) * eta[pos] * w[pos]
                    * np.exp(-p.z0 * x / eta[pos]))
        return out

    if mu > 0.0:
        d = 0.5 * min(mu, 1.0)
        lo, hi = mu - d, mu + d
        parts = integrate_principal_value(smooth, mu, lo, hi, spec)
        if lo > 0.0:
            parts += integrate_finite(lambda e: smooth(e) / (e - mu),
                                      0.0, lo, spec)
        parts += integrate_semi_infinite(
            lambda s: smooth(s + hi) / (s + hi - mu), spec, scale=2.0)
        delta_term = (lam_boundary(mu, p).principal
                      * continuum_coefficient(mu, coeffs, p)
                      * cmath.exp(-p.z0 * x / mu))
        return disc + parts + delta_term
    cont = integrate_semi_infinite(lambda e: smooth(e) / (e - mu),
                                   spec, scale=2.0)
    return disc + cont


def e_prime_at_surface(coeffs: SolutionCoefficients, p: PlasmaParams) -> complex:
    """Surface slope e'(0) = -e_s*z0/(2*J) of the decaying field."""
    return -coeffs.e_s * p.z0 / (2.0 * coeffs.J)


def _assemble_impedance(p: PlasmaParams, J: complex, c_light: float) -> ImpedanceResult:
    if not (cmath.isfinite(J) and abs(J) > 0.0):
        raise DegenerateImpedanceError(f"degenerate impedance integral J = {J!r}")
    root = math.sqrt(2.0 * p.epsilon * p.gamma)
    Z0 = -4j * p.Q * J / (p.z0 * root)
    R = 2.0 * math.pi * root / c_light
    return ImpedanceResult(Z=R * Z0, R=R, Z0=Z0)


def impedance(p: PlasmaParams, *, c_light: float = 1.0,
              J: complex | None = None,
              spec: QuadratureSpec = DEFAULT_QUAD) -> ImpedanceResult:
    """Surface impedance Z = R*Z0 with R the collision-dominated magnitude.

    Z equals 4*pi*i*(omega*l/c**2)*e_s/e'(0); the overall sign is pinned
    by the collision-dominated limit Z0 -> 1 - i.  Z0 is independent of
    ``c_light``, which only scales the dimensional Z and R.
    """
    if not (c_light > 0.0 and math.isfinite(c_light)):
        raise DomainError("c_light must be positive and finite")
    if J is None:
        J = compute_J(p, spec)
    return _assemble_impedance(p, J, c_light)


def impedance_reduced_form(p: PlasmaParams, *, c_light: float = 1.0,
                           spec: QuadratureSpec = DEFAULT_QUAD) -> ImpedanceResult:
    """Impedance via the reduced integrand written directly in (gamma,
    epsilon, v_c), bypassing the derived constants a, b, z0:

        1/lam(i*tau) = w**3 / (w**3 - w*(gamma*v_c*tau)**2
                               - i*gamma*v_c**2*sqrt(pi)*tau**3*erfcx(tau)),

    with w = epsilon - i*gamma.  Kept as an independent algebraic route
    for the dual-form consistency check.
    """
    from scipy.special import erfcx as _erfcx

    w = complex(p.epsilon, -p.gamma)
    w3 = w**3
    gv2 = p.gamma * p.v_c**2

    def f(tau):
        tau = np.asarray(tau, dtype=float)
        denom = (w3 - w * (p.gamma * p.v_c * tau) ** 2
                 - 1j * gv2 * SQRT_PI * tau**3 * _erfcx(tau))
        return w3 / denom

    scale = max(1.0, zero_scale_estimate(p))
    bps = _spike_breakpoints(p, scale)
    J = integrate_semi_infinite(f, spec, scale=scale, breakpoints=bps) / math.pi
    return _assemble_impedance(p, J, c_light)


def check_residue_identity(z: complex, coeffs: SolutionCoefficients,
                           p: PlasmaParams,
                           spec: QuadratureSpec = _IDENTITY_QUAD) -> float:
    """Relative residual of the resolvent representation of 1/lam.

    1/lam(z) should equal the boundary-jump integral of 1/lam over the
    cut plus the pole contributions of the +-eta pairs:

        (1/2/pi/i) int_-oo^oo [1/lam_+ - 1/lam_-] deta/(eta - z)
          - sum_k 2*eta_k/((eta_k**2 - z**2)*lam'(eta_k)).

    A nonzero residual beyond quadrature error indicates a missed zero.
    """
    z = complex(z)
    if z.imag == 0.0:
        raise DomainError("z must lie off the real axis")
    for eta in coeffs.spectrum.zeros:
        if min(abs(z - eta), abs(z + eta)) < 1e-6 * max(1.0, abs(eta)):
            raise DomainError("z is too close to a discrete zero")
    lhs = 1.0 / lam(z, p)

    # Fold the odd jump onto the positive half axis.
    def integrand(eta):
        eta = np.asarray(eta, dtype=float)
        return _recip_jump(eta, coeffs, p) * 2.0 * eta / (eta * eta - z * z)

    integral = integrate_semi_infinite(integrand, spec, scale=2.0)
    pole_sum = sum(2.0 * eta / ((eta * eta - z * z) * d)
                   for eta, d in zip(coeffs.spectrum.zeros,
                                     coeffs.spectrum.lambda_prime_at_zeros))
    rhs = integral / (2.0 * math.pi * 1j) - pole_sum
    return abs(lhs - rhs) / abs(lhs)


def residual_field_normalization(coeffs: SolutionCoefficients, p: PlasmaParams,
                                 spec: QuadratureSpec = _IDENTITY_QUAD) -> float:
    """Relative residual of the surface normalization e(0) = e_s.

    (1/sqrt(pi)) * [sum_k B_k + int_0^oo eta**2*exp(-eta**2)*A(eta) deta]
    must equal e_s/(a*z0); the continuum term is an independent
    quadrature over the boundary-value jump.
    """
    target = coeffs.e_s / (p.a * p.z0)
    cont = integrate_semi_infinite(lambda e: _continuum_weight(e, coeffs, p),
                                   spec, scale=2.0)
    lhs = (sum(coeffs.discrete_weights) + cont) / SQRT_PI
    return abs(lhs - target) / abs(target)


def residual_coefficient_constant(coeffs: SolutionCoefficients, p: PlasmaParams,
                                  spec: QuadratureSpec = _IDENTITY_QUAD) -> float:
    """Relative residual of the reciprocal-sum identity fixing C1.

    -sum_k 1/lam'(eta_k) + (1/2/pi/i) int_0^oo [1/lam_+ - 1/lam_-] deta
    must equal e_s/(a*z0*C1) (= J); verified against an independent
    quadrature of the jump on the cut.
    """
    target = coeffs.e_s / (p.a * p.z0 * coeffs.C1)
    integral = integrate_semi_infinite(lambda e: _recip_jump(e, coeffs, p),
                                       spec, scale=2.0)
    lhs = (-sum(1.0 / d for d in coeffs.spectrum.lambda_prime_at_zeros)
           + integral / (2.0 * math.pi * 1j))
    return abs(lhs - target) / abs(target)


def identity_residuals(coeffs: SolutionCoefficients, p: PlasmaParams,
                       z: complex = 2j) -> dict:
    """All three structural identity residuals in one dictionary."""
    return {
        "field_normalization": residual_field_normalization(coeffs, p),
        "coefficient_constant": residual_coefficient_constant(coeffs, p),
        "resolvent": check_residue_identity(z, coeffs, p),
    }
