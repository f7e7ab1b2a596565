"""Discrete spectrum of the dispersion function.

The zeros of lam(z) off the real axis come in +-eta pairs; their total
number N is either 2 or 4 and classifies the parameter point (DMinus
for N = 2, DPlus for N = 4).  N is obtained from the argument principle
applied to the region outside a thin rectangle hugging the cut: because
lam grows like (b-a)*z**2 at infinity,

    N = 2 + (winding of lam along the thin rectangle taken clockwise)
      = 2 - w_ccw.

Individual zeros are then isolated by recursive rectangle subdivision
of the upper half plane (counts from counterclockwise windings) and
polished by Newton iteration with the closed-form derivative; the lower
zeros are the mirrors -eta.  Of each pair the member satisfying the
decay condition Re(z0/eta) > 0 is stored.

Everything is pure computation; results are returned sorted (|eta|
ascending) and are deterministic.
"""

from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass

import numpy as np

from . import numerics
from .dispersion import (
    PlasmaParams,
    lam,
    lam_many,
    lam_prime,
    zero_scale_estimate,
)
from .errors import (
    BoundaryProximityError,
    ContourZeroError,
    DomainError,
    PlasmaSkinError,
)
from .numerics import PathSegment, winding_number

EPS_CONTOUR = 1e-3          # distance of the counting contour from the cut
BOUNDARY_FLOOR = 1e-8       # |lam| floor on the contour before declaring
                            # spectral-boundary proximity
SIMPLE_ZERO_FLOOR = 1e-10   # |lam'| floor below which a zero is treated as
                            # (near-)double, i.e. boundary proximity
_FARSIDE_REL = 1e-6         # asymptotic dominance required on the far sides
_MAX_L = 1e10


class Region(enum.Enum):
    D_PLUS = "DPlus"
    D_MINUS = "DMinus"


@dataclass(frozen=True)
class SpectrumInfo:
    """Zero count, region tag, and the decaying half of the zero set."""

    n_zeros: int
    region: Region
    zeros: tuple
    lambda_prime_at_zeros: tuple


def _graded_axis(core: float, step: float, ratio: float, L: float):
    """Symmetric grid on [-L, L]: uniform core plus geometric tails."""
    xs = list(np.arange(0.0, min(core, L), step))
    x = xs[-1] + step if xs else step
    while x < L:
        xs.append(x)
        x *= ratio
    xs.append(L)
    xs = np.array(xs)
    return np.concatenate([-xs[::-1], xs[1:]])


def _strip_path(L: float, eps: float):
    """Counterclockwise thin rectangle [-L, L] x [-eps, eps] around the cut."""
    xs = _graded_axis(12.0, 0.25, 1.25, L)
    verts = [complex(x, -eps) for x in xs]
    verts += [complex(L, 0.0), complex(L, eps)]
    verts += [complex(x, eps) for x in xs[::-1]]
    verts += [complex(-L, 0.0)]
    segs = []
    for v0, v1 in zip(verts, verts[1:] + verts[:1]):
        segs.append(PathSegment(v0, v1, 2))
    return segs


def strip_winding(f, L: float, eps: float, *, min_modulus: float = 0.0) -> int:
    """Counterclockwise winding of f along the thin cut-hugging rectangle."""
    return winding_number(f, _strip_path(L, eps), min_modulus=min_modulus)


def _choose_strip_length(p: PlasmaParams, eps: float) -> float:
    c2 = p.b - p.a
    L = 16.0
    while L < _MAX_L:
        probes = np.array([complex(s * L, y) for s in (-1.0, 1.0)
                           for y in (-eps, 0.0, eps)])
        ref = c2 * probes * probes
        rel = np.abs(lam_many(probes, p) - ref) / np.abs(ref)
        if np.all(rel < _FARSIDE_REL):
            return L
        L *= 4.0
    raise PlasmaSkinError("could not find an asymptotically dominated contour size")


def count_zeros(p: PlasmaParams, *, contour_scale: float = 1.0) -> int:
    """Total number of dispersion-function zeros off the cut.

    Uses the clockwise strip winding plus the quadratic growth at
    infinity; raises :class:`BoundaryProximityError` when |lam| falls
    below the floor anywhere on the contour (a zero is approaching the
    continuous spectrum) and :class:`PlasmaSkinError` if the count is
    not in {2, 4}.
    """
    if not (contour_scale > 0.0 and math.isfinite(contour_scale)):
        raise DomainError("contour_scale must be positive and finite")
    eps = EPS_CONTOUR * contour_scale
    L = _choose_strip_length(p, eps) * contour_scale

    def f(z):
        return lam_many(z, p)

    try:
        w_ccw = strip_winding(f, L, eps, min_modulus=BOUNDARY_FLOOR)
    except ContourZeroError as exc:
        mu = exc.point.real if exc.point is not None else None
        raise BoundaryProximityError(
            f"spectral boundary proximity: |lam| at or below {BOUNDARY_FLOOR:.0e} "
            f"on the counting contour near mu = {mu}", mu=mu) from exc
    n = 2 - w_ccw
    if n in (2, 4):
        return n
    if n <= 0:
        # A zero pair hides between the contour and the cut: the point
        # is (numerically) on the wrong side of the spectral boundary.
        raise BoundaryProximityError(
            f"zero count came out {n}: a discrete zero lies within the "
            f"contour offset {eps:g} of the continuous spectrum")
    raise PlasmaSkinError(f"unexpected zero count N = {n}")


def _rect_winding(p, x0, x1, y0, y1, *, samples=24):
    path = numerics.rectangle_path(x0, x1, y0, y1, samples_per_side=samples)
    return winding_number(lambda z: lam_many(z, p), path, min_modulus=1e-290)


def _newton_polish(p: PlasmaParams, z0: complex, max_iter: int = 80):
    """Newton iteration to machine-level residual; None on failure."""
    z = complex(z0)
    for _ in range(max_iter):
        try:
            fz = lam(z, p)
            dz = lam_prime(z, p)
        except DomainError:
            return None
        scale = max(1.0, abs(dz) * abs(z))
        if abs(fz) < 1e-14 * scale:
            return z
        if dz == 0 or not cmath.isfinite(dz):
            return None
        step = fz / dz
        z = z - step
        if not cmath.isfinite(z):
            return None
        if abs(step) < 5e-17 * abs(z):
            break
    try:
        fz = lam(z, p)
        dz = lam_prime(z, p)
    except DomainError:
        return None
    if abs(fz) < 1e-13 * max(1.0, abs(dz) * abs(z)):
        return z
    return None


def _inside(z, rect, slack=0.0):
    x0, x1, y0, y1 = rect
    mx = slack * (x1 - x0)
    my = slack * (y1 - y0)
    return (x0 - mx <= z.real <= x1 + mx) and (y0 - my <= z.imag <= y1 + my)


def _subdivide(p, rect, count, depth=0):
    if count == 0:
        return []
    x0, x1, y0, y1 = rect
    if count == 1:
        z0 = complex(0.5 * (x0 + x1), 0.5 * (y0 + y1))
        root = _newton_polish(p, z0)
        if root is not None and _inside(root, rect, slack=1e-9):
            return [root]
    if depth > 60:
        raise PlasmaSkinError("zero-search subdivision exhausted")
    wide = (x1 - x0) >= (y1 - y0)
    for frac in (0.5, 0.53, 0.47, 0.59, 0.41):
        if wide:
            xm = x0 + frac * (x1 - x0)
            r1, r2 = (x0, xm, y0, y1), (xm, x1, y0, y1)
        else:
            ym = y0 + frac * (y1 - y0)
            r1, r2 = (x0, x1, y0, ym), (x0, x1, ym, y1)
        try:
            c1 = _rect_winding(p, *r1)
            c2 = _rect_winding(p, *r2)
        except ContourZeroError:
            continue  # split line grazed a zero; try another fraction
        if c1 + c2 != count:
            continue  # inconsistent counts, refine with a different split
        return (_subdivide(p, r1, c1, depth + 1)
                + _subdivide(p, r2, c2, depth + 1))
    raise PlasmaSkinError("could not split search rectangle cleanly")


def find_zeros(p: PlasmaParams, n: int, *, contour_scale: float = 1.0,
               search_scale: float = 1.0) -> SpectrumInfo:
    """Locate the decaying half of the n zeros and their derivatives.

    ``n`` must come from :func:`count_zeros`.  The upper half plane is
    searched by winding-guided rectangle subdivision with Newton
    polishing; the lower zeros are the mirrors.  For each +-eta pair
    the member with Re(z0/eta) > 0 is stored, sorted by |eta|.
    """
    if n not in (2, 4):
        raise DomainError(f"zero count must be 2 or 4, got {n}")
    half = n // 2
    eps = EPS_CONTOUR * contour_scale
    R = max(10.0, 2.0 * zero_scale_estimate(p)) * search_scale

    uppers = None
    for _ in range(5):
        try:
            m = _rect_winding(p, -R, R, eps, R, samples=48)
        except ContourZeroError:
            R *= 1.37
            continue
        if m == half:
            uppers = _subdivide(p, (-R, R, eps, R), m)
            break
        R *= 2.5
    if uppers is None or len(uppers) != half:
        raise BoundaryProximityError(
            "could not isolate the expected number of zeros in the upper "
            "half plane; parameters may sit near the spectral boundary")

    candidates = []
    for r in uppers:
        candidates.extend([r, -r])
    stored = [z for z in candidates if (p.z0 / z).real > 0.0]
    if len(stored) != half:
        raise BoundaryProximityError(
            "decay-condition selection is ambiguous for the located zeros")
    stored.sort(key=abs)

    derivs = []
    for z in stored:
        d = lam_prime(z, p)
        if abs(d) < SIMPLE_ZERO_FLOOR:
            raise BoundaryProximityError(
                f"zero at {z} is nearly double (|lam'| = {abs(d):.2e}); "
                "treating as spectral-boundary proximity")
        resid = abs(lam(z, p))
        if resid > 1e-12 * max(1.0, abs(d) * abs(z)):
            raise PlasmaSkinError(
                f"zero at {z} failed the residual contract (|lam| = {resid:.2e})")
        derivs.append(d)

    region = Region.D_PLUS if n == 4 else Region.D_MINUS
    return SpectrumInfo(n_zeros=n, region=region, zeros=tuple(stored),
                        lambda_prime_at_zeros=tuple(derivs))


def analyze(p: PlasmaParams, *, contour_scale: float = 1.0) -> SpectrumInfo:
    """count_zeros followed by find_zeros."""
    return find_zeros(p, count_zeros(p, contour_scale=contour_scale),
                      contour_scale=contour_scale)
