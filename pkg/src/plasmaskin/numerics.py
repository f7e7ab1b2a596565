"""Generic numerical kernels: adaptive quadrature, principal values,
complex Newton refinement, and winding numbers along closed paths.

The quadrature core is an adaptive Gauss-Kronrod 7-15 rule operating on
complex-valued integrands.  Integrands must accept an ndarray of
abscissae and return an ndarray of values; every routine here is
deterministic (bit-identical output for identical input) and free of
global state.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    ContourZeroError,
    DomainError,
    NewtonError,
    QuadratureError,
    WindingError,
)

# Kronrod-15 abscissae on [-1, 1] and the embedded Gauss-7 rule.
_XGK = np.array([
    -0.9914553711208126, -0.9491079123427585, -0.8648644233597691,
    -0.7415311855993944, -0.5860872354676911, -0.4058451513773972,
    -0.2077849550078985, 0.0, 0.2077849550078985, 0.4058451513773972,
    0.5860872354676911, 0.7415311855993944, 0.8648644233597691,
    0.9491079123427585, 0.9914553711208126,
])
_WGK = np.array([
    0.0229353220105292, 0.0630920926299785, 0.1047900103222502,
    0.1406532597155259, 0.1690047266392679, 0.1903505780647854,
    0.2044329400752989, 0.2094821410847278, 0.2044329400752989,
    0.1903505780647854, 0.1690047266392679, 0.1406532597155259,
    0.1047900103222502, 0.0630920926299785, 0.0229353220105292,
])
_WG = np.array([
    0.1294849661688697, 0.2797053914892767, 0.3818300505051189,
    0.4179591836734694, 0.3818300505051189, 0.2797053914892767,
    0.1294849661688697,
])
_GAUSS_IDX = np.arange(1, 15, 2)


@dataclass(frozen=True)
class QuadratureSpec:
    """Tolerances and budget for adaptive quadrature."""

    rel_tol: float = 1e-11
    abs_tol: float = 0.0
    max_subdivisions: int = 4000

    def __post_init__(self):
        if not (self.rel_tol > 0.0):
            raise DomainError("rel_tol must be positive")
        if self.abs_tol < 0.0:
            raise DomainError("abs_tol must be non-negative")
        if self.max_subdivisions < 1:
            raise DomainError("max_subdivisions must be >= 1")


@dataclass(frozen=True)
class PathSegment:
    """Straight segment of an integration/winding path."""

    start: complex
    end: complex
    samples: int = 8

    def __post_init__(self):
        if self.samples < 2:
            raise DomainError("samples must be >= 2")


DEFAULT_QUAD = QuadratureSpec()


def _panel(f, a: float, b: float):
    c = 0.5 * (a + b)
    h = 0.5 * (b - a)
    fv = np.asarray(f(c + h * _XGK), dtype=np.complex128)
    ik = h * np.sum(_WGK * fv)
    ig = h * np.sum(_WG * fv[_GAUSS_IDX])
    return ik, abs(ik - ig)


def integrate_finite(f, a: float, b: float, spec: QuadratureSpec = DEFAULT_QUAD,
                     breakpoints=()) -> complex:
    """Adaptive integral of a complex-valued f over the finite [a, b].

    ``breakpoints`` seeds the initial subdivision (useful for known
    near-singular spots).  Raises :class:`QuadratureError` carrying the
    best estimate when the budget is exhausted.
    """
    if not (math.isfinite(a) and math.isfinite(b)) or not b > a:
        raise DomainError("need finite a < b")
    pts = [a, b]
    for x in breakpoints:
        x = float(x)
        if a < x < b:
            pts.append(x)
    pts = sorted(set(pts))

    heap = []
    counter = 0
    for lo, hi in zip(pts[:-1], pts[1:]):
        ik, err = _panel(f, lo, hi)
        heap.append((-err, counter, lo, hi, ik, err))
        counter += 1
    heapq.heapify(heap)

    nsplit = 0
    while True:
        total = sum(item[4] for item in heap)
        toterr = sum(item[5] for item in heap)
        if toterr <= max(spec.rel_tol * abs(total), spec.abs_tol):
            return total
        if nsplit >= spec.max_subdivisions:
            raise QuadratureError(
                f"quadrature did not converge after {nsplit} subdivisions "
                f"(error bound {toterr:.3e})",
                estimate=total, error_bound=toterr)
        _, _, lo, hi, _, _ = heapq.heappop(heap)
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            raise QuadratureError(
                "interval collapsed below machine resolution",
                estimate=total, error_bound=toterr)
        for seg in ((lo, mid), (mid, hi)):
            ik, err = _panel(f, *seg)
            heapq.heappush(heap, (-err, counter, seg[0], seg[1], ik, err))
            counter += 1
        nsplit += 1


def integrate_semi_infinite(f, spec: QuadratureSpec = DEFAULT_QUAD, *,
                            transform: str = "rational", scale: float = 1.0,
                            breakpoints=()) -> complex:
    """Adaptive integral of f over [0, oo).

    The half line is compactified before adaptive refinement so that
    algebraically decaying tails (the typical 1/tau**2 case here) are
    integrated accurately:

    * ``rational``: tau = scale*u/(1-u), u in [0, 1)
    * ``tangent``:  tau = tan(pi*u/2),   u in [0, 1)

    ``scale`` recentres the rational map on the integrand's natural
    scale; ``breakpoints`` are positions on the tau axis that seed the
    subdivision (e.g. known sharp features).
    """
    if not (scale > 0.0 and math.isfinite(scale)):
        raise DomainError("scale must be positive and finite")
    if transform == "rational":
        def g(u):
            u = np.asarray(u)
            tau = scale * u / (1.0 - u)
            return np.asarray(f(tau)) * (scale / (1.0 - u) ** 2)

        def to_u(tau):
            return tau / (scale + tau)
    elif transform == "tangent":
        def g(u):
            u = np.asarray(u)
            tau = np.tan(0.5 * math.pi * u)
            return np.asarray(f(tau)) * (0.5 * math.pi / np.cos(0.5 * math.pi * u) ** 2)

        def to_u(tau):
            return 2.0 / math.pi * math.atan(tau)
    else:
        raise DomainError(f"unknown transform {transform!r}")

    bps = [to_u(float(t)) for t in breakpoints if t > 0.0 and math.isfinite(t)]
    return integrate_finite(g, 0.0, 1.0, spec, breakpoints=bps)


def integrate_principal_value(g, pole: float, a: float, b: float,
                              spec: QuadratureSpec = DEFAULT_QUAD) -> complex:
    """Principal value of int_a^b g(x)/(x - pole) dx by singularity subtraction.

    The caller supplies the smooth numerator g; the identity used is

        PV int g/(x-p) = int (g(x)-g(p))/(x-p) dx + g(p)*log((b-p)/(p-a)).
    """
    if not (a < pole < b):
        raise DomainError("pole must lie strictly inside (a, b)")
    gp = complex(np.asarray(g(np.array([pole])), dtype=np.complex128)[0])
    dx = 1e-7 * (b - a)
    gprime = (np.asarray(g(np.array([pole + dx])))[0]
              - np.asarray(g(np.array([pole - dx])))[0]) / (2.0 * dx)

    def reg(x):
        x = np.asarray(x)
        d = x - pole
        vals = np.asarray(g(x), dtype=np.complex128)
        out = np.empty_like(vals)
        tiny = np.abs(d) < 1e-300
        safe = ~tiny
        out[safe] = (vals[safe] - gp) / d[safe]
        out[tiny] = gprime
        return out

    reg_part = integrate_finite(reg, a, b, spec, breakpoints=(pole,))
    return reg_part + gp * math.log((b - pole) / (pole - a))


def newton_refine(f, fprime, z0: complex, tol: float, max_iter: int = 60) -> complex:
    """Newton iteration for a simple zero of an analytic f near z0.

    Stops once |f(z)| < tol; raises :class:`NewtonError` (with the
    iterate trace) on divergence or exhausted iterations.
    """
    z = complex(z0)
    iterates = [z]
    for _ in range(max_iter):
        fz = complex(f(z))
        if abs(fz) < tol:
            return z
        dz = complex(fprime(z))
        if dz == 0:
            raise NewtonError("derivative vanished", iterates)
        z = z - fz / dz
        iterates.append(z)
        if (not (math.isfinite(z.real) and math.isfinite(z.imag))
                or abs(z) > 1e9 * (1.0 + abs(z0))):
            raise NewtonError("iteration diverged", iterates)
    if abs(complex(f(z))) < tol:
        return z
    raise NewtonError(f"no convergence within {max_iter} iterations", iterates)


def _closed_vertices(path):
    segs = list(path)
    if not segs:
        raise DomainError("path is empty")
    scale = max(max(abs(s.start), abs(s.end)) for s in segs)
    tol = 1e-12 * max(scale, 1.0)
    for cur, nxt in zip(segs, segs[1:] + segs[:1]):
        if abs(cur.end - nxt.start) > tol:
            raise DomainError("path is not closed")
    return segs


def winding_number(f, path, *, min_modulus: float = 0.0,
                   max_passes: int = 48) -> int:
    """Winding number of f along a closed polyline of PathSegments.

    The phase is tracked by nearest-branch continuation; sampling is
    refined (midpoint insertion) until every consecutive phase step is
    below pi/2.  Raises :class:`ContourZeroError` if |f| falls to
    ``min_modulus`` or below anywhere on the path, and
    :class:`WindingError` if refinement stalls.
    """
    segs = _closed_vertices(path)

    # Per edge: parameters in [0, 1) (the endpoint belongs to the next edge).
    ts = []
    for seg in segs:
        ts.append([i / seg.samples for i in range(seg.samples)])

    def points_of(edge_idx, tlist):
        seg = segs[edge_idx]
        return [seg.start + t * (seg.end - seg.start) for t in tlist]

    fvals = []
    for ei in range(len(segs)):
        pts = np.array(points_of(ei, ts[ei]), dtype=complex)
        vals = np.asarray(f(pts), dtype=np.complex128)
        _check_floor(vals, pts, min_modulus)
        fvals.append(list(vals))

    for _ in range(max_passes):
        flat_vals = np.array([v for edge in fvals for v in edge], dtype=complex)
        phases = np.angle(flat_vals)
        steps = np.diff(np.concatenate([phases, phases[:1]]))
        steps = (steps + math.pi) % (2.0 * math.pi) - math.pi
        bad = np.nonzero(np.abs(steps) >= 0.5 * math.pi)[0]
        if bad.size == 0:
            w = float(np.sum(steps)) / (2.0 * math.pi)
            k = round(w)
            if abs(w - k) > 1e-6:
                raise WindingError(
                    f"phase sum {w!r} is not an integer multiple of 2*pi")
            return int(k)

        # Map flat indices back to (edge, slot) and insert midpoints.
        edge_of = []
        slot_of = []
        for ei, edge in enumerate(fvals):
            edge_of.extend([ei] * len(edge))
            slot_of.extend(range(len(edge)))
        new_by_edge = {}
        for idx in bad:
            ei, si = edge_of[idx], slot_of[idx]
            tlist = ts[ei]
            t_hi = tlist[si + 1] if si + 1 < len(tlist) else 1.0
            t_new = 0.5 * (tlist[si] + t_hi)
            if t_new <= tlist[si] or t_new >= t_hi:
                raise WindingError("refinement collapsed below resolution")
            new_by_edge.setdefault(ei, []).append((si, t_new))
        for ei, inserts in new_by_edge.items():
            pts = np.array(points_of(ei, [t for _, t in inserts]), dtype=complex)
            vals = np.asarray(f(pts), dtype=np.complex128)
            _check_floor(vals, pts, min_modulus)
            for (si, t_new), val in sorted(
                    zip(inserts, vals), key=lambda p: -p[0][0]):
                ts[ei].insert(si + 1, t_new)
                fvals[ei].insert(si + 1, val)

    raise WindingError(f"phase not resolved after {max_passes} refinement passes")


def _check_floor(vals, pts, min_modulus):
    mods = np.abs(vals)
    if np.any(~np.isfinite(mods)):
        i = int(np.nonzero(~np.isfinite(mods))[0][0])
        raise ContourZeroError(f"non-finite value on contour at {pts[i]}",
                               point=complex(pts[i]))
    if min_modulus > 0.0:
        small = mods <= min_modulus
        if small.any():
            i = int(np.nonzero(small)[0][0])
            raise ContourZeroError(
                f"|f| = {mods[i]:.3e} at {pts[i]} is at or below the floor "
                f"{min_modulus:.1e}", point=complex(pts[i]))


def rectangle_path(x0: float, x1: float, y0: float, y1: float,
                   samples_per_side: int = 16):
    """Counterclockwise rectangular path [x0,x1] x [y0,y1]."""
    if not (x1 > x0 and y1 > y0):
        raise DomainError("rectangle is degenerate")
    a = complex(x0, y0)
    b = complex(x1, y0)
    c = complex(x1, y1)
    d = complex(x0, y1)
    n = max(2, samples_per_side)
    return [PathSegment(a, b, n), PathSegment(b, c, n),
            PathSegment(c, d, n), PathSegment(d, a, n)]
