"""Tube-boundary geometry and adaptive complex path quadrature.

gamma_contour(A, T) builds the boundary {t : dist(t, (0,+inf)) = A} truncated
at Re t = T: two horizontal rays at Im t = +-A joined by the left semicircle
of radius A through -A.  Orientation "ccw" is positive: closed with the
vertical segment at Re t = T, the curve winds once counterclockwise around
every point of the tube, so Cauchy-type integrals come out with the usual
sign (e.g. the residue check integral of e^{-xi}/xi gives +2*pi*i).  The
parametrization then runs upper ray inward, cap through -A, lower ray out.

integrate_path is a recursive Gauss-Kronrod 7-15 scheme over the segments.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Callable, NamedTuple, Optional

from .errors import DomainError, PreconditionError, QuadratureError
from .utils import dist_to_positive_ray

# QUADPACK dqk15 nodes and weights on [-1, 1]
_XGK = (
    0.991455371120813, 0.949107912342759, 0.864864423359769,
    0.741531185599394, 0.586087235467691, 0.405845151377397,
    0.207784955007898, 0.0,
)
_WGK = (
    0.022935322010529, 0.063092092629979, 0.104790010322250,
    0.140653259715525, 0.169004726639267, 0.190350578064785,
    0.204432940075298, 0.209482141084728,
)
_WG = (0.129484966168870, 0.279705391489277, 0.381830050505119, 0.417959183673469)


@dataclass(frozen=True)
class Line:
    z0: complex
    z1: complex

    def point(self, s: float) -> complex:
        return self.z0 + (self.z1 - self.z0) * s

    def tangent(self, s: float) -> complex:
        return self.z1 - self.z0


@dataclass(frozen=True)
class Arc:
    center: complex
    radius: float
    theta0: float
    theta1: float

    def point(self, s: float) -> complex:
        th = self.theta0 + (self.theta1 - self.theta0) * s
        return self.center + self.radius * cmath.exp(1j * th)

    def tangent(self, s: float) -> complex:
        th = self.theta0 + (self.theta1 - self.theta0) * s
        return 1j * self.radius * (self.theta1 - self.theta0) * cmath.exp(1j * th)


@dataclass(frozen=True)
class InfiniteRay:
    """Ray z0 + direction * scale * s/(1-s); s in [0, 1) compresses [0, inf).

    Gauss-Kronrod nodes are interior, so s = 1 is never sampled; integrands
    must decay at least like |z|^{-1-eps} for the compressed integral to
    converge.
    """

    z0: complex
    direction: complex
    scale: float = 10.0

    def point(self, s: float) -> complex:
        return self.z0 + self.direction * self.scale * s / (1.0 - s)

    def tangent(self, s: float) -> complex:
        return self.direction * self.scale / (1.0 - s) ** 2


@dataclass(frozen=True)
class ReversedSegment:
    seg: object

    def point(self, s: float) -> complex:
        return self.seg.point(1.0 - s)

    def tangent(self, s: float) -> complex:
        return -self.seg.tangent(1.0 - s)


@dataclass(frozen=True)
class QuadratureSpec:
    tol: float = 1e-10
    max_depth: int = 16
    rule: str = "gk15"

    def __post_init__(self):
        if self.tol < 1e-14:
            raise DomainError("tol must be >= 1e-14")
        if self.rule != "gk15":
            raise DomainError(f"unknown rule {self.rule!r}")


@dataclass(frozen=True)
class NeighborhoodContour:
    """gamma(A) truncated at Re t = T, with ray decay hints for tail bounds."""

    A: float
    T: float
    orientation: str = "ccw"
    samples_per_unit: int = 16

    def __post_init__(self):
        if not self.A > 0:
            raise DomainError("A must be positive")
        if not self.T > self.A:
            raise DomainError("T must exceed A")
        if self.orientation not in ("ccw", "cw"):
            raise DomainError("orientation must be 'ccw' or 'cw'")
        if self.samples_per_unit < 1:
            raise DomainError("samples_per_unit must be positive")

    def segments(self) -> list:
        A, T = self.A, self.T
        # cap sampled at double density relative to the rays: split in two arcs
        segs = [
            Line(complex(T, A), complex(0.0, A)),
            Arc(0.0, A, math.pi / 2.0, math.pi),
            Arc(0.0, A, math.pi, 3.0 * math.pi / 2.0),
            Line(complex(0.0, -A), complex(T, -A)),
        ]
        if self.orientation == "cw":
            segs = [_reversed_segment(s) for s in reversed(segs)]
        return segs

    def ray_endpoints(self) -> tuple:
        return complex(self.T, self.A), complex(self.T, -self.A)

    def contains(self, t: complex) -> bool:
        return dist_to_positive_ray(t) < self.A and t.real < self.T


def _reversed_segment(seg):
    if isinstance(seg, Line):
        return Line(seg.z1, seg.z0)
    if isinstance(seg, Arc):
        return Arc(seg.center, seg.radius, seg.theta1, seg.theta0)
    return ReversedSegment(seg)


def infinite_tube_boundary(A: float, orientation: str = "ccw",
                           scale: float = 10.0) -> list:
    """gamma(A) with untruncated rays (compressed parametrization); for
    integrands with algebraic decay where no finite T is adequate."""
    if not A > 0:
        raise DomainError("A must be positive")
    segs = [
        ReversedSegment(InfiniteRay(complex(0.0, A), 1.0, scale)),
        Arc(0.0, A, math.pi / 2.0, math.pi),
        Arc(0.0, A, math.pi, 3.0 * math.pi / 2.0),
        InfiniteRay(complex(0.0, -A), 1.0, scale),
    ]
    if orientation == "cw":
        segs = [_reversed_segment(s) for s in reversed(segs)]
    elif orientation != "ccw":
        raise DomainError("orientation must be 'ccw' or 'cw'")
    return segs


def gamma_contour(A: float, T: float, orientation: str = "ccw") -> NeighborhoodContour:
    return NeighborhoodContour(A=A, T=T, orientation=orientation)


class IntegralResult(NamedTuple):
    value: complex
    err_est: float


def _gk15(f: Callable[[complex], complex], seg, s0: float, s1: float,
          arclength: bool):
    mid = 0.5 * (s0 + s1)
    half = 0.5 * (s1 - s0)
    fk = 0.0 + 0.0j
    fg = 0.0 + 0.0j
    for i, x in enumerate(_XGK):
        for sgn in ((1.0,) if x == 0.0 else (1.0, -1.0)):
            s = mid + sgn * half * x
            z = seg.point(s)
            dz = seg.tangent(s)
            w = abs(dz) if arclength else dz
            val = f(z) * w
            fk += _WGK[i] * val
            if i % 2 == 1:
                fg += _WG[i // 2] * val
            elif x == 0.0:
                fg += _WG[-1] * val
    fk *= half
    fg *= half
    return fk, abs(fk - fg)


def _adaptive(f, seg, s0, s1, tol, depth, max_depth, arclength):
    val, err = _gk15(f, seg, s0, s1, arclength)
    if err <= max(tol, 2e-16 * (1.0 + abs(val))):
        return val, err
    if depth >= max_depth:
        raise QuadratureError(
            f"max_depth exceeded on segment piece [{s0:.4g}, {s1:.4g}] "
            f"(err {err:.3e} vs tol {tol:.3e})")
    sm = 0.5 * (s0 + s1)
    v1, e1 = _adaptive(f, seg, s0, sm, tol / 2.0, depth + 1, max_depth, arclength)
    v2, e2 = _adaptive(f, seg, sm, s1, tol / 2.0, depth + 1, max_depth, arclength)
    return v1 + v2, e1 + e2


def integrate_path(f: Callable[[complex], complex], path,
                   spec: Optional[QuadratureSpec] = None,
                   decay_rate: Optional[float] = None,
                   arclength: bool = False) -> IntegralResult:
    """Integrate f along a path (a NeighborhoodContour or segment list).

    decay_rate r certifies |f| <~ |f(endpoint)| e^{-r (Re t - T)} beyond the
    ray truncation; the implied tail bound |f(end)| / r per ray is folded
    into err_est.  arclength=True integrates against |dt| instead of dt.
    """
    spec = spec or QuadratureSpec()
    if isinstance(path, NeighborhoodContour):
        segs = path.segments()
        tails = path.ray_endpoints() if decay_rate else ()
    else:
        segs = list(path)
        tails = ()
    total = 0.0 + 0.0j
    err = 0.0
    tol_seg = spec.tol / max(len(segs), 1)
    for seg in segs:
        v, e = _adaptive(f, seg, 0.0, 1.0, tol_seg, 0, spec.max_depth, arclength)
        total += v
        err += e
    if decay_rate:
        if decay_rate <= 0:
            raise PreconditionError("decay certificate must be positive")
        for endpoint in tails:
            err += abs(f(endpoint)) / decay_rate
    return IntegralResult(total, err)


def cauchy_eval(F: Callable[[complex], complex], a: float, t: complex,
                T: Optional[float] = None,
                spec: Optional[QuadratureSpec] = None) -> complex:
    """Reproduce F(t) from its boundary values:
    (1/2*pi*i) \\oint_{gamma(a)} (1 - t/xi)^{-1} F(xi)/xi dxi.

    F must be integrable against |dxi|/|xi| on gamma(a) (Hardy-type
    condition, checked crudely via the sampled ray decay); t must lie in the
    open tube of width a.
    """
    t = complex(t)
    if dist_to_positive_ray(t) >= a:
        raise DomainError(f"t = {t:.6g} is outside the tube of width {a:.4g}")
    probe = gamma_contour(a, T if T is not None else max(40.0, 4.0 * abs(t) + 10.0 * a))
    check_h1_decay(F, probe)
    spec = spec or QuadratureSpec(tol=1e-11)
    segs = infinite_tube_boundary(a, scale=max(10.0, 2.0 * abs(t)))

    def integrand(xi: complex) -> complex:
        return F(xi) / (xi - t)

    val, _ = integrate_path(integrand, segs, spec)
    return val / (2j * math.pi)


def check_h1_decay(F, contour: NeighborhoodContour, n_probe: int = 6) -> None:
    """Sampled check that the boundary integrand of the Hardy-type norm is
    summable: |F| must decay along the rays (the measure |dxi|/|xi| alone is
    only logarithmically convergent).  Raises PreconditionError."""
    A, T = contour.A, contour.T
    # geometric probe spacing so each sample stands for one dyadic block
    xs = [A + (T - A) * 2.0 ** (k - n_probe + 1) for k in range(n_probe)]
    for sign in (1.0, -1.0):
        vals = [abs(F(complex(x, sign * A))) for x in xs]
        head = sum(vals[: n_probe // 2]) / (n_probe // 2)
        tail = sum(vals[n_probe // 2:]) / (n_probe - n_probe // 2)
        if tail > 0.8 * head + 1e-12:
            raise PreconditionError(
                "sampled |F| does not decay along the rays; the Hardy-type "
                "boundary integral looks divergent")
