"""Laplace transform pair, Borel coefficient map, asymptotic remainders and
the Watson/Gevrey bound checks.

The transform carries the non-standard zeta prefactor

    P(zeta) = zeta * int_0^oo e^{-zeta t} F(t) dt,

so that L{1} = 1 and the large-zeta expansion of P has coefficients
p_k = f_k k! directly.  to_standard_transform converts to the classical
normalization (divide by zeta).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Callable, Optional, Sequence

from .contours import (Line, QuadratureSpec, gamma_contour, integrate_path,
                       IntegralResult)
from .errors import DomainError, PreconditionError
from .gammafn import gamma
from .series import PowerSeries

_FACTORIAL_LIMIT = 170  # k! overflows double beyond this


@dataclass(frozen=True)
class AsymptoticSeries:
    """Coefficients p_k of a 1/zeta expansion; p_k = f_k k! for some
    convergent Taylor series."""

    p: tuple
    gevrey_scale: Optional[float] = None  # the A of the n!/A^n envelope, if known

    def __post_init__(self):
        object.__setattr__(self, "p", tuple(complex(v) for v in self.p))
        if not self.p:
            raise DomainError("need at least one coefficient")

    def partial_sum(self, n: int, zeta: complex) -> complex:
        acc = 0.0 + 0.0j
        for k in range(min(n, len(self.p)) - 1, -1, -1):
            acc = acc / zeta + self.p[k]
        return acc


@dataclass(frozen=True)
class LaplaceOracle:
    """Evaluator of a transform P(zeta) analytic for Re zeta > type_bound."""

    evaluator: Callable[[complex], complex]
    type_bound: float = 0.0

    def __call__(self, zeta: complex) -> complex:
        return self.evaluator(complex(zeta))


def borel_map(F: PowerSeries) -> AsymptoticSeries:
    """p_k = f_k k!; raises OverflowError past k = 170 (double range)."""
    if F.truncation > _FACTORIAL_LIMIT + 1:
        raise OverflowError(
            f"k! overflows double precision beyond k = {_FACTORIAL_LIMIT}; "
            "truncate the series or use borel_log_scaled")
    return AsymptoticSeries(tuple(c * math.factorial(k) for k, c in enumerate(F.coeffs)),
                            gevrey_scale=F.radius_hint)


def inverse_borel(p: AsymptoticSeries, radius_hint: Optional[float] = None) -> PowerSeries:
    return PowerSeries(tuple(v / math.factorial(k) for k, v in enumerate(p.p)),
                       radius_hint=radius_hint if radius_hint is not None else p.gevrey_scale)


def borel_log_scaled(F: PowerSeries):
    """(log |p_k|, phase p_k) pairs; the overflow-safe representation."""
    out = []
    for k, c in enumerate(F.coeffs):
        if c == 0:
            out.append((-math.inf, 0.0))
        else:
            out.append((math.log(abs(c)) + math.lgamma(k + 1), cmath.phase(c)))
    return out


def to_standard_transform(P: Callable[[complex], complex]) -> Callable[[complex], complex]:
    """Convert the zeta-normalized transform to the classical one."""
    return lambda zeta: P(zeta) / zeta


def _truncation_horizon(re_margin: float, tol: float) -> float:
    # e^{-margin T} < 0.01 tol
    return max(4.0, -math.log(0.01 * tol) / re_margin)


def laplace_quadrature(F: Callable[[complex], complex], zeta: complex,
                       type_bound: float = 0.0, tol: float = 1e-12) -> complex:
    """zeta * int_0^oo e^{-zeta t} F(t) dt for Re zeta > type_bound."""
    zeta = complex(zeta)
    margin = zeta.real - type_bound
    if margin <= 0:
        raise DomainError(f"Re zeta = {zeta.real} must exceed the type bound "
                          f"{type_bound}")
    T = _truncation_horizon(margin, tol)
    segs = [Line(0.0, min(1.0, T)), Line(min(1.0, T), T)] if T > 1.0 else [Line(0.0, T)]
    val, _ = integrate_path(lambda t: cmath.exp(-zeta * t) * F(t), segs,
                            QuadratureSpec(tol=max(1e-14, tol / max(abs(zeta), 1.0))))
    return zeta * val


def laplace_alpha(F: Callable[[complex], complex], alpha, zeta: complex,
                  type_bound: float = 0.0, tol: float = 1e-12) -> complex:
    """zeta^{1+alpha} int_0^oo e^{-zeta t} t^alpha F(t) dt (principal power).

    The algebraic endpoint factor t^alpha is flattened by the substitution
    t = u^p with p chosen so the integrand is C^1 at u = 0.
    """
    zeta = complex(zeta)
    alpha = complex(getattr(alpha, "alpha", alpha))
    if alpha.real <= -1.0:
        raise DomainError("Re alpha must exceed -1")
    margin = zeta.real - type_bound
    if margin <= 0:
        raise DomainError(f"Re zeta = {zeta.real} must exceed the type bound "
                          f"{type_bound}")
    T = _truncation_horizon(margin, tol)
    p = max(1, math.ceil(2.0 / (alpha.real + 1.0)))

    def g(u: complex) -> complex:
        t = u ** p
        if u == 0:
            return 0.0 + 0.0j
        return p * u ** (p * (alpha + 1.0) - 1.0) * cmath.exp(-zeta * t) * F(t)

    U = T ** (1.0 / p)
    cuts = sorted({0.0, min(0.5, U), min(1.0, U), U})
    segs = [Line(a, b) for a, b in zip(cuts, cuts[1:]) if b > a]
    val, _ = integrate_path(g, segs, QuadratureSpec(tol=max(1e-14, tol / max(abs(zeta), 1.0) ** (1 + max(alpha.real, 0)))))
    return zeta ** (1.0 + alpha) * val


def verify_lm_duality(F: Callable[[complex], complex],
                      d_alpha_F: Callable[[complex], complex],
                      i_alpha_F: Callable[[complex], complex],
                      alpha, zeta: complex, type_bound: float = 0.0,
                      tol: float = 1e-12) -> dict:
    """Residuals of the two transform identities

        zeta^{1+alpha} int e^{-zeta t} t^alpha F dt
            = zeta int e^{-zeta t} D_alpha{F} dt,
        zeta int e^{-zeta t} F dt
            = zeta^{1+alpha} int e^{-zeta t} t^alpha I_alpha{F} dt,

    given closed-form (or series-backed) evaluators for the operator images.
    """
    lhs_d = laplace_alpha(F, alpha, zeta, type_bound, tol)
    rhs_d = laplace_quadrature(d_alpha_F, zeta, type_bound, tol)
    res_d = abs(lhs_d - rhs_d)
    lhs_i = laplace_quadrature(F, zeta, type_bound, tol)
    rhs_i = laplace_alpha(i_alpha_F, alpha, zeta, type_bound, tol)
    res_i = abs(lhs_i - rhs_i)
    return {"residual_deriv": res_d, "residual_integ": res_i,
            "transform_value": lhs_d, "laplace_value": lhs_i}


def remainder(P: LaplaceOracle, p: AsymptoticSeries, n: int, zeta: complex) -> complex:
    """P(zeta) - sum_{k<n} p_k / zeta^k; n = 0 returns P(zeta)."""
    if n < 0:
        raise DomainError("n must be non-negative")
    zeta = complex(zeta)
    if zeta.real <= P.type_bound:
        raise DomainError("Re zeta must exceed the oracle's type bound")
    if n == 0:
        return P(zeta)
    if n > len(p.p):
        raise DomainError(f"only {len(p.p)} coefficients available")
    return P(zeta) - p.partial_sum(n, zeta)


def watson_gevrey_check(P: LaplaceOracle, p: AsymptoticSeries, A: float,
                        r: float, n_max: int = 24,
                        zeta_grid: Optional[Sequence[complex]] = None) -> dict:
    """Estimate M = sup over the grid and n <= n_max of
    A^n |zeta|^n |P_n(zeta)| / n!, with a stability probe.

    pass requires the sup to be finite and the n_max -> n_max/2 ratio below
    1.5; a remainder envelope that beats n!/A^n fails the probe, which is the
    expected outcome when A exceeds the distance-to-singularity of the Borel
    sum.
    """
    if A <= 0 or r <= P.type_bound:
        raise PreconditionError("need 0 < A and r above the type bound")
    grid = list(zeta_grid) if zeta_grid is not None else [8.0, 16.0, 32.0]
    n_max = min(n_max, len(p.p))
    sup_half = 0.0
    sup_full = 0.0
    worst_n = 0
    for zeta in grid:
        zeta = complex(zeta)
        if zeta.real < r:
            raise PreconditionError("grid point below r")
        pval = P(zeta)
        acc = 0.0 + 0.0j
        scale = 1.0
        for n in range(n_max + 1):
            rem = pval - acc  # P_n with the n-term partial sum
            weighted = scale * abs(rem)
            if n <= n_max // 2:
                sup_half = max(sup_half, weighted)
            if weighted > sup_full:
                sup_full = weighted
                worst_n = n
            if n < n_max:
                acc += p.p[n] / zeta ** n
                scale *= A * abs(zeta) / (n + 1.0)
    ratio = sup_full / sup_half if sup_half > 0 else math.inf
    ok = math.isfinite(sup_full) and ratio < 1.5
    return {"M_fit": sup_full, "pass": ok, "stability_ratio": ratio,
            "worst_n": worst_n, "n_max": n_max, "A": A, "r": r}


def h_norm(F: Callable[[complex], complex], r: float, A: float,
           type_bound: float = 0.0, tol: float = 1e-9) -> float:
    """The weighted boundary norm int_{gamma(A)} e^{-r|t|} |F(t)| |dt|.

    Requires r above the declared exponential type; the truncation tail
    e^{-(r - R) T} is certified against the requested tolerance.
    """
    if r <= type_bound:
        raise PreconditionError(
            f"r = {r} does not exceed the declared type {type_bound}; "
            "the weighted tail diverges")
    T = A + _truncation_horizon(r - type_bound, tol)
    contour = gamma_contour(A, T)
    # empirical tail sanity on top of the declared bound
    e1 = abs(F(complex(T, A))) * math.exp(-r * abs(complex(T, A)))
    e0 = abs(F(complex(T / 2.0, A))) * math.exp(-r * abs(complex(T / 2.0, A)))
    if e1 > max(e0, 1e-290) * 1.01 and e1 > tol:
        raise PreconditionError("sampled integrand grows along the ray; "
                                "declared type looks too small")
    val, _ = integrate_path(lambda t: math.exp(-r * abs(t)) * abs(F(t)),
                            contour, QuadratureSpec(tol=tol), arclength=True)
    return abs(val)


def s_side_representation_check(zeta: complex = 6.0, alpha: complex = 0.5,
                                r: float = 1.5, y_max: float = 400.0,
                                tol: float = 1e-7) -> dict:
    """Consistency probe of the transform-plane integral representation

        P(zeta, alpha) = Gamma(alpha+1)/(2 pi i)
            * int_{r-i oo}^{r+i oo} (1 - z/zeta)^{-alpha-1} P(z)/z dz

    on the geometric touchstone F = 1/(1+t).  Exercised at a single point;
    the representation converges too slowly for production use.
    """
    F = lambda t: 1.0 / (1.0 + t)
    P = lambda z: laplace_quadrature(F, z, 0.0, 1e-10)
    lhs = laplace_alpha(F, alpha, zeta, 0.0, 1e-11)

    def integrand(z: complex) -> complex:
        return (1.0 - z / zeta) ** (-alpha - 1.0) * P(z) / z

    segs = [Line(complex(r, -y_max), complex(r, -2.0)),
            Line(complex(r, -2.0), complex(r, 2.0)),
            Line(complex(r, 2.0), complex(r, y_max))]
    val, _ = integrate_path(integrand, segs, QuadratureSpec(tol=1e-8))
    rhs = gamma(alpha + 1.0) * val / (2j * math.pi)
    # algebraic tail |y|^{-1-Re alpha} / (1+Re alpha) per ray end
    tail = 2.0 * abs(zeta) ** (alpha.real + 1.0) * y_max ** (-alpha.real - 1.0) / (alpha.real + 1.0) / (2.0 * math.pi)
    return {"lhs": lhs, "rhs": rhs, "residual": abs(lhs - rhs),
            "tail_bound": tail, "pass": abs(lhs - rhs) <= max(tol, 3.0 * tail)}
