"""Fractional derivative and integral operators on the tube spaces.

At series level the operators scale Taylor coefficients by
Gamma(alpha+k+1)/k! (derivative) and its reciprocal (integral); both are
computed by the stable product recurrence r_k = r_{k-1} (alpha+k)/k seeded
with Gamma(alpha+1), which continues analytically to every alpha off the
negative integers.  The contour representations sum kernel integrals over
gamma(A) with Gauss hypergeometric kernels; the simplified single-integral
forms apply when F is integrable against |dxi|/|xi| on the boundary.
"""

from __future__ import annotations

import cmath
import math
import warnings
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .contours import (QuadratureSpec, gamma_contour, infinite_tube_boundary,
                       integrate_path, check_h1_decay)
from .errors import ConvergenceError, DomainError
from .gammafn import gamma
from .hyp import PFQParams, hyp2f1, hyp2f1_continue, Hyp2F1Params
from .series import PowerSeries, eval_series
from .utils import dist_to_positive_ray, is_nonpositive_int


@dataclass(frozen=True)
class FractionalOrder:
    """Order alpha of a fractional operator; base operators need Re > -1."""

    alpha: complex

    def __post_init__(self):
        a = complex(self.alpha)
        object.__setattr__(self, "alpha", a)
        if not (math.isfinite(a.real) and math.isfinite(a.imag)):
            raise DomainError("alpha must be finite")

    def require_base(self) -> complex:
        if self.alpha.real <= -1.0:
            raise DomainError(f"Re(alpha) = {self.alpha.real} <= -1 needs the "
                              "continued coefficient transform, not a base operator")
        return self.alpha


def _alpha_of(value) -> complex:
    if isinstance(value, FractionalOrder):
        return value.alpha
    return FractionalOrder(complex(value)).alpha


def _gamma_ratio_row(alpha: complex, n: int) -> list:
    """[Gamma(alpha+k+1)/k! for k < n], product recurrence."""
    r = gamma(alpha + 1.0)  # raises GammaPoleError at negative integer alpha
    out = [r]
    for k in range(1, n):
        r = r * (alpha + k) / k
        out.append(r)
    return out


def _gamma_ratio_row_extended(alpha: complex, n: int) -> list:
    """Quad-equivalent (34-digit) version of the ratio row for ill-conditioned
    recurrences; returns doubles rounded from mpmath intermediates."""
    import mpmath as mp

    with mp.workdps(34):
        a = mp.mpc(alpha)
        r = mp.gamma(a + 1)
        out = [complex(r)]
        for k in range(1, n):
            r = r * (a + k) / k
            out.append(complex(r))
    return out


def frac_deriv_series(F: PowerSeries, alpha, precision: str = "double") -> PowerSeries:
    """Coefficient map f_k -> f_k * Gamma(alpha+k+1)/k!; growth hints kept.

    Valid for Re(alpha) > -1 and, by analytic continuation of the ratio, for
    every alpha that is not a negative integer.
    """
    a = _alpha_of(alpha)
    row = (_gamma_ratio_row_extended if precision == "extended"
           else _gamma_ratio_row)(a, F.truncation)
    return F.map_coeffs(lambda k, c: c * row[k])


def frac_integ_series(F: PowerSeries, alpha, precision: str = "double") -> PowerSeries:
    """Inverse coefficient map f_k -> f_k * k! / Gamma(alpha+k+1).

    Entire in alpha: at alpha = -m the leading coefficients multiply the
    zeros of 1/Gamma, so the transform stays finite where the derivative
    transform has poles.
    """
    a = _alpha_of(alpha)
    m = is_nonpositive_int(a + 1.0)
    if m is not None:
        # k!/Gamma(alpha+k+1) = 0 for k < -alpha-... below the pole line,
        # k!/(k+alpha)! above it
        shift = 1 - m  # alpha = m - 1, coefficients vanish for k < shift
        out = []
        for k, c in enumerate(F.coeffs):
            if k < shift:
                out.append(0.0 + 0.0j)
            else:
                out.append(c * math.factorial(k) / math.factorial(k - shift))
        return PowerSeries(tuple(out), F.radius_hint, F.type_hint)
    row = (_gamma_ratio_row_extended if precision == "extended"
           else _gamma_ratio_row)(a, F.truncation)
    return F.map_coeffs(lambda k, c: c / row[k])


def frac_deriv_series_normalized(F: PowerSeries, alpha) -> PowerSeries:
    """Coefficients f_k (alpha+1)_k / k!, i.e. the derivative transform divided
    by Gamma(alpha+1); entire in alpha, used for the pole-limit checks."""
    a = _alpha_of(alpha)
    out = []
    r = 1.0 + 0.0j
    for k, c in enumerate(F.coeffs):
        if k > 0:
            r = r * (a + k) / k
        out.append(c * r)
    return PowerSeries(tuple(out), F.radius_hint, F.type_hint)


def frac_of_pfq(params: PFQParams, alpha, mode: str):
    """Parameter-level action on the alternating hypergeometric family.

    deriv: scale Gamma(alpha+1), upper += (alpha+1,), lower += (1,)
    integ: scale 1/Gamma(alpha+1), upper += (1,), lower += (alpha+1,)
    """
    if not isinstance(params, PFQParams):
        params = PFQParams(*params)
    a = FractionalOrder(_alpha_of(alpha))
    a.require_base()
    al = a.alpha
    if mode == "deriv":
        return gamma(al + 1.0), PFQParams(params.num + (al + 1.0,), params.den + (1.0,))
    if mode == "integ":
        # PFQParams validation rejects a non-positive-integer lower parameter
        return 1.0 / gamma(al + 1.0), PFQParams(params.num + (1.0,), params.den + (al + 1.0,))
    raise DomainError(f"mode must be 'deriv' or 'integ', got {mode!r}")


# ---------------------------------------------------------------------------
# Contour representations
# ---------------------------------------------------------------------------

def _insert_dyadic(edges: list, x0: float, scale: float, span: float,
                   lo: float, hi: float) -> list:
    """Add edges x0 +- scale * 2^j up to span around x0, clipped to [lo, hi]."""
    extra = set(edges)
    s = scale
    while s <= span:
        for x in (x0 - s, x0 + s):
            if lo < x < hi:
                extra.add(x)
        s *= 2.0
    if lo < x0 < hi:
        extra.add(x0)
    return sorted(extra)


def contour_quadrature_nodes(A: float, T: float, n_per_panel: int = 24,
                             refine_near: Optional[complex] = None):
    """Fixed Gauss-Legendre nodes xi and oriented weights dw on the truncated
    boundary gamma(A), positively oriented.

    The node set is shared across the kernel integrals of a contour-series
    evaluation so the hypergeometric kernels can be vectorized per series
    index.  refine_near adds dyadically shrinking panels towards the contour
    point closest to the given t: the kernels blow up like a power of
    1/(1 - t/xi) there.
    """
    x_gl, w_gl = np.polynomial.legendre.leggauss(n_per_panel)
    xs, ws = [], []

    def add_panel(map_pt, map_tan, a0, a1):
        mid, half = 0.5 * (a0 + a1), 0.5 * (a1 - a0)
        for xg, wg in zip(x_gl, w_gl):
            s = mid + half * xg
            xs.append(map_pt(s))
            ws.append(map_tan(s) * wg * half)

    # ray panel edges: fine near the cap, geometric growth outward
    edges = [0.0, 0.5 * A, A]
    while edges[-1] < T:
        edges.append(min(2.0 * edges[-1], T))
    cap_edges = [0.5, 0.75, 1.0, 1.25, 1.5]  # angle in units of pi

    if refine_near is not None:
        t = complex(refine_near)
        d = max(abs(dist_to_positive_ray(t) - A), 1e-6 * A) if t.real > 0 \
            else max(abs(abs(t) - A), 1e-6 * A)
        if t.real > 0:
            edges = _insert_dyadic(edges, t.real, max(d / 2.0, 1e-4 * A),
                                   4.0 * A, 0.0, T)
        if t.real < 0.5 * A or abs(t) < 2.0 * A:
            th = abs(cmath.phase(t)) / math.pi  # cap refinement is symmetric
            for target in (th, 2.0 - th):
                cap_edges = _insert_dyadic(cap_edges, target,
                                           max(d / (2.0 * A * math.pi), 1e-4),
                                           0.5, 0.5, 1.5)

    for x0, x1 in zip(edges, edges[1:]):
        add_panel(lambda s: complex(s, A), lambda s: 1.0, x1, x0)
    for th0, th1 in zip(cap_edges, cap_edges[1:]):
        add_panel(lambda s: A * cmath.exp(1j * math.pi * s),
                  lambda s: 1j * math.pi * A * cmath.exp(1j * math.pi * s), th0, th1)
    for x0, x1 in zip(edges, edges[1:]):
        add_panel(lambda s: complex(s, -A), lambda s: 1.0, x0, x1)
    return np.array(xs, dtype=complex), np.array(ws, dtype=complex)


def _vec_series_b1(A: complex, C: complex, w: np.ndarray,
                   tol: float = 1e-16, budget: int = 20000) -> np.ndarray:
    """Vectorized 2F1(A, 1; C; w); caller guarantees convergence and a
    transient-free term ratio."""
    term = np.ones_like(w)
    total = np.ones_like(w)
    k = 0
    while True:
        term = term * ((A + k) / (C + k)) * w
        total += term
        k += 1
        if k > 4 and np.max(np.abs(term)) <= tol * max(np.max(np.abs(total)), 1e-300):
            return total
        if k > budget:
            raise ConvergenceError("kernel series stalled")


def _deriv_kernel(a: complex, k: int, w: np.ndarray) -> np.ndarray:
    """2F1(alpha+k+1, 1; k+1; w) off the cut [1, oo), stable in k.

    Integer alpha >= 0 has the terminating rational form
    (1-w)^{-alpha-1} 2F1(-alpha, k; k+1; w).  Otherwise the direct series is
    transient-free for |w| <= 0.9 and the 1/w expansion (whose second series
    terminates because c - b = k is a positive integer) covers the rest.
    """
    if abs(a.imag) < 1e-12 and abs(a.real - round(a.real)) < 1e-12 and a.real >= 0:
        m = round(a.real)
        poly = np.ones_like(w)
        coeff = np.ones_like(w)
        for j in range(m):
            coeff = coeff * ((j - m) * (k + j)) / ((k + 1.0 + j) * (j + 1.0)) * w
            poly += coeff
        return (1.0 - w) ** (-m - 1.0) * poly
    out = np.empty_like(w)
    near = np.abs(w) <= 0.9
    if near.any():
        out[near] = _vec_series_b1(a + k + 1.0, k + 1.0, w[near])
    far = ~near
    if far.any():
        wf = w[far]
        iw = 1.0 / wf
        # Gamma(k+1) Gamma(1-a')/Gamma(k+1-a') with a' = a+k+1 reduces to
        # (-1)^k k! / (a+1)_k; built as a product to stay Gamma-free
        r1 = 1.0 + 0.0j
        for j in range(1, k + 1):
            r1 *= j / (a + j)
        r1 *= (-1.0) ** k
        term1 = r1 * (-wf) ** (-(a + k + 1.0)) * (1.0 - iw) ** (-a - 1.0)
        # second term: k/(a'-1) * (-w)^{-1} * 2F1(1, 1-k; 2-a'; 1/w), k terms
        if k == 0:
            term2 = np.zeros_like(wf)
        else:
            poly = np.ones_like(wf)
            coeff = np.ones_like(wf)
            for j in range(k - 1):
                coeff = coeff * ((1.0 + j) * (1.0 - k + j)) / \
                    ((1.0 - a - k + j) * (j + 1.0)) * iw
                poly += coeff
            term2 = (k / (a + k)) * (-wf) ** (-1.0) * poly
        out[far] = term1 + term2
    return out


def _integ_kernel(a: complex, k: int, w: np.ndarray) -> np.ndarray:
    """2F1(k+1, 1; alpha+k+1; w) off the cut, stable in k.

    Direct series and the Pfaff map w -> w/(w-1) are both transient-free;
    the residual crescent near w = e^{+-i pi/3} falls back to ODE-stepping
    continuation seeded inside the unit disk.
    """
    out = np.empty_like(w)
    near = np.abs(w) <= 0.9
    if near.any():
        out[near] = _vec_series_b1(k + 1.0, a + k + 1.0, w[near])
    rest = ~near
    if rest.any():
        wr = w[rest]
        v = wr / (wr - 1.0)
        pf = np.abs(v) <= 0.9
        sub = np.empty_like(wr)
        if pf.any():
            sub[pf] = _vec_series_b1(a, a + k + 1.0, v[pf]) / (1.0 - wr[pf])
        hard = ~pf
        if hard.any():
            prm = Hyp2F1Params(k + 1.0, 1.0, a + k + 1.0)
            vals = []
            for wi in wr[hard]:
                seed = 0.45 * wi / abs(wi)
                f, _ = hyp2f1_continue(prm, [seed, complex(wi)])
                vals.append(f)
            sub[hard] = vals
        out[rest] = sub
    return out


def _contour_series(F: Callable[[complex], complex], alpha, r: float, A: float,
                    t: complex, mode: str, tol: float, k_max: int,
                    n_per_panel: int, T: Optional[float]) -> complex:
    al = FractionalOrder(_alpha_of(alpha))
    al.require_base()
    a = al.alpha
    t = complex(t)
    if r <= 0:
        raise DomainError("r must be positive")
    if dist_to_positive_ray(t) >= A:
        raise DomainError(f"t = {t:.6g} is outside the tube of width {A:.4g}")
    T = T if T is not None else A + 40.0 / r
    # the weighted integrand must decay along the rays, else r <= type(F)
    g_mid = abs(F(complex(T / 2.0, A))) * math.exp(-r * T / 2.0)
    g_end = abs(F(complex(T, A))) * math.exp(-r * T)
    if g_end > g_mid + 1e-280:
        raise ConvergenceError(
            "weighted integrand grows along the contour rays; the declared "
            "rate r does not exceed the exponential type of F")
    xi, dw = contour_quadrature_nodes(A, T, n_per_panel, refine_near=t)
    base = np.array([F(complex(x)) for x in xi], dtype=complex)
    base = base * np.exp(-r * xi) / xi * dw / (2j * math.pi)
    w_arg = t / xi

    if mode == "deriv":
        weight = gamma(a + 1.0)
    else:
        weight = 1.0 / gamma(a + 1.0)
    total = 0.0 + 0.0j
    small_run = 0
    for k in range(k_max + 1):
        kern = (_deriv_kernel if mode == "deriv" else _integ_kernel)(a, k, w_arg)
        term = weight * complex(np.sum(kern * base))
        total += term
        if abs(term) <= tol * max(abs(total), 1e-300):
            small_run += 1
            if small_run >= 3:
                return total
        else:
            small_run = 0
        if mode == "deriv":
            # Gamma(alpha+k+1) (rt)^k / (k!)^2
            weight *= (a + k + 1.0) * (r * t) / (k + 1.0) ** 2
        else:
            # (rt)^k / Gamma(alpha+k+1); the companion expansion carries no
            # extra k! (the k = 0 normalization identity fixes the weight)
            weight *= (r * t) / (a + k + 1.0)
    raise ConvergenceError(
        "contour series terms are not decaying; the declared rate r likely "
        "does not exceed the exponential type of F")


def frac_deriv_contour(F: Callable[[complex], complex], alpha, r: float,
                       A: float, t: complex, tol: float = 1e-10,
                       k_max: int = 80, n_per_panel: int = 24,
                       T: Optional[float] = None) -> complex:
    """D_alpha{F}(t) as sum_k Gamma(alpha+k+1)/(k!)^2 (r t)^k f_k(alpha,r,t)
    with boundary-kernel coefficients f_k; valid for t in the tube of width
    A < a(F) and any r above the exponential type of F."""
    return _contour_series(F, alpha, r, A, t, "deriv", tol, k_max, n_per_panel, T)


def frac_integ_contour(F: Callable[[complex], complex], alpha, r: float,
                       A: float, t: complex, tol: float = 1e-10,
                       k_max: int = 80, n_per_panel: int = 24,
                       T: Optional[float] = None) -> complex:
    """I_alpha{F}(t); same structure with the reciprocal weights and the
    transposed kernel parameters."""
    return _contour_series(F, alpha, r, A, t, "integ", tol, k_max, n_per_panel, T)


def frac_h1(F: Callable[[complex], complex], alpha, a: float, t: complex,
            mode: str, tol: float = 1e-11) -> complex:
    """Single-integral forms for F integrable against |dxi|/|xi| on gamma(a):

    deriv: Gamma(alpha+1)/(2 pi i) * \\oint (1 - t/xi)^{-alpha-1} F(xi)/xi dxi
    integ: 1/(Gamma(alpha+1) 2 pi i) * \\oint 2F1(1,1;alpha+1;t/xi) F(xi)/xi dxi
    """
    al = FractionalOrder(_alpha_of(alpha))
    al.require_base()
    av = al.alpha
    t = complex(t)
    if dist_to_positive_ray(t) >= a:
        raise DomainError(f"t = {t:.6g} is outside the tube of width {a:.4g}")
    check_h1_decay(F, gamma_contour(a, max(40.0, 4.0 * abs(t))))
    segs = infinite_tube_boundary(a, scale=max(10.0, 2.0 * abs(t)))
    if mode == "deriv":
        g = gamma(av + 1.0)

        def integrand(xi):
            return g * (1.0 - t / xi) ** (-av - 1.0) * F(xi) / xi
    elif mode == "integ":
        g = 1.0 / gamma(av + 1.0)
        prm = Hyp2F1Params(1.0, 1.0, av + 1.0)

        def integrand(xi):
            return g * hyp2f1(prm, t / xi) * F(xi) / xi
    else:
        raise DomainError(f"mode must be 'deriv' or 'integ', got {mode!r}")
    val, _ = integrate_path(integrand, segs, QuadratureSpec(tol=tol))
    return val / (2j * math.pi)


# ---------------------------------------------------------------------------
# Pole-limit polynomials
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PsiPolynomial:
    """Degree-n polynomial with coefficients (-1)^j C(n,j) f_j: the limit of
    the normalized derivative transform at alpha -> -n-1."""

    degree: int
    coeffs: tuple

    def __call__(self, t: complex) -> complex:
        acc = 0.0 + 0.0j
        for c in reversed(self.coeffs):
            acc = acc * t + c
        return acc


def psi_polynomial(F: PowerSeries, n: int) -> PsiPolynomial:
    if n < 0:
        raise DomainError("n must be non-negative")
    if F.truncation <= n:
        raise DomainError("series truncation must exceed n")
    coeffs = tuple((-1.0) ** j * math.comb(n, j) * F.coeffs[j] for j in range(n + 1))
    return PsiPolynomial(n, coeffs)


def psi_limit_check(F: PowerSeries, n: int, t: complex, eps: float) -> float:
    """Residual |F(t, -n-1+eps)/Gamma(-n+eps) - Psi_{n,F}(t)|; O(eps) when the
    pole-limit identity holds."""
    if not 0 < eps <= 1e-3:
        raise DomainError("eps must be in (0, 1e-3]")
    if eps < 1e-9:
        warnings.warn("eps below 1e-9 risks cancellation in the Gamma ratio",
                      RuntimeWarning, stacklevel=2)
    alpha = -(n + 1.0) + eps
    G = frac_deriv_series(F, alpha)
    val = eval_series(G, t).value / gamma(alpha + 1.0)
    return abs(val - psi_polynomial(F, n)(t))


def psi_coefficients_contour(F: Callable[[complex], complex], n: int, r: float,
                             A: float, T: Optional[float] = None,
                             tol: float = 1e-11) -> list:
    """Taylor coefficients f_0..f_n recovered from boundary data:
    f_j = (1/2 pi i) sum_{s<=j} r^{j-s}/(j-s)! \\oint F(xi) e^{-r xi} xi^{-1-s} dxi."""
    if n < 0:
        raise DomainError("n must be non-negative")
    if r <= 0:
        raise DomainError("r must be positive")
    contour = gamma_contour(A, T if T is not None else A + 40.0 / r)
    spec = QuadratureSpec(tol=tol)
    loop_vals = []
    for s in range(n + 1):
        val, _ = integrate_path(lambda xi, s=s: F(xi) * cmath.exp(-r * xi) / xi ** (1 + s),
                                contour, spec, decay_rate=r)
        loop_vals.append(val / (2j * math.pi))
    out = []
    for j in range(n + 1):
        acc = sum(r ** (j - s) / math.factorial(j - s) * loop_vals[s] for s in range(j + 1))
        out.append(acc)
    return out
