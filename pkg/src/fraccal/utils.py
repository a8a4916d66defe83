"""Small shared numeric helpers."""

from __future__ import annotations

import cmath
import math
from typing import Sequence


def pairwise_sum(values: Sequence[complex]) -> complex:
    """Sum with pairwise reduction; deterministic and mildly error-damping."""
    vals = list(values)
    if not vals:
        return 0.0 + 0.0j
    while len(vals) > 1:
        nxt = [vals[i] + vals[i + 1] for i in range(0, len(vals) - 1, 2)]
        if len(vals) % 2:
            nxt.append(vals[-1])
        vals = nxt
    return vals[0]


def dist_to_positive_ray(t: complex) -> float:
    """Distance from t to the closed ray [0, +inf) on the real axis."""
    x, y = t.real, t.imag
    if x <= 0.0:
        return abs(t)
    return abs(y)


def cpow(modulus: float, arg: float, exponent: complex) -> complex:
    """(modulus * e^{i*arg}) ** exponent with the arg taken literally.

    Used wherever a formula marks a point with an explicit rotation such as
    (t - 1) e^{-i pi}; the branch is then part of the formula, not of the
    principal-value convention.
    """
    if modulus == 0.0:
        if exponent == 0:
            return 1.0 + 0.0j
        return 0.0 + 0.0j
    return cmath.exp(exponent * (math.log(modulus) + 1j * arg))


def principal_power(z: complex, exponent: complex, side: int | None = None) -> complex:
    """z**exponent with principal log; on the negative real axis `side`
    selects the limit from above (+1, arg -> +pi) or below (-1, arg -> -pi).

    The default (side None) uses the +pi convention of cmath.
    """
    if z == 0:
        return 0.0 + 0.0j if exponent != 0 else 1.0 + 0.0j
    if side is not None and z.imag == 0.0 and z.real < 0.0:
        return cpow(abs(z), side * math.pi, exponent)
    return cmath.exp(exponent * cmath.log(z))


def unwrap_args(points: Sequence[complex], start_arg: float | None = None) -> list[float]:
    """Continuous argument along a discrete path (increments forced into (-pi, pi])."""
    if not points:
        return []
    args = [cmath.phase(points[0]) if start_arg is None else start_arg]
    for prev, cur in zip(points, points[1:]):
        step = cmath.phase(cur / prev)
        args.append(args[-1] + step)
    return args


def is_nonpositive_int(z: complex, tol: float = 1e-12) -> int | None:
    """Return the integer n <= 0 that z approximates, else None."""
    if abs(z.imag) > tol:
        return None
    n = round(z.real)
    if n <= 0 and abs(z.real - n) <= tol:
        return n
    return None


def near_integer(z: complex, tol: float = 1e-6) -> int | None:
    """Return round(Re z) when z is within tol of a (real) integer."""
    if abs(z.imag) > tol:
        return None
    n = round(z.real)
    if abs(z.real - n) <= tol:
        return n
    return None
