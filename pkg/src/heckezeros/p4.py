"""The fixed admissible quartic and its positivity machinery.

All polynomial-method solvers rest on the quartic

    P(X) = X + X^2 + (4/5) X^3 + (2/5) X^4,

which is admissible: non-negative coefficients, P(0) = 0, and
Re P(1/z) >= 0 on the half-plane Re z >= 1.  The closed-form real-part
identity and the two positivity lemmas below are what lets a solver discard
unknown zero terms while keeping an inequality valid.
"""

from dataclasses import dataclass

import numpy as np

from . import _kernels
from .errors import DomainError, InvalidParameterError

#: Coefficients of degrees 1..4.
P4_COEFFS = (1.0, 1.0, 0.8, 0.4)


def p4_eval(x):
    """Evaluate the quartic at a real or complex point (or array)."""
    return x * (1.0 + x * (1.0 + x * (0.8 + 0.4 * x)))


def re_p4_identity(a, b, t):
    """Re P(a/(b+it)) in closed form, valid for 0 < a <= b.

    Splits into a strictly positive leading term (16/5)(ab)^4/(b^2+t^2)^4 plus
    a non-negative remainder proportional to (b - a), which is the source of
    the lower bound used by the positivity lemma.  ``t`` may be an array.
    """
    if not (0 < a <= b):
        raise DomainError(f"require 0 < a <= b, got a={a}, b={b}")
    t = np.asarray(t, dtype=float)
    r2 = b * b + t * t
    q = (5.0 * t ** 4
         + 2.0 * (5.0 * b * b + 5.0 * a * b - a * a) * t * t
         + b * b * (5.0 * b * b + 10.0 * a * b + 14.0 * a * a))
    out = (16.0 / 5.0) * (a * b) ** 4 / r2 ** 4 + a * (b - a) / (5.0 * r2 ** 3) * q
    return out if out.ndim else float(out)


def gm_guaranteed(V, W, m, x, y):
    """Sufficient condition V/x^m + W/y^m >= 1 for grid positivity."""
    return V / x ** m + W / y ** m >= 1.0


def gm_check(V, W, m, x, y, z):
    """G_m(x,y,z) = V x^m/(x^2+z^2)^m + W y^m/(y^2+z^2)^m - 1/(1+z^2)^m.

    Non-negative for all real z whenever x, y >= 1 and V/x^m + W/y^m >= 1.
    ``z`` may be an array.
    """
    if x < 1.0 or y < 1.0:
        raise DomainError(f"require x, y >= 1, got x={x}, y={y}")
    z = np.asarray(z, dtype=float)
    z2 = z * z
    out = (V * x ** m / (x * x + z2) ** m
           + W * y ** m / (y * y + z2) ** m
           - 1.0 / (1.0 + z2) ** m)
    return out if out.ndim else float(out)


@dataclass(frozen=True)
class PositivityQuery:
    """Coefficients and abscissae of a three-term quartic combination."""

    A: float
    B: float
    C: float
    a: float
    b: float
    c: float

    def __post_init__(self):
        if self.A <= 0 or self.B < 0 or self.C < 0:
            raise InvalidParameterError(
                f"require A > 0 and B, C >= 0, got A={self.A}, B={self.B}, C={self.C}")
        if not (0 < self.a <= self.b <= self.c):
            raise DomainError(
                f"require 0 < a <= b <= c, got a={self.a}, b={self.b}, c={self.c}")


@dataclass(frozen=True)
class PositivityResult:
    guaranteed: bool
    min_over_t: float
    argmin_t: float


def p4_combo(q, t):
    """Re{C P(a/(c+it)) + B P(a/(b+it)) - A P(a/(a+it))} on a t array."""
    t = np.asarray(t, dtype=float)
    return (q.C * p4_eval(q.a / (q.c + 1j * t))
            + q.B * p4_eval(q.a / (q.b + 1j * t))
            - q.A * p4_eval(q.a / (q.a + 1j * t))).real


def pm_positivity(q, points=4001, half_width=50.0):
    """Check the quartic positivity combination on a symmetric t grid.

    ``guaranteed`` is the sufficient condition C/c^4 + B/b^4 >= A/a^4; the
    empirical grid minimum is reported either way so callers can distinguish
    "guaranteed by the lemma" from "numerically positive but unproven".  The
    grid spans [-half_width*a, half_width*a]; outside it every term is
    O(1/t) with the same sign structure, so the minimum is interior.
    """
    ts = np.linspace(-half_width * q.a, half_width * q.a, points)
    mn, arg = _kernels.p4_combo_min(q.A, q.B, q.C, q.a, q.b, q.c, ts)
    guaranteed = bool(q.C / q.c ** 4 + q.B / q.b ** 4 >= q.A / q.a ** 4)
    return PositivityResult(guaranteed, float(mn), float(arg))
