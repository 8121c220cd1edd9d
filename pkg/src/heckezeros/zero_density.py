"""Counting characters with a low-lying zero: the density bound N(lambda).

For a rectangle of normalized height lambda and an assumed floor b on the
lowest width, a trial weight f yields

    N(lambda) <= (phi f0 + F(-b)) (F(-b) - (1/vt - 1) phi f0)
                 -----------------------------------------------
                 (F(lambda-b) - phi f0 / vt)^2 - phi f0 (phi f0 + F(-b)) / vt

(up to epsilon), valid when both preconditions hold: the bracketed transform
value exceeds phi f0 / vt, and the denominator is positive.  At vt = 3/4,
b = 0, phi = 1/4 this collapses to the familiar form with constants 1/3, 1/4
and 1/12.
"""

import math
from dataclasses import dataclass, field

from .errors import BoundUnavailableError, InvalidParameterError
from .dh import PHI


@dataclass(frozen=True)
class ZdQuery:
    """Inputs of one zero-density evaluation."""

    f: object
    lam: float
    b: float = 0.0
    vartheta: float = 0.75
    phi: float = PHI

    def __post_init__(self):
        if not (0.75 <= self.vartheta <= 1.0):
            raise InvalidParameterError(
                f"vartheta must lie in [3/4, 1], got {self.vartheta}")
        if self.lam < 0 or self.b < 0:
            raise InvalidParameterError(
                f"lambda and b must be >= 0, got {self.lam}, {self.b}")
        if self.phi <= 0:
            raise InvalidParameterError(f"phi must be positive, got {self.phi}")


def _values(q):
    f0 = q.f.content.f0
    F_minus_b = float(q.f.laplace(-q.b).real)
    F_gap = float(q.f.laplace(q.lam - q.b).real)
    return f0, F_minus_b, F_gap


def preconditions_from_values(f0, F_minus_b, F_gap, vartheta, phi):
    t = phi * f0 / vartheta
    cond1 = F_gap > t
    cond2 = (F_gap - t) ** 2 > t * (phi * f0 + F_minus_b)
    return bool(cond1), bool(cond2)


def bound_from_values(f0, F_minus_b, F_gap, vartheta, phi):
    """The general bound from raw values (f(0), F(-b), F(lambda-b))."""
    t = phi * f0 / vartheta
    num = (phi * f0 + F_minus_b) * (F_minus_b - (1.0 / vartheta - 1.0) * phi * f0)
    den = (F_gap - t) ** 2 - t * (phi * f0 + F_minus_b)
    return num / den


def mt_bound_from_values(f0, F0, F_lam):
    """The specialized vt=3/4, b=0, phi=1/4 form, written with its own constants."""
    num = (f0 / 4.0 + F0) * (F0 - f0 / 12.0)
    den = (F_lam - f0 / 3.0) ** 2 - f0 / 3.0 * (f0 / 4.0 + F0)
    return num / den


def zd_preconditions(q):
    """(cond1, cond2): transform-size and denominator-positivity conditions."""
    return preconditions_from_values(*_values(q), q.vartheta, q.phi)


def n_lambda_bound(q):
    """The real-valued density bound; requires both preconditions."""
    f0, F_minus_b, F_gap = _values(q)
    c1, c2 = preconditions_from_values(f0, F_minus_b, F_gap, q.vartheta, q.phi)
    if not (c1 and c2):
        raise BoundUnavailableError(
            f"density preconditions fail at lambda={q.lam}, b={q.b} "
            f"(cond1={c1}, cond2={c2}) for {q.f!r}")
    return bound_from_values(f0, F_minus_b, F_gap, q.vartheta, q.phi)


def n_lambda_int(q):
    """Integer form of the bound.

    The epsilon in the statement is arbitrary, so the integer claim is the
    floor of the value plus a 1e-6 guard against spurious increments from
    rounding right below an integer.
    """
    return int(math.floor(n_lambda_bound(q) + 1e-6))


def recipe_theta(lam, b):
    """Tuning recipe theta-hat = 1.63 + 1.28 b - 4.35 lambda for table rows.

    The recipe parametrizes an external weight family; here it seeds the
    substitute-family search (support scale ~ 2 theta-hat / lambda).
    """
    return 1.63 + 1.28 * b - 4.35 * lam


@dataclass(frozen=True)
class ZdTableEntry:
    lam: float
    b: float
    bound: float            # math.inf when no admissible weight was found
    n: float                # integer bound, or math.inf
    params: dict = field(default_factory=dict)
