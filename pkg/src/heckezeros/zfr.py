"""Zero-free region widths lambda_1 by character order.

Each character-order case combines a squared cosine-polynomial identity with
the explicit inequalities.  Expanding (a1 + b1 cos)^2 (a2 + b2 cos)^2 in
multiples of the angle gives the weights attached to the powers of the
character; the first two coefficients c0, c1 drive the main inequality

    c0 P(1) - c1 P(lambda/(lambda + lambda_1)) + B phi lambda <= 0,

where B combines the per-character normalization coefficients (``ceil``-ed for
integer inputs), and the higher coefficients are discarded through a quartic
side condition p/lambda^4 <= q/(lambda + lambda_1)^4.  When that condition is
the binding constraint, the valid bound is the largest width where it still
holds rather than the root itself; the solver reports both.

The order-5 and order>=6 cases instead use the smoothed inequality: order 5
reduces to a fixed-ratio cosine bound with the bundled (k, theta) data pair,
and order>=6 needs an externally defined weight, so it is computed with the
substitute family and flagged approximate.
"""

import math
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .dh import PHI, cos_bound
from .errors import InvalidParameterError, NoBoundError
from .p4 import p4_eval
from .trial_functions import K_FAMILY_PAIRS

#: lambda* floor for the order>=6 case, from the complex-case repulsion tables
#: at width 0.180 (min over the second-zero and second-character bounds).
ORDER_GE6_LAMBDA_STAR = 0.3916


@dataclass(frozen=True)
class ZfrCase:
    """A polynomial-method character-order case."""

    name: str
    coeffs: tuple          # cosine-expansion coefficients (c0..c4)
    B: float               # combined normalization coefficient
    side: tuple            # (p, q): condition p/lam^4 <= q/(lam+x)^4
    description: str


CASES = {
    "order234": ZfrCase(
        "order234", (14379, 24480, 14900, 6000, 1250), 61009, (14900, 30480),
        "worst character of order 2, 3 or 4"),
    "principal": ZfrCase(
        "principal", (620, 1050, 745, 350, 125), 2890, (1050, 1365),
        "principal worst character (necessarily complex worst zero)"),
}

#: normalization coefficient pairs of the three order-2/3/4 sub-cases, each of
#: which must combine to at most the bundled B of 'order234'
ORDER234_B_PAIRS = {4: (15629, 45380), 3: (20379, 40630), 2: (30529, 30480)}


@dataclass(frozen=True)
class ZfrResult:
    case: str
    lam: float
    lambda1: float
    side_ok: bool
    side_limited: bool
    root: float
    residual: float
    approximate: bool = False

    def __str__(self):
        notes = []
        if self.side_limited:
            notes.append("side-condition limited")
        if self.approximate:
            notes.append("approximate (substitute weight)")
        tail = f" [{', '.join(notes)}]" if notes else ""
        return (f"zfr {self.case}: lambda = {self.lam:g} -> lambda_1 >= "
                f"{self.lambda1:.6g} (side condition {'OK' if self.side_ok else 'FAILED'}){tail}")


def get_case(name):
    try:
        return CASES[name]
    except KeyError:
        raise InvalidParameterError(
            f"unknown zero-free-region case {name!r}; available: {sorted(CASES)}") from None


def expand_trig_square_product(a1, b1, a2, b2):
    """Coefficients of 1, cos, cos 2., cos 3., cos 4. in (a1+b1 cos)^2 (a2+b2 cos)^2.

    Exact product-to-sum reduction; with integer inputs every output is exact
    (the reductions only divide by 2, 4 and 8).
    """
    p0 = a1 * a2
    p1 = a1 * b2 + a2 * b1
    p2 = b1 * b2
    c0 = p0 * p0 + (p1 * p1 + 2.0 * p0 * p2) / 2.0 + 3.0 * p2 * p2 / 8.0
    c1 = 2.0 * p0 * p1 + 1.5 * p1 * p2
    c2 = (p1 * p1 + 2.0 * p0 * p2) / 2.0 + p2 * p2 / 2.0
    c3 = p1 * p2 / 2.0
    c4 = p2 * p2 / 8.0
    return (c0, c1, c2, c3, c4)


def combine_L_coefficients(a, b, vartheta=0.75):
    """Combine a . L_0 + b . L_chi into a single multiple of L.

    L_0 <= L always and L_chi <= L / vartheta, so the combination is a + b
    when b <= 3a and 4a + (b - 3a)/vartheta otherwise (the 3a split uses
    vartheta >= 3/4).  Integer inputs are rounded up to the next integer,
    matching the ceiling convention of the bundled constants.
    """
    if a <= 0 or b < 0:
        raise InvalidParameterError(f"need a > 0 and b >= 0, got a={a}, b={b}")
    if not (0.75 <= vartheta <= 1.0):
        raise InvalidParameterError(f"vartheta must lie in [3/4, 1], got {vartheta}")
    if b <= 3 * a:
        out = a + b
    else:
        out = 4.0 * a + (b - 3.0 * a) / vartheta
    if float(a).is_integer() and float(b).is_integer():
        return float(math.ceil(out - 1e-9))
    return float(out)


def zfr_h(case, lam, phi=PHI):
    """The increasing function of lambda_1 whose root gives the region width."""
    case = get_case(case) if isinstance(case, str) else case
    c0, c1 = case.coeffs[0], case.coeffs[1]

    def h(x):
        x = np.asarray(x, dtype=float)
        return c0 * 3.2 - c1 * p4_eval(lam / (lam + x)).real + case.B * phi * lam
    return h


def side_condition_limit(case, lam):
    """Largest x >= 0 with p/lam^4 <= q/(lam+x)^4, or -inf if none, inf if all."""
    case = get_case(case) if isinstance(case, str) else case
    p, q = case.side
    ratio = q / p
    if ratio < 1.0:
        return -math.inf
    return lam * (ratio ** 0.25 - 1.0)


def zfr_solve(case, lam, phi=PHI, hi=10.0, iters=200):
    """Zero-free-region width for a chosen lambda.

    Returns the smaller of the inequality root and the side-condition limit:
    the argument proves the region only while the side condition holds, and
    for the principal case the published width is exactly the (near-tight)
    side limit.  ``side_ok`` refers to the returned width; ``side_limited``
    records when the cap was the binding constraint.
    """
    case = get_case(case) if isinstance(case, str) else case
    if lam <= 0:
        raise InvalidParameterError(f"lambda must be positive, got {lam}")
    c0, c1 = case.coeffs[0], case.coeffs[1]
    root, hlo, hhi = _kernels.zfr_root(float(c0), float(c1), float(case.B),
                                       float(lam), float(phi), 0.0, float(hi), iters)
    if math.isnan(root):
        if hlo > 0:
            raise NoBoundError(
                f"zfr {case.name}: inequality already positive at width 0 "
                f"(lambda={lam}); no region provable", sign="positive")
        raise NoBoundError(
            f"zfr {case.name}: no root below {hi} at lambda={lam}", sign="negative")
    # relative to the ~1e5-sized terms of the inequality
    scale = 1.0 + c0 * 3.2 + case.B * phi * lam
    residual = abs(float(zfr_h(case, lam, phi)(root))) / scale
    limit = side_condition_limit(case, lam)
    if limit < 0:
        return ZfrResult(case.name, float(lam), 0.0, False, True, float(root), residual)
    if root <= limit:
        return ZfrResult(case.name, float(lam), float(root), True, False,
                         float(root), residual)
    return ZfrResult(case.name, float(lam), float(limit), True, True,
                     float(root), residual)


def zfr_order5(phi=PHI):
    """Width for order-5 characters via the fixed-ratio cosine bound.

    The driving inequality, normalized by its leading coefficient, reads
    F(-lambda_1) - (c1/c0) F(0) + (B/c0) phi f(0) >= 0 with c1/c0 =
    24480/14379; the matching cosine-type weight has the bundled angle
    theta = 1.1580, giving lambda_1 >= cos^2(theta) c0 / (B phi).
    """
    if phi <= 0:
        raise InvalidParameterError(f"phi must be positive, got {phi}")
    theta = K_FAMILY_PAIRS[2][1]
    B_over_c0 = 62174.0 / 14379.0
    return cos_bound(theta, 2.0 * B_over_c0 * phi)


def zfr_order_ge6(f, lam_star=ORDER_GE6_LAMBDA_STAR, phi=PHI, iters=200):
    """Width for order >= 6 via the smoothed inequality, substitute weight.

    Solves 14379 F(-lam_star) - 24480 F(x - lam_star) + 62174 phi f(0) = 0
    for x in [0, lam_star].  The published constant uses an externally
    defined weight, so results here are flagged approximate.
    """
    F_star = float(f.laplace(-lam_star).real)
    const = 14379.0 * F_star + 62174.0 * phi * f.content.f0

    def h(x):
        x = np.asarray(x, dtype=float)
        return const - 24480.0 * f.laplace(x - lam_star).real

    lo, hi = 0.0, lam_star
    hlo, hhi = float(h(lo)), float(h(hi))
    if hlo > 0:
        raise NoBoundError(
            f"order>=6 inequality already positive at width 0 for {f!r}", sign="positive")
    if hhi < 0:
        # inequality still negative at lam_star: the full floor is provable
        return ZfrResult("order-ge6", float(lam_star), float(lam_star), True,
                         False, float(lam_star), 0.0, approximate=True)
    for _ in range(iters):
        mid = 0.5 * (lo + hi)
        if mid == lo or mid == hi:
            break
        if float(h(mid)) < 0:
            lo = mid
        else:
            hi = mid
    root = 0.5 * (lo + hi)
    return ZfrResult("order-ge6", float(lam_star), float(root), True, False,
                     float(root), abs(float(h(root))), approximate=True)


def zfr_optimize(case, phi=PHI, lam_lo=0.05, lam_hi=3.0, scan=241, tol=1e-6):
    """Best lambda for a polynomial case: maximize the returned width.

    Coarse scan then golden-section refinement; infeasible lambdas (no root)
    score -inf.  Deterministic.  The width profile is continuous and unimodal
    on the feasible region (the root falls and the side limit rises in
    lambda), so this finds the global optimum.
    """
    case = get_case(case) if isinstance(case, str) else case

    def value(lam):
        try:
            return zfr_solve(case, lam, phi).lambda1
        except NoBoundError:
            return -math.inf

    lams = np.linspace(lam_lo, lam_hi, scan)
    vals = [value(l) for l in lams]
    k = int(np.argmax(vals))
    if not math.isfinite(vals[k]):
        raise NoBoundError(f"zfr {case.name}: no feasible lambda in [{lam_lo}, {lam_hi}]")
    lo = lams[max(k - 1, 0)]
    hi = lams[min(k + 1, scan - 1)]
    inv = (math.sqrt(5.0) - 1.0) / 2.0
    x1 = hi - inv * (hi - lo)
    x2 = lo + inv * (hi - lo)
    f1, f2 = value(x1), value(x2)
    while hi - lo > tol:
        if f1 < f2:
            lo, x1, f1 = x1, x2, f2
            x2 = lo + inv * (hi - lo)
            f2 = value(x2)
        else:
            hi, x2, f2 = x2, x1, f1
            x1 = hi - inv * (hi - lo)
            f1 = value(x1)
    lam_opt = 0.5 * (lo + hi)
    return lam_opt, value(lam_opt)
