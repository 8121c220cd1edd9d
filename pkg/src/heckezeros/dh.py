"""Zero-repulsion solvers: how far the other zeros sit from an exceptional one.

Every configuration of worst character / worst zero (real vs complex,
principal vs not, second zero of the same character vs worst zero of the next
character) reduces to one of two one-dimensional root problems:

* smoothed form, driven by a trial weight f with transform F:
      h(x) = c1 (F(-x) - F(b-x)) - F(0) + psi f(0)          ("sz")
      h(x) = F(-b) - F(0) - F(x-b) + psi f(0)               ("cc")
* quartic-polynomial form in tuning parameters (lambda, J), where the known
  width bound b sits either on the (J^2 + 1/2) term or on the 2J term and the
  unknown on the other, plus a quartic side condition that certifies the
  discarded complex-zero terms were non-negative.

Each case record below wires one lemma variant: its psi multiple of the
critical-strip constant phi, the multiplier c1, which slot carries the
unknown, and which side-condition coefficient formula applies.  The case
table is data so the wiring can be audited line by line.

Statements whose raw form carries oscillatory terms Re F(. + i mu) are used
here only through their reduced real forms (``trial_functions.repel_reduce``);
the unreduced transforms remain available via ``trial_functions.laplace``.

All bounds hold up to an arbitrarily small epsilon coming from the asymptotic
regime (conductor-discriminant quantity sufficiently large); the solvers
report the exact root, and the asserted bound is root - epsilon.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .errors import (DomainError, InvalidParameterError, NoBoundError,
                     SideConditionError)

#: Critical-strip growth constant; the convexity bound fixes it at 1/4.
PHI = 0.25

E = math.e


@dataclass(frozen=True)
class SolverCase:
    """One lemma variant of the repulsion machinery."""

    name: str
    method: str                 # 'smoothed' | 'poly'
    psi_over_phi: float
    description: str
    c1: int = 1                 # multiplier on the F-difference (smoothed)
    form: str = "sz"            # smoothed h shape: 'sz' | 'cc'
    unknown_slot: str = ""      # poly: 'known-on-square' | 'known-on-linear'
    j0: str = ""                # poly side-condition coefficient: 'sz' | 'cc'
    extra_j1: bool = False      # poly: second side condition with J1 = 4J/(J^2+1)
    j_min: float = 0.0
    tables: tuple = field(default=())


CASES = {c.name: c for c in (
    # -- smoothed, worst character and worst zero real -----------------------
    SolverCase("sz-lp-quadratic", "smoothed", 4.0,
               "second zero of a quadratic worst character", c1=2,
               tables=("T2:quadratic",)),
    SolverCase("sz-lp-principal", "smoothed", 2.0,
               "second zero, worst character principal", c1=2,
               tables=("T2:principal",)),
    SolverCase("sz-l2-nonprincipal", "smoothed", 4.0,
               "second-worst character's zero, both characters non-principal", c1=1,
               tables=("T7:nonprincipal",)),
    SolverCase("sz-l2-chi1-principal", "smoothed", 2.0,
               "second-worst character's zero, worst character principal", c1=1,
               tables=("T7:principal",)),
    SolverCase("sz-l2-chi2-principal", "smoothed", 4.0,
               "second-worst character's zero, that character principal", c1=2,
               tables=("T2:quadratic",)),
    # -- smoothed, complex case ----------------------------------------------
    SolverCase("cc-lp-principal-real", "smoothed", 2.0,
               "second zero real, worst character principal with complex worst zero",
               c1=2, tables=("T6",)),
    SolverCase("cc-l2-nonprincipal", "smoothed", 4.0,
               "second-worst character's zero, complex case, both non-principal",
               c1=1, form="cc", tables=("T8:nonprincipal",)),
    SolverCase("cc-l2-chi2-principal-real", "smoothed", 2.0,
               "second-worst character's zero real, that character principal, complex case",
               c1=1, form="cc", tables=("T8:chi2-principal-real",)),
    # -- polynomial, worst character and worst zero real ---------------------
    SolverCase("sz-lp-quadratic-medium", "poly", 2.0,
               "second zero complex, quadratic worst character, medium widths",
               unknown_slot="known-on-square", j0="sz", tables=("T3:quadratic",)),
    SolverCase("sz-lp-principal-medium", "poly", 1.0,
               "second zero complex, worst character principal, medium widths",
               unknown_slot="known-on-square", j0="sz", tables=("T3:principal",)),
    SolverCase("sz-l2-chi2-principal-medium", "poly", 2.0,
               "second-worst character's complex zero, that character principal",
               unknown_slot="known-on-square", j0="sz", tables=("T3:quadratic",)),
    # -- polynomial, complex case --------------------------------------------
    SolverCase("cc-lp-nonprincipal", "poly", 2.0,
               "second zero, complex case, worst character non-principal",
               unknown_slot="known-on-linear", j0="cc", j_min=0.25, tables=("T4",)),
    SolverCase("cc-lp-principal", "poly", 2.0,
               "second zero complex, worst character principal, complex case",
               unknown_slot="known-on-square", j0="cc", extra_j1=True, tables=("T5",)),
    SolverCase("cc-l2-chi1-principal", "poly", 2.0,
               "second-worst character's zero, complex case, worst character principal",
               unknown_slot="known-on-linear", j0="cc", tables=("T9",)),
    SolverCase("cc-l2-chi2-principal-complex", "poly", 2.0,
               "second-worst character's complex zero, that character principal, complex case",
               unknown_slot="known-on-square", j0="cc", tables=("T10",)),
)}

SMOOTHED_CASES = tuple(n for n, c in CASES.items() if c.method == "smoothed")
POLY_CASES = tuple(n for n, c in CASES.items() if c.method == "poly")


@dataclass(frozen=True)
class BoundResult:
    """A solved repulsion bound lambda* for the hypothesis 'width >= b'.

    ``lambda_star`` is always a valid bound: when the quartic side condition
    fails at the equation root, the result is capped at the largest point
    where it still holds (the corollaries only require some point satisfying
    both), ``side_limited`` is set, and ``root`` keeps the uncapped value.
    ``residual`` is |h| at the root relative to the evaluated terms' size.
    """

    case: str
    b: float
    lambda_star: float
    params: dict
    side_ok: bool
    residual: float
    side_limited: bool = False
    root: float = math.nan
    side_margin: float = math.nan

    def __str__(self):
        flag = " [side-condition limited]" if self.side_limited else ""
        return (f"{self.case}: b={self.b:g} -> lambda* = {self.lambda_star:.6g}"
                f" (residual {self.residual:.1e}){flag}")


def get_case(name):
    try:
        return CASES[name]
    except KeyError:
        raise InvalidParameterError(
            f"unknown solver case {name!r}; available: {sorted(CASES)}") from None


# ---------------------------------------------------------------------------
# smoothed solver
# ---------------------------------------------------------------------------

def smoothed_h(case, f, b, phi=PHI):
    """The case's monotone bracketing function, vectorized over x."""
    case = get_case(case) if isinstance(case, str) else case
    psi = case.psi_over_phi * phi
    F0 = float(f.laplace(0.0).real)
    f0 = f.content.f0
    if case.form == "sz":
        def h(x):
            x = np.asarray(x, dtype=float)
            return (case.c1 * (f.laplace(-x).real - f.laplace(b - x).real)
                    - F0 + psi * f0)
    else:
        base = float(f.laplace(-b).real) - F0 + psi * f0

        def h(x):
            x = np.asarray(x, dtype=float)
            return base - f.laplace(x - b).real
    return h


def solve_smoothed(case, f, b, phi=PHI, hi=60.0, iters=200):
    """Root of the smoothed repulsion function; the bound is root - epsilon.

    Brackets on [0, hi]: h is increasing on the whole line, and near the ends
    of the bound tables the provable bound sits barely above (or, for a
    slightly weaker weight, below) the width hypothesis itself.  When h never
    changes sign the failure mode matters: staying positive means no
    repulsion is provable with this weight, staying negative means the
    inequality degenerates (possible for the 'cc' shape when
    F(-b) - F(0) + psi f(0) <= 0, a regime the source lemmas do not address);
    both raise NoBoundError with the sign recorded.
    """
    case = get_case(case) if isinstance(case, str) else case
    if case.method != "smoothed":
        raise InvalidParameterError(f"case {case.name} is not a smoothed case")
    if b < 0:
        raise InvalidParameterError(f"width hypothesis b must be >= 0, got {b}")
    psi = case.psi_over_phi * phi
    form = 0 if case.form == "sz" else 1
    code = f.kernel_code()
    if code is not None:
        def F(r):
            return _kernels.f_real_scalar(*code, float(r))
    else:
        def F(r):
            return float(f.laplace(float(r)).real)
    F0 = F(0.0)
    f0 = f.content.f0

    def h(x):
        if form == 0:
            return case.c1 * (F(-x) - F(b - x)) - F0 + psi * f0
        return F(-b) - F0 + psi * f0 - F(x - b)

    hi = float(hi)
    # keep the bracket inside the overflow range of e^{x0 x}
    for _ in range(60):
        if hi <= 1.0 or math.isfinite(h(hi)):
            break
        hi = 0.5 * hi
    if code is not None:
        root, hlo, hhi = _kernels.smoothed_root(
            *code, form, float(case.c1), psi, float(b), 0.0, hi, iters)
    else:
        root, hlo, hhi = _bisect_generic(h, 0.0, hi, iters)
    if math.isnan(root):
        sign = "positive" if hlo > 0 else "negative"
        raise NoBoundError(
            f"{case.name}: h stays {sign} on [0, {hi}] for {f!r}"
            + (" (no repulsion provable)" if sign == "positive"
               else " (degenerate / unbounded, flagged for review)"),
            sign=sign)
    # residual is measured relative to the evaluated transform terms: at tiny
    # widths they reach e^{x0 x} ~ 1e10 and an absolute figure would only
    # report float cancellation noise, not root quality
    scale = 1.0 + abs(F(-root)) + abs(F(b - root))
    residual = abs(h(root)) / scale
    params = {"family": f.family, **f.params}
    return BoundResult(case.name, float(b), float(root), params, True, residual,
                       root=float(root))


def _bisect_generic(h, lo, hi, iters):
    hlo = float(h(lo))
    hhi = float(h(hi))
    if hlo > 0 or hhi < 0 or math.isnan(hlo) or math.isnan(hhi):
        return math.nan, hlo, hhi
    a_, b_ = lo, hi
    for _ in range(iters):
        mid = 0.5 * (a_ + b_)
        if mid == a_ or mid == b_:
            break
        if float(h(mid)) < 0:
            a_ = mid
        else:
            b_ = mid
    return 0.5 * (a_ + b_), hlo, hhi


# ---------------------------------------------------------------------------
# polynomial solver
# ---------------------------------------------------------------------------

def j0_value(case, J):
    """Side-condition coefficient on the 2J-slot term."""
    case = get_case(case) if isinstance(case, str) else case
    if case.j0 == "sz":
        return min(J / 2.0 + 1.0 / (2.0 * J), 4.0 * J)
    return min(J + 3.0 / (4.0 * J), 4.0 * J)


def j1_value(J):
    """Coefficient of the second side condition in the fully principal case."""
    return 4.0 * J / (J * J + 1.0)


def poly_h(case, b, lam, J, phi=PHI):
    """The case's monotone bracketing function, vectorized over x."""
    case = get_case(case) if isinstance(case, str) else case
    psi = case.psi_over_phi * phi
    slot = 0 if case.unknown_slot == "known-on-square" else 1

    def h(x):
        x = np.asarray(x, dtype=float)
        u1 = lam / (lam + (b if slot == 0 else x))
        u2 = lam / (lam + (x if slot == 0 else b))
        p4 = lambda u: u * (1.0 + u * (1.0 + u * (0.8 + 0.4 * u)))
        return ((J * J + 0.5) * (3.2 - p4(u1)) - 2.0 * J * p4(u2)
                + psi * (J + 1.0) ** 2 * lam)
    return h


def side_condition(case, b, lam, J, x):
    """Evaluate the case's quartic side condition(s) at the candidate root x.

    The J0 coefficient always multiplies the value sitting on the 2J slot.
    Returns (ok, margin) with margin the smallest slack across conditions.
    """
    case = get_case(case) if isinstance(case, str) else case
    sq = b if case.unknown_slot == "known-on-square" else x
    ln = x if case.unknown_slot == "known-on-square" else b
    margin = (j0_value(case, J) / (lam + ln) ** 4
              + 1.0 / (lam + sq) ** 4 - 1.0 / lam ** 4)
    if case.extra_j1:
        margin2 = (2.0 / (lam + sq) ** 4
                   + j1_value(J) / (lam + ln) ** 4 - 1.0 / lam ** 4)
        margin = min(margin, margin2)
    return margin > 0.0, margin


def side_limit(case, b, lam, J, x_cap=1e6):
    """Largest x >= 0 where the side condition(s) hold (margin decreasing in x).

    Closed form: each condition J0/(lam+ln)^4 + 1/(lam+sq)^4 > 1/lam^4 pins
    whichever of ln, sq equals x.  Returns -inf when even x = 0 fails.
    """
    case = get_case(case) if isinstance(case, str) else case
    if not side_condition(case, b, lam, J, 0.0)[0]:
        return -math.inf
    known_on_square = case.unknown_slot == "known-on-square"

    def one_limit(coef_ln, coef_sq):
        # x sits on the linear slot when the known value is on the square one
        if known_on_square:
            rest = 1.0 / lam ** 4 - coef_sq / (lam + b) ** 4
            coef_x = coef_ln
        else:
            rest = 1.0 / lam ** 4 - coef_ln / (lam + b) ** 4
            coef_x = coef_sq
        if rest <= 0:
            return math.inf
        return (coef_x / rest) ** 0.25 - lam

    lim = one_limit(j0_value(case, J), 1.0)
    if case.extra_j1:
        lim = min(lim, one_limit(j1_value(J), 2.0))
    return min(lim, x_cap)


def solve_poly(case, b, lam, J, phi=PHI, hi=1e3, iters=200):
    """Quartic-method repulsion bound with side-condition enforcement.

    The returned lambda* is min(equation root, side-condition limit), which
    is always a valid bound; ``side_limited`` marks capped results and
    ``root`` keeps the uncapped value.  SideConditionError is raised only
    when the condition fails even at width 0, so no valid point exists.
    """
    case = get_case(case) if isinstance(case, str) else case
    if case.method != "poly":
        raise InvalidParameterError(f"case {case.name} is not a polynomial case")
    if lam <= 0 or J <= 0:
        raise InvalidParameterError(f"need lambda > 0 and J > 0, got {lam}, {J}")
    if J < case.j_min:
        raise InvalidParameterError(f"case {case.name} requires J >= {case.j_min}, got {J}")
    if b < 0:
        raise InvalidParameterError(f"width hypothesis b must be >= 0, got {b}")
    psi = case.psi_over_phi * phi
    slot = 0 if case.unknown_slot == "known-on-square" else 1
    root, hlo, hhi = _kernels.poly_root(slot, float(lam), float(J), float(b),
                                        psi, 0.0, float(hi), iters)
    if math.isnan(root):
        sign = "positive" if hlo > 0 else "negative"
        raise NoBoundError(
            f"{case.name}: no root in [0, {hi}] at (b={b}, lambda={lam}, J={J});"
            f" h stays {sign}", sign=sign)
    scale = 1.0 + (J * J + 0.5) * 3.2 + 2.0 * J * 3.2 + psi * (J + 1.0) ** 2 * lam
    residual = abs(float(poly_h(case, b, lam, J, phi)(root))) / scale
    params = {"lambda": float(lam), "J": float(J)}
    _, margin = side_condition(case, b, lam, J, root)
    limit = side_limit(case, b, lam, J)
    if limit == -math.inf:
        raise SideConditionError(
            f"{case.name}: side condition fails for every width at "
            f"(b={b}, lambda={lam}, J={J}); no valid bound", salvage=None)
    if root <= limit:
        return BoundResult(case.name, float(b), float(root), params, True,
                           residual, root=float(root), side_margin=margin)
    return BoundResult(case.name, float(b), float(limit), params, True,
                       residual, side_limited=True, root=float(root),
                       side_margin=margin)


# ---------------------------------------------------------------------------
# closed-form small-width bounds
# ---------------------------------------------------------------------------

def very_small_dh(psi, lambda_prime, c1=2):
    """Width threshold (lambda'/(2 c1 e)) exp(-2 psi lambda').

    Repulsion to distance lambda' is provable once the exceptional width is
    below this threshold.  c1 matches the F-difference multiplier of the
    driving inequality (2 for the same-character shapes, 1 for the
    second-character ones); the bound is non-trivial for lambda' >= 2 c1 e.
    The epsilon slack of the asymptotic regime is omitted.
    """
    if lambda_prime <= 0:
        raise InvalidParameterError(f"lambda' must be positive, got {lambda_prime}")
    if c1 not in (1, 2):
        raise InvalidParameterError(f"c1 must be 1 or 2, got {c1}")
    return lambda_prime / (2.0 * c1 * E) * math.exp(-2.0 * psi * lambda_prime)


def very_small_threshold(c1=2):
    """The lambda' value 2 c1 e past which the inverse log form applies."""
    return 2.0 * c1 * E


def very_small_inverse(psi, lambda1):
    """Inverse form: repulsion distance (1/(2 psi)) log(1/lambda1)."""
    if not (0 < lambda1 < 1):
        raise InvalidParameterError(f"lambda1 must be in (0, 1), got {lambda1}")
    return math.log(1.0 / lambda1) / (2.0 * psi)


def cos_bound(theta, psi):
    """Repulsion bound 2 cos^2(theta) / psi from a cosine-type weight pair.

    theta is the angle data of the weight (see K_FAMILY_PAIRS); psi is the
    case's multiple of phi.
    """
    if not (0 < theta < math.pi / 2):
        raise InvalidParameterError(f"theta must be in (0, pi/2), got {theta}")
    if psi <= 0:
        raise InvalidParameterError(f"psi must be positive, got {psi}")
    return 2.0 * math.cos(theta) ** 2 / psi


def piecewise_log_constant(rows, b_min):
    """Uniform constant c with lambda* >= c log(1/width) over a bound chain.

    ``rows`` are (b_i, lambda*_i) sorted ascending in b_i with b_min strictly
    below the first b.  On each subinterval [b_{i-1}, b_i] the chain gives
    lambda* >= lambda*_i while log(1/width) <= log(1/b_{i-1}), so the uniform
    constant is the minimum of lambda*_i / log(1/b_{i-1}).
    """
    rows = [(float(b), float(ls)) for b, ls in rows]
    if not rows:
        raise InvalidParameterError("empty bound chain")
    bs = [b_min] + [b for b, _ in rows]
    for b in bs:
        if not (0.0 < b < 1.0):
            raise DomainError(f"chain widths must lie in (0, 1), got {b}")
    if any(b2 <= b1 for b1, b2 in zip(bs, bs[1:])):
        raise InvalidParameterError("chain widths must be strictly increasing")
    return min(ls / math.log(1.0 / bp) for bp, (_, ls) in zip(bs[:-1], rows))
