"""Compactly supported trial weights and their Laplace transforms.

A usable weight f must be non-negative, supported in [0, x0), twice
differentiable there, and its Laplace transform F(z) = int_0^inf e^{-zt} f(t) dt
must have non-negative real part on the closed right half-plane.  Two built-in
families satisfy this:

* ``triangle(x0)``: f(t) = max(x0 - t, 0), with the classical closed form
  F(z) = (x0 z - 1 + e^{-x0 z}) / z^2.

* ``autocorrelation(...)``: f = correlation of a non-negative generator
  g(u) = e^{alpha u} (c0 + c1 cos(beta u)) truncated to [0, s] with itself.
  Then Re F(iy) = |G(iy)|^2 / 2 >= 0 on the imaginary axis, hence on the
  whole closed right half-plane by the minimum principle, so the half-plane
  condition holds by construction.  This family stands in for externally
  defined optimal weights whose formulas are not available here; the
  ``TrialFunction`` constructor doubles as a plug-in point for adding such
  families later without touching the solvers.

Closed forms switch to series near their removable singularities, where the
direct expressions lose half their digits to cancellation; thresholds and
term counts live in ``_kernels`` so the compiled scalar path stays in exact
agreement with the vectorized one.
"""

import math
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .errors import DomainError, InvalidGeneratorError, InvalidParameterError

_SMALL_W = _kernels.SMALL_W
_N_MOM = _kernels.N_MOMENTS

#: (k, theta) data pairs of the externally defined cosine-type weights used by
#: the fixed-ratio bounds.  The defining relation theta(k) is not derivable
#: here; the pairs are shipped as data.
K_FAMILY_PAIRS = (
    (2.0, 0.9873),
    (1.5, 1.2729),
    (24480.0 / 14379.0, 1.1580),
)

# 1/(m+2)! for m = 0..8: series of (w - 1 + e^{-w})/w^2 and of (e^w - 1)/w
_INV_FACT2 = tuple(1.0 / math.factorial(m + 2) for m in range(9))
_INV_FACT1 = tuple(1.0 / math.factorial(m + 1) for m in range(9))


@dataclass(frozen=True)
class Content:
    """Summary data (x0, M, B, f0) of a trial weight.

    x0 bounds the support, M = sup |f|, B = sup |f''| on (0, x0), f0 = f(0).
    ``remainder_constant`` is the constant A = 3 B x0 + 2 f0 / x0 controlling
    the |F(z) - f(0)/z| <= A/|z|^2 remainder bound on Re z > 0.
    """

    x0: float
    M: float
    B: float
    f0: float

    def __post_init__(self):
        if not (self.x0 > 0):
            raise InvalidParameterError(f"support endpoint must be positive, got {self.x0}")
        if not (self.M >= self.f0 >= 0):
            raise InvalidParameterError(f"need M >= f0 >= 0, got M={self.M}, f0={self.f0}")
        if self.B < 0:
            raise InvalidParameterError(f"second-derivative bound must be >= 0, got {self.B}")

    @property
    def remainder_constant(self):
        return 3.0 * self.B * self.x0 + 2.0 * self.f0 / self.x0


class TrialFunction:
    """A trial weight with pointwise and Laplace-transform evaluators.

    Instances are immutable after construction; the evaluators are pure and
    safe for concurrent use.  ``code`` is the flattened representation the
    compiled solvers consume; plug-in families may pass ``code=None``, in
    which case solvers fall back to the generic evaluator path.
    """

    __slots__ = ("family", "params", "content", "_eval", "_laplace", "_code")

    def __init__(self, family, params, content, eval_fn, laplace_fn, code=None):
        self.family = family
        self.params = dict(params)
        self.content = content
        self._eval = eval_fn
        self._laplace = laplace_fn
        self._code = code

    def __call__(self, t):
        """f(t); accepts scalars or arrays, zero for t >= x0 or t < 0."""
        return self._eval(np.asarray(t, dtype=float))

    def laplace(self, z):
        """F(z); accepts real/complex scalars or arrays, entire in z."""
        return self._laplace(z)

    def kernel_code(self):
        return self._code

    def __repr__(self):
        ps = ", ".join(f"{k}={v:g}" for k, v in self.params.items())
        return f"TrialFunction({self.family}, {ps})"


def laplace(f, z):
    """F(z) = int_0^infty e^{-zt} f(t) dt for a trial function."""
    return f.laplace(z)


# ---------------------------------------------------------------------------
# triangle family
# ---------------------------------------------------------------------------

def triangle(x0):
    """The triangle weight f(t) = max(x0 - t, 0)."""
    if not (isinstance(x0, (int, float)) and math.isfinite(x0) and x0 > 0):
        raise InvalidParameterError(f"triangle support endpoint must be positive, got {x0!r}")
    x0 = float(x0)

    def _eval(t):
        out = np.where((t >= 0) & (t < x0), x0 - t, 0.0)
        return out if out.ndim else float(out)

    def _laplace(z):
        z = np.asarray(z)
        scalar = z.ndim == 0
        z = np.atleast_1d(z.astype(complex))
        w = x0 * z
        small = np.abs(w) < _SMALL_W
        zs = np.where(small, 1.0, z)
        with np.errstate(over="ignore", invalid="ignore"):
            direct = (w - 1.0 + np.exp(-w)) / (zs * zs)
        series = np.zeros_like(w)
        wp = np.ones_like(w)
        for m in range(9):
            series += ((-1) ** m * _INV_FACT2[m]) * wp
            wp *= w
        series *= x0 * x0
        out = np.where(small, series, direct)
        return complex(out[0]) if scalar else out

    content = Content(x0=x0, M=x0, B=0.0, f0=x0)
    return TrialFunction("triangle", {"x0": x0}, content, _eval, _laplace,
                         code=_kernels.triangle_code(x0))


# ---------------------------------------------------------------------------
# autocorrelation family
# ---------------------------------------------------------------------------

def _exp_moment(a, s, n):
    """M_n = int_0^s v^n e^{a v} dv for complex a, scalar and stable."""
    w = a * s
    if abs(w) < _SMALL_W:
        total = 0.0 + 0.0j
        term = 1.0 + 0.0j
        for m in range(30):
            total += term * s ** (n + m + 1) / (n + m + 1)
            term *= a / (m + 1)
        return total
    vals = [(np.exp(w) - 1.0) / a]
    for k in range(1, n + 1):
        vals.append((s ** k * np.exp(w) - k * vals[-1]) / a)
    return complex(vals[n])


def _exp_moments_vec(a, s, nmax):
    """All moments M_0..M_nmax at once for a complex array of exponents."""
    a = np.asarray(a, dtype=complex)
    w = a * s
    small = np.abs(w) < _SMALL_W
    a_safe = np.where(small, 1.0, a)
    out = np.empty((nmax + 1, a.size), dtype=complex)
    with np.errstate(over="ignore", invalid="ignore"):
        ew = np.exp(w)
        out[0] = (ew - 1.0) / a_safe
        for n in range(1, nmax + 1):
            out[n] = (s ** n * ew - n * out[n - 1]) / a_safe
    if small.any():
        series = np.zeros((nmax + 1, a.size), dtype=complex)
        term = np.ones(a.size, dtype=complex)
        for m in range(30):
            for n in range(nmax + 1):
                series[n] += term * s ** (n + m + 1) / (n + m + 1)
            term *= a / (m + 1)
        out = np.where(small[None, :], series, out)
    return out


def _phi1_series(w):
    """sum_m w^m/(m+1)! for m = 0..8, i.e. (e^w - 1)/w to ~1e-25 for |w| < 0.01."""
    out = np.zeros_like(w)
    wp = np.ones_like(w)
    for m in range(9):
        out += _INV_FACT1[m] * wp
        wp *= w
    return out


def _E_vec(x, a):
    """(e^{a x} - 1)/a for scalar complex a and real array x >= 0."""
    x = np.asarray(x, dtype=float)
    w = a * x
    small = np.abs(w) < _SMALL_W
    a_safe = a if a != 0 else 1.0
    with np.errstate(over="ignore", invalid="ignore"):
        direct = (np.exp(w) - 1.0) / a_safe
    return np.where(small, x * _phi1_series(w.astype(complex)), direct)


def _E_vec_a(x, a):
    """(e^{a x} - 1)/a for real scalar x and complex array a."""
    a = np.asarray(a, dtype=complex)
    w = a * x
    small = np.abs(w) < _SMALL_W
    a_safe = np.where(small, 1.0, a)
    with np.errstate(over="ignore", invalid="ignore"):
        direct = (np.exp(w) - 1.0) / a_safe
    return np.where(small, x * _phi1_series(w), direct)


@dataclass(frozen=True)
class _Pair:
    coef: float
    gj: complex
    gk: complex
    a: complex            # gj + gk, independent of z
    K: complex            # int_0^s e^{a v} dv
    M: tuple              # moments M_1 .. M_7 at a


def autocorrelation(alpha=0.0, c0=1.0, c1=0.0, beta=0.0, s=1.0, _grid=2001):
    """Autocorrelation weight f(t) = int g(u) g(u+t) du of a truncated generator.

    g(u) = e^{alpha u} (c0 + c1 cos(beta u)) on [0, s].  The generator must be
    non-negative there (checked on a grid); f is then supported in [0, s) with
    f(0) = int g^2 and sup f = f(0) by Cauchy-Schwarz.  The transform is a sum
    over exponential components of g,

        F(z) = sum_{j,k} c_j c_k (K_{jk} - E(s; g_k - z)) / (g_j + z),

    with E(s; a) = (e^{as} - 1)/a and K_{jk} = E(s; g_j + g_k) independent of
    z; Taylor fallbacks cover the removable singularities.  The quadrature
    oracle cross-checks all of it.
    """
    for name, v in (("alpha", alpha), ("c0", c0), ("c1", c1), ("beta", beta), ("s", s)):
        if not (isinstance(v, (int, float)) and math.isfinite(v)):
            raise InvalidParameterError(f"autocorrelation parameter {name} must be finite, got {v!r}")
    if s <= 0:
        raise InvalidParameterError(f"generator support s must be positive, got {s}")
    alpha, c0, c1, beta, s = map(float, (alpha, c0, c1, beta, s))

    # c0 >= |c1| forces g >= 0 outright; otherwise check on a grid
    if c0 < abs(c1):
        us = np.linspace(0.0, s, _grid)
        g = np.exp(alpha * us) * (c0 + c1 * np.cos(beta * us))
        if g.min() < -1e-12 * max(1.0, float(np.abs(g).max())):
            raise InvalidGeneratorError(
                f"generator takes negative values on [0, {s}] (min {g.min():.3e})")

    if c1 == 0.0 or beta == 0.0:
        terms = [(c0 + (c1 if beta == 0.0 else 0.0), complex(alpha))]
    else:
        terms = [(c0, complex(alpha)),
                 (c1 / 2.0, complex(alpha, beta)),
                 (c1 / 2.0, complex(alpha, -beta))]
    terms = [(c, g_) for c, g_ in terms if c != 0.0]
    if not terms:
        raise InvalidGeneratorError("generator is identically zero")

    combos = [(cj * ck, gjv, gkv) for cj, gjv in terms for ck, gkv in terms]
    a_all = np.array([gjv + gkv for _, gjv, gkv in combos], dtype=complex)
    moments = _exp_moments_vec(a_all, s, _N_MOM)
    pairs = [_Pair(c, gjv, gkv, complex(a), complex(moments[0, i]),
                   tuple(complex(moments[n, i]) for n in range(1, _N_MOM + 1)))
             for i, ((c, gjv, gkv), a) in enumerate(zip(combos, a_all))]

    f0 = float(sum(p.coef * p.K for p in pairs).real)

    def _eval(t):
        t = np.asarray(t, dtype=float)
        scalar = t.ndim == 0
        t = np.atleast_1d(t)
        inside = (t >= 0) & (t < s)
        tc = np.where(inside, t, 0.0)
        acc = np.zeros(t.shape, dtype=complex)
        for p in pairs:
            acc += p.coef * np.exp(p.gk * tc) * _E_vec(s - tc, p.a)
        out = np.where(inside, acc.real, 0.0)
        return float(out[0]) if scalar else out

    def _laplace(z):
        z = np.asarray(z)
        scalar = z.ndim == 0
        z = np.atleast_1d(z.astype(complex))
        acc = np.zeros(z.shape, dtype=complex)
        for p in pairs:
            b = p.gj + z
            small = np.abs(b) * s < _SMALL_W
            b_safe = np.where(small, 1.0, b)
            with np.errstate(over="ignore", invalid="ignore"):
                exact = (p.K - _E_vec_a(s, p.gk - z)) / b_safe
            taylor = np.zeros_like(b)
            bp = np.ones_like(b)
            fact = 1.0
            for n in range(_N_MOM):
                taylor += ((-1) ** n / fact) * bp * p.M[n]
                bp *= b
                fact *= n + 2.0
            acc += p.coef * np.where(small, taylor, exact)
        return complex(acc[0]) if scalar else acc

    # sup |f''| from the exact second derivative on a grid (vectorized over
    # pairs x points); 5% headroom keeps the remainder constant an upper
    # bound despite gridding
    coef = np.array([p.coef for p in pairs], dtype=np.float64)
    gj = np.array([p.gj for p in pairs], dtype=np.complex128)
    gk = np.array([p.gk for p in pairs], dtype=np.complex128)
    K = np.array([p.K for p in pairs], dtype=np.complex128)
    M = np.array([p.M for p in pairs], dtype=np.complex128).reshape(len(pairs), _N_MOM)

    ts = np.linspace(0.0, s, _grid, endpoint=False)
    w = a_all[:, None] * (s - ts)[None, :]
    small = np.abs(w) < _SMALL_W
    a_safe = np.where(small, 1.0, np.broadcast_to(a_all[:, None], w.shape))
    with np.errstate(over="ignore", invalid="ignore"):
        E2 = np.where(small, (s - ts)[None, :] * _phi1_series(w),
                      (np.exp(w) - 1.0) / a_safe)
        egk = np.exp(gk[:, None] * ts[None, :])
        f2 = (coef[:, None] * (gk[:, None] ** 2 * egk * E2
                               + (a_all - 2.0 * gk)[:, None] * egk * np.exp(w))
              ).sum(axis=0)
    B = 1.05 * float(np.abs(f2.real).max())

    content = Content(x0=s, M=f0, B=B, f0=f0)
    params = {"alpha": alpha, "c0": c0, "c1": c1, "beta": beta, "s": s}

    code = (_kernels.KIND_AUTOCORR, s, f0, math.nan, coef, gj, gk, K, M)
    F0 = float(_kernels.f_real_scalar(*code, 0.0))
    code = (_kernels.KIND_AUTOCORR, s, f0, F0, coef, gj, gk, K, M)
    return TrialFunction("autocorrelation", params, content, _eval, _laplace, code=code)


FAMILY_BUILDERS = {"triangle": triangle, "autocorrelation": autocorrelation}


def build_family(name, **params):
    """Construct a built-in family from CLI-style key-value parameters."""
    try:
        builder = FAMILY_BUILDERS[name]
    except KeyError:
        raise InvalidParameterError(
            f"unknown family {name!r}; available: {sorted(FAMILY_BUILDERS)}") from None
    return builder(**params)


# ---------------------------------------------------------------------------
# derived quantities
# ---------------------------------------------------------------------------

def f0_remainder_bound(f, z):
    """Split F(z) = f(0)/z + F_0(z) and check |F_0| <= A/|z|^2 on Re z > 0.

    Returns (F_0(z), bound_ok).  A is the content's remainder constant.
    """
    z = complex(z)
    if z.real <= 0:
        raise DomainError(f"remainder split requires Re z > 0, got {z}")
    F0 = f.laplace(z) - f.content.f0 / z
    ok = abs(F0) <= f.content.remainder_constant / abs(z) ** 2 + 1e-12
    return F0, bool(ok)


def repel_reduce(f, a, b):
    """Upper bound for Re{F(-a+iy) - F(iy) - F(b-a+iy)} uniform in y.

    Equals F(-a) - F(0) when b >= a, else F(-a) - F(b-a); both follow from
    the non-negativity of f and of Re F on the imaginary axis.
    """
    if a < 0 or b < 0:
        raise DomainError(f"repel_reduce requires a, b >= 0, got a={a}, b={b}")
    if b >= a:
        return float((f.laplace(-a) - f.laplace(0.0)).real)
    return float((f.laplace(-a) - f.laplace(b - a)).real)


def condition2_min(f, y_max=100.0, points=2001):
    """Minimum of Re F(iy) over the verification grid on the imaginary axis.

    The grid spacing resolves the transform's oscillation (period bounded
    below by 2 pi / x0) for x0 <= 30; the half-plane condition reduces to the
    boundary by the minimum principle since F decays at infinity.
    """
    ys = np.linspace(-y_max, y_max, points)
    vals = f.laplace(1j * ys).real
    return float(vals.min())
