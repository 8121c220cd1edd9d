"""Hot numeric kernels, numba-compiled with a pure NumPy/Python fallback.

The inner loops that dominate runtime are (a) grid minima of the quartic
positivity combination and (b) bisection root finding for the smoothed and
polynomial repulsion solvers.  When numba is importable (and the environment
variable ``HECKEZEROS_DISABLE_NUMBA`` is unset) these are JIT-compiled;
otherwise the same code runs as plain Python and the grid kernel switches to
a vectorized NumPy implementation.  Both paths agree to float precision;
``benchmarks/bench_kernels.py`` measures the speed gap by re-running itself
under the flag.

Trial functions are passed to the kernels in a flattened "family code"
(see ``trial_functions``): the triangle needs only its support endpoint, the
autocorrelation family ships per-pair complex constants of its closed-form
transform.  Closed forms switch to series below ``SMALL_W`` = 1e-2, where the
direct expressions would lose more than half their digits to cancellation;
the series carry enough terms to stay at ~1e-15 relative error there.
"""

import cmath
import math
import os

import numpy as np

_FLAG = os.environ.get("HECKEZEROS_DISABLE_NUMBA", "").strip().lower()
_DISABLED = _FLAG not in ("", "0", "false", "no")

NUMBA_ENABLED = False
if not _DISABLED:
    try:
        import numba

        NUMBA_ENABLED = True
    except ImportError:  # pragma: no cover - numba is a declared dependency
        NUMBA_ENABLED = False


def backend():
    """Name of the active kernel backend ('numba' or 'numpy')."""
    return "numba" if NUMBA_ENABLED else "numpy"


KIND_TRIANGLE = 0
KIND_AUTOCORR = 1

#: series-switch threshold for the removable singularities of the closed forms
SMALL_W = 1e-2

#: number of moment constants (M_1 .. M_7) carried per autocorrelation pair
N_MOMENTS = 7


# ---------------------------------------------------------------------------
# scalar kernels (plain definitions; jitted below when numba is enabled)
# ---------------------------------------------------------------------------

def _p4_combo_min_loop(A, B, C, a, b, c, ts):
    """Min over the grid of Re{C P(a/(c+it)) + B P(a/(b+it)) - A P(a/(a+it))}."""
    best = 1e300
    best_t = ts[0]
    for i in range(ts.shape[0]):
        t = ts[i]
        u1 = a / complex(c, t)
        u2 = a / complex(b, t)
        u3 = a / complex(a, t)
        v = (C * (u1 * (1.0 + u1 * (1.0 + u1 * (0.8 + 0.4 * u1))))
             + B * (u2 * (1.0 + u2 * (1.0 + u2 * (0.8 + 0.4 * u2))))
             - A * (u3 * (1.0 + u3 * (1.0 + u3 * (0.8 + 0.4 * u3))))).real
        if v < best:
            best = v
            best_t = t
    return best, best_t


def _f_real_scalar(kind, x0, f0, F0, coef, gj, gk, K, M, r):
    """F(r) for real r, matching the vectorized closed forms exactly.

    Arguments past the exp overflow range return +inf (F(r) ~ e^{-r x0} for
    very negative r); Python's math.exp would raise where numba returns inf,
    and the solvers' bracket-shrinking relies on a value coming back.
    """
    if r < 0.0 and -r * x0 > 690.0:
        return math.inf
    if kind == KIND_TRIANGLE:
        w = x0 * r
        if abs(w) < SMALL_W:
            return x0 * x0 * (1.0 / 2.0 - w / 6.0 + w * w / 24.0 - w ** 3 / 120.0
                              + w ** 4 / 720.0 - w ** 5 / 5040.0 + w ** 6 / 40320.0
                              - w ** 7 / 362880.0 + w ** 8 / 3628800.0)
        return (w - 1.0 + math.exp(-w)) / (r * r)
    acc = 0.0
    for i in range(coef.shape[0]):
        bb = gj[i] + r
        if abs(bb) * x0 < SMALL_W:
            bp = 1.0 + 0.0j
            phi = 0.0 + 0.0j
            sign = 1.0
            fact = 1.0
            for n in range(N_MOMENTS):
                phi += sign * bp * M[i, n] / fact
                bp *= bb
                sign = -sign
                fact *= n + 2.0
        else:
            cc = gk[i] - r
            wc = cc * x0
            if abs(wc) < SMALL_W:
                E = x0 * (1.0 + wc / 2.0 + wc ** 2 / 6.0 + wc ** 3 / 24.0
                          + wc ** 4 / 120.0 + wc ** 5 / 720.0 + wc ** 6 / 5040.0
                          + wc ** 7 / 40320.0 + wc ** 8 / 362880.0)
            else:
                E = (cmath.exp(wc) - 1.0) / cc
            phi = (K[i] - E) / bb
        acc += coef[i] * phi.real
    return acc


def _smoothed_root(kind, x0, f0, F0, coef, gj, gk, K, M,
                   form, c1, psi, b, lo, hi, iters):
    """Bisection root of the smoothed repulsion function.

    form 0: h(x) = c1 (F(-x) - F(b-x)) - F(0) + psi f(0)
    form 1: h(x) = F(-b) - F(0) - F(x-b) + psi f(0)
    Both increase in x.  Returns (root, h(lo), h(hi)); root is NaN when there
    is no sign change on [lo, hi].
    """
    base = _f_real_scalar(kind, x0, f0, F0, coef, gj, gk, K, M, -b) - F0 + psi * f0

    def _h(x):
        if form == 0:
            return c1 * (_f_real_scalar(kind, x0, f0, F0, coef, gj, gk, K, M, -x)
                         - _f_real_scalar(kind, x0, f0, F0, coef, gj, gk, K, M, b - x)) \
                - F0 + psi * f0
        return base - _f_real_scalar(kind, x0, f0, F0, coef, gj, gk, K, M, x - b)

    hlo = _h(lo)
    hhi = _h(hi)
    if hlo > 0.0 or hhi < 0.0 or hlo != hlo or hhi != hhi:
        return math.nan, hlo, hhi
    a_, b_ = lo, hi
    for _ in range(iters):
        mid = 0.5 * (a_ + b_)
        if mid == a_ or mid == b_:
            break
        if _h(mid) < 0.0:
            a_ = mid
        else:
            b_ = mid
    return 0.5 * (a_ + b_), hlo, hhi


def _poly_root(slot, lam, J, b, psi, lo, hi, iters):
    """Bisection root of the quartic-method repulsion function (NaN if none).

    slot 0: known value on the (J^2 + 1/2) term, unknown on the 2J term;
    slot 1: the reverse.
    """
    def _h(x):
        if slot == 0:
            u1 = lam / (lam + b)
            u2 = lam / (lam + x)
        else:
            u1 = lam / (lam + x)
            u2 = lam / (lam + b)
        p1 = u1 * (1.0 + u1 * (1.0 + u1 * (0.8 + 0.4 * u1)))
        p2 = u2 * (1.0 + u2 * (1.0 + u2 * (0.8 + 0.4 * u2)))
        return (J * J + 0.5) * (3.2 - p1) - 2.0 * J * p2 + psi * (J + 1.0) ** 2 * lam

    hlo = _h(lo)
    hhi = _h(hi)
    if hlo > 0.0 or hhi < 0.0:
        return math.nan, hlo, hhi
    a_, b_ = lo, hi
    for _ in range(iters):
        mid = 0.5 * (a_ + b_)
        if mid == a_ or mid == b_:
            break
        if _h(mid) < 0.0:
            a_ = mid
        else:
            b_ = mid
    return 0.5 * (a_ + b_), hlo, hhi


def _zfr_root(c0, c1, B, lam, phi, lo, hi, iters):
    """Bisection root of c0 P(1) - c1 P(lam/(lam+x)) + B phi lam (NaN if none)."""
    const = c0 * 3.2 + B * phi * lam

    def _h(x):
        u = lam / (lam + x)
        return const - c1 * (u * (1.0 + u * (1.0 + u * (0.8 + 0.4 * u))))

    hlo = _h(lo)
    hhi = _h(hi)
    if hlo > 0.0 or hhi < 0.0:
        return math.nan, hlo, hhi
    a_, b_ = lo, hi
    for _ in range(iters):
        mid = 0.5 * (a_ + b_)
        if mid == a_ or mid == b_:
            break
        if _h(mid) < 0.0:
            a_ = mid
        else:
            b_ = mid
    return 0.5 * (a_ + b_), hlo, hhi


# ---------------------------------------------------------------------------
# backend selection
# ---------------------------------------------------------------------------

def _p4_combo_min_numpy(A, B, C, a, b, c, ts):
    def p4(u):
        return u * (1.0 + u * (1.0 + u * (0.8 + 0.4 * u)))
    w = (C * p4(a / (c + 1j * ts)) + B * p4(a / (b + 1j * ts))
         - A * p4(a / (a + 1j * ts))).real
    i = int(np.argmin(w))
    return float(w[i]), float(ts[i])


if NUMBA_ENABLED:
    _f_real_scalar = numba.njit(cache=True)(_f_real_scalar)
    _smoothed_root = numba.njit(cache=True)(_smoothed_root)
    _poly_root = numba.njit(cache=True)(_poly_root)
    _zfr_root = numba.njit(cache=True)(_zfr_root)
    _p4_combo_min_loop = numba.njit(cache=True)(_p4_combo_min_loop)

    def p4_combo_min(A, B, C, a, b, c, ts):
        return _p4_combo_min_loop(float(A), float(B), float(C), float(a),
                                  float(b), float(c),
                                  np.asarray(ts, dtype=np.float64))
else:
    def p4_combo_min(A, B, C, a, b, c, ts):
        return _p4_combo_min_numpy(float(A), float(B), float(C), float(a),
                                   float(b), float(c),
                                   np.asarray(ts, dtype=np.float64))


f_real_scalar = _f_real_scalar
smoothed_root = _smoothed_root
poly_root = _poly_root
zfr_root = _zfr_root

_EMPTY_F = np.empty(0, dtype=np.float64)
_EMPTY_C = np.empty(0, dtype=np.complex128)
_EMPTY_M = np.empty((0, N_MOMENTS), dtype=np.complex128)


def triangle_code(x0):
    """Family code of the triangle weight max(x0 - t, 0)."""
    return (KIND_TRIANGLE, float(x0), float(x0), float(x0) ** 2 / 2.0,
            _EMPTY_F, _EMPTY_C, _EMPTY_C, _EMPTY_C, _EMPTY_M)
