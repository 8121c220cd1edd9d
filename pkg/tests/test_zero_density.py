"""Zero-density bound: preconditions, formula identities, monotonicity."""

import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from heckezeros import trial_functions as tf, zero_density as zd
from heckezeros.errors import BoundUnavailableError, InvalidParameterError


class TestPreconditions:
    def test_zero_gap_maximizes_first_condition(self):
        f = tf.triangle(2.0)
        q = zd.ZdQuery(f, lam=0.7, b=0.7)
        c1, _ = zd.zd_preconditions(q)
        assert c1  # F(0) = 2 against (4/3)*2*(1/4) = 2/3

    def test_small_support_fails(self):
        q = zd.ZdQuery(tf.triangle(0.1), lam=2.0, b=0.0)
        c1, _ = zd.zd_preconditions(q)
        assert not c1

    def test_specialization_of_first_condition(self):
        # (1/vt) phi = 1/3 at vt = 3/4, phi = 1/4
        f = tf.triangle(5.0)
        q = zd.ZdQuery(f, lam=0.3)
        c1, _ = zd.zd_preconditions(q)
        assert c1 == (float(f.laplace(0.3).real) > f.content.f0 / 3.0)

    def test_vartheta_validation(self):
        with pytest.raises(InvalidParameterError):
            zd.ZdQuery(tf.triangle(1.0), lam=0.2, vartheta=0.5)


class TestBound:
    @given(f0=st.floats(0.5, 5.0), r1=st.floats(1.0, 10.0), r2=st.floats(0.4, 0.99))
    @settings(max_examples=100, deadline=None)
    def test_general_formula_specializes(self, f0, r1, r2):
        F_minus_b = f0 * r1
        F_gap = f0 / 3.0 + 1e-3 + (F_minus_b - f0 / 3.0 - 1e-3) * r2
        general = zd.bound_from_values(f0, F_minus_b, F_gap, 0.75, 0.25)
        special = zd.mt_bound_from_values(f0, F_minus_b, F_gap)
        assert abs(general - special) <= 1e-12 * (1.0 + abs(special))

    def test_denominator_positivity_iff_second_condition(self):
        f = tf.triangle(6.0)
        for lam in np.linspace(0.05, 0.6, 40):
            q = zd.ZdQuery(f, float(lam))
            _, c2 = zd.zd_preconditions(q)
            t = q.phi * f.content.f0 / q.vartheta
            den = ((float(f.laplace(lam).real) - t) ** 2
                   - t * (q.phi * f.content.f0 + float(f.laplace(0.0).real)))
            assert c2 == (den > 0)

    def test_failure_raises(self):
        with pytest.raises(BoundUnavailableError):
            zd.n_lambda_bound(zd.ZdQuery(tf.triangle(0.1), lam=2.0))

    def test_nondecreasing_in_height(self):
        f = tf.triangle(6.0)
        vals = []
        for lam in np.linspace(0.05, 0.4, 30):
            vals.append(zd.n_lambda_bound(zd.ZdQuery(f, float(lam))))
        assert all(v2 >= v1 - 1e-9 for v1, v2 in zip(vals, vals[1:]))

    def test_zero_gap_minimizes_bound_over_b(self):
        # at b = lambda the squared term uses F(0), the largest value
        f = tf.triangle(6.0)
        lam = 0.3
        ref = zd.n_lambda_bound(zd.ZdQuery(f, lam, b=lam))
        for b in np.linspace(0.0, lam, 7):
            assert ref <= zd.n_lambda_bound(zd.ZdQuery(f, lam, b=float(b))) + 1e-9

    def test_integer_form_floor_guard(self):
        f = tf.triangle(6.0)
        q = zd.ZdQuery(f, 0.2)
        v = zd.n_lambda_bound(q)
        assert zd.n_lambda_int(q) == math.floor(v + 1e-6)


def test_recipe_theta():
    assert zd.recipe_theta(0.2, 0.0) == pytest.approx(1.63 - 4.35 * 0.2)
    assert zd.recipe_theta(0.1, 0.0875) == pytest.approx(1.63 + 1.28 * 0.0875 - 0.435)
