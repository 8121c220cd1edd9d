"""Zero-free regions: coefficient machinery and the case solves."""

import math

import numpy as np
import pytest

from heckezeros import oracles, trial_functions as tf, zfr
from heckezeros.errors import InvalidParameterError, NoBoundError


class TestTrigExpansion:
    def test_bundled_quadruple(self):
        assert zfr.expand_trig_square_product(3, 10, 9, 10) == (
            14379, 24480, 14900, 6000, 1250)

    def test_principal_quadruple_is_ten_times_reduced(self):
        assert zfr.expand_trig_square_product(0, 10, 7, 10) == (
            6200, 10500, 7450, 3500, 1250)

    def test_constant_product(self):
        assert zfr.expand_trig_square_product(1, 0, 1, 0) == (1, 0, 0, 0, 0)

    def test_pointwise_identity(self):
        rng = np.random.default_rng(2)
        th = np.linspace(0, 2 * math.pi, 1000)
        for _ in range(20):
            a1, b1, a2, b2 = rng.uniform(-3, 3, 4)
            cs = zfr.expand_trig_square_product(a1, b1, a2, b2)
            series = sum(c * np.cos(k * th) for k, c in enumerate(cs))
            direct = (a1 + b1 * np.cos(th)) ** 2 * (a2 + b2 * np.cos(th)) ** 2
            assert np.abs(series - direct).max() <= 1e-10 * (1 + np.abs(direct).max())


class TestCombine:
    def test_bundled_constants(self):
        assert zfr.combine_L_coefficients(14379, 46630, 0.75) == 62174
        assert zfr.combine_L_coefficients(30529, 30480, 0.75) == 61009

    def test_small_branch(self):
        assert zfr.combine_L_coefficients(1, 1, 0.75) == 2

    def test_all_order_sub_cases_bounded_by_bundled_B(self):
        combos = [zfr.combine_L_coefficients(a, b, 0.75)
                  for a, b in zfr.ORDER234_B_PAIRS.values()]
        assert max(combos) == zfr.CASES["order234"].B == 61009

    def test_non_integer_inputs_not_ceiled(self):
        v = zfr.combine_L_coefficients(1.0, 3.5, 0.75)
        assert v == pytest.approx(4.0 + 0.5 / 0.75, abs=1e-14)


class TestSolve:
    def test_order234_reference(self):
        res = zfr.zfr_solve("order234", 0.9421)
        assert 0.1225 <= res.lambda1 <= 0.1230
        assert res.side_ok and not res.side_limited
        assert res.residual <= 1e-10

    def test_principal_reference_is_side_limited(self):
        res = zfr.zfr_solve("principal", 1.291)
        assert 0.0873 <= res.lambda1 <= 0.0878
        assert res.side_ok
        assert res.side_limited          # 1365/1050 = 1.3 is nearly tight
        assert res.lambda1 < res.root
        # the returned width sits exactly on the condition boundary
        p, q = zfr.CASES["principal"].side
        assert ((1.291 + res.lambda1) / 1.291) ** 4 == pytest.approx(q / p, rel=1e-12)

    def test_width_term_free_anchor(self):
        # phi = 0 removes the width term: 14379 P(1) = 24480 P(u) exactly
        res = zfr.zfr_solve("order234", 0.9421, phi=0.0)
        u = 0.9421 / (0.9421 + res.root)
        assert 24480 * float(np.real(zfr.p4_eval(u))) == pytest.approx(
            14379 * 3.2, rel=1e-12)

    def test_root_matches_scan_oracle(self):
        h = zfr.zfr_h("order234", 0.9421)
        scanned = oracles.scan_root(h, 0.0, 5.0, 1e-6)
        assert abs(scanned - zfr.zfr_solve("order234", 0.9421).root) <= 2e-6

    def test_no_bound_when_inequality_positive(self):
        with pytest.raises(NoBoundError):
            zfr.zfr_solve("principal", 40.0)

    def test_bad_lambda(self):
        with pytest.raises(InvalidParameterError):
            zfr.zfr_solve("order234", 0.0)


class TestOrder5:
    def test_reference_value(self):
        assert zfr.zfr_order5() == pytest.approx(0.1489, abs=5e-4)

    def test_scales_inversely_with_phi(self):
        assert zfr.zfr_order5(phi=0.125) == pytest.approx(2 * zfr.zfr_order5(), rel=1e-12)

    def test_angle_sensitivity(self):
        # the bundled angle carries ~5e-5 print precision; the bound moves little
        theta = tf.K_FAMILY_PAIRS[2][1]
        base = zfr.zfr_order5()
        for dt in (-5e-5, 5e-5):
            pert = math.cos(theta + dt) ** 2 * 14379.0 / (62174.0 * 0.25)
            assert abs(pert - base) < 1e-4


class TestOrderGe6:
    def test_substitute_weight_flagged_approximate(self):
        f = tf.triangle(4.0)
        res = zfr.zfr_order_ge6(f)
        assert res.approximate
        assert 0.0 < res.lambda1 <= zfr.ORDER_GE6_LAMBDA_STAR
        # the bundled floor 0.3916 comes from the complex-case tables at width .18
        assert zfr.ORDER_GE6_LAMBDA_STAR == 0.3916

    def test_useless_weight_raises(self):
        with pytest.raises(NoBoundError):
            zfr.zfr_order_ge6(tf.triangle(0.05))


class TestOptimize:
    def test_order234(self):
        lam_opt, l1 = zfr.zfr_optimize("order234")
        assert abs(lam_opt - 0.9421) <= 0.01
        assert l1 >= zfr.zfr_solve("order234", 0.9421).lambda1 - 1e-4

    def test_principal_on_boundary(self):
        lam_opt, l1 = zfr.zfr_optimize("principal")
        assert abs(lam_opt - 1.291) <= 0.01
        fixed = zfr.zfr_solve("principal", 1.291).lambda1
        assert l1 >= fixed - 1e-9
        assert zfr.zfr_solve("principal", lam_opt).side_limited

    def test_profile_unimodal_on_scan(self):
        lams = np.linspace(0.5, 1.6, 200)
        vals = []
        for lam in lams:
            try:
                vals.append(zfr.zfr_solve("order234", float(lam)).lambda1)
            except NoBoundError:
                vals.append(-1.0)
        vals = np.array(vals)
        k = int(np.argmax(vals))
        assert np.all(np.diff(vals[: k + 1]) >= -1e-12)
        assert np.all(np.diff(vals[k:]) <= 1e-12)
