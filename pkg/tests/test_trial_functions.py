"""Trial weights: closed forms, contents, half-plane positivity."""

import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from heckezeros import oracles, trial_functions as tf
from heckezeros.errors import DomainError, InvalidGeneratorError, InvalidParameterError

E = math.e


class TestTriangle:
    def test_basic_values(self):
        f = tf.triangle(2.0)
        assert f.laplace(0.0) == pytest.approx(2.0, abs=1e-14)
        assert f(0.0) == pytest.approx(2.0)
        assert f(2.0) == 0.0
        assert f(5.0) == 0.0

    def test_transform_at_minus_one(self):
        # int_0^2 (2-t) e^t dt = e^2 - 3
        f = tf.triangle(2.0)
        assert f.laplace(-1.0).real == pytest.approx(E**2 - 3.0, abs=1e-12)
        quad = oracles.quadrature_laplace(f, -1.0)
        assert abs(f.laplace(-1.0) - quad) < 1e-10

    def test_purely_imaginary_at_i_pi(self):
        # e^{-2 pi i} = 1 collapses the numerator to 2 pi i
        v = tf.triangle(2.0).laplace(1j * math.pi)
        assert v.real == pytest.approx(0.0, abs=1e-14)
        assert v.imag == pytest.approx(-2.0 / math.pi, abs=1e-12)

    def test_complex_point_vs_quadrature(self):
        f = tf.triangle(2.0)
        z = 1.0 + 1.0j
        assert abs(f.laplace(z) - oracles.quadrature_laplace(f, z)) < 1e-10

    def test_series_switch_continuity(self):
        f = tf.triangle(2.0)
        zs = np.array([1e-8, 1e-4, 4.9e-3, 5.1e-3, 6e-3, 0.02], dtype=complex)
        quad = np.array([oracles.quadrature_laplace(f, z) for z in zs])
        assert np.abs(f.laplace(zs) - quad).max() < 1e-11

    def test_content(self):
        c = tf.triangle(2.0).content
        assert (c.x0, c.M, c.B, c.f0) == (2.0, 2.0, 0.0, 2.0)
        assert c.remainder_constant == pytest.approx(2.0)

    @pytest.mark.parametrize("bad", [0.0, -1.0, math.nan, math.inf])
    def test_rejects_bad_support(self, bad):
        with pytest.raises(InvalidParameterError):
            tf.triangle(bad)


class TestAutocorrelation:
    def test_box_generator_gives_triangle(self):
        box = tf.autocorrelation(alpha=0.0, c0=1.0, c1=0.0, beta=0.0, s=1.0)
        tri = tf.triangle(1.0)
        assert box.content == tri.content
        assert box.laplace(0.0).real == pytest.approx(0.5, abs=1e-14)
        ts = np.linspace(-0.5, 1.5, 101)
        assert np.abs(box(ts) - tri(ts)).max() < 1e-13
        zs = np.array([0.3 - 2j, -1 + 0.5j, 2 + 3j, 1e-7, -0.5 - 0.7j])
        assert np.abs(box.laplace(zs) - tri.laplace(zs)).max() < 1e-12

    def test_exponential_generator_vs_quadrature(self):
        f = tf.autocorrelation(alpha=0.5, c0=1.0, c1=0.0, beta=0.0, s=1.0)
        for z in (-0.3, 0.0, 1.2 + 0.4j):
            assert abs(f.laplace(z) - oracles.quadrature_laplace(f, z)) < 1e-10

    def test_cosine_generator_vs_quadrature_grid(self):
        f = tf.autocorrelation(alpha=-0.8, c0=1.0, c1=0.9, beta=2.0, s=2.5)
        rng = np.random.default_rng(3)
        for _ in range(40):
            z = complex(rng.uniform(-3, 3), rng.uniform(-10, 10))
            cf = f.laplace(z)
            assert abs(cf - oracles.quadrature_laplace(f, z)) < 1e-10 * (1 + abs(cf))

    def test_removable_singularity_direction(self):
        # z = -alpha -+ i beta makes one pair denominator vanish
        f = tf.autocorrelation(alpha=-0.8, c0=1.0, c1=0.9, beta=2.0, s=2.5)
        for z in (0.8 - 2j, 0.8 - 2j + 1e-9, 0.8 + 2j, 0.8):
            assert abs(f.laplace(z) - oracles.quadrature_laplace(f, z)) < 1e-10

    def test_f0_is_generator_square_integral(self):
        f = tf.autocorrelation(alpha=-0.4, c0=1.0, c1=0.5, beta=1.0, s=2.0)
        us = np.linspace(0, 2.0, 200_001)
        g = np.exp(-0.4 * us) * (1.0 + 0.5 * np.cos(us))
        assert f.content.f0 == pytest.approx(np.trapezoid(g * g, us), rel=1e-8)

    def test_sup_equals_f0(self):
        f = tf.autocorrelation(alpha=-0.4, c0=1.0, c1=0.5, beta=1.0, s=2.0)
        ts = np.linspace(0, 2.0, 2001)
        assert f(ts).max() <= f.content.f0 + 1e-12
        assert f.content.M == f.content.f0

    def test_negative_generator_rejected(self):
        with pytest.raises(InvalidGeneratorError):
            tf.autocorrelation(alpha=0.0, c0=0.1, c1=1.0, beta=2.0, s=3.0)

    def test_zero_generator_rejected(self):
        with pytest.raises(InvalidGeneratorError):
            tf.autocorrelation(alpha=0.0, c0=0.0, c1=0.0, beta=0.0, s=1.0)


class TestConditionTwo:
    @pytest.mark.parametrize("make", [
        lambda: tf.triangle(2.0),
        lambda: tf.triangle(0.3),
        lambda: tf.autocorrelation(alpha=0.7, s=1.5),
        lambda: tf.autocorrelation(alpha=-1.2, c0=1.0, c1=1.0, beta=1.5, s=4.0),
    ])
    def test_imaginary_axis_grid(self, make):
        assert tf.condition2_min(make()) >= -1e-12

    def test_triangle_minimum_near_multiples_of_pi(self):
        # Re F(iy) = (1 - cos(2y))/y^2 for the width-2 triangle: zeros at k pi
        f = tf.triangle(2.0)
        ys = np.linspace(0.5, 100, 4001)
        vals = f.laplace(1j * ys).real
        expect = (1 - np.cos(2 * ys)) / ys**2
        assert np.abs(vals - expect).max() < 1e-12
        y_min = ys[np.argmin(vals)]
        assert min(abs(y_min / math.pi - round(y_min / math.pi)), 1.0) < 0.05


class TestRemainderBound:
    def test_triangle_at_ten(self):
        f = tf.triangle(2.0)
        F0, ok = tf.f0_remainder_bound(f, 10.0)
        assert ok
        assert abs(F0) <= 0.02 + 1e-12     # A = 2, |z|^2 = 100

    def test_triangle_unit_values(self):
        f = tf.triangle(1.0)
        F0, ok = tf.f0_remainder_bound(f, 1.0)
        assert F0.real == pytest.approx(math.exp(-1.0) - 1.0, abs=1e-13)
        assert ok

    def test_autocorrelation_grid(self):
        f = tf.autocorrelation(alpha=0.0, s=1.0)
        _, ok = tf.f0_remainder_bound(f, 5.0 + 5.0j)
        assert ok

    def test_left_half_plane_rejected(self):
        with pytest.raises(DomainError):
            tf.f0_remainder_bound(tf.triangle(1.0), -1.0)
        with pytest.raises(DomainError):
            tf.f0_remainder_bound(tf.triangle(1.0), 1j)


class TestRepelReduce:
    def test_zero_shift(self):
        assert tf.repel_reduce(tf.triangle(2.0), 0.0, 1.0) == pytest.approx(0.0, abs=1e-14)

    def test_branches(self):
        f = tf.triangle(2.0)
        expect = (f.laplace(-1.0) - f.laplace(-0.5)).real
        assert tf.repel_reduce(f, 1.0, 0.5) == pytest.approx(expect, abs=1e-13)

    def test_boundary_case_agrees(self):
        f = tf.triangle(1.0)
        v1 = tf.repel_reduce(f, 1.0, 1.0)
        assert v1 == pytest.approx((f.laplace(-1.0) - f.laplace(0.0)).real, abs=1e-13)

    @given(a=st.floats(0.0, 3.0), b=st.floats(0.0, 3.0))
    @settings(max_examples=40, deadline=None)
    def test_dominates_oscillatory_expression(self, a, b):
        f = tf.triangle(1.3)
        ys = np.linspace(-40, 40, 401)
        lhs = (f.laplace(-a + 1j * ys) - f.laplace(1j * ys)
               - f.laplace(b - a + 1j * ys)).real
        assert lhs.max() <= tf.repel_reduce(f, a, b) + 1e-10


def test_plugin_interface_round_trip():
    """A custom family built from raw callables runs through the solvers."""
    base = tf.triangle(1.5)
    clone = tf.TrialFunction("custom", {"note": 1.0}, base.content,
                             lambda t: base(t), lambda z: base.laplace(z))
    assert clone.kernel_code() is None
    from heckezeros import dh
    r1 = dh.solve_smoothed("sz-lp-principal", clone, 0.02)
    r2 = dh.solve_smoothed("sz-lp-principal", base, 0.02)
    assert r1.lambda_star == pytest.approx(r2.lambda_star, abs=1e-10)
