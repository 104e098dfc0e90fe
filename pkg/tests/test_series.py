"""The numerical oracle: series arithmetic and the element interpretation."""

import math
import random

import numpy as np
import pytest

from deltatower import NonInvertibleSeries, Series, build_spec, derive, eval_series, logd
from deltatower.series import residual
from deltatower.tower import SeriesContext, delta_consistency_residual, random_element

SPEC = build_spec((2, 1))


class TestSeriesArithmetic:
    def test_mul_by_known_product(self):
        # exp(t)*exp(t) = exp(2t)
        e = Series([1 / math.factorial(k) for k in range(8)])
        prod = e * e
        expected = [2**k / math.factorial(k) for k in range(8)]
        assert np.allclose(prod.coeffs, expected, atol=1e-14)

    def test_div_inverts_mul(self):
        rng = random.Random(0)
        a = Series([rng.uniform(-1, 1) for _ in range(10)])
        b = Series([rng.uniform(0.5, 1.5)] + [rng.uniform(-1, 1) for _ in range(9)])
        assert np.allclose(((a * b) / b).coeffs, a.coeffs, atol=1e-10)

    def test_div_by_zero_constant_term(self):
        with pytest.raises(NonInvertibleSeries):
            Series([1.0, 0.0]) / Series([0.0, 1.0])

    def test_exp_of_t(self):
        s = Series.t(6).exp()
        assert np.allclose(s.coeffs, [1 / math.factorial(k) for k in range(6)])

    def test_exp_with_nonzero_constant_term(self):
        s = (Series.const(1.0, 6) + Series.t(6)).exp()
        assert np.allclose(s.coeffs, [math.e / math.factorial(k) for k in range(6)])

    def test_deriv_integ_are_inverse(self):
        rng = random.Random(1)
        a = Series([rng.uniform(-1, 1) for _ in range(9)])
        back = a.integ().deriv()
        assert np.allclose(back.coeffs, a.coeffs[: len(back)], atol=1e-14)

    def test_pow_negative(self):
        s = Series([2.0, 1.0, 0.5, 0.25])
        assert np.allclose((s**-2 * s * s).coeffs, [1, 0, 0, 0], atol=1e-12)


class TestEvalSeries:
    def test_level_one_generator_is_exp(self):
        ctx = SeriesContext.default(SPEC, order=4)  # c11 -> 2
        s = eval_series(SPEC.generator(1, 1), ctx, SPEC)
        assert np.allclose(s.coeffs, [1.0, 2.0, 2.0, 4.0 / 3.0])

    def test_logd_of_generator_is_constant_series(self):
        ctx = SeriesContext.default(SPEC, order=6)
        s = eval_series(logd(SPEC.generator(1, 1), 1, SPEC), ctx, SPEC)
        assert np.allclose(s.coeffs, [2.0, 0, 0, 0, 0, 0], atol=1e-12)

    def test_level_two_satisfies_its_equation(self):
        # delta b21 = c21 * b21 * e1 numerically
        ctx = SeriesContext.default(SPEC, order=12)
        b21 = SPEC.generator(2, 1)
        lhs = eval_series(b21, ctx, SPEC).deriv()
        rhs = eval_series(derive(b21, SPEC), ctx, SPEC)
        assert residual(lhs, rhs) < 1e-9

    def test_spec_assignments_drive_the_default_context(self):
        from deltatower import TowerSpec

        spec = TowerSpec(ranks=(1,), assignments=(("c[1][1]", "3"),))
        ctx = SeriesContext.default(spec, order=4)
        s = eval_series(spec.generator(1, 1), ctx, spec)
        assert np.allclose(s.coeffs, [1.0, 3.0, 4.5, 4.5])  # exp(3t)

    def test_initial_values_scale_generators(self):
        ctx = SeriesContext(
            order=4,
            values=SeriesContext.default(SPEC).values,
            initial=((("b", 1, 1), 3.0),),
        )
        s = eval_series(SPEC.generator(1, 1), ctx, SPEC)
        assert np.allclose(s.coeffs, [3.0, 6.0, 6.0, 4.0])

    def test_non_invertible_denominator(self):
        ctx = SeriesContext.default(SPEC, order=6)
        x = 1 / (SPEC.generator(1, 1) - SPEC.generator(1, 2))
        with pytest.raises(NonInvertibleSeries):
            eval_series(x, ctx, SPEC)

    def test_context_validation(self):
        with pytest.raises(ValueError):
            SeriesContext(order=1, values=())
        with pytest.raises(ValueError):
            SeriesContext(
                order=4, values=((("c", 1, 1), 2.0), (("c", 1, 2), 2.0))
            )

    @pytest.mark.parametrize("seed", range(20))
    def test_derive_commutes_with_series(self, seed):
        rng = random.Random(seed)
        spec = build_spec((2, 2))
        ctx = SeriesContext.default(spec, order=12)
        x = random_element(rng, spec)
        assert delta_consistency_residual(x, ctx, spec) < 1e-9
