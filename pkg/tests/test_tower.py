"""Derivations on the tower: eigen-equations, Leibniz, logd, iterates."""

import random

import pytest

from deltatower import (
    DomainViolation,
    LevelOutOfRange,
    LogOfZero,
    TowerSpec,
    build_spec,
    d_twist,
    derive,
    logd,
    logd_iter,
)
from deltatower.constants import scale_symbol
from deltatower.elements import ZERO_ELEMENT
from deltatower.tower import random_element

SPEC = build_spec((2, 2, 1))
B11 = SPEC.generator(1, 1)
B12 = SPEC.generator(1, 2)
B21 = SPEC.generator(2, 1)
C11 = SPEC.symbol(1, 1).expr()
C12 = SPEC.symbol(1, 2).expr()
C21 = SPEC.symbol(2, 1).expr()


class TestDerive:
    def test_level_one_eigen_equation(self):
        assert derive(B11, SPEC) == C11 * B11

    def test_level_two_unwinds_the_twist(self):
        assert derive(B21, SPEC) == C21 * B21 * (B11 + B12)

    def test_constants_are_killed(self):
        assert derive(C11, SPEC).is_zero()
        assert derive(scale_symbol(1, 1), SPEC).is_zero()

    @pytest.mark.parametrize("seed", range(10))
    def test_leibniz_rule(self, seed):
        rng = random.Random(seed)
        x, y = random_element(rng, SPEC), random_element(rng, SPEC)
        lhs = derive(x * y, SPEC)
        rhs = x * derive(y, SPEC) + y * derive(x, SPEC)
        assert lhs == rhs

    @pytest.mark.parametrize("seed", range(5))
    def test_quotient_rule(self, seed):
        rng = random.Random(seed)
        x, y = random_element(rng, SPEC), random_element(rng, SPEC)
        if y.is_zero():
            return
        lhs = derive(x / y, SPEC)
        rhs = (derive(x, SPEC) * y - x * derive(y, SPEC)) / (y * y)
        assert lhs == rhs

    def test_additive(self):
        rng = random.Random(3)
        x, y = random_element(rng, SPEC), random_element(rng, SPEC)
        assert derive(x + y, SPEC) == derive(x, SPEC) + derive(y, SPEC)


class TestDTwist:
    def test_generators_are_eigenvectors(self):
        assert d_twist(B21, 2, SPEC) == C21 * B21
        assert d_twist(SPEC.generator(3, 1), 3, SPEC) == SPEC.symbol(3, 1).expr() * SPEC.generator(3, 1)

    def test_level_one_is_the_plain_derivation(self):
        rng = random.Random(1)
        x = random_element(rng, SPEC)
        assert d_twist(x, 1, SPEC) == derive(x, SPEC)

    def test_kills_constants(self):
        for i in (1, 2, 3):
            assert d_twist(C11, i, SPEC).is_zero()

    @pytest.mark.parametrize("seed", range(6))
    def test_scaled_derivation_is_a_derivation(self, seed):
        rng = random.Random(seed)
        i = rng.randint(1, 3)
        x, y = random_element(rng, SPEC), random_element(rng, SPEC)
        lhs = d_twist(x * y, i, SPEC)
        rhs = x * d_twist(y, i, SPEC) + y * d_twist(x, i, SPEC)
        assert lhs == rhs

    def test_level_out_of_range(self):
        with pytest.raises(LevelOutOfRange):
            d_twist(B11, 4, SPEC)

    def test_no_new_constants_on_generator_monomials(self):
        # nonzero exponent vectors give nonzero log-derivatives
        rng = random.Random(7)
        for _ in range(20):
            m = B11 ** rng.randint(0, 2) * B12 ** rng.randint(0, 2) * B21 ** rng.randint(0, 2)
            if m.is_one():
                continue
            i = rng.randint(1, 3)
            assert not d_twist(m, i, SPEC).is_zero()


class TestLogd:
    def test_products_become_sums(self):
        assert logd(B11 * B12, 1, SPEC) == C11 + C12

    def test_power_rule(self):
        assert logd(B11**5, 1, SPEC) == 5 * C11

    def test_quotients_become_differences(self):
        value = logd(B11 / B12, 1, SPEC)
        assert value == C11 - C12
        # re-check through the quotient rule: logd(x) + logd(y) = logd(x*y)
        assert value + logd(B12, 1, SPEC) == logd(B11, 1, SPEC)

    def test_level_two_eigenvalue(self):
        assert logd(B21, 2, SPEC) == C21

    def test_log_of_zero(self):
        with pytest.raises(LogOfZero):
            logd(ZERO_ELEMENT, 1, SPEC)

    @pytest.mark.parametrize("seed", range(6))
    def test_multiplicativity_where_defined(self, seed):
        rng = random.Random(seed)
        x, y = random_element(rng, SPEC), random_element(rng, SPEC)
        if x.is_zero() or y.is_zero():
            return
        i = rng.randint(1, 3)
        assert logd(x * y, i, SPEC) == logd(x, i, SPEC) + logd(y, i, SPEC)


class TestLogdIter:
    def test_single_application(self):
        assert logd_iter(B11, 1, SPEC) == C11

    def test_second_iterate_is_zero(self):
        # logd(b11) = c11, a nonzero constant, so the next step gives 0
        assert logd_iter(B11, 2, SPEC).is_zero()

    def test_third_iterate_leaves_the_domain(self):
        with pytest.raises(DomainViolation) as info:
            logd_iter(B11, 3, SPEC)
        assert info.value.index == 2

    def test_zero_input(self):
        with pytest.raises(DomainViolation) as info:
            logd_iter(ZERO_ELEMENT, 1, SPEC)
        assert info.value.index == 0


class TestTowerSpec:
    def test_e_is_the_generator_sum(self):
        assert SPEC.e(1) == B11 + B12
        assert SPEC.e(2) == B21 + SPEC.generator(2, 2)

    def test_json_roundtrip(self):
        spec = TowerSpec(ranks=(2, 1), assignments=(("c[1][1]", "2"), ("c[1][2]", "3.5")))
        again = TowerSpec.from_json(spec.to_json())
        assert again.ranks == spec.ranks
        assert again.assignments == spec.assignments
        assert again.to_json() == spec.to_json()

    def test_json_rejects_inconsistent_ell(self):
        with pytest.raises(ValueError):
            TowerSpec.from_json('{"ell": 3, "ranks": [2, 1]}')

    def test_bad_ranks(self):
        with pytest.raises(ValueError):
            build_spec((0, 1))
        with pytest.raises(ValueError):
            build_spec(())

    def test_index_bounds(self):
        with pytest.raises(LevelOutOfRange):
            SPEC.generator(1, 3)
        with pytest.raises(LevelOutOfRange):
            SPEC.symbol(4, 1)
