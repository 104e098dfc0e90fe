"""Grid pregeometry: closure, rank, internality, analyses, constructions."""

import random

import pytest

from deltatower import (
    Analysis,
    GridModel,
    NotMonotone,
    analysis_by_coreductions,
    analysis_by_reductions,
    build_seqred_a,
    build_seqred_b,
    closure,
    coreduction,
    internal,
    is_canonical,
    is_incompressible,
    is_minimal,
    reduction,
    urank,
)
from deltatower.grid import dump_scenario, enumerate_analyses, load_scenario

G22 = GridModel(2, 2)
EMPTY = frozenset()


def cells(*pairs):
    return frozenset(pairs)


class TestClosure:
    def test_column_chain(self):
        g = GridModel(3, 1)
        assert closure(cells((3, 1)), g) == cells((1, 1), (2, 1), (3, 1))

    def test_empty(self):
        assert closure(EMPTY, G22) == EMPTY

    def test_mixed_columns(self):
        assert closure(cells((2, 1), (1, 2)), G22) == cells((1, 1), (2, 1), (1, 2))

    def test_axioms_exhaustively_small(self):
        g = GridModel(2, 2)
        all_cells = g.all_cells()
        subsets = []
        for mask in range(1 << len(all_cells)):
            subsets.append(frozenset(c for k, c in enumerate(all_cells) if mask >> k & 1))
        for S in subsets:
            cl = closure(S, g)
            assert S <= cl and closure(cl, g) == cl
        rng = random.Random(0)
        for _ in range(50):
            a, b = rng.choice(subsets), rng.choice(subsets)
            assert closure(a, g) <= closure(a | b, g)

    def test_out_of_bounds(self):
        with pytest.raises(ValueError):
            closure(cells((3, 1)), G22)


class TestUrank:
    def test_column_depth(self):
        for n in range(1, 5):
            g = GridModel(n, 1)
            assert urank(cells((n, 1)), EMPTY, g) == n

    def test_over_self(self):
        S = cells((2, 1))
        assert urank(S, S, G22) == 0

    def test_additivity_spot(self):
        A, B, T = cells((2, 1)), cells((1, 2)), cells((1, 1))
        lhs = urank(A | B, T, G22)
        rhs = urank(A, T | B, G22) + urank(B, T, G22)
        assert lhs == rhs


class TestInternal:
    def test_row_one_is_internal(self):
        assert internal(cells((1, 2)), EMPTY, G22)

    def test_depth_two_is_not(self):
        assert not internal(cells((2, 1)), EMPTY, G22)

    def test_one_step_above_base(self):
        g = GridModel(3, 1)
        assert internal(cells((3, 1)), cells((2, 1)), g)


class TestReduction:
    def test_example_pair(self):
        S = cells((2, 1), (1, 2))
        assert reduction(S, EMPTY, G22) == cells((1, 1), (1, 2))

    def test_internal_set_is_a_fixed_point(self):
        S = cells((1, 1), (1, 2))
        assert reduction(S, EMPTY, G22) == closure(S, G22)

    def test_deep_column_keeps_only_the_base_row(self):
        g = GridModel(3, 1)
        assert reduction(cells((3, 1)), EMPTY, g) == cells((1, 1))


class TestCoreduction:
    def test_example_pair(self):
        S = cells((2, 1), (1, 2))
        assert coreduction(S, EMPTY, G22) == cells((1, 1))

    def test_column_drops_one_level(self):
        g = GridModel(4, 1)
        for i in (1, 2, 3, 4):
            expected = frozenset((k, 1) for k in range(1, i))
            assert coreduction(cells((i, 1)), EMPTY, g) == expected

    def test_internal_needs_no_witness(self):
        assert coreduction(cells((1, 1)), EMPTY, G22) == EMPTY


class TestAnalyses:
    def test_section_example_reductions(self):
        S = cells((2, 1), (1, 2))
        a = analysis_by_reductions(S, EMPTY, G22)
        a.validate()
        assert a.utype() == (2, 1)
        assert a.steps[0] == cells((1, 1), (1, 2))

    def test_section_example_coreductions(self):
        S = cells((2, 1), (1, 2))
        a = analysis_by_coreductions(S, EMPTY, G22)
        a.validate()
        assert a.utype() == (1, 2)
        assert a.steps[0] == cells((1, 1))

    def test_example_analyses_not_interalgebraic_no_canonical(self):
        S = cells((2, 1), (1, 2))
        ar = analysis_by_reductions(S, EMPTY, G22)
        ac = analysis_by_coreductions(S, EMPTY, G22)
        assert ar.step_heights() != ac.step_heights()
        assert is_minimal(ar, G22) and is_minimal(ac, G22)
        assert not is_canonical(ar, G22) and not is_canonical(ac, G22)

    def test_single_column_chain(self):
        g = GridModel(3, 1)
        S = cells((3, 1))
        ar = analysis_by_reductions(S, EMPTY, g)
        ac = analysis_by_coreductions(S, EMPTY, g)
        assert ar.utype() == ac.utype() == (1, 1, 1)
        assert ar.step_heights() == ac.step_heights()
        assert is_canonical(ar, g)
        assert is_incompressible(ar)

    def test_internal_target_single_step(self):
        S = cells((1, 1), (1, 2))
        a = analysis_by_reductions(S, EMPTY, G22)
        assert a.length == 1 and a.utype() == (2,)

    def test_trivial_target_empty_analysis(self):
        a = analysis_by_reductions(EMPTY, cells((1, 1)), G22)
        assert a.length == 0
        a.validate()
        assert is_minimal(a, G22)

    def test_staircase_incompressible_but_not_minimal(self):
        target = cells((2, 1), (2, 2))
        steps = (
            cells((1, 1)),
            cells((2, 1), (1, 2)),
            cells((2, 1), (2, 2)),
        )
        a = Analysis(G22, EMPTY, closure(target, G22), steps)
        a.validate()
        assert a.utype() == (1, 2, 1)
        assert is_incompressible(a)
        assert not is_minimal(a, G22)

    def test_depth_n_column_minimal_length(self):
        for n in range(1, 5):
            g = GridModel(n, 1)
            S = cells((n, 1))
            found = {
                a.length
                for a in enumerate_analyses(S, EMPTY, g, max_length=n)
            }
            assert min(found) == n  # nothing shorter exists

    def test_validate_rejects_non_internal_steps(self):
        g = GridModel(2, 1)
        bad = Analysis(g, EMPTY, cells((2, 1)), (cells((2, 1)),))
        with pytest.raises(ValueError):
            bad.validate()

    def test_closure_invariance_of_analyses(self):
        # analyses depend only on the closures of base and target
        g = GridModel(3, 2)
        S, T = cells((3, 1), (1, 2)), cells((1, 1))
        ar1 = analysis_by_reductions(S, T, g)
        ar2 = analysis_by_reductions(closure(S, g), closure(T, g), g)
        assert ar1.step_heights() == ar2.step_heights()
        ac1 = analysis_by_coreductions(S, T, g)
        ac2 = analysis_by_coreductions(closure(S, g), closure(T, g), g)
        assert ac1.step_heights() == ac2.step_heights()


class TestSeqred:
    def test_nonincreasing_staircase(self):
        g, target = build_seqred_a((3, 2, 1))
        assert (g.depth, g.columns) == (3, 3)
        assert target == cells((1, 1), (1, 2), (1, 3), (2, 1), (2, 2), (3, 1))
        a = analysis_by_reductions(target, EMPTY, g)
        assert a.utype() == (3, 2, 1)

    def test_nondecreasing_staircase(self):
        g, target = build_seqred_b((1, 2, 3))
        assert (g.depth, g.columns) == (3, 3)
        assert target == cells((3, 1), (2, 2), (1, 3))
        a = analysis_by_coreductions(target, EMPTY, g)
        assert a.utype() == (1, 2, 3)

    def test_constant_sequence_works_both_ways(self):
        ga, ta = build_seqred_a((2, 2))
        gb, tb = build_seqred_b((2, 2))
        assert analysis_by_reductions(ta, EMPTY, ga).utype() == (2, 2)
        assert analysis_by_coreductions(tb, EMPTY, gb).utype() == (2, 2)

    def test_monotonicity_enforced(self):
        with pytest.raises(NotMonotone):
            build_seqred_a((1, 2))
        with pytest.raises(NotMonotone):
            build_seqred_b((2, 1))
        with pytest.raises(NotMonotone):
            build_seqred_a((0, 0))

    @pytest.mark.parametrize(
        "s", [(1,), (4,), (2, 1), (3, 3), (2, 2, 1), (4, 2, 1), (1, 1, 1, 1)]
    )
    def test_reduction_utypes_match(self, s):
        g, target = build_seqred_a(s)
        assert analysis_by_reductions(target, EMPTY, g).utype() == s

    @pytest.mark.parametrize(
        "s", [(1,), (4,), (1, 2), (3, 3), (1, 2, 2), (1, 2, 4), (1, 1, 1, 1)]
    )
    def test_coreduction_utypes_match(self, s):
        g, target = build_seqred_b(s)
        assert analysis_by_coreductions(target, EMPTY, g).utype() == s


class TestScenarioIO:
    def test_roundtrip(self):
        g = GridModel(2, 3)
        base = cells((1, 1))
        target = cells((2, 2), (1, 3))
        text = dump_scenario(g, base, target)
        g2, b2, t2 = load_scenario(text)
        assert (g2.depth, g2.columns) == (2, 3)
        assert b2 == base and t2 == target
        assert dump_scenario(g2, b2, t2) == text

    def test_rejects_out_of_bounds(self):
        with pytest.raises(ValueError):
            load_scenario('{"depth": 2, "columns": 2, "base": [], "target": [[3, 1]]}')
