"""Term-minimization proofs of algebraic independence.

A :class:`MonomialRelation` G = sum_r s_r * y^r stands for a would-be
polynomial relation among eigen-elements y_1..y_m (each y_j satisfies
D_i y_j = lambda_j y_j with constant lambda_j).  One reduction step picks
a pivot r* and replaces G by

    G* = phi(r*) G - D_i(G) = sum_r (phi(r*) - phi(r)) s_r y^r,

where phi(r) = logD_i(s_r) + sum_j r_j lambda_j is the logarithmic
derivative of the whole term.  The pivot term disappears, any term
sharing its functional disappears with it, and G*(y) = 0 whenever
G(y) = 0.  When the functionals are pairwise distinct, iterating shrinks
any support to a single term whose coefficient must vanish; when two
support vectors share a functional, their quotient monomial y^(r2-r1) is
an invariant direction and is surfaced instead.

The series rank check is the independent numerical oracle: rows are the
truncated series of all monomials y^r up to the degree bound, and full
row rank means no relation is detected numerically.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .elements import Element, ONE_ELEMENT, ZERO_ELEMENT
from .errors import SupportTooSmall, TruncationTooShort
from .series import Series
from .tower import SeriesContext, TowerElement, TowerSpec, eval_series, logd

ExponentVector = tuple[int, ...]


class Verdict(Enum):
    NO_NONTRIVIAL_RELATION = "NoNontrivialRelation"
    INVARIANT_MONOMIAL_FOUND = "InvariantMonomialFound"
    DEGENERATE = "Degenerate"


def degree_vectors(m: int, d: int, *, include_zero: bool = True) -> list[ExponentVector]:
    """All exponent vectors of length m with total degree <= d, sorted lex."""
    out: list[ExponentVector] = []

    def rec(prefix: tuple[int, ...], remaining: int):
        if len(prefix) == m:
            out.append(prefix)
            return
        for e in range(remaining + 1):
            rec(prefix + (e,), remaining - e)

    rec((), d)
    out.sort()
    if not include_zero:
        out = [r for r in out if any(r)]
    return out


@dataclass(frozen=True)
class MonomialRelation:
    """G(y) = sum over the support of coefficient * y^exponent."""

    level: int
    variables: tuple[TowerElement, ...]
    coefficients: dict[ExponentVector, Element] = field(compare=False)

    def __post_init__(self):
        if not self.coefficients:
            raise ValueError("support must be nonempty")
        for r, s in self.coefficients.items():
            if len(r) != len(self.variables):
                raise ValueError("exponent vector length does not match the variables")
            if any(e < 0 for e in r):
                raise ValueError("exponents must be nonnegative")
            if s.is_zero():
                raise ValueError("coefficients must be nonzero")

    @property
    def support(self) -> list[ExponentVector]:
        return sorted(self.coefficients)

    def eigenvalues(self, spec: TowerSpec) -> tuple[Element, ...]:
        lams = tuple(logd(v, self.level, spec) for v in self.variables)
        for v, lam in zip(self.variables, lams):
            if not lam.is_constant():
                raise ValueError(f"{v} is not an eigen-element at level {self.level}")
        return lams

    def functionals(self, spec: TowerSpec) -> dict[ExponentVector, Element]:
        """phi(r) = logD_i(s_r) + r . lambda for every support vector."""
        lams = self.eigenvalues(spec)
        out: dict[ExponentVector, Element] = {}
        for r, s in self.coefficients.items():
            phi = ZERO_ELEMENT if s.is_constant() else logd(s, self.level, spec)
            for e, lam in zip(r, lams):
                if e:
                    phi = phi + lam * e
            out[r] = phi
        return out

    def evaluate(self) -> Element:
        """G at its own variables (the relation candidate's value)."""
        total = ZERO_ELEMENT
        for r, s in self.coefficients.items():
            term = s
            for v, e in zip(self.variables, r):
                if e:
                    term = term * v**e
            total = total + term
        return total


def reduce_step(G: MonomialRelation, pivot: ExponentVector, spec: TowerSpec) -> MonomialRelation:
    """One minimization step; the pivot term is eliminated exactly."""
    if len(G.coefficients) < 2:
        raise SupportTooSmall("relation already has a single term")
    if pivot not in G.coefficients:
        raise ValueError(f"pivot {pivot} not in the support")
    phis = G.functionals(spec)
    phi_star = phis[pivot]
    new_coeffs: dict[ExponentVector, Element] = {}
    for r, s in G.coefficients.items():
        if r == pivot:
            continue
        coeff = (phi_star - phis[r]) * s
        if not coeff.is_zero():
            new_coeffs[r] = coeff
    if not new_coeffs:
        raise SupportTooSmall(
            "every remaining functional equals the pivot's; no reduction possible"
        )
    return MonomialRelation(G.level, G.variables, new_coeffs)


@dataclass(frozen=True)
class ReductionStep:
    pivot: ExponentVector
    functionals: dict[ExponentVector, Element] = field(compare=False)
    eliminated_term: ExponentVector = ()
    remaining_support: tuple[ExponentVector, ...] = ()
    result: MonomialRelation | None = field(default=None, compare=False)


@dataclass(frozen=True)
class ReductionTrace:
    """Certified log of a reduction run, replayable step by step."""

    initial: MonomialRelation
    steps: tuple[ReductionStep, ...]
    verdict: Verdict
    invariant_exponent: ExponentVector | None = None
    invariant_element: Element | None = None
    colliding_pair: tuple[ExponentVector, ExponentVector] | None = None

    def replay(self, spec: TowerSpec) -> bool:
        """Re-execute every step and compare the stored intermediates exactly."""
        current = self.initial
        for step in self.steps:
            if step.pivot not in current.coefficients:
                return False
            if current.functionals(spec) != step.functionals:
                return False
            current = reduce_step(current, step.pivot, spec)
            if step.result is None or current.coefficients != step.result.coefficients:
                return False
            if tuple(current.support) != step.remaining_support:
                return False
        return True

    def to_json(self) -> str:
        doc = {
            "verdict": self.verdict.value,
            "initial_support": [list(r) for r in self.initial.support],
            "variables": [str(v) for v in self.initial.variables],
            "level": self.initial.level,
            "steps": [
                {
                    "pivot": list(s.pivot),
                    "functionals": {
                        ",".join(map(str, r)): str(phi) for r, phi in sorted(s.functionals.items())
                    },
                    "eliminated_term": list(s.eliminated_term),
                    "remaining_support": [list(r) for r in s.remaining_support],
                }
                for s in self.steps
            ],
        }
        if self.invariant_exponent is not None:
            doc["invariant_exponent"] = list(self.invariant_exponent)
            doc["invariant_element"] = str(self.invariant_element)
        if self.colliding_pair is not None:
            doc["colliding_pair"] = [list(r) for r in self.colliding_pair]
        return json.dumps(doc, sort_keys=True)


def run_reduction(G: MonomialRelation, spec: TowerSpec) -> ReductionTrace:
    """Iterate reduce_step with the lex-least pivot until a verdict."""
    steps: list[ReductionStep] = []
    current = G
    while True:
        if len(current.coefficients) == 1:
            return ReductionTrace(G, tuple(steps), Verdict.NO_NONTRIVIAL_RELATION)
        phis = current.functionals(spec)
        collision = _find_collision(phis)
        if collision is not None:
            r1, r2 = collision
            h = invariant_monomial(current, r1, r2, spec)
            diff = tuple(b - a for a, b in zip(r1, r2))
            return ReductionTrace(
                G,
                tuple(steps),
                Verdict.INVARIANT_MONOMIAL_FOUND,
                invariant_exponent=diff,
                invariant_element=h,
                colliding_pair=(r1, r2),
            )
        pivot = min(current.coefficients)
        nxt = reduce_step(current, pivot, spec)
        steps.append(
            ReductionStep(
                pivot=pivot,
                functionals=phis,
                eliminated_term=pivot,
                remaining_support=tuple(nxt.support),
                result=nxt,
            )
        )
        current = nxt


def _find_collision(
    phis: dict[ExponentVector, Element],
) -> tuple[ExponentVector, ExponentVector] | None:
    seen: dict[Element, ExponentVector] = {}
    for r in sorted(phis):
        phi = phis[r]
        if phi in seen:
            return seen[phi], r
        seen[phi] = r
    return None


def certify_independence(
    variables: list[TowerElement],
    degree_bound: int,
    spec: TowerSpec,
    *,
    level: int | None = None,
) -> ReductionTrace:
    """Certify that no nonzero constant-coefficient polynomial relation of
    total degree <= degree_bound holds among the eigen-elements.

    The certificate reduces the full generic support; pairwise-distinct
    functionals guarantee every sub-support collapses the same way.  If two
    distinct exponent vectors share a functional value the verdict is
    Degenerate (dependent eigenvalues were supplied).
    """
    if not variables or degree_bound < 1:
        raise ValueError("need at least one variable and degree bound >= 1")
    if level is None:
        level = _infer_level(variables)
    m = len(variables)
    full = {
        r: ONE_ELEMENT for r in degree_vectors(m, degree_bound, include_zero=False)
    }
    generic = MonomialRelation(level, tuple(variables), full)
    lams = generic.eigenvalues(spec)
    phi_all: dict[ExponentVector, Element] = {}
    for r in degree_vectors(m, degree_bound, include_zero=True):
        phi = ZERO_ELEMENT
        for e, lam in zip(r, lams):
            if e:
                phi = phi + lam * e
        phi_all[r] = phi
    collision = _find_collision(phi_all)
    if collision is not None:
        return ReductionTrace(
            generic, (), Verdict.DEGENERATE, colliding_pair=collision
        )
    trace = run_reduction(generic, spec)
    assert trace.verdict is Verdict.NO_NONTRIVIAL_RELATION
    return trace


def _infer_level(variables: list[TowerElement]) -> int:
    levels = {v[1] for x in variables for v in x.variables() if v[0] == "b"}
    if not levels:
        return 1
    return max(levels)


def invariant_monomial(
    G: MonomialRelation, r1: ExponentVector, r2: ExponentVector, spec: TowerSpec
) -> TowerElement:
    """The direction y^(r2-r1) whose logarithmic derivative is (r2-r1).lambda."""
    if r1 == r2:
        raise ValueError("r1 and r2 must differ")
    h = ONE_ELEMENT
    for v, e1, e2 in zip(G.variables, r1, r2):
        if e2 != e1:
            h = h * v ** (e2 - e1)
    lams = G.eigenvalues(spec)
    expected = ZERO_ELEMENT
    for lam, e1, e2 in zip(lams, r1, r2):
        if e2 != e1:
            expected = expected + lam * (e2 - e1)
    actual = logd(h, G.level, spec)
    assert actual == expected, "invariant monomial fails its defining identity"
    return h


@dataclass(frozen=True)
class RankReport:
    """Outcome of the numerical rank oracle."""

    rows: int
    order: int
    smallest_singular_value: float
    rank: int
    threshold: float = 1e-6

    @property
    def full_rank(self) -> bool:
        return self.rank == self.rows


def series_rank_check(
    variables: list[TowerElement],
    degree_bound: int,
    ctx: SeriesContext,
    spec: TowerSpec,
) -> RankReport:
    """Numerical independence oracle over all monomials of degree <= bound.

    Rows are unit-normalized truncated series of the monomials (constant
    monomial included); the report carries the smallest singular value and
    the rank at the 1e-6 threshold.
    """
    vectors = degree_vectors(len(variables), degree_bound, include_zero=True)
    if len(vectors) > ctx.order:
        raise TruncationTooShort(
            f"{len(vectors)} monomials exceed the truncation order {ctx.order}"
        )
    var_series = [eval_series(v, ctx, spec) for v in variables]
    rows = []
    for r in vectors:
        row = None
        for s, e in zip(var_series, r):
            if e:
                p = s**e
                row = p if row is None else row * p
        if row is None:
            row = Series.const(1.0, ctx.order)
        rows.append(row.coeffs)
    matrix = np.array(rows)
    norms = np.linalg.norm(matrix, axis=1)
    norms[norms == 0.0] = 1.0
    matrix = matrix / norms[:, None]
    singular = np.linalg.svd(matrix, compute_uv=False)
    threshold = 1e-6
    rank = int(np.sum(singular > threshold))
    return RankReport(
        rows=len(vectors),
        order=ctx.order,
        smallest_singular_value=float(singular[-1]),
        rank=rank,
        threshold=threshold,
    )


def agreement(
    variables: list[TowerElement],
    degree_bound: int,
    ctx: SeriesContext,
    spec: TowerSpec,
) -> tuple[ReductionTrace, RankReport, bool]:
    """Run both routes and report whether their verdicts agree."""
    trace = certify_independence(variables, degree_bound, spec)
    report = series_rank_check(variables, degree_bound, ctx, spec)
    symbolic_independent = trace.verdict is Verdict.NO_NONTRIVIAL_RELATION
    return trace, report, symbolic_independent == report.full_rank


__all__ = [
    "ExponentVector",
    "MonomialRelation",
    "RankReport",
    "ReductionStep",
    "ReductionTrace",
    "Verdict",
    "agreement",
    "certify_independence",
    "degree_vectors",
    "invariant_monomial",
    "reduce_step",
    "run_reduction",
    "series_rank_check",
]
