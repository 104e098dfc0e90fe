"""Differential field towers with eigen-generators.

A :class:`TowerSpec` fixes levels 1..l with ranks (n_1, ..., n_l).  Level i
has generators b[i][1..n_i] and eigenvalue symbols c[i][1..n_i]; the
derivation acts by

    delta b[i][j] = c[i][j] * b[i][j] * prod_{k<i} e_k,    e_k = sum_j b[k][j],

extended to the whole rational-function field by linearity, Leibniz and
the quotient rule.  The twisted derivation D_i divides delta by
prod_{k<i} e_k, so the level-i generators are D_i-eigenvectors with
eigenvalue c[i][j].  The logarithmic derivative with respect to D_i is
D_i(x)/x.

A :class:`SeriesContext` interprets the same data numerically: delta
becomes d/dt, level-1 generators become truncated exponentials and higher
generators integrate the product of the lower e_k before exponentiating.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from fractions import Fraction

from .constants import ConstSymbol
from .elements import Element, ONE_ELEMENT
from .errors import LevelOutOfRange, LogOfZero, DomainViolation
from .polyring import Poly, Var, var_b, var_name
from .series import Series, residual as series_residual

TowerElement = Element

_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61)


@dataclass(frozen=True)
class TowerSpec:
    """Index data of a tower: ranks (n_1, ..., n_l), plus optional numeric
    assignments for the eigenvalue symbols (decimal strings keyed by name)."""

    ranks: tuple[int, ...]
    assignments: tuple[tuple[str, str], ...] = ()
    _caches: dict = field(default_factory=dict, compare=False, repr=False, hash=False)

    def __post_init__(self):
        if not self.ranks or any(n < 1 for n in self.ranks):
            raise ValueError("ranks must be a nonempty sequence of positive integers")
        object.__setattr__(self, "ranks", tuple(int(n) for n in self.ranks))

    @property
    def ell(self) -> int:
        return len(self.ranks)

    def check_level(self, i: int) -> None:
        if not 1 <= i <= self.ell:
            raise LevelOutOfRange(f"level {i} outside 1..{self.ell}")

    def rank(self, i: int) -> int:
        self.check_level(i)
        return self.ranks[i - 1]

    def symbol(self, i: int, j: int) -> ConstSymbol:
        self.check_level(i)
        if not 1 <= j <= self.ranks[i - 1]:
            raise LevelOutOfRange(f"index {j} outside 1..{self.ranks[i - 1]} at level {i}")
        return ConstSymbol(i, j)

    def symbols(self, i: int) -> list[ConstSymbol]:
        self.check_level(i)
        return [ConstSymbol(i, j) for j in range(1, self.ranks[i - 1] + 1)]

    def all_symbols(self) -> list[ConstSymbol]:
        return [s for i in range(1, self.ell + 1) for s in self.symbols(i)]

    def generator_var(self, i: int, j: int) -> Var:
        self.check_level(i)
        if not 1 <= j <= self.ranks[i - 1]:
            raise LevelOutOfRange(f"index {j} outside 1..{self.ranks[i - 1]} at level {i}")
        return var_b(i, j)

    def generator(self, i: int, j: int) -> TowerElement:
        return Element.from_var(self.generator_var(i, j))

    def generators(self, i: int) -> list[TowerElement]:
        self.check_level(i)
        return [self.generator(i, j) for j in range(1, self.ranks[i - 1] + 1)]

    def e(self, i: int) -> TowerElement:
        """The level-i solution e_i = sum_j b[i][j]."""
        self.check_level(i)
        key = ("e", i)
        if key not in self._caches:
            total = Poly()
            for j in range(1, self.ranks[i - 1] + 1):
                total = total + Poly.variable(var_b(i, j))
            self._caches[key] = Element(total)
        return self._caches[key]

    def prod_e_below(self, i: int) -> TowerElement:
        """prod_{k<i} e_k (the twist divisor of D_i); 1 for i = 1."""
        self.check_level(i)
        key = ("prod_e", i)
        if key not in self._caches:
            out = ONE_ELEMENT
            for k in range(1, i):
                out = out * self.e(k)
            self._caches[key] = out
        return self._caches[key]

    def _delta_var(self, v: Var) -> Poly:
        key = ("delta", v)
        if key not in self._caches:
            kind, i, j = v
            if kind != "b":
                self._caches[key] = Poly()
            else:
                p = Poly.variable(("c", i, j)) * Poly.variable(v)
                p = p * self.prod_e_below(i).num  # prod of e_k is a polynomial
                self._caches[key] = p
        return self._caches[key]

    # --- serialization ----------------------------------------------------

    def to_json(self) -> str:
        doc = {"ell": self.ell, "ranks": list(self.ranks)}
        if self.assignments:
            doc["assignments"] = dict(self.assignments)
        return json.dumps(doc, sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "TowerSpec":
        doc = json.loads(text)
        ranks = tuple(int(n) for n in doc["ranks"])
        if "ell" in doc and int(doc["ell"]) != len(ranks):
            raise ValueError("ell does not match the number of ranks")
        assignments = tuple(sorted((str(k), str(v)) for k, v in doc.get("assignments", {}).items()))
        return cls(ranks=ranks, assignments=assignments)


def build_spec(utype: tuple[int, ...] | list[int]) -> TowerSpec:
    """Tower whose canonical analysis should have the given U-type."""
    return TowerSpec(ranks=tuple(utype))


# --- derivations ----------------------------------------------------------


def _derive_poly(p: Poly, spec: TowerSpec) -> Poly:
    out = Poly()
    for m, coeff in p.terms.items():
        for v, e in m:
            if v[0] != "b":
                continue
            dv = spec._delta_var(v)
            if dv.is_zero():
                continue
            rest = tuple((w, we) for w, we in m if w != v)
            if e > 1:
                rest = tuple(sorted(rest + ((v, e - 1),)))
            out = out + dv.mul_term(rest, coeff * e)
    return out


def derive(x: TowerElement, spec: TowerSpec) -> TowerElement:
    """delta(x), extended from the generators as a derivation."""
    dnum = _derive_poly(x.num, spec)
    if x.den.is_const():
        return Element(dnum, x.den)
    dden = _derive_poly(x.den, spec)
    return Element(dnum * x.den - x.num * dden, x.den * x.den)


def d_twist(x: TowerElement, i: int, spec: TowerSpec) -> TowerElement:
    """The twisted derivation D_i = delta / prod_{k<i} e_k."""
    spec.check_level(i)
    return derive(x, spec) / spec.prod_e_below(i)


def logd(x: TowerElement, i: int, spec: TowerSpec) -> TowerElement:
    """Logarithmic derivative D_i(x)/x; undefined at zero."""
    if x.is_zero():
        raise LogOfZero("logarithmic derivative of zero")
    return d_twist(x, i, spec) / x


def logd_iter(x: TowerElement, m: int, spec: TowerSpec) -> TowerElement:
    """m-fold iterate of logd at level 1.

    Defined only while every earlier iterate is nonzero; DomainViolation
    reports the first index i with the i-th iterate equal to zero.
    """
    if m < 1:
        raise ValueError("iteration count must be >= 1")
    current = x
    for i in range(m):
        if current.is_zero():
            raise DomainViolation(i)
        current = logd(current, 1, spec)
    return current


# --- numerical interpretation ---------------------------------------------


@dataclass(frozen=True)
class SeriesContext:
    """Numeric interpretation: truncation order, symbol values, initial values.

    ``values`` assigns reals to constant symbols; within each level the
    assigned values must be pairwise distinct.  ``initial`` optionally
    overrides the value at t=0 of individual generators (default 1).
    """

    order: int
    values: tuple[tuple[Var, float], ...]
    initial: tuple[tuple[Var, float], ...] = ()

    def __post_init__(self):
        if self.order < 2:
            raise ValueError("truncation order must be >= 2")
        by_level: dict[int, list[float]] = {}
        for (kind, level, _), val in self.values:
            if kind == "c":
                by_level.setdefault(level, []).append(val)
        for level, vals in by_level.items():
            if len(set(vals)) != len(vals):
                raise ValueError(f"assigned values at level {level} are not pairwise distinct")

    @classmethod
    def default(cls, spec: TowerSpec, order: int = 16) -> "SeriesContext":
        """Primes 2, 3, 5, ... assigned to the symbols in index order, unless
        the spec carries explicit assignments."""
        explicit = dict(spec.assignments)
        values = []
        for k, sym in enumerate(spec.all_symbols()):
            if sym.name in explicit:
                values.append((sym.var, float(Fraction(explicit[sym.name]))))
            else:
                values.append((sym.var, float(_PRIMES[k % len(_PRIMES)])))
        return cls(order=order, values=tuple(values))

    def value_map(self) -> dict[Var, float]:
        return dict(self.values)

    def initial_map(self) -> dict[Var, float]:
        return dict(self.initial)


def generator_series(ctx: SeriesContext, spec: TowerSpec) -> dict[Var, Series]:
    """Series for every generator: b[1][j] -> v*exp(c t) and, above level 1,
    b[i][j] -> v*exp(c * integral of prod_{k<i} e_k)."""
    values = ctx.value_map()
    initial = ctx.initial_map()
    out: dict[Var, Series] = {}
    accumulated: Series | None = None  # prod_{k<i} e_k as a series
    for i in range(1, spec.ell + 1):
        if i == 1:
            phase = Series.t(ctx.order)
        else:
            phase = accumulated.integ()  # type: ignore[union-attr]
        level_sum = Series.zero(ctx.order)
        for j in range(1, spec.rank(i) + 1):
            v = spec.generator_var(i, j)
            c_hat = values[("c", i, j)]
            v0 = initial.get(v, 1.0)
            s = (phase * c_hat).exp() * v0
            out[v] = s
            level_sum = level_sum + s
        accumulated = level_sum if accumulated is None else accumulated * level_sum
    return out


def _eval_poly(p: Poly, gens: dict[Var, Series], values: dict[Var, float], order: int) -> Series:
    total = Series.zero(order)
    for m, coeff in p.terms.items():
        scalar = float(coeff)
        factor: Series | None = None
        for v, e in m:
            if v[0] == "b":
                s = gens[v] ** e
                factor = s if factor is None else factor * s
            else:
                if v not in values:
                    raise KeyError(f"no numeric value assigned to {var_name(v)}")
                scalar *= values[v] ** e
        term = Series.const(scalar, order) if factor is None else factor * scalar
        total = total + term
    return total


def eval_series(x: TowerElement, ctx: SeriesContext, spec: TowerSpec) -> Series:
    """Interpret an element as a truncated power series in t."""
    gens = generator_series(ctx, spec)
    values = ctx.value_map()
    num = _eval_poly(x.num, gens, values, ctx.order)
    if x.den.is_const():
        return num / float(x.den.const_value())
    den = _eval_poly(x.den, gens, values, ctx.order)
    return num / den


def delta_consistency_residual(x: TowerElement, ctx: SeriesContext, spec: TowerSpec) -> float:
    """Scaled disagreement between eval(derive(x)) and d/dt eval(x) over the
    shared coefficients."""
    symbolic = eval_series(derive(x, spec), ctx, spec)
    numeric = eval_series(x, ctx, spec).deriv()
    return series_residual(symbolic, numeric)


def random_element(
    rng: random.Random,
    spec: TowerSpec,
    *,
    max_terms: int = 3,
    max_factors: int = 2,
    allow_denominator: bool = True,
) -> TowerElement:
    """Random small element; denominators are generator monomials, so series
    evaluation stays invertible."""
    variables: list[Var] = []
    for i in range(1, spec.ell + 1):
        for j in range(1, spec.rank(i) + 1):
            variables.append(("b", i, j))
            variables.append(("c", i, j))
    num = Poly()
    for _ in range(rng.randint(1, max_terms)):
        coeff = Fraction(rng.randint(-4, 4), rng.randint(1, 3))
        if coeff == 0:
            coeff = Fraction(1)
        pairs = [(rng.choice(variables), 1) for _ in range(rng.randint(0, max_factors))]
        merged: dict[Var, int] = {}
        for v, e in pairs:
            merged[v] = merged.get(v, 0) + e
        num = num + Poly({tuple(sorted(merged.items())): coeff})
    if num.is_zero():
        num = Poly.const(1)
    den = Poly.const(1)
    if allow_denominator and rng.random() < 0.4:
        # level-1 denominators keep the series interpretation well conditioned
        level_one = [v for v in variables if v[0] == "b" and v[1] == 1]
        v = rng.choice(level_one)
        den = Poly.variable(v) ** rng.randint(1, 2)
    return Element(num, den)
