"""Linear differential operators over the tower.

Operators at level i are built from factors (D_i - c) with constant
eigenvalue c.  Because the derivations kill constants, the factors
commute and the expanded form has the elementary-symmetric-function
coefficients; both forms act on elements through `apply`.

Also here: the eigen-decomposition of normal-form solutions, Wronskian
determinants as independence certificates, and the prolonged first-order
system x_i' = x_i x_{i+1} behind the iterated logarithmic derivative,
with a truncated-series solver.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .elements import Element, ONE_ELEMENT, ZERO_ELEMENT
from .errors import NotNormalForm, ZeroInitialValue
from .polyring import Poly
from .series import Series, residual as series_residual
from .textio import format_operator_factors, parse_element, parse_operator_factors
from .tower import SeriesContext, TowerElement, TowerSpec, d_twist, eval_series


@dataclass(frozen=True)
class LinearFactor:
    """The operator y -> D_i y - c*y with constant eigenvalue c."""

    level: int
    eigenvalue: Element

    def __post_init__(self):
        if self.level < 1:
            raise ValueError("level must be >= 1")
        if not self.eigenvalue.is_constant():
            raise ValueError("eigenvalue must be free of generator symbols")

    def __str__(self) -> str:
        return format_operator_factors([(self.level, self.eigenvalue)])


@dataclass(frozen=True)
class FactoredOperator:
    """Ordered product of linear factors, all at one level."""

    level: int
    factors: tuple[LinearFactor, ...]

    def __post_init__(self):
        if not self.factors:
            raise ValueError("a factored operator needs at least one factor")
        if any(f.level != self.level for f in self.factors):
            raise ValueError("all factors must share the operator level")

    @property
    def order(self) -> int:
        return len(self.factors)

    def eigenvalues(self) -> list[Element]:
        return [f.eigenvalue for f in self.factors]

    def to_text(self) -> str:
        return format_operator_factors([(f.level, f.eigenvalue) for f in self.factors])

    @classmethod
    def from_text(cls, text: str) -> "FactoredOperator":
        pairs = parse_operator_factors(text)
        level = pairs[0][0]
        return cls(level, tuple(LinearFactor(lv, ev) for lv, ev in pairs))

    def __str__(self) -> str:
        return self.to_text()


@dataclass(frozen=True)
class ExpandedOperator:
    """sum_k a_k D_i^k with a_m = 1, coefficients constant."""

    level: int
    coefficients: tuple[Element, ...]  # a_0 .. a_m

    def __post_init__(self):
        if len(self.coefficients) < 2:
            raise ValueError("an expanded operator has order >= 1")
        if self.coefficients[-1] != ONE_ELEMENT:
            raise ValueError("expanded operators are monic")
        if any(not a.is_constant() for a in self.coefficients):
            raise ValueError("coefficients must be constant")

    @property
    def order(self) -> int:
        return len(self.coefficients) - 1


def build_E(spec: TowerSpec, i: int) -> FactoredOperator:
    """The level-i defining operator (D_i - c[i][1]) ... (D_i - c[i][n_i])."""
    spec.check_level(i)
    factors = tuple(
        LinearFactor(i, spec.symbol(i, j).expr()) for j in range(1, spec.rank(i) + 1)
    )
    return FactoredOperator(i, factors)


def apply_operator(
    op: FactoredOperator | ExpandedOperator | LinearFactor,
    x: TowerElement,
    spec: TowerSpec,
) -> TowerElement:
    """Apply an operator; factored products act rightmost factor first."""
    if isinstance(op, LinearFactor):
        return d_twist(x, op.level, spec) - op.eigenvalue * x
    if isinstance(op, FactoredOperator):
        out = x
        for factor in reversed(op.factors):
            out = d_twist(out, op.level, spec) - factor.eigenvalue * out
        return out
    total = ZERO_ELEMENT
    power = x
    for k, a_k in enumerate(op.coefficients):
        if k > 0:
            power = d_twist(power, op.level, spec)
        total = total + a_k * power
    return total


def expand(op: FactoredOperator) -> ExpandedOperator:
    """Multiply the factors out; with constant eigenvalues this is the
    symmetric-function expansion and is independent of the factor order."""
    coeffs = [ONE_ELEMENT]  # polynomial prod (X - c_j), lowest degree first
    for factor in op.factors:
        c = factor.eigenvalue
        nxt = [ZERO_ELEMENT] * (len(coeffs) + 1)
        for k, a in enumerate(coeffs):
            nxt[k + 1] = nxt[k + 1] + a
            nxt[k] = nxt[k] - c * a
        coeffs = nxt
    return ExpandedOperator(op.level, tuple(coeffs))


@dataclass(frozen=True)
class EigenDecomposition:
    """Components f_j with (D_i - c[i][j]) f_j = 0 and sum f_j = f."""

    level: int
    components: tuple[TowerElement, ...]

    def total(self) -> TowerElement:
        out = ZERO_ELEMENT
        for f in self.components:
            out = out + f
        return out


def decompose(f: TowerElement, i: int, spec: TowerSpec) -> EigenDecomposition:
    """Split a normal-form element sum_j u_j b[i][j] into its eigencomponents.

    Raises NotNormalForm when f is not a constant-linear combination of the
    level-i generators.
    """
    spec.check_level(i)
    if not f.den.is_const():
        raise NotNormalForm("denominator must be constant in normal form")
    n = spec.rank(i)
    parts: dict[int, Element] = {}
    for m, coeff in f.num.terms.items():
        gen_pairs = [(v, e) for v, e in m if v[0] == "b"]
        if len(gen_pairs) != 1 or gen_pairs[0][1] != 1:
            raise NotNormalForm(f"monomial outside the level-{i} generator span in {f}")
        (kind, level, j), _ = gen_pairs[0]
        if level != i or not 1 <= j <= n:
            raise NotNormalForm(f"generator b[{level}][{j}] is not at level {i}")
        rest = tuple((v, e) for v, e in m if v[0] != "b")
        term = Element(Poly({rest: coeff}), f.den) * spec.generator(i, j)
        parts[j] = parts.get(j, ZERO_ELEMENT) + term
    components = tuple(parts.get(j, ZERO_ELEMENT) for j in range(1, n + 1))
    # Internal consistency: eigen-equations and the sum must come back exact.
    for j, comp in enumerate(components, start=1):
        check = d_twist(comp, i, spec) - spec.symbol(i, j).expr() * comp
        assert check.is_zero(), f"component {j} fails its eigen-equation"
    total = EigenDecomposition(i, components).total()
    assert total == f, "decomposition does not sum back to the input"
    return EigenDecomposition(i, components)


def is_generic(d: EigenDecomposition) -> bool:
    """Genericity criterion: every eigencomponent nonzero."""
    return all(not comp.is_zero() for comp in d.components)


def wronskian(xs: list[TowerElement], i: int, spec: TowerSpec) -> TowerElement:
    """det [D_i^k(x_j)]; nonzero certifies independence over the constants."""
    if not xs:
        raise ValueError("wronskian of an empty list")
    spec.check_level(i)
    rows: list[list[Element]] = [list(xs)]
    for _ in range(len(xs) - 1):
        rows.append([d_twist(x, i, spec) for x in rows[-1]])
    return _det(rows)


def _det(rows: list[list[Element]]) -> Element:
    n = len(rows)
    if n == 1:
        return rows[0][0]
    total = ZERO_ELEMENT
    for col in range(n):
        entry = rows[0][col]
        if entry.is_zero():
            continue
        minor = [[row[c] for c in range(n) if c != col] for row in rows[1:]]
        cofactor = entry * _det(minor)
        total = total + cofactor if col % 2 == 0 else total - cofactor
    return total


@dataclass(frozen=True)
class ProlongedSystem:
    """x_i' = x_i x_{i+1} for i < n and x_n' = h x_n."""

    n: int
    h: TowerElement

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("dimension must be >= 1")

    def equations(self) -> list[str]:
        eqs = [f"delta x_{i} = x_{i}*x_{i + 1}" for i in range(1, self.n)]
        rhs = "0" if self.h.is_zero() else f"({self.h})*x_{self.n}"
        eqs.append(f"delta x_{self.n} = {rhs}")
        return eqs

    def __str__(self) -> str:
        return "{" + "; ".join(self.equations()) + "}"

    def to_json(self, initial_values: list[float] | None = None) -> str:
        doc = {"n": self.n, "h": str(self.h)}
        if initial_values is not None:
            doc["initial_values"] = list(initial_values)
        return json.dumps(doc, sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> tuple["ProlongedSystem", list[float] | None]:
        doc = json.loads(text)
        system = cls(int(doc["n"]), parse_element(str(doc["h"])))
        initial = doc.get("initial_values")
        return system, None if initial is None else [float(v) for v in initial]


def logd_system(n: int, h: TowerElement | int) -> ProlongedSystem:
    """Prolonged system of the n-fold logarithmic derivative with right side h."""
    if isinstance(h, int):
        h = Element.from_rational(h)
    return ProlongedSystem(n, h)


def solve_prolonged(
    system: ProlongedSystem,
    initial_values: list[float],
    order: int,
    ctx: SeriesContext | None = None,
    spec: TowerSpec | None = None,
) -> list[Series]:
    """Truncated series solution with the given values at t=0.

    h is evaluated through ``ctx``/``spec`` when it involves tower data;
    rational h needs no context.
    """
    if len(initial_values) != system.n:
        raise ValueError(f"expected {system.n} initial values")
    if any(v == 0 for v in initial_values):
        raise ZeroInitialValue("initial values must be nonzero")
    if system.h.is_rational():
        h_series = Series.const(float(system.h.as_rational()), order)
    else:
        if ctx is None or spec is None:
            raise ValueError("a SeriesContext and TowerSpec are needed for a non-rational h")
        h_series = eval_series(system.h, ctx, spec)
        if h_series.order < order:
            raise ValueError("context order is smaller than the requested order")
        h_series = h_series.truncate(order)
    n = system.n
    xs = np.zeros((n, order))
    xs[:, 0] = initial_values
    h = h_series.coeffs
    for k in range(order - 1):
        for i in range(n):
            rhs = h[: k + 1] if i == n - 1 else xs[i + 1, : k + 1]
            conv = float(np.dot(xs[i, : k + 1], rhs[::-1]))
            xs[i, k + 1] = conv / (k + 1)
    return [Series(xs[i]) for i in range(n)]


def prolonged_residual(
    system: ProlongedSystem, solution: list[Series], h_series: Series | None = None
) -> float:
    """Scaled residual of delta x_i - x_i x_{i+1} (and the h row)."""
    worst = 0.0
    n = system.n
    if h_series is None:
        h_series = Series.const(float(system.h.as_rational()), solution[-1].order)
    for i in range(n):
        lhs = solution[i].deriv()
        rhs = solution[i] * (solution[i + 1] if i < n - 1 else h_series)
        worst = max(worst, series_residual(lhs, rhs))
    return worst
