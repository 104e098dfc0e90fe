"""Exact rational expressions over the constant and generator symbols.

An :class:`Element` is a reduced fraction of two :class:`~deltatower.polyring.Poly`
values: numerator and denominator coprime, denominator monic in graded lex
order, zero canonically ``0/1``.  Equality, hashing and printing all go
through this canonical form, so two elements are equal exactly when their
printed forms coincide.

Elements double as both roles in the public API: expressions in the
constant symbols only (``c[i][j]``, ``u[i][j]``) and full tower elements
involving the generators ``b[i][j]``.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import DivisionByZero
from .polyring import (
    MONOMIAL_KEY,
    ONE,
    Poly,
    Var,
    exact_div,
    poly_gcd,
    var_name,
)

_COERCIBLE = (int, Fraction)


class Element:
    """Canonical fraction num/den of multivariate polynomials over Q."""

    __slots__ = ("num", "den")

    def __init__(self, num: Poly, den: Poly = ONE, *, _canonical: bool = False):
        if _canonical:
            self.num = num
            self.den = den
            return
        if den.is_zero():
            raise DivisionByZero("zero denominator")
        if num.is_zero():
            self.num, self.den = Poly(), ONE
            return
        if den.is_const():
            self.num = num.scale(Fraction(1) / den.const_value())
            self.den = ONE
            return
        q = exact_div(num, den)
        if q is not None:
            self.num, self.den = q, ONE
            return
        g = poly_gcd(num, den)
        if not g.is_const():
            num2 = exact_div(num, g)
            den2 = exact_div(den, g)
            assert num2 is not None and den2 is not None
            num, den = num2, den2
        lc = den.lead()[1]
        if lc != 1:
            inv = Fraction(1) / lc
            num, den = num.scale(inv), den.scale(inv)
        if den.is_const():
            self.num, self.den = num, ONE
        else:
            self.num, self.den = num, den

    # --- constructors ----------------------------------------------------

    @classmethod
    def from_rational(cls, c) -> "Element":
        return cls(Poly.const(Fraction(c)))

    @classmethod
    def from_var(cls, v: Var) -> "Element":
        return cls(Poly.variable(v))

    # --- predicates -------------------------------------------------------

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_one(self) -> bool:
        return self.den == ONE and self.num.is_const() and self.num.const_value() == 1

    def is_rational(self) -> bool:
        return self.num.is_const() and self.den.is_const()

    def as_rational(self) -> Fraction:
        if not self.is_rational():
            raise ValueError("element is not a rational number")
        return self.num.const_value() if not self.num.is_zero() else Fraction(0)

    def is_constant(self) -> bool:
        """True when no generator symbol occurs (the derivation kills it)."""
        return all(v[0] != "b" for v in self.num.variables() | self.den.variables())

    def variables(self) -> set[Var]:
        return self.num.variables() | self.den.variables()

    # --- arithmetic -------------------------------------------------------

    @staticmethod
    def _coerce(x) -> "Element | None":
        if isinstance(x, Element):
            return x
        if isinstance(x, _COERCIBLE):
            return Element.from_rational(x)
        return None

    def __add__(self, other) -> "Element":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Element(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __sub__(self, other) -> "Element":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Element(self.num * o.den - o.num * self.den, self.den * o.den)

    def __rsub__(self, other) -> "Element":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __neg__(self) -> "Element":
        return Element(-self.num, self.den, _canonical=True)

    def __mul__(self, other) -> "Element":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Element(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "Element":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if o.is_zero():
            raise DivisionByZero("division by zero element")
        return Element(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other) -> "Element":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o / self

    def __pow__(self, n: int) -> "Element":
        if not isinstance(n, int):
            return NotImplemented
        if n == 0:
            return Element.from_rational(1)
        if n < 0:
            if self.is_zero():
                raise DivisionByZero("negative power of zero")
            return Element(self.den, self.num) ** (-n)
        return Element(self.num**n, self.den**n)

    def __eq__(self, other) -> bool:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.num == o.num and self.den == o.den

    def __hash__(self) -> int:
        return hash((self.num, self.den))

    # --- printing ---------------------------------------------------------

    def __str__(self) -> str:
        return format_element(self)

    def __repr__(self) -> str:
        return f"Element({format_element(self)})"


ZERO_ELEMENT = Element.from_rational(0)
ONE_ELEMENT = Element.from_rational(1)


def _print_factor_key(pair) -> tuple:
    (kind, level, index), _ = pair
    return (kind == "b", kind, level, index)


def _format_term(m, c: Fraction, *, lead: bool) -> str:
    """One monomial term; sign is emitted by the caller via `lead`."""
    mag = abs(c)
    factors = []
    if mag != 1 or not m:
        factors.append(str(mag))
    for v, e in sorted(m, key=_print_factor_key):
        factors.append(var_name(v) if e == 1 else f"{var_name(v)}^{e}")
    body = "*".join(factors)
    if lead:
        return body if c >= 0 else f"-{body}"
    return f" + {body}" if c >= 0 else f" - {body}"


def format_poly(p: Poly) -> str:
    if p.is_zero():
        return "0"
    out = []
    for i, m in enumerate(sorted(p.terms, key=MONOMIAL_KEY, reverse=True)):
        out.append(_format_term(m, p.terms[m], lead=(i == 0)))
    return "".join(out)


def format_element(x: Element) -> str:
    num_str = format_poly(x.num)
    if x.den == ONE:
        return num_str
    if len(x.num.terms) > 1:
        num_str = f"({num_str})"
    den_str = format_poly(x.den)
    # The denominator is monic: a single term with one variable reads as
    # one grammar factor, anything else needs parentheses.
    single_factor = len(x.den.terms) == 1 and len(next(iter(x.den.terms))) == 1
    if not single_factor:
        den_str = f"({den_str})"
    return f"{num_str}/{den_str}"
