"""Exact scalar arithmetic for valuations and valued coefficient fields.

Valuations live in Q ∪ {+inf} and form a min-plus semiring: ``min`` is the
additive law, rational addition the multiplicative one, and +inf the
absorbing element.  A valuation v encodes the multiplicative absolute value
b**(-v) for a presentation base b > 1; the base is only ever used when
printing decimals, never in computations.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import sympy
from sympy.parsing.sympy_parser import (
    convert_xor,
    parse_expr,
    standard_transformations,
)


class ValError(ValueError):
    """Raised on undefined min-plus operations (e.g. inf - inf)."""


class Val:
    """Element of Q ∪ {+inf} under (min, +).

    ``v + w`` is the semiring product (rational addition, +inf absorbing),
    ``min(v, w)`` the semiring sum.  Finite values are exact fractions.
    """

    __slots__ = ("q",)

    def __init__(self, q: int | Fraction | str | None = 0):
        if q is None:
            self.q: Fraction | None = None
        elif isinstance(q, Val):  # tolerate re-wrapping
            self.q = q.q
        else:
            self.q = Fraction(q)

    @staticmethod
    def inf() -> "Val":
        return Val(None)

    @property
    def is_inf(self) -> bool:
        return self.q is None

    def as_fraction(self) -> Fraction:
        if self.q is None:
            raise ValError("infinite valuation has no finite value")
        return self.q

    # semiring product: rational addition, +inf absorbs
    def __add__(self, other: "Val") -> "Val":
        if not isinstance(other, Val):
            return NotImplemented
        if self.q is None or other.q is None:
            return INF
        return Val(self.q + other.q)

    def __sub__(self, other: "Val") -> "Val":
        if not isinstance(other, Val):
            return NotImplemented
        if other.q is None:
            raise ValError("cannot subtract an infinite valuation")
        if self.q is None:
            return INF
        return Val(self.q - other.q)

    def __neg__(self) -> "Val":
        if self.q is None:
            raise ValError("cannot negate an infinite valuation")
        return Val(-self.q)

    def scale(self, k: int | Fraction) -> "Val":
        """k·v with the monoid convention 0·(+inf) = 0.

        Negative multiples of +inf are undefined and raise.
        """
        k = Fraction(k)
        if self.q is None:
            if k == 0:
                return Val(0)
            if k < 0:
                raise ValError("negative multiple of an infinite valuation")
            return INF
        return Val(k * self.q)

    # total order with +inf on top
    def __eq__(self, other: object) -> bool:
        return isinstance(other, Val) and self.q == other.q

    def __lt__(self, other: "Val") -> bool:
        if self.q is None:
            return False
        if other.q is None:
            return True
        return self.q < other.q

    def __le__(self, other: "Val") -> bool:
        return self == other or self < other

    def __gt__(self, other: "Val") -> bool:
        return not self <= other

    def __ge__(self, other: "Val") -> bool:
        return not self < other

    def __hash__(self) -> int:
        return hash(("Val", self.q))

    def __str__(self) -> str:
        return "inf" if self.q is None else str(self.q)

    def __repr__(self) -> str:
        return f"Val({self})"


INF = Val.inf()


def parse_val(text: str) -> Val:
    """Parse "inf" or an exact fraction/decimal string into a Val."""
    text = text.strip()
    if text in ("inf", "+inf", "oo"):
        return INF
    try:
        return Val(Fraction(text))
    except (ValueError, ZeroDivisionError) as exc:
        raise ValError(f"bad valuation literal {text!r}") from exc


def tropical_min_plus(terms) -> Val:
    """Minimum of a nonempty collection of valuations.

    This is the max of the corresponding absolute values; the result is
    +inf exactly when every entry is +inf.
    """
    terms = list(terms)
    if not terms:
        raise ValError("min-plus sum of an empty collection")
    best = terms[0]
    for v in terms[1:]:
        if v < best:
            best = v
    return best


def abs_value(v: Val, base: Fraction | int = 2) -> float:
    """Presentation-layer absolute value b**(-v); 0.0 for v = +inf."""
    base = Fraction(base)
    if base <= 1:
        raise ValError("presentation base must be > 1")
    if v.is_inf:
        return 0.0
    return float(base) ** float(-v.as_fraction())


def _vp(n: int, p: int) -> int:
    # p-adic valuation of a nonzero integer
    n = abs(n)
    k = 0
    while n % p == 0:
        n //= p
        k += 1
    return k


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


@dataclass(frozen=True)
class PAdicField:
    """Q with the p-adic valuation; elements are exact fractions."""

    p: int = 2

    def __post_init__(self):
        if not _is_prime(self.p):
            raise ValError(f"p = {self.p} is not prime")

    @property
    def name(self) -> str:
        return f"{self.p}-adic"

    def parse(self, text: str) -> Fraction:
        try:
            return Fraction(text.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ValError(f"bad coefficient {text!r}") from exc

    def val(self, c: Fraction) -> Val:
        if c == 0:
            return INF
        return Val(Fraction(_vp(c.numerator, self.p) - _vp(c.denominator, self.p)))

    def one(self) -> Fraction:
        return Fraction(1)

    def add(self, a: Fraction, b: Fraction) -> Fraction:
        return a + b

    def mul(self, a: Fraction, b: Fraction) -> Fraction:
        return a * b

    def neg(self, a: Fraction) -> Fraction:
        return -a

    def is_zero(self, a: Fraction) -> bool:
        return a == 0

    def eq(self, a: Fraction, b: Fraction) -> bool:
        return a == b

    def format(self, a: Fraction) -> str:
        return str(a)


_T = sympy.Symbol("t")
_TRANSFORMS = standard_transformations + (convert_xor,)


def _t_order(poly_part) -> int:
    # order of vanishing at t = 0 of a nonzero polynomial expression
    return min(m[0] for m in sympy.Poly(poly_part, _T).monoms())


@dataclass(frozen=True)
class TAdicField:
    """Rational functions Q(t) with the order-at-zero valuation.

    Elements are sympy expressions kept in cancelled canonical form; the
    valuation of a/b is ord_t(a) - ord_t(b), and ord of 0 is +inf.
    """

    @property
    def name(self) -> str:
        return "t-adic"

    def parse(self, text: str):
        try:
            expr = parse_expr(
                text.strip(), local_dict={"t": _T}, transformations=_TRANSFORMS
            )
        except Exception as exc:
            raise ValError(f"bad coefficient {text!r}") from exc
        if not expr.free_symbols <= {_T}:
            raise ValError(f"coefficient {text!r} uses symbols other than t")
        expr = sympy.cancel(sympy.nsimplify(expr, rational=True))
        if not expr.is_rational_function(_T):
            raise ValError(f"coefficient {text!r} is not a rational function of t")
        return expr

    def val(self, c) -> Val:
        c = sympy.cancel(c)
        if c.is_zero:
            return INF
        num, den = sympy.fraction(sympy.together(c))
        return Val(Fraction(_t_order(num) - _t_order(den)))

    def one(self):
        return sympy.Integer(1)

    def add(self, a, b):
        return sympy.cancel(a + b)

    def mul(self, a, b):
        return sympy.cancel(a * b)

    def neg(self, a):
        return sympy.cancel(-a)

    def is_zero(self, a) -> bool:
        return sympy.cancel(a).is_zero is True

    def eq(self, a, b) -> bool:
        return sympy.cancel(a - b).is_zero is True

    def format(self, a) -> str:
        return str(a)


def val_of(field, c) -> Val:
    """Valuation of a coefficient in its field (val(0) = +inf)."""
    return field.val(c)
