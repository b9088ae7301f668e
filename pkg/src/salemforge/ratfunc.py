"""Reduced rational functions with integer polynomial numerator and denominator."""
from __future__ import annotations

import math
from fractions import Fraction
from typing import Union

from .cyclotomic import cyclotomic, strip_trivial_factors
from .poly import IntPoly, poly_gcd

INF = math.inf

#: a nu-value: an exact rational or ``math.inf``
NuValue = Union[Fraction, float]


class RatFunc:
    """num/den with gcd(num, den) constant, no shared integer content, and den.lead > 0."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=1):
        num = num if isinstance(num, IntPoly) else IntPoly.const(num) if isinstance(num, int) else IntPoly(num)
        den = den if isinstance(den, IntPoly) else IntPoly.const(den) if isinstance(den, int) else IntPoly(den)
        if not den:
            raise ZeroDivisionError("zero denominator")
        if not num:
            num, den = IntPoly(), IntPoly([1])
        else:
            g = poly_gcd(num, den)
            if g.degree > 0:
                num, den = num.divexact(g), den.divexact(g)
            c = math.gcd(num.content(), den.content())
            if den.lead < 0:
                c = -c
            if c != 1:
                num = IntPoly([x // c for x in num.coeffs])
                den = IntPoly([x // c for x in den.coeffs])
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __setattr__(self, *_):
        raise AttributeError("RatFunc is immutable")

    @classmethod
    def from_cyclotomic(cls, num_orders, den_orders) -> RatFunc:
        """Product of Phi_n over ``num_orders`` divided by the product over ``den_orders``.

        Repeat an order to raise its power.
        """
        num, den = IntPoly([1]), IntPoly([1])
        for n in num_orders:
            num = num * cyclotomic(n)
        for n in den_orders:
            den = den * cyclotomic(n)
        return cls(num, den)

    # -- arithmetic -------------------------------------------------------
    @staticmethod
    def _lift(other) -> RatFunc:
        if isinstance(other, RatFunc):
            return other
        if isinstance(other, (int, IntPoly)):
            return RatFunc(other)
        return NotImplemented

    def __add__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return RatFunc(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(-self.num, self.den)

    def __sub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return RatFunc(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def inverse(self) -> RatFunc:
        if not self.num:
            raise ZeroDivisionError("inverse of zero")
        return RatFunc(self.den, self.num)

    def __truediv__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __eq__(self, other) -> bool:
        o = self._lift(other)
        if o is NotImplemented:
            return False
        return self.num == o.num and self.den == o.den

    def __hash__(self) -> int:
        return hash((self.num, self.den))

    # -- evaluation -------------------------------------------------------
    def __call__(self, x) -> NuValue:
        """Exact value at a rational point; ``inf`` at a pole."""
        x = Fraction(x)
        d = self.den.eval_fraction(x)
        if d == 0:
            return INF
        return self.num.eval_fraction(x) / d

    def at_one(self) -> NuValue:
        return self(1)

    def cyclotomic_form(self) -> tuple[IntPoly, list, IntPoly, list, int]:
        """Split num and den into (core, [(n, m)]) pairs; the last entry is the net z power."""
        ncore, nf, nk = strip_trivial_factors(self.num)
        dcore, df, dk = strip_trivial_factors(self.den)
        return ncore, nf, dcore, df, nk - dk

    def __str__(self) -> str:
        if self.den == 1:
            return str(self.num)
        return f"({self.num}) / ({self.den})"

    def __repr__(self) -> str:
        return f"RatFunc({self.num!r}, {self.den!r})"

    def to_dict(self) -> dict:
        return {"num": list(self.num.coeffs), "den": list(self.den.coeffs)}


def format_nu(nu: NuValue) -> str:
    if nu == INF:
        return "inf"
    nu = Fraction(nu)
    return str(nu.numerator) if nu.denominator == 1 else f"{nu.numerator}/{nu.denominator}"
