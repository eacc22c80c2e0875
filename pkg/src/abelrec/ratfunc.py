"""Normalized rational functions over the polynomial ring of `poly`.

A RatFunc is always stored fully reduced: numerator and denominator are
coprime, their coefficients are integers with collective content 1, and the
denominator has a positive leading coefficient.  That makes equality a plain
structural comparison and rendering bit-stable.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Optional

from .poly import ALPHABET, Alphabet, MPoly, mp_gcd


class ZeroDenominator(ZeroDivisionError):
    """Raised when a rational function would have a zero denominator."""


class PoleAtPoint(ZeroDivisionError):
    """Raised when a rational function is evaluated at a pole."""


def _joint_content(num: MPoly, den: MPoly) -> Fraction:
    g_num = 0
    l_den = 1
    for poly in (num, den):
        for c in poly.terms.values():
            g_num = math.gcd(g_num, abs(c.numerator))
            l_den = l_den * c.denominator // math.gcd(l_den, c.denominator)
    return Fraction(g_num, l_den)


class RatFunc:
    """Immutable reduced quotient of two multivariate polynomials."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=1, alphabet: Optional[Alphabet] = None):
        if isinstance(num, MPoly):
            alphabet = num.alphabet
        elif isinstance(den, MPoly):
            alphabet = den.alphabet
        elif alphabet is None:
            alphabet = ALPHABET
        if not isinstance(num, MPoly):
            num = MPoly.const(num, alphabet)
        if not isinstance(den, MPoly):
            den = MPoly.const(den, alphabet)
        num._check(den)
        if den.is_zero():
            raise ZeroDenominator("zero denominator")
        if num.is_zero():
            self.num = num
            self.den = MPoly.const(1, alphabet)
            return
        g = mp_gcd(num, den)
        if not g.is_const() or g.const_value() != 1:
            num = num.divexact(g)
            den = den.divexact(g)
        c = _joint_content(num, den)
        num = num / c
        den = den / c
        if den.leading_coeff() < 0:
            num = -num
            den = -den
        self.num = num
        self.den = den

    # -- constructors -------------------------------------------------------

    @classmethod
    def const(cls, value, alphabet: Alphabet = ALPHABET) -> "RatFunc":
        return cls(MPoly.const(value, alphabet))

    @classmethod
    def var(cls, name: str, alphabet: Alphabet = ALPHABET) -> "RatFunc":
        return cls(MPoly.var(name, alphabet))

    @classmethod
    def from_text(cls, text: str, alphabet: Alphabet = ALPHABET) -> "RatFunc":
        """Parse the canonical rendering ``num`` or ``(num)/(den)``."""
        s = text.strip()
        if s.startswith("(") and ")/(" in s:
            left, _, right = s.partition(")/(")
            if not right.endswith(")"):
                raise ValueError(f"malformed rational function text: {text!r}")
            return cls(MPoly.from_text(left[1:], alphabet),
                       MPoly.from_text(right[:-1], alphabet))
        return cls(MPoly.from_text(s, alphabet))

    # -- queries --------------------------------------------------------------

    @property
    def alphabet(self) -> Alphabet:
        return self.num.alphabet

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __bool__(self) -> bool:
        return not self.num.is_zero()

    def is_const(self) -> bool:
        return self.num.is_const() and self.den.is_const()

    def const_value(self) -> Fraction:
        return self.num.const_value() / self.den.const_value()

    # -- arithmetic -------------------------------------------------------------

    def _coerce(self, other) -> Optional["RatFunc"]:
        if isinstance(other, RatFunc):
            return other
        if isinstance(other, (int, Fraction, MPoly)):
            return RatFunc(other, 1, self.alphabet)
        return None

    def __add__(self, other) -> "RatFunc":
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return RatFunc(self.num * other.den + other.num * self.den,
                       self.den * other.den)

    __radd__ = __add__

    def __neg__(self) -> "RatFunc":
        return RatFunc(-self.num, self.den)

    def __sub__(self, other) -> "RatFunc":
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "RatFunc":
        return (-self) + other

    def __mul__(self, other) -> "RatFunc":
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return RatFunc(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "RatFunc":
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if other.is_zero():
            raise ZeroDenominator("division by zero rational function")
        return RatFunc(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other) -> "RatFunc":
        coerced = self._coerce(other)
        return coerced / self

    def __pow__(self, exponent: int) -> "RatFunc":
        if not isinstance(exponent, int):
            raise ValueError("rational function power must be an integer")
        if exponent < 0:
            if self.is_zero():
                raise ZeroDenominator("zero to a negative power")
            return RatFunc(self.den ** (-exponent), self.num ** (-exponent))
        return RatFunc(self.num ** exponent, self.den ** exponent)

    def __eq__(self, other) -> bool:
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self) -> int:
        return hash((self.num, self.den))

    # -- calculus and evaluation ---------------------------------------------------

    def derivative(self, var: str) -> "RatFunc":
        return RatFunc(self.num.derivative(var) * self.den
                       - self.num * self.den.derivative(var),
                       self.den * self.den)

    def subst(self, values: dict) -> "RatFunc":
        return RatFunc(self.num.subst(values), self.den.subst(values))

    def shift(self, var: str, offset: int) -> "RatFunc":
        if offset == 0:
            return self
        return RatFunc(self.num.shift(var, offset), self.den.shift(var, offset))

    def eval(self, point: dict) -> Fraction:
        den_val = self.den.eval(point)
        if den_val == 0:
            raise PoleAtPoint(f"denominator {self.den} vanishes at {point}")
        return self.num.eval(point) / den_val

    # -- rendering ---------------------------------------------------------------------

    def __str__(self) -> str:
        if self.den.is_const() and self.den.const_value() == 1:
            return str(self.num)
        return f"({self.num})/({self.den})"

    def __repr__(self) -> str:
        return f"RatFunc({self})"


def rf_normalize(num: MPoly, den: MPoly) -> RatFunc:
    """Reduced, sign-normalized quotient (idempotent by construction)."""
    return RatFunc(num, den)
