"""Hypergeometric summand factors and their exact shift quotients.

A summand F(n, k) is a product of binomials, factorials, scalar/symbol
powers and constants whose arguments are integer-affine in (n, k).  Such a
product has rational shift quotients F(n+1,k)/F(n,k) and F(n,k+1)/F(n,k),
which is everything the recurrence machinery needs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .poly import ALPHABET, Alphabet, MPoly
from .ratfunc import RatFunc


class SummandDomainError(ValueError):
    """Evaluation outside the summand's domain (negative factorial etc.)."""


class ZeroToNegativePower(ZeroDivisionError):
    """A zero base was raised to a negative power during evaluation."""


@dataclass(frozen=True)
class AffineNK:
    """Integer-affine form cn*n + ck*k + c0."""

    cn: int = 0
    ck: int = 0
    c0: int = 0

    def shift_delta(self, dn: int, dk: int) -> int:
        return self.cn * dn + self.ck * dk

    def eval(self, n: int, k: int) -> int:
        return self.cn * n + self.ck * k + self.c0

    def to_poly(self, alphabet: Alphabet = ALPHABET) -> MPoly:
        poly = MPoly.const(self.c0, alphabet)
        if self.cn:
            poly = poly + self.cn * MPoly.var("n", alphabet)
        if self.ck:
            poly = poly + self.ck * MPoly.var("k", alphabet)
        return poly

    def is_const(self) -> bool:
        return self.cn == 0 and self.ck == 0

    def __add__(self, other: "AffineNK") -> "AffineNK":
        return AffineNK(self.cn + other.cn, self.ck + other.ck, self.c0 + other.c0)

    def __sub__(self, other: "AffineNK") -> "AffineNK":
        return AffineNK(self.cn - other.cn, self.ck - other.ck, self.c0 - other.c0)

    def __neg__(self) -> "AffineNK":
        return AffineNK(-self.cn, -self.ck, -self.c0)

    def scaled(self, factor: int) -> "AffineNK":
        return AffineNK(self.cn * factor, self.ck * factor, self.c0 * factor)

    def __str__(self) -> str:
        parts = []
        for coef, name in ((self.cn, "n"), (self.ck, "k")):
            if coef == 0:
                continue
            body = name if abs(coef) == 1 else f"{abs(coef)}*{name}"
            parts.append(("-" if coef < 0 else ("+" if parts else "")) + body)
        if self.c0 or not parts:
            parts.append(("+" if parts and self.c0 > 0 else "") + str(self.c0))
        return "".join(parts)


def rising_product(arg: AffineNK, delta: int, alphabet: Alphabet) -> RatFunc:
    """(A + delta)! / A! as a rational function of the affine form A."""
    base = arg.to_poly(alphabet)
    result = RatFunc(1, 1, alphabet)
    if delta >= 0:
        for t in range(1, delta + 1):
            result = result * RatFunc(base + t, 1)
    else:
        for t in range(0, -delta):
            result = result / RatFunc(base - t, 1)
    return result


def _pow_shift(base: Union[Fraction, str], delta: int, alphabet: Alphabet) -> RatFunc:
    if delta == 0:
        return RatFunc(1, 1, alphabet)
    if base == "x":
        return RatFunc.var("x", alphabet) ** delta
    if base == 0:
        raise ZeroToNegativePower("zero base in power factor shift")
    return RatFunc.const(Fraction(base) ** delta, alphabet)


@dataclass(frozen=True)
class BinomialFactor:
    top: AffineNK
    bottom: AffineNK
    power: int = 1

    def shift_ratio(self, dn: int, dk: int, alphabet: Alphabet = ALPHABET) -> RatFunc:
        dt = self.top.shift_delta(dn, dk)
        db = self.bottom.shift_delta(dn, dk)
        ratio = rising_product(self.top, dt, alphabet) \
            / rising_product(self.bottom, db, alphabet) \
            / rising_product(self.top - self.bottom, dt - db, alphabet)
        return ratio ** self.power

    def eval(self, n: int, k: int, x=None) -> Fraction:
        t = self.top.eval(n, k)
        b = self.bottom.eval(n, k)
        if t < 0:
            raise SummandDomainError(f"binomial({t}, {b}) with negative top")
        value = Fraction(math.comb(t, b)) if 0 <= b <= t else Fraction(0)
        return _int_pow(value, self.power)

    def __str__(self) -> str:
        body = f"binomial({self.top}, {self.bottom})"
        return body if self.power == 1 else f"{body}^{self.power}"


@dataclass(frozen=True)
class FactorialFactor:
    arg: AffineNK
    power: int = 1

    def shift_ratio(self, dn: int, dk: int, alphabet: Alphabet = ALPHABET) -> RatFunc:
        delta = self.arg.shift_delta(dn, dk)
        return rising_product(self.arg, delta, alphabet) ** self.power

    def eval(self, n: int, k: int, x=None) -> Fraction:
        a = self.arg.eval(n, k)
        if a < 0:
            raise SummandDomainError(f"({a})! undefined")
        return _int_pow(Fraction(math.factorial(a)), self.power)

    def __str__(self) -> str:
        arg = str(self.arg)
        body = f"{arg}!" if self.arg.is_const() or (
            self.arg.c0 == 0 and (self.arg.cn, self.arg.ck) in ((1, 0), (0, 1))
        ) else f"({arg})!"
        return body if self.power == 1 else f"{body}^{self.power}"


@dataclass(frozen=True)
class PowerFactor:
    base: Union[Fraction, str]  # a rational number or the symbol "x"
    exp: AffineNK
    power: int = 1

    def shift_ratio(self, dn: int, dk: int, alphabet: Alphabet = ALPHABET) -> RatFunc:
        delta = self.exp.shift_delta(dn, dk) * self.power
        return _pow_shift(self.base, delta, alphabet)

    def eval(self, n: int, k: int, x=None) -> Fraction:
        if self.base == "x":
            if x is None:
                raise ValueError("summand contains x but no value was supplied")
            base = Fraction(x)
        else:
            base = Fraction(self.base)
        return _int_pow(base, self.exp.eval(n, k) * self.power)

    def __str__(self) -> str:
        base = "x" if self.base == "x" else str(self.base)
        e = str(self.exp)
        if "+" in e or "-" in e[1:]:
            e = f"({e})"
        body = f"{base}^{e}"
        return body if self.power == 1 else f"({body})^{self.power}"


@dataclass(frozen=True)
class ConstantFactor:
    value: Fraction
    power: int = 1

    def shift_ratio(self, dn: int, dk: int, alphabet: Alphabet = ALPHABET) -> RatFunc:
        return RatFunc(1, 1, alphabet)

    def eval(self, n: int, k: int, x=None) -> Fraction:
        return _int_pow(Fraction(self.value), self.power)

    def __str__(self) -> str:
        body = str(self.value)
        return body if self.power == 1 else f"({body})^{self.power}"


HyperFactor = Union[BinomialFactor, FactorialFactor, PowerFactor, ConstantFactor]


def _int_pow(base: Fraction, exponent: int) -> Fraction:
    """base**exponent with 0**0 = 1 and an explicit error for 0**negative."""
    if base == 0:
        if exponent == 0:
            return Fraction(1)
        if exponent < 0:
            raise ZeroToNegativePower(f"0^{exponent}")
        return Fraction(0)
    return base ** exponent


@dataclass(frozen=True)
class HyperTerm:
    """A hypergeometric summand: factor list plus derived shift quotients."""

    factors: tuple
    rho_n: RatFunc  # F(n+1, k) / F(n, k)
    rho_k: RatFunc  # F(n, k+1) / F(n, k)

    @classmethod
    def from_factors(cls, factors, alphabet: Alphabet = ALPHABET) -> "HyperTerm":
        factors = tuple(factors)
        rho_n = RatFunc(1, 1, alphabet)
        rho_k = RatFunc(1, 1, alphabet)
        for factor in factors:
            rho_n = rho_n * factor.shift_ratio(1, 0, alphabet)
            rho_k = rho_k * factor.shift_ratio(0, 1, alphabet)
        return cls(factors, rho_n, rho_k)

    @property
    def alphabet(self) -> Alphabet:
        return self.rho_n.alphabet

    def shift_ratio(self, dn: int, dk: int) -> RatFunc:
        """F(n+dn, k+dk) / F(n, k), telescoped from the unit quotients."""
        result = RatFunc(1, 1, self.alphabet)
        if dn >= 0:
            for i in range(dn):
                result = result * self.rho_n.shift("n", i)
        else:
            for i in range(dn, 0):
                result = result / self.rho_n.shift("n", i)
        if dk >= 0:
            for j in range(dk):
                result = result * self.rho_k.shift("n", dn).shift("k", j)
        else:
            for j in range(dk, 0):
                result = result / self.rho_k.shift("n", dn).shift("k", j)
        return result

    def eval(self, n: int, k: int, x=None) -> Fraction:
        value = Fraction(1)
        for factor in self.factors:
            value *= factor.eval(n, k, x)
        return value

    def uses_x(self) -> bool:
        return any(isinstance(f, PowerFactor) and f.base == "x" for f in self.factors)

    def text(self) -> str:
        if not self.factors:
            return "1"
        return "*".join(str(f) for f in self.factors)


def hyper_shift_ratio(term: HyperTerm, dn: int, dk: int) -> RatFunc:
    return term.shift_ratio(dn, dk)


def pin_x(term: HyperTerm, value, alphabet: Alphabet = ALPHABET) -> HyperTerm:
    """Replace the symbol x by a rational value throughout a term."""
    value = Fraction(value)
    factors = tuple(
        PowerFactor(value, f.exp, f.power)
        if isinstance(f, PowerFactor) and f.base == "x" else f
        for f in term.factors)
    return HyperTerm.from_factors(factors, alphabet)
