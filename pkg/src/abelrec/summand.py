"""Abel-type summands: a hypergeometric term times a parameterized kernel.

The standard kernel is (r+k)^(k-1+p) * (s-k)^(n-k+q) * x^k with integer
offsets p, q (symbolic or pinned) and a geometric symbol x (symbolic or
pinned to a rational).  A generalized kernel is a product of affine bases in
(r, s, k) raised to integer-affine exponents in (n, k, p, q); such kernels
still have rational logarithmic derivatives in r and s, which is what the
differential machinery requires.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

from .hyper import (AffineNK, HyperTerm, PowerFactor, ZeroToNegativePower,
                    _int_pow, pin_x)
from .poly import ALPHABET, Alphabet, MPoly
from .ratfunc import RatFunc


class KernelNotDifferentiable(ValueError):
    """Kernel base violates the no-n / affine constraints."""


@dataclass(frozen=True)
class AffineExp:
    """Integer-affine exponent cn*n + ck*k + cp*p + cq*q + c0."""

    cn: int = 0
    ck: int = 0
    cp: int = 0
    cq: int = 0
    c0: int = 0

    def shift_delta(self, dn: int, dk: int) -> int:
        return self.cn * dn + self.ck * dk

    def eval(self, n: int, k: int, p: int, q: int) -> int:
        return self.cn * n + self.ck * k + self.cp * p + self.cq * q + self.c0

    def to_poly(self, alphabet: Alphabet, p_value: Optional[int],
                q_value: Optional[int]) -> MPoly:
        poly = MPoly.const(self.c0, alphabet)
        for coef, name, pinned in ((self.cn, "n", None), (self.ck, "k", None),
                                   (self.cp, "p", p_value),
                                   (self.cq, "q", q_value)):
            if not coef:
                continue
            if pinned is None:
                poly = poly + coef * MPoly.var(name, alphabet)
            else:
                poly = poly + coef * pinned
        return poly

    def text(self) -> str:
        parts = []
        for coef, name in ((self.cn, "n"), (self.ck, "k"),
                           (self.cp, "p"), (self.cq, "q")):
            if coef == 0:
                continue
            body = name if abs(coef) == 1 else f"{abs(coef)}*{name}"
            parts.append(("-" if coef < 0 else ("+" if parts else "")) + body)
        if self.c0 or not parts:
            parts.append(("+" if parts and self.c0 > 0 else "") + str(self.c0))
        return "".join(parts)


@dataclass(frozen=True)
class KernelFactor:
    """base^exp with base affine in (r, s, k), integer coefficients, no n."""

    base: MPoly
    exp: AffineExp

    def __post_init__(self):
        bad = set(self.base.variables()) - {"r", "s", "k"}
        if bad:
            raise KernelNotDifferentiable(
                f"kernel base {self.base} involves {sorted(bad)}")
        if self.base.degree() > 1:
            raise KernelNotDifferentiable(
                f"kernel base {self.base} is not affine")
        for c in self.base.terms.values():
            if c.denominator != 1:
                raise KernelNotDifferentiable(
                    f"kernel base {self.base} has non-integer coefficients")
        if self.base.is_zero():
            raise KernelNotDifferentiable("kernel base is zero")


@dataclass(frozen=True)
class KernelSpec:
    """Kernel of an Abel-type sum; ``abel`` mode is the standard kernel."""

    mode: str  # "abel" | "general"
    factors: tuple
    x_power: bool  # include the geometric x^k factor
    p_value: Optional[int] = None
    q_value: Optional[int] = None
    x_value: Optional[Fraction] = None

    @classmethod
    def abel(cls, p: Optional[int] = None, q: Optional[int] = None,
             x: Optional[Union[int, Fraction]] = None,
             alphabet: Alphabet = ALPHABET) -> "KernelSpec":
        r_plus_k = MPoly.var("r", alphabet) + MPoly.var("k", alphabet)
        s_minus_k = MPoly.var("s", alphabet) - MPoly.var("k", alphabet)
        factors = (
            KernelFactor(r_plus_k, AffineExp(ck=1, cp=1, c0=-1)),
            KernelFactor(s_minus_k, AffineExp(cn=1, ck=-1, cq=1)),
        )
        x_value = None if x is None else Fraction(x)
        if x_value == 0:
            raise ValueError("x must be nonzero when pinned")
        return cls("abel", factors, True, p, q, x_value)

    @classmethod
    def general(cls, factors, x_power: bool = False,
                p: Optional[int] = None, q: Optional[int] = None,
                x: Optional[Union[int, Fraction]] = None) -> "KernelSpec":
        x_value = None if x is None else Fraction(x)
        if x_value == 0:
            raise ValueError("x must be nonzero when pinned")
        return cls("general", tuple(factors), x_power, p, q, x_value)

    @property
    def alphabet(self) -> Alphabet:
        if self.factors:
            return self.factors[0].base.alphabet
        return ALPHABET

    def exponent_poly(self, factor: KernelFactor, alphabet: Alphabet) -> MPoly:
        return factor.exp.to_poly(alphabet, self.p_value, self.q_value)

    def x_ratfunc(self, alphabet: Alphabet, power: int) -> RatFunc:
        """x^power as a rational function (or constant when pinned)."""
        if not self.x_power or power == 0:
            return RatFunc(1, 1, alphabet)
        if self.x_value is not None:
            return RatFunc.const(self.x_value ** power, alphabet)
        return RatFunc.var("x", alphabet) ** power


@dataclass(frozen=True)
class AbelSummand:
    """Hypergeometric term paired with an Abel-type kernel."""

    term: HyperTerm
    kernel: KernelSpec

    @property
    def alphabet(self) -> Alphabet:
        return self.term.alphabet

    def uses_symbol_x(self) -> bool:
        return self.kernel.x_value is None and (
            self.kernel.x_power or self.term.uses_x())


def make_summand(term, p: Optional[int] = None, q: Optional[int] = None,
                 x: Optional[Union[int, Fraction]] = None,
                 alphabet: Alphabet = ALPHABET) -> AbelSummand:
    """Pair a summand expression with the standard Abel kernel.

    The kernel always carries the geometric x^k factor, so an explicit x^k
    written in the expression (as in ``binomial(n,k)*x^k``) is folded into
    the kernel rather than counted twice.  Pinning x substitutes it in any
    remaining x usages of the term as well.
    """
    if isinstance(term, str):
        from .parse import parse_term
        term = parse_term(term, alphabet)
    x_factors = [f for f in term.factors
                 if isinstance(f, PowerFactor) and f.base == "x"]
    total = AffineNK()
    for f in x_factors:
        total = total + f.exp.scaled(f.power)
    if x_factors and total == AffineNK(0, 1, 0):
        remaining = tuple(f for f in term.factors if f not in x_factors)
        term = HyperTerm.from_factors(remaining, alphabet)
    kernel = KernelSpec.abel(p, q, x, alphabet)
    if kernel.x_value is not None and term.uses_x():
        term = pin_x(term, kernel.x_value, alphabet)
    return AbelSummand(term, kernel)


def abel_shift_ratio(summand: AbelSummand, i: int, j: int,
                     orientation: str = "sample") -> RatFunc:
    """Locked shift quotient of the summand.

    ``sample`` orientation: F'(n+i, k-j)(r+j, s-j) / F'(n, k)(r, s);
    ``literal`` orientation: F'(n+i, k+j)(r-j, s+j) / F'(n, k)(r, s).
    The offsets p and q cancel in either case.
    """
    if summand.kernel.mode != "abel":
        raise ValueError("locked shift ratios require the abel kernel")
    alphabet = summand.alphabet
    r_plus_k = MPoly.var("r", alphabet) + MPoly.var("k", alphabet)
    s_minus_k = MPoly.var("s", alphabet) - MPoly.var("k", alphabet)
    if orientation == "sample":
        dk = -j
        ratio = summand.term.shift_ratio(i, dk)
        ratio = ratio * RatFunc(r_plus_k, 1) ** (-j)
        ratio = ratio * RatFunc(s_minus_k, 1) ** (i + j)
        ratio = ratio * summand.kernel.x_ratfunc(alphabet, -j)
    elif orientation == "literal":
        ratio = summand.term.shift_ratio(i, j)
        ratio = ratio * RatFunc(r_plus_k, 1) ** j
        ratio = ratio * RatFunc(s_minus_k, 1) ** (i - j)
        ratio = ratio * summand.kernel.x_ratfunc(alphabet, j)
    else:
        raise ValueError(f"unknown orientation {orientation!r}")
    return ratio


def kernel_log_derivative(summand: AbelSummand, var: str) -> RatFunc:
    """(dK/dvar) / K, rational because kernel bases are n-free and affine."""
    if var not in ("r", "s"):
        raise ValueError("differentiation variable must be r or s")
    alphabet = summand.alphabet
    total = RatFunc(0, 1, alphabet)
    for factor in summand.kernel.factors:
        base_derivative = factor.base.derivative(var)
        if base_derivative.is_zero():
            continue
        exponent = summand.kernel.exponent_poly(factor, alphabet)
        total = total + RatFunc(exponent * base_derivative, factor.base)
    return total


def kernel_derivative_ratio(summand: AbelSummand, var: str, order: int,
                            nshift: int) -> RatFunc:
    """(d^order/dvar^order F'(n+nshift, k)) / F'(n, k).

    Uses the recursion R_0 = 1, R_{m+1} = R_m' + R_m * (dK/dvar)/K, valid for
    any kernel with a rational logarithmic derivative; the n-shift enters via
    the hypergeometric quotient and the integer n-coefficients of the kernel
    exponents.
    """
    if order < 0:
        raise ValueError("derivative order must be nonnegative")
    alphabet = summand.alphabet
    for factor in summand.kernel.factors:
        if "n" in factor.base.variables():
            raise KernelNotDifferentiable(
                f"kernel base {factor.base} involves n")
    log_d = kernel_log_derivative(summand, var)
    ratio = RatFunc(1, 1, alphabet)
    for _ in range(order):
        ratio = ratio.derivative(var) + ratio * log_d
    if nshift:
        ratio = ratio.shift("n", nshift)
        for factor in summand.kernel.factors:
            delta = factor.exp.cn * nshift
            if delta:
                ratio = ratio * RatFunc(factor.base, 1) ** delta
        ratio = ratio * summand.term.shift_ratio(nshift, 0)
    return ratio


def eval_summand(summand: AbelSummand, n: int, k: int, r, s,
                 x=None, p: Optional[int] = None,
                 q: Optional[int] = None) -> Fraction:
    """Exact value of the summand at integers n, k (0 <= k <= n expected).

    The convention 0^0 = 1 applies to kernel bases; a zero base with a
    negative exponent raises ZeroToNegativePower.
    """
    kernel = summand.kernel
    p_val = kernel.p_value if kernel.p_value is not None else p
    q_val = kernel.q_value if kernel.q_value is not None else q
    x_val = kernel.x_value if kernel.x_value is not None else x
    if p_val is None:
        p_val = 0
    if q_val is None:
        q_val = 0
    value = summand.term.eval(n, k, x_val)
    point = {"r": Fraction(r), "s": Fraction(s), "k": k}
    for factor in kernel.factors:
        base = factor.base.eval(point)
        exponent = factor.exp.eval(n, k, p_val, q_val)
        if base == 0 and exponent < 0:
            raise ZeroToNegativePower(
                f"base {factor.base} = 0 with exponent {exponent} at k={k}")
        value *= _int_pow(base, exponent)
    if kernel.x_power:
        if x_val is None:
            raise ValueError("summand uses x but no value was supplied")
        value *= _int_pow(Fraction(x_val), k)
    return value


def eval_abel_sum(summand: AbelSummand, n: int, r, s, x=None,
                  p: Optional[int] = None, q: Optional[int] = None) -> Fraction:
    """Exact sum over k = 0..n of the summand."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    total = Fraction(0)
    for k in range(n + 1):
        try:
            total += eval_summand(summand, n, k, r, s, x, p, q)
        except ZeroToNegativePower as exc:
            raise ZeroToNegativePower(f"k={k}: {exc}") from None
    return total


def eval_sum_in_var(summand: AbelSummand, n: int, var: str, point: dict,
                    p: Optional[int] = None,
                    q: Optional[int] = None) -> RatFunc:
    """The sum a_n as an exact rational function of ``var``.

    All parameters except ``var`` are pinned to rationals from ``point``
    (and the kernel's own pins); each k-term is a rational constant times
    integer powers of affine polynomials in ``var``.
    """
    kernel = summand.kernel
    alphabet = summand.alphabet
    p_val = kernel.p_value if kernel.p_value is not None else p
    q_val = kernel.q_value if kernel.q_value is not None else q
    p_val = 0 if p_val is None else p_val
    q_val = 0 if q_val is None else q_val
    x_val = kernel.x_value if kernel.x_value is not None else point.get("x")
    total = RatFunc(0, 1, alphabet)
    for k in range(n + 1):
        coeff = summand.term.eval(n, k, x_val)
        piece = RatFunc.const(coeff, alphabet)
        subst = {"k": MPoly.const(k, alphabet)}
        for name in ("r", "s"):
            if name != var and name in point:
                subst[name] = MPoly.const(Fraction(point[name]), alphabet)
        for factor in kernel.factors:
            base = factor.base.subst(subst)
            exponent = factor.exp.eval(n, k, p_val, q_val)
            if base.is_zero():
                if exponent < 0:
                    raise ZeroToNegativePower(
                        f"base {factor.base} = 0 with exponent {exponent}")
                if exponent > 0:
                    piece = RatFunc(0, 1, alphabet)
                continue
            piece = piece * RatFunc(base, 1) ** exponent
        if kernel.x_power:
            piece = piece * _int_pow(Fraction(x_val), k)
        total = total + piece
    return total
