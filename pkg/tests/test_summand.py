import math
import random
from fractions import Fraction

import pytest

from abelrec.hyper import ZeroToNegativePower
from abelrec.parse import parse_term
from abelrec.poly import MPoly
from abelrec.ratfunc import RatFunc
from abelrec.summand import (AbelSummand, AffineExp, KernelFactor,
                             KernelNotDifferentiable, KernelSpec,
                             abel_shift_ratio, eval_abel_sum, eval_summand,
                             eval_sum_in_var, kernel_derivative_ratio)


def RF(text):
    return RatFunc.from_text(text)


def binomial_summand(**kw):
    return AbelSummand(parse_term("binomial(n,k)"), KernelSpec.abel(**kw))


# independent oracle: the full summand straight from math.comb
def direct_summand(n, k, r, s, x, p, q):
    value = Fraction(math.comb(n, k))
    for base, e in ((Fraction(r) + k, k - 1 + p), (Fraction(s) - k, n - k + q)):
        if base == 0:
            if e < 0:
                raise ZeroDivisionError
            value *= 1 if e == 0 else 0
        else:
            value *= base ** e
    return value * Fraction(x) ** k


def test_shift_ratio_examples():
    summand = binomial_summand()
    assert abel_shift_ratio(summand, 0, 0) == 1
    assert abel_shift_ratio(summand, 1, 0) == RF("(n*s - n*k + s - k)/(n - k + 1)")
    # i=1, j=0 equals (n+1)(s-k)/(n+1-k)
    lhs = abel_shift_ratio(summand, 1, 0)
    rhs = RF("(n + 1)/(n - k + 1)") * RF("s - k")
    assert lhs == rhs


def test_shift_ratio_formula_instance():
    summand = AbelSummand(parse_term("1/(k!^2*(n-k)!)"), KernelSpec.abel())
    term = summand.term
    expected = term.shift_ratio(1, -1) * RF("s - k") ** 2 \
        / (RF("r + k") * RatFunc.var("x"))
    assert abel_shift_ratio(summand, 1, 1) == expected


def test_shift_ratio_is_p_q_free_and_matches_direct_eval():
    rng = random.Random(10)
    summand = binomial_summand()
    for i in range(4):
        for j in range(4):
            ratio = abel_shift_ratio(summand, i, j)
            assert not {"p", "q"} & set(ratio.num.variables())
            assert not {"p", "q"} & set(ratio.den.variables())
            checked = 0
            while checked < 6:
                n = rng.randint(j, 8)
                k = rng.randint(j, n)
                r = Fraction(rng.randint(1, 9), rng.randint(1, 5))
                s = Fraction(rng.randint(10, 19), rng.randint(1, 5))
                x = Fraction(rng.randint(1, 9), rng.randint(1, 5))
                p = rng.randint(-2, 2)
                q = rng.randint(-2, 2)
                if not (0 <= k - j <= n + i):
                    continue
                try:
                    denom = direct_summand(n, k, r, s, x, p, q)
                    if denom == 0:
                        continue
                    numer = direct_summand(n + i, k - j, r + j, s - j, x, p, q)
                    got = ratio.eval({"n": n, "k": k, "r": r, "s": s, "x": x})
                except ZeroDivisionError:
                    continue
                assert got == numer / denom
                checked += 1


def test_literal_orientation_matches_direct_eval():
    rng = random.Random(11)
    summand = binomial_summand()
    ratio = abel_shift_ratio(summand, 1, 1, orientation="literal")
    checked = 0
    while checked < 10:
        n = rng.randint(1, 8)
        k = rng.randint(0, n)
        r = Fraction(rng.randint(2, 9))
        s = Fraction(rng.randint(11, 19), 2)
        x = Fraction(rng.randint(1, 5))
        if not 0 <= k + 1 <= n + 1:
            continue
        try:
            denom = direct_summand(n, k, r, s, x, 0, 0)
            if denom == 0:
                continue
            numer = direct_summand(n + 1, k + 1, r - 1, s + 1, x, 0, 0)
            got = ratio.eval({"n": n, "k": k, "r": r, "s": s, "x": x})
        except ZeroDivisionError:
            continue
        assert got == numer / denom
        checked += 1


def test_kernel_derivative_ratio_abel_closed_forms():
    summand = AbelSummand(parse_term("1"), KernelSpec.abel())
    assert kernel_derivative_ratio(summand, "r", 0, 0) == 1
    assert kernel_derivative_ratio(summand, "r", 1, 0) == RF("(k + p - 1)/(r + k)")
    assert kernel_derivative_ratio(summand, "s", 1, 0) == RF("(n - k + q)/(s - k)")


def test_kernel_derivative_ratio_general_matches_spec_formula():
    summand = binomial_summand()
    for var in ("r", "s"):
        for order in range(3):
            for shift in range(3):
                got = kernel_derivative_ratio(summand, var, order, shift)
                hsr = summand.term.shift_ratio(shift, 0)
                s_minus_k = RF("s - k")
                r_plus_k = RF("r + k")
                if var == "r":
                    prod = RatFunc.const(1)
                    for t in range(order):
                        prod = prod * RF(f"k - 1 + p - {t}")
                    expected = hsr * s_minus_k ** shift * prod / r_plus_k ** order
                else:
                    prod = RatFunc.const(1)
                    for t in range(order):
                        prod = prod * RF(f"n + {shift} - k + q - {t}")
                    expected = hsr * s_minus_k ** (shift - order) * prod
                assert got == expected


def test_derivative_ratio_chain_rule_consistency():
    summand = binomial_summand()
    for var in ("r", "s"):
        for shift in (0, 1):
            base = kernel_derivative_ratio(summand, var, 0, shift)
            first = kernel_derivative_ratio(summand, var, 1, shift)
            log_d = kernel_derivative_ratio(summand, var, 1, 0)
            # d/dvar(F'(n+shift)/F'(n)) = first - base * (dF'/dvar)/F'
            assert base.derivative(var) == first - base * log_d


def test_general_kernel_rejects_n_in_base():
    with pytest.raises(KernelNotDifferentiable):
        KernelFactor(MPoly.from_text("n + r"), AffineExp(c0=1))
    with pytest.raises(KernelNotDifferentiable):
        KernelFactor(MPoly.from_text("r^2"), AffineExp(c0=1))


def test_eval_summand_examples():
    summand = binomial_summand()
    assert eval_summand(summand, 1, 1, 1, 1, x=1, p=0, q=0) == 1
    assert eval_summand(summand, 0, 0, 2, 1, x=1, p=0, q=0) == Fraction(1, 2)
    # a genuine zero base with negative exponent: k=1, p=-1 gives (r+k)^-1 = 0^-1
    with pytest.raises(ZeroToNegativePower):
        eval_summand(summand, 1, 1, -1, 1, x=1, p=-1, q=0)


def test_eval_abel_sum_examples():
    summand = binomial_summand()
    assert eval_abel_sum(summand, 1, 1, 1, x=1, p=0, q=0) == 2
    assert eval_abel_sum(summand, 2, 1, 2, x=1, p=0, q=0) == 9
    assert eval_abel_sum(summand, 0, 5, 7, x=1, p=0, q=0) == Fraction(1, 5)


def test_abel_identity_oracle():
    # sum C(n,k)(r+k)^(k-1)(s-k)^(n-k) = (r+s)^n / r for n <= 8
    rng = random.Random(12)
    summand = binomial_summand(p=0, q=0, x=1)
    for n in range(9):
        checked = 0
        while checked < 20:
            r = Fraction(rng.randint(-9, 9), rng.randint(1, 9))
            s = Fraction(rng.randint(-9, 9), rng.randint(1, 9))
            if r == 0 or any(r + k == 0 or s - k == 0 for k in range(n + 1)):
                continue
            assert eval_abel_sum(summand, n, r, s) == (r + s) ** n / r
            checked += 1


def test_eval_sum_in_var_matches_numeric():
    summand = binomial_summand()
    rng = random.Random(13)
    for _ in range(5):
        n = rng.randint(0, 5)
        s = Fraction(rng.randint(8, 15))
        x = Fraction(rng.randint(1, 4))
        p = rng.randint(-1, 1)
        q = rng.randint(0, 2)
        expr = eval_sum_in_var(summand, n, "r", {"s": s, "x": x}, p=p, q=q)
        for r in (Fraction(1), Fraction(3, 2), Fraction(7, 3)):
            assert expr.eval({"r": r}) == eval_abel_sum(summand, n, r, s, x=x, p=p, q=q)


def test_pinned_kernel_values():
    summand = binomial_summand(p=0, q=0, x=1)
    ratio = abel_shift_ratio(summand, 1, 1)
    assert "x" not in ratio.num.variables() + ratio.den.variables()
    assert eval_abel_sum(summand, 2, 1, 2) == 9
