"""Exact sparse multivariate polynomials over a fixed variable alphabet.

Coefficients are `fractions.Fraction` (arbitrary precision, always reduced),
so every operation in the package is exact.  A polynomial maps exponent
tuples (one entry per alphabet variable) to nonzero coefficients.  The term
order used for leading terms and for rendering is graded lexicographic over
the alphabet, which makes all printed output bit-stable.
"""

from __future__ import annotations

import math
import random
from fractions import Fraction
from typing import Optional

BASE_VARS = ("n", "k", "r", "s", "x", "p", "q")


class Alphabet:
    """Closed, ordered variable universe for one session.

    The seven base names are fixed.  ``weights`` appends w1..wN, used by the
    weighted counting checks.  Polynomials over different alphabets never mix.
    """

    __slots__ = ("names", "index")

    def __init__(self, weights: int = 0):
        self.names = BASE_VARS + tuple(f"w{i}" for i in range(1, weights + 1))
        self.index = {name: i for i, name in enumerate(self.names)}

    def __len__(self) -> int:
        return len(self.names)

    def __eq__(self, other) -> bool:
        return isinstance(other, Alphabet) and self.names == other.names

    def __hash__(self) -> int:
        return hash(self.names)

    def __repr__(self) -> str:
        return f"Alphabet({self.names!r})"


#: Default session alphabet (no weight symbols).
ALPHABET = Alphabet()


def _coeff(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    raise TypeError(f"coefficient must be int or Fraction, got {type(value).__name__}")


def _grlex_key(expo: tuple) -> tuple:
    return (sum(expo), expo)


class MPoly:
    """Immutable sparse multivariate polynomial with rational coefficients."""

    __slots__ = ("alphabet", "terms")

    def __init__(self, terms=None, alphabet: Alphabet = ALPHABET):
        clean: dict = {}
        if terms:
            width = len(alphabet)
            for expo, c in terms.items():
                c = _coeff(c)
                if c:
                    expo = tuple(expo)
                    if len(expo) != width:
                        raise ValueError("exponent tuple does not match alphabet")
                    clean[expo] = c
        self.alphabet = alphabet
        self.terms = clean

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls, alphabet: Alphabet = ALPHABET) -> "MPoly":
        return cls({}, alphabet)

    @classmethod
    def const(cls, value, alphabet: Alphabet = ALPHABET) -> "MPoly":
        value = _coeff(value)
        if not value:
            return cls({}, alphabet)
        return cls({(0,) * len(alphabet): value}, alphabet)

    @classmethod
    def var(cls, name: str, alphabet: Alphabet = ALPHABET) -> "MPoly":
        if name not in alphabet.index:
            raise KeyError(f"unknown variable {name!r}")
        expo = [0] * len(alphabet)
        expo[alphabet.index[name]] = 1
        return cls({tuple(expo): Fraction(1)}, alphabet)

    @classmethod
    def from_text(cls, text: str, alphabet: Alphabet = ALPHABET) -> "MPoly":
        """Parse the canonical rendering (sums of ``c*v^e*...`` terms)."""
        return _poly_from_text(text, alphabet)

    # -- basic queries -------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_const(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and not any(next(iter(self.terms))))

    def const_value(self) -> Fraction:
        if not self.terms:
            return Fraction(0)
        if not self.is_const():
            raise ValueError("polynomial is not constant")
        return next(iter(self.terms.values()))

    def degree(self, var: Optional[str] = None) -> int:
        """Degree in ``var``, or total degree.  The zero polynomial has -1."""
        if not self.terms:
            return -1
        if var is None:
            return max(sum(e) for e in self.terms)
        i = self.alphabet.index[var]
        return max(e[i] for e in self.terms)

    def variables(self) -> tuple:
        present = set()
        for expo in self.terms:
            for i, e in enumerate(expo):
                if e:
                    present.add(i)
        return tuple(self.alphabet.names[i] for i in sorted(present))

    def sorted_terms(self) -> list:
        return sorted(self.terms.items(), key=lambda kv: _grlex_key(kv[0]), reverse=True)

    def leading_term(self) -> tuple:
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        expo = max(self.terms, key=_grlex_key)
        return expo, self.terms[expo]

    def leading_coeff(self) -> Fraction:
        return self.leading_term()[1]

    # -- arithmetic ----------------------------------------------------------

    def _check(self, other: "MPoly") -> None:
        if self.alphabet != other.alphabet:
            raise ValueError("polynomials over different alphabets")

    def _coerce(self, other) -> Optional["MPoly"]:
        if isinstance(other, MPoly):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction)):
            return MPoly.const(other, self.alphabet)
        return None

    def __add__(self, other) -> "MPoly":
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        out = dict(self.terms)
        for expo, c in other.terms.items():
            v = out.get(expo, Fraction(0)) + c
            if v:
                out[expo] = v
            else:
                out.pop(expo, None)
        res = MPoly.zero(self.alphabet)
        res.terms = out
        return res

    __radd__ = __add__

    def __neg__(self) -> "MPoly":
        res = MPoly.zero(self.alphabet)
        res.terms = {e: -c for e, c in self.terms.items()}
        return res

    def __sub__(self, other) -> "MPoly":
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "MPoly":
        return (-self) + other

    def __mul__(self, other) -> "MPoly":
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                expo = tuple(a + b for a, b in zip(e1, e2))
                v = out.get(expo, Fraction(0)) + c1 * c2
                if v:
                    out[expo] = v
                else:
                    out.pop(expo, None)
        res = MPoly.zero(self.alphabet)
        res.terms = out
        return res

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> "MPoly":
        if not isinstance(exponent, int) or exponent < 0:
            raise ValueError("polynomial power must be a nonnegative integer")
        result = MPoly.const(1, self.alphabet)
        base = self
        e = exponent
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __truediv__(self, other) -> "MPoly":
        if isinstance(other, (int, Fraction)):
            other = _coeff(other)
            if not other:
                raise ZeroDivisionError("division by zero scalar")
            res = MPoly.zero(self.alphabet)
            res.terms = {e: c / other for e, c in self.terms.items()}
            return res
        return NotImplemented

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            return self.is_const() and self.const_value() == other
        if not isinstance(other, MPoly):
            return NotImplemented
        return self.alphabet == other.alphabet and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.alphabet, frozenset(self.terms.items())))

    # -- structure -----------------------------------------------------------

    def collect_in(self, var: str) -> list:
        """Coefficients c_0..c_d (each free of ``var``) with self = sum c_m*var^m.

        The zero polynomial collects to the empty list.
        """
        if not self.terms:
            return []
        i = self.alphabet.index[var]
        deg = max(e[i] for e in self.terms)
        buckets: list = [dict() for _ in range(deg + 1)]
        for expo, c in self.terms.items():
            stripped = list(expo)
            m = stripped[i]
            stripped[i] = 0
            buckets[m][tuple(stripped)] = c
        out = []
        for bucket in buckets:
            poly = MPoly.zero(self.alphabet)
            poly.terms = bucket
            out.append(poly)
        return out

    def subst(self, values: dict) -> "MPoly":
        """Substitute variables by polynomials or numbers; others are kept."""
        repl = {}
        for name, val in values.items():
            idx = self.alphabet.index[name]
            if isinstance(val, MPoly):
                self._check(val)
                repl[idx] = val
            else:
                repl[idx] = MPoly.const(val, self.alphabet)
        out = MPoly.zero(self.alphabet)
        pow_cache: dict = {}
        for expo, c in self.terms.items():
            piece = MPoly.const(c, self.alphabet)
            kept = list(expo)
            for idx, poly in repl.items():
                e = expo[idx]
                if e:
                    kept[idx] = 0
                    key = (idx, e)
                    if key not in pow_cache:
                        pow_cache[key] = poly ** e
                    piece = piece * pow_cache[key]
            mono = MPoly.zero(self.alphabet)
            mono.terms = {tuple(kept): Fraction(1)}
            out = out + piece * mono
        return out

    def shift(self, var: str, offset: int) -> "MPoly":
        """Substitute var -> var + offset."""
        if offset == 0:
            return self
        return self.subst({var: MPoly.var(var, self.alphabet) + offset})

    def eval(self, point: dict) -> Fraction:
        """Exact value at a point covering every variable that occurs."""
        idx_val = {}
        for name, val in point.items():
            idx_val[self.alphabet.index[name]] = _coeff(val)
        total = Fraction(0)
        for expo, c in self.terms.items():
            v = c
            for i, e in enumerate(expo):
                if e:
                    if i not in idx_val:
                        raise ValueError(
                            f"no value for variable {self.alphabet.names[i]!r}")
                    v *= idx_val[i] ** e
            total += v
        return total

    def derivative(self, var: str) -> "MPoly":
        i = self.alphabet.index[var]
        out: dict = {}
        for expo, c in self.terms.items():
            e = expo[i]
            if e:
                new = list(expo)
                new[i] = e - 1
                key = tuple(new)
                v = out.get(key, Fraction(0)) + c * e
                if v:
                    out[key] = v
                else:
                    out.pop(key, None)
        res = MPoly.zero(self.alphabet)
        res.terms = out
        return res

    # -- content and division --------------------------------------------------

    def content(self) -> Fraction:
        """Positive rational c with self/c integer-coefficient and content 1."""
        if not self.terms:
            return Fraction(0)
        num = 0
        den = 1
        for c in self.terms.values():
            num = math.gcd(num, abs(c.numerator))
            den = den * c.denominator // math.gcd(den, c.denominator)
        return Fraction(num, den)

    def primitive(self) -> "MPoly":
        """self / content(): integer coefficients, content 1, sign preserved."""
        if not self.terms:
            return self
        return self / self.content()

    def try_divexact(self, divisor: "MPoly") -> Optional["MPoly"]:
        """Exact quotient self/divisor, or None when division is not exact."""
        self._check(divisor)
        if divisor.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        if self.is_zero():
            return self
        d_expo, d_coeff = divisor.leading_term()
        rem = dict(self.terms)
        quot: dict = {}
        while rem:
            expo = max(rem, key=_grlex_key)
            diff = tuple(a - b for a, b in zip(expo, d_expo))
            if any(e < 0 for e in diff):
                return None
            q = rem[expo] / d_coeff
            quot[diff] = quot.get(diff, Fraction(0)) + q
            for e2, c2 in divisor.terms.items():
                key = tuple(a + b for a, b in zip(diff, e2))
                v = rem.get(key, Fraction(0)) - q * c2
                if v:
                    rem[key] = v
                else:
                    rem.pop(key, None)
        res = MPoly.zero(self.alphabet)
        res.terms = {e: c for e, c in quot.items() if c}
        return res

    def divexact(self, divisor: "MPoly") -> "MPoly":
        out = self.try_divexact(divisor)
        if out is None:
            raise ValueError("division is not exact")
        return out

    # -- rendering ---------------------------------------------------------------

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for expo, c in self.sorted_terms():
            mono = "*".join(
                name if e == 1 else f"{name}^{e}"
                for name, e in zip(self.alphabet.names, expo) if e)
            mag = abs(c)
            if mono and mag == 1:
                body = mono
            elif mono:
                body = f"{mag}*{mono}"
            else:
                body = str(mag)
            if not parts:
                parts.append(f"-{body}" if c < 0 else body)
            else:
                parts.append(f" - {body}" if c < 0 else f" + {body}")
        return "".join(parts)

    def __repr__(self) -> str:
        return f"MPoly({self})"


# -- gcd machinery -----------------------------------------------------------


def _pos_primitive(poly: MPoly) -> MPoly:
    """Primitive part with positive leading coefficient."""
    if poly.is_zero():
        return poly
    poly = poly.primitive()
    if poly.leading_coeff() < 0:
        poly = -poly
    return poly


def _trim(coeffs: list) -> list:
    while coeffs and coeffs[-1].is_zero():
        coeffs.pop()
    return coeffs


def _from_coeffs(coeffs: list, var: str, alphabet: Alphabet) -> MPoly:
    v = MPoly.var(var, alphabet)
    total = MPoly.zero(alphabet)
    power = MPoly.const(1, alphabet)
    for c in coeffs:
        total = total + c * power
        power = power * v
    return total


def _prem(a: list, b: list, alphabet: Alphabet) -> list:
    """Pseudo-remainder of coefficient lists in one variable (b nonzero)."""
    r = list(a)
    _trim(r)
    db = len(b) - 1
    lb = b[-1]
    while len(r) - 1 >= db and r:
        dr = len(r) - 1
        lr = r[-1]
        shift = dr - db
        new = [lb * c for c in r[:-1]]
        while len(new) < db + shift:
            new.append(MPoly.zero(alphabet))
        for i in range(db):
            new[shift + i] = new[shift + i] - lr * b[i]
        r = _trim(new)
    return r


def _content_in(poly: MPoly, var: str) -> MPoly:
    coeffs = [c for c in poly.collect_in(var) if not c.is_zero()]
    g = coeffs[0]
    for c in coeffs[1:]:
        g = mp_gcd(g, c)
        if g.is_const():
            break
    return _pos_primitive(g)


def _monomial_content(poly: MPoly) -> tuple:
    mins = None
    for expo in poly.terms:
        if mins is None:
            mins = list(expo)
        else:
            mins = [min(a, b) for a, b in zip(mins, expo)]
        if not any(mins):
            break
    return tuple(mins)


def _strip_monomial(poly: MPoly, mono: tuple) -> MPoly:
    if not any(mono):
        return poly
    out = MPoly.zero(poly.alphabet)
    out.terms = {tuple(a - b for a, b in zip(expo, mono)): c
                 for expo, c in poly.terms.items()}
    return out


def _to_int_list(coeffs) -> list:
    scale = 1
    for c in coeffs:
        scale = scale * c.denominator // math.gcd(scale, c.denominator)
    ints = [int(c * scale) for c in coeffs]
    g = 0
    for c in ints:
        g = math.gcd(g, c)
    return [c // g for c in ints] if g else ints


def _int_prs_gcd(fa: list, fb: list) -> list:
    """Primitive-PRS gcd of integer coefficient lists (ascending powers)."""
    fa, fb = list(fa), list(fb)
    while fb:
        if len(fa) < len(fb):
            fa, fb = fb, fa
            continue
        lb = fb[-1]
        r = fa
        while r and len(r) >= len(fb):
            lr = r[-1]
            shift = len(r) - len(fb)
            new = [lb * c for c in r[:-1]]
            for i in range(len(fb) - 1):
                new[shift + i] -= lr * fb[i]
            while new and new[-1] == 0:
                new.pop()
            r = new
        g = 0
        for c in r:
            g = math.gcd(g, c)
        if g:
            r = [c // g for c in r]
        fa, fb = fb, r
    return fa


def _uni_gcd(a: MPoly, b: MPoly, var: str) -> MPoly:
    """Primitive-PRS gcd for polynomials univariate in ``var``."""
    fa = _to_int_list([c.const_value() for c in a.collect_in(var)])
    fb = _to_int_list([c.const_value() for c in b.collect_in(var)])
    out_c = _int_prs_gcd(fa, fb)
    alphabet = a.alphabet
    v = MPoly.var(var, alphabet)
    out = MPoly.zero(alphabet)
    power = MPoly.const(1, alphabet)
    for c in out_c:
        if c:
            out = out + MPoly.const(c, alphabet) * power
        power = power * v
    return _pos_primitive(out)


def _specialized_coeffs(poly: MPoly, var: str, point: dict) -> list:
    """Coefficient list of poly in ``var`` with the other variables evaluated."""
    vi = poly.alphabet.index[var]
    idx_val = {poly.alphabet.index[name]: Fraction(v) for name, v in point.items()}
    deg = poly.degree(var)
    out = [Fraction(0)] * (deg + 1)
    for expo, c in poly.terms.items():
        v = c
        for i, e in enumerate(expo):
            if e and i != vi:
                v *= idx_val[i] ** e
        out[expo[vi]] += v
    while out and not out[-1]:
        out.pop()
    return out


def _gcd_degree_zero_in(a: MPoly, b: MPoly, var: str, rng) -> bool:
    """Sound one-sided test that gcd(a, b) is free of ``var``.

    Specializing the other variables at a point where deg_var(a) survives,
    every common divisor keeps its var-degree, so a constant specialized gcd
    certifies a var-free gcd.  Returns False when undecided.
    """
    names = [name for name in set(a.variables()) | set(b.variables())
             if name != var]
    target = a.degree(var)
    for _ in range(4):
        point = {name: rng.randint(-19, 19) for name in names}
        ca = _specialized_coeffs(a, var, point)
        if len(ca) - 1 != target:
            continue
        cb = _specialized_coeffs(b, var, point)
        if not cb:
            continue
        g = _int_prs_gcd(_to_int_list(ca), _to_int_list(cb))
        return len(g) <= 1
    return False


def mp_gcd(a: MPoly, b: MPoly) -> MPoly:
    """Greatest common divisor, primitive with positive leading coefficient.

    Uses primitive polynomial remainder sequences, recursing on the variable
    of highest degree.  gcd(a, 0) is the normalized primitive part of a.
    """
    a._check(b)
    alphabet = a.alphabet
    if a.is_zero():
        return _pos_primitive(b)
    if b.is_zero():
        return _pos_primitive(a)
    mono_a = _monomial_content(a)
    mono_b = _monomial_content(b)
    common = tuple(min(x, y) for x, y in zip(mono_a, mono_b))
    if any(mono_a) or any(mono_b):
        a = _strip_monomial(a, mono_a)
        b = _strip_monomial(b, mono_b)
    mono_gcd = MPoly.zero(alphabet)
    mono_gcd.terms = {common: Fraction(1)}
    if a.is_const() or b.is_const():
        return _pos_primitive(mono_gcd)
    if a == b or a == -b:
        return _pos_primitive(mono_gcd * a)
    vars_a = set(a.variables())
    vars_b = set(b.variables())
    shared = vars_a & vars_b
    if not shared:
        return _pos_primitive(mono_gcd)
    if vars_a <= shared and vars_b <= shared and len(shared) == 1:
        (v,) = shared
        return _pos_primitive(mono_gcd * _uni_gcd(a, b, v))
    # probe for a constant gcd before committing to the PRS
    rng = random.Random(1729)
    if all(_gcd_degree_zero_in(a, b, name, rng)
           for name in sorted(shared, key=alphabet.index.get)):
        return _pos_primitive(mono_gcd)
    # cheap divisibility shortcuts before the PRS
    if a.degree() >= b.degree() and a.try_divexact(b) is not None:
        return _pos_primitive(mono_gcd * b)
    if b.degree() >= a.degree() and b.try_divexact(a) is not None:
        return _pos_primitive(mono_gcd * a)
    best_var = None
    best_deg = 0
    for name in alphabet.names:
        d = max(a.degree(name), b.degree(name))
        if d > best_deg:
            best_deg = d
            best_var = name
    v = best_var
    da, db = a.degree(v), b.degree(v)
    if da == 0:
        return _pos_primitive(mono_gcd * mp_gcd(a, _content_in(b, v)))
    if db == 0:
        return _pos_primitive(mono_gcd * mp_gcd(_content_in(a, v), b))
    ca = _content_in(a, v)
    cb = _content_in(b, v)
    pa = a.divexact(ca)
    pb = b.divexact(cb)
    cg = mp_gcd(ca, cb)
    big, small = (pa, pb) if da >= db else (pb, pa)
    big_c = _trim(big.collect_in(v))
    small_c = _trim(small.collect_in(v))
    while True:
        rem = _prem(big_c, small_c, alphabet)
        if not rem:
            g_c = small_c
            break
        if len(rem) == 1:
            g_c = [MPoly.const(1, alphabet)]
            break
        rem_poly = _pos_primitive(_from_coeffs(rem, v, alphabet))
        cont = _content_in(rem_poly, v)
        rem_poly = rem_poly.divexact(cont)
        big_c, small_c = small_c, _trim(rem_poly.collect_in(v))
    g = _from_coeffs(g_c, v, alphabet)
    g = g.divexact(_content_in(g, v))
    return _pos_primitive(mono_gcd * g * cg)


def mp_lcm(a: MPoly, b: MPoly) -> MPoly:
    """Least common multiple, normalized primitive with positive lead."""
    if a.is_zero() or b.is_zero():
        return MPoly.zero(a.alphabet)
    return _pos_primitive((a * b).divexact(mp_gcd(a, b)))


# -- canonical text parsing ----------------------------------------------------


def _poly_from_text(text: str, alphabet: Alphabet) -> MPoly:
    s = text.replace("**", "^").strip()
    if not s:
        raise ValueError("empty polynomial text")
    # split into signed additive chunks
    chunks = []
    sign = 1
    i = 0
    if s[0] in "+-":
        sign = -1 if s[0] == "-" else 1
        i = 1
    start = i
    while i <= len(s):
        if i == len(s) or s[i] in "+-":
            chunks.append((sign, s[start:i].strip()))
            if i < len(s):
                sign = -1 if s[i] == "-" else 1
            start = i + 1
        i += 1
    total = MPoly.zero(alphabet)
    for sign, chunk in chunks:
        if not chunk:
            raise ValueError(f"malformed polynomial text: {text!r}")
        term = MPoly.const(sign, alphabet)
        for factor in (f.strip() for f in chunk.split("*")):
            if not factor:
                raise ValueError(f"malformed polynomial text: {text!r}")
            if "^" in factor:
                base, _, expo = factor.partition("^")
                base = base.strip()
                e = int(expo)
            else:
                base, e = factor, 1
            if base in alphabet.index:
                term = term * MPoly.var(base, alphabet) ** e
            else:
                if "/" in base:
                    num, _, den = base.partition("/")
                    value = Fraction(int(num), int(den))
                else:
                    value = Fraction(int(base))
                term = term * MPoly.const(value, alphabet) ** e
        total = total + term
    return total
