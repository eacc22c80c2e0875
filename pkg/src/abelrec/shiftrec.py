"""Discovery of functional shift recurrences for Abel-type sums.

The ansatz couples an n-shift with a simultaneous (r, s) parameter shift:
in the default ("sample") orientation a term with offsets (dn, dr) stands
for coeff * a_{n+dn}(r+dr, s-dr).  Collecting powers of k in the cleared
summand combination turns the ansatz into an exact linear system whose
nullspace vectors are recurrences; every candidate must additionally pass
the exact numeric sum-level oracle before it is returned.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import ClassVar, Optional

from .linalg import RFMatrix, nullspace
from .poly import MPoly, mp_gcd, mp_lcm
from .ratfunc import RatFunc
from .summand import AbelSummand, abel_shift_ratio


class NoRecurrenceFound(RuntimeError):
    """The (L, M) search space up to max_order is exhausted."""

    def __init__(self, max_order: int):
        self.max_order = max_order
        super().__init__(
            f"no recurrence found with n-order and shift-order up to {max_order}")


class CannotIsolate(ValueError):
    """The highest pure n-shift term is missing, so nothing can be solved for."""


@dataclass(frozen=True)
class ShiftTerm:
    """coeff * a_{n+dn}(r+dr, s-dr)."""

    dn: int
    dr: int
    coeff: MPoly


@dataclass(frozen=True)
class ShiftRecurrence:
    """A sum of shift terms that vanishes identically."""

    terms: tuple
    orientation: str = "sample"

    kind: ClassVar[str] = "shift"

    @property
    def order_n(self) -> int:
        return max(t.dn for t in self.terms)

    @property
    def order_shift(self) -> int:
        return max(abs(t.dr) for t in self.terms)

    def coefficient(self, dn: int, dr: int) -> Optional[MPoly]:
        for term in self.terms:
            if term.dn == dn and term.dr == dr:
                return term.coeff
        return None

    def to_json_dict(self) -> dict:
        return {
            "kind": "shift",
            "terms": [
                {"dn": t.dn, "dr": t.dr, "ds": -t.dr, "coeff": str(t.coeff)}
                for t in self.terms
            ],
            "orders": {"L": self.order_n, "M": self.order_shift},
        }

    @classmethod
    def from_json_dict(cls, data: dict, alphabet=None) -> "ShiftRecurrence":
        from .poly import ALPHABET
        alphabet = alphabet or ALPHABET
        terms = tuple(
            ShiftTerm(item["dn"], item["dr"],
                      MPoly.from_text(item["coeff"], alphabet))
            for item in data["terms"])
        return cls(terms)

    def text(self) -> str:
        parts = []
        for t in self.terms:
            coeff = str(t.coeff)
            body = f"({coeff})*{_a_text(t.dn, t.dr)}"
            parts.append(body)
        return " + ".join(parts) + " = 0"


def _shift_text(base: str, offset: int) -> str:
    if offset == 0:
        return base
    return f"{base}+{offset}" if offset > 0 else f"{base}{offset}"


def _a_text(dn: int, dr: int) -> str:
    return f"a_{{{_shift_text('n', dn)}}}({_shift_text('r', dr)}, {_shift_text('s', -dr)})"


@dataclass(frozen=True)
class SolverConfig:
    """Knobs for the (L, M) search and the numeric validation gate."""

    max_order: int = 4
    orientation: str = "sample"
    points: int = 20
    seed: int = 0

    def __post_init__(self):
        if self.max_order < 1:
            raise ValueError("max_order must be at least 1")
        if self.points < 1:
            raise ValueError("points must be at least 1")


def assemble_system(summand: AbelSummand, order_n: int, order_shift: int,
                    orientation: str = "sample") -> RFMatrix:
    """Linear system for the ansatz coefficients b_{ij}.

    Column (i, j) holds the k-power coefficients of the cleared shift
    quotient with n-shift i and parameter shift j; rows are labelled by the
    power of k.  Entries are polynomials in the remaining parameters.
    """
    alphabet = summand.alphabet
    cols = [(i, j) for i in range(order_n + 1) for j in range(order_shift + 1)]
    ratios = [abel_shift_ratio(summand, i, j, orientation) for i, j in cols]
    den_lcm = MPoly.const(1, alphabet)
    for ratio in ratios:
        den_lcm = mp_lcm(den_lcm, ratio.den)
    numerators = [ratio.num * den_lcm.divexact(ratio.den) for ratio in ratios]
    columns = [num.collect_in("k") for num in numerators]
    depth = max(len(c) for c in columns)
    zero = RatFunc(0, 1, alphabet)
    entries = []
    for m in range(depth):
        entries.append(tuple(
            RatFunc(col[m], 1) if m < len(col) else zero for col in columns))
    return RFMatrix(tuple(entries), tuple(range(depth)), tuple(cols))


def _vector_to_recurrence(vector, col_labels, orientation) -> Optional[ShiftRecurrence]:
    terms = []
    for (i, j), coeff in zip(col_labels, vector):
        if coeff.is_zero():
            continue
        dr = j if orientation == "sample" else -j
        terms.append(ShiftTerm(i, dr, coeff))
    if len(terms) < 2:
        return None
    return ShiftRecurrence(_normalize_terms(terms), orientation)


def _normalize_terms(terms) -> tuple:
    """Canonical order (dn desc, |dr| asc), collective content 1, fixed sign."""
    terms = sorted(terms, key=lambda t: (-t.dn, abs(t.dr)))
    polys = [t.coeff for t in terms]
    gcd = MPoly.zero(polys[0].alphabet)
    one = MPoly.const(1, polys[0].alphabet)
    for poly in polys:
        gcd = mp_gcd(gcd, poly)
        if gcd == one:
            break
    if not gcd.is_zero() and gcd != one:
        polys = [poly.divexact(gcd) for poly in polys]
    content = None
    for poly in polys:
        c = poly.content()
        content = c if content is None else _frac_gcd(content, c)
    if content not in (None, 1):
        polys = [poly / content for poly in polys]
    if polys[0].leading_coeff() < 0:
        polys = [-poly for poly in polys]
    return tuple(ShiftTerm(t.dn, t.dr, poly) for t, poly in zip(terms, polys))


def _frac_gcd(a, b):
    import math
    from fractions import Fraction
    return Fraction(math.gcd(a.numerator, b.numerator),
                    a.denominator * b.denominator
                    // math.gcd(a.denominator, b.denominator))


def _candidate_key(rec: ShiftRecurrence):
    return (sum(max(t.coeff.degree(), 0) for t in rec.terms),
            tuple(str(t.coeff) for t in rec.terms))


def candidate_recurrences(summand: AbelSummand, order_n: int, order_shift: int,
                          orientation: str = "sample") -> list:
    """All nullspace recurrences at the given orders, deterministically sorted."""
    matrix = assemble_system(summand, order_n, order_shift, orientation)
    candidates = []
    for vector in nullspace(matrix):
        rec = _vector_to_recurrence(vector, matrix.col_labels, orientation)
        if rec is not None:
            candidates.append(rec)
    candidates.sort(key=_candidate_key)
    return candidates


def find_shift_recurrence(summand: AbelSummand,
                          config: SolverConfig = SolverConfig()) -> ShiftRecurrence:
    """Search (L, M) in increasing L+M (smaller L first) up to max_order.

    Every candidate from the nullspace must pass the exact sum-level numeric
    oracle; the first validated recurrence is returned.
    """
    from . import certify
    max_order = config.max_order
    for total in range(2 * max_order + 1):
        for order_n in range(max(0, total - max_order),
                             min(total, max_order) + 1):
            order_shift = total - order_n
            for rec in candidate_recurrences(summand, order_n, order_shift,
                                             config.orientation):
                report = certify.numeric_validate(summand, rec,
                                                  points=config.points,
                                                  seed=config.seed)
                if report.ok:
                    return rec
    raise NoRecurrenceFound(max_order)


def combination_residue(summand: AbelSummand, rec: ShiftRecurrence) -> RatFunc:
    """k-level residue of the locked combination; zero for sound recurrences."""
    alphabet = summand.alphabet
    total = RatFunc(0, 1, alphabet)
    for term in rec.terms:
        j = term.dr if rec.orientation == "sample" else -term.dr
        ratio = abel_shift_ratio(summand, term.dn, j, rec.orientation)
        total = total + RatFunc(term.coeff, 1) * ratio
    return total


@dataclass(frozen=True)
class SolvedTerm:
    """coeff * a_{n+dn}(r+dr, s-dr) on the right-hand side (dn < 0)."""

    dn: int
    dr: int
    coeff: RatFunc


@dataclass(frozen=True)
class SolvedForm:
    """The recurrence with its highest pure n-shift term isolated as a_n."""

    rhs: tuple
    order_n: int
    order_shift: int
    orientation: str = "sample"

    def text(self) -> str:
        parts = []
        for term in self.rhs:
            coeff = term.coeff
            if coeff.den.is_const() and coeff.den.const_value() == 1:
                body = f"({coeff.num})*{_a_text(term.dn, term.dr)}"
            else:
                body = (f"({coeff.num})/({coeff.den})"
                        f"*{_a_text(term.dn, term.dr)}")
            parts.append(body)
        return "a_{n}(r, s) = " + " + ".join(parts)


def solved_form(rec: ShiftRecurrence) -> SolvedForm:
    """Isolate the a_{n}(r, s) term after reindexing n -> n - L.

    The remaining terms move to the right-hand side with rational-function
    coefficients.
    """
    order_n = rec.order_n
    pivot = rec.coefficient(order_n, 0)
    if pivot is None:
        raise CannotIsolate(
            "no pure a_{n+L}(r, s) term to solve for at the top order")
    pivot = pivot.shift("n", -order_n)
    rhs = []
    for term in rec.terms:
        if term.dn == order_n and term.dr == 0:
            continue
        coeff = RatFunc(-term.coeff.shift("n", -order_n), pivot)
        rhs.append(SolvedTerm(term.dn - order_n, term.dr, coeff))
    rhs.sort(key=lambda t: (-t.dn, -t.dr))
    return SolvedForm(tuple(rhs), order_n, rec.order_shift, rec.orientation)
