"""Exact right-nullspace computation for matrices of rational functions.

Rows are cleared to polynomial entries, eliminated with fraction-free
(Bareiss) steps, and the basis is recovered by back-substitution over the
fraction field.  Every returned vector is rescaled to polynomial components
with collective content 1 and a fixed sign, and is re-checked against the
original matrix by exact multiplication.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .poly import MPoly, mp_gcd, mp_lcm
from .ratfunc import RatFunc


@dataclass(frozen=True)
class RFMatrix:
    """Rectangular matrix of RatFunc entries with row/column labels."""

    entries: tuple
    row_labels: tuple
    col_labels: tuple

    def __post_init__(self):
        if len(self.entries) != len(self.row_labels):
            raise ValueError("row label count mismatch")
        for row in self.entries:
            if len(row) != len(self.col_labels):
                raise ValueError("matrix is not rectangular")
        if len(set(self.row_labels)) != len(self.row_labels):
            raise ValueError("row labels must be unique")
        if len(set(self.col_labels)) != len(self.col_labels):
            raise ValueError("column labels must be unique")

    @property
    def nrows(self) -> int:
        return len(self.entries)

    @property
    def ncols(self) -> int:
        return len(self.col_labels)


def _matrix(entries, row_labels=None, col_labels=None) -> RFMatrix:
    entries = tuple(tuple(e if isinstance(e, RatFunc) else RatFunc(e)
                          for e in row) for row in entries)
    ncols = len(entries[0]) if entries else 0
    if row_labels is None:
        row_labels = tuple(range(len(entries)))
    if col_labels is None:
        col_labels = tuple(range(ncols))
    return RFMatrix(entries, tuple(row_labels), tuple(col_labels))


def _pivot_key(poly: MPoly):
    # lowest total degree first, then the grlex-smallest leading monomial
    expo, _ = poly.leading_term()
    return (poly.degree(), sum(expo), expo)


def nullspace(matrix: RFMatrix) -> list:
    """Basis of the right nullspace, as tuples of MPoly components.

    Each vector is scaled so all components are polynomials with collective
    content 1 and the first nonzero component has a positive leading
    coefficient.  An empty list means the nullspace is trivial.
    """
    nrows, ncols = matrix.nrows, matrix.ncols
    if ncols == 0:
        return []
    if nrows == 0:
        alphabet = None
        raise ValueError("matrix must have at least one row")
    alphabet = matrix.entries[0][0].alphabet
    one = MPoly.const(1, alphabet)

    # clear each row to polynomial entries; row scaling keeps the nullspace
    rows = []
    for row in matrix.entries:
        common = one
        for entry in row:
            common = mp_lcm(common, entry.den)
        cleared = [entry.num * common.divexact(entry.den) for entry in row]
        gcd = MPoly.zero(alphabet)
        for poly in cleared:
            gcd = mp_gcd(gcd, poly)
            if gcd == one:
                break
        if not gcd.is_zero() and gcd != one:
            cleared = [poly.divexact(gcd) for poly in cleared]
        rows.append(cleared)

    # strip per-column monomial content; solutions of the scaled system map
    # back to polynomial solutions via the complementary monomials
    col_monomials = []
    for col in range(ncols):
        entries = [rows[i][col] for i in range(nrows)
                   if not rows[i][col].is_zero()]
        mono = _column_monomial(entries, alphabet)
        col_monomials.append(mono)
        if mono is not None:
            for i in range(nrows):
                if not rows[i][col].is_zero():
                    rows[i][col] = rows[i][col].divexact(mono)

    # fraction-free Gauss-Jordan; the division by the previous pivot and all
    # extra reductions are all-or-nothing exact row scalings, so the kernel
    # is preserved no matter which of them fire
    pivots = []  # (pivot_row, pivot_col)
    pivot_values = []
    prev = one
    pr = 0
    for col in range(ncols):
        if pr >= nrows:
            break
        candidates = [(_pivot_key(rows[i][col]), i)
                      for i in range(pr, nrows) if not rows[i][col].is_zero()]
        if not candidates:
            continue
        _, pi = min(candidates)
        if pi != pr:
            rows[pr], rows[pi] = rows[pi], rows[pr]
        piv_row = rows[pr]
        piv = piv_row[col]
        for i in range(nrows):
            if i == pr:
                continue
            factor = rows[i][col]
            if factor.is_zero():
                continue
            new_row = [piv * rows[i][j] - factor * piv_row[j]
                       for j in range(ncols)]
            new_row[col] = MPoly.zero(alphabet)
            rows[i] = _reduce_row(new_row, prev, pivot_values, alphabet)
        prev = piv
        pivots.append((pr, col))
        pivot_values.append(piv)
        pr += 1

    pivot_cols = {c for _, c in pivots}
    free_cols = [c for c in range(ncols) if c not in pivot_cols]

    # each pivot row now has zeros in all other pivot columns, so the kernel
    # vector for a free column reads off one rational entry per pivot
    basis = []
    for free in free_cols:
        vec = [RatFunc(0, 1, alphabet) for _ in range(ncols)]
        vec[free] = RatFunc(1, 1, alphabet)
        for row_i, col_i in pivots:
            vec[col_i] = RatFunc(-rows[row_i][free], rows[row_i][col_i])
        for col, mono in enumerate(col_monomials):
            if mono is not None and vec[col]:
                vec[col] = vec[col] / RatFunc(mono, 1)
        basis.append(_polynomial_scaled_rational(vec, alphabet))

    for vec in basis:
        _assert_annihilates(matrix, vec, alphabet)
    return basis


def _column_monomial(entries, alphabet) -> Optional[MPoly]:
    if not entries:
        return None
    mins = None
    for poly in entries:
        for expo in poly.terms:
            if mins is None:
                mins = list(expo)
            else:
                mins = [min(a, b) for a, b in zip(mins, expo)]
        if mins is not None and not any(mins):
            return None
    mono = MPoly.zero(alphabet)
    mono.terms = {tuple(mins): __import__("fractions").Fraction(1)}
    return mono


def _try_scale_row(row, divisor) -> Optional[list]:
    scaled = []
    for poly in row:
        if poly.is_zero():
            scaled.append(poly)
            continue
        q = poly.try_divexact(divisor)
        if q is None:
            return None
        scaled.append(q)
    return scaled


def _reduce_row(row, prev, pivot_values, alphabet):
    one = MPoly.const(1, alphabet)
    if prev != one:
        scaled = _try_scale_row(row, prev)
        if scaled is not None:
            row = scaled
    for divisor in reversed(pivot_values[-3:]):
        if divisor.is_const():
            continue
        while True:
            scaled = _try_scale_row(row, divisor)
            if scaled is None:
                break
            row = scaled
    content = None
    for poly in row:
        if not poly.is_zero():
            c = poly.content()
            content = c if content is None else _frac_gcd(content, c)
            if content == 1:
                break
    if content not in (None, 1):
        row = [poly / content for poly in row]
    return row


def _polynomial_scaled_rational(vec, alphabet) -> tuple:
    one = MPoly.const(1, alphabet)
    common = one
    for entry in vec:
        common = mp_lcm(common, entry.den)
    return _polynomial_scaled(
        [entry.num * common.divexact(entry.den) for entry in vec], alphabet)


def _polynomial_scaled(vec, alphabet) -> tuple:
    one = MPoly.const(1, alphabet)
    polys = list(vec)
    gcd = MPoly.zero(alphabet)
    for poly in polys:
        gcd = mp_gcd(gcd, poly)
        if gcd == one:
            break
    if not gcd.is_zero() and gcd != one:
        polys = [poly.divexact(gcd) for poly in polys]
    content = None
    for poly in polys:
        if not poly.is_zero():
            c = poly.content()
            content = c if content is None else _frac_gcd(content, c)
    if content is not None and content != 1:
        polys = [poly / content for poly in polys]
    for poly in polys:
        if not poly.is_zero():
            if poly.leading_coeff() < 0:
                polys = [-q for q in polys]
            break
    return tuple(polys)


def _frac_gcd(a, b):
    import math
    from fractions import Fraction
    num = math.gcd(a.numerator, b.numerator)
    den = a.denominator * b.denominator // math.gcd(a.denominator, b.denominator)
    return Fraction(num, den)


def _assert_annihilates(matrix: RFMatrix, vec: Sequence[MPoly], alphabet) -> None:
    # accumulate num/den without normalization; only the zero test matters
    for row in matrix.entries:
        acc_num = MPoly.zero(alphabet)
        acc_den = MPoly.const(1, alphabet)
        for entry, component in zip(row, vec):
            if component.is_zero() or entry.num.is_zero():
                continue
            acc_num = acc_num * entry.den + entry.num * component * acc_den
            acc_den = acc_den * entry.den
        if not acc_num.is_zero():
            raise AssertionError("nullspace vector fails exact verification")
