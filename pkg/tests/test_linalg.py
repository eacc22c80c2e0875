import random
from fractions import Fraction

from abelrec.linalg import RFMatrix, nullspace
from abelrec.poly import MPoly
from abelrec.ratfunc import RatFunc


def P(text):
    return MPoly.from_text(text)


def matrix(rows):
    rows = tuple(tuple(RatFunc(e) if not isinstance(e, RatFunc) else e for e in row)
                 for row in rows)
    return RFMatrix(rows, tuple(range(len(rows))), tuple(range(len(rows[0]))))


def test_rank_deficient_constant():
    basis = nullspace(matrix([[1, 1], [1, 1]]))
    assert basis == [(P("1"), P("-1"))]


def test_polynomial_scaling():
    basis = nullspace(matrix([[P("n"), P("n^2")]]))
    assert basis == [(P("n"), P("-1"))]


def test_full_rank_identity():
    assert nullspace(matrix([[1, 0], [0, 1]])) == []


def test_rational_entries():
    m = matrix([[RatFunc.from_text("(n)/(k)"), RatFunc.from_text("(n^2)/(k)")]])
    assert nullspace(m) == [(P("n"), P("-1"))]


def _random_poly(rng, min_terms=0):
    names = ("n", "k")
    poly = MPoly.zero()
    for _ in range(rng.randint(min_terms, 3)):
        term = MPoly.const(rng.randint(-3, 3))
        for _ in range(rng.randint(0, 2)):
            term = term * MPoly.var(rng.choice(names))
        poly = poly + term
    return poly


def _random_ratfunc(rng, den_pool=None):
    # matrices arriving from cleared summand ratios share denominators, so
    # draw denominators from a small per-matrix pool
    if den_pool:
        den = rng.choice(den_pool)
    else:
        den = MPoly.zero()
        while den.is_zero():
            den = _random_poly(rng, min_terms=1)
    return RatFunc(_random_poly(rng), den)


def _random_matrix(rng, nrows, ncols):
    pool = [MPoly.const(1)]
    for _ in range(2):
        den = MPoly.zero()
        while den.is_zero():
            den = _random_poly(rng, min_terms=1)
        pool.append(den)
    return matrix([[_random_ratfunc(rng, pool) for _ in range(ncols)]
                   for _ in range(nrows)])


def _numeric_rank(m, point):
    rows = []
    for row in m.entries:
        rows.append([e.eval(point) for e in row])
    rank = 0
    ncols = len(rows[0])
    pr = 0
    for col in range(ncols):
        piv = None
        for i in range(pr, len(rows)):
            if rows[i][col] != 0:
                piv = i
                break
        if piv is None:
            continue
        rows[pr], rows[piv] = rows[piv], rows[pr]
        for i in range(pr + 1, len(rows)):
            if rows[i][col]:
                f = rows[i][col] / rows[pr][col]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[pr])]
        pr += 1
        rank += 1
    return rank


def test_exactness_and_dimension_on_random_matrices():
    rng = random.Random(2024)
    for trial in range(50):
        nrows = rng.randint(1, 4)
        ncols = rng.randint(1, 5)
        m = _random_matrix(rng, nrows, ncols)
        basis = nullspace(m)
        # exactness: M v = 0 symbolically
        for vec in basis:
            for row in m.entries:
                acc = RatFunc(0)
                for entry, comp in zip(row, vec):
                    acc = acc + entry * RatFunc(comp)
                assert acc.is_zero()
        # dimension: rank + nullity = ncols, rank from generic numeric points
        best = 0
        attempts = 0
        while attempts < 5:
            point = {"n": Fraction(rng.randint(2, 50), rng.randint(1, 7)),
                     "k": Fraction(rng.randint(2, 50), rng.randint(1, 7))}
            try:
                best = max(best, _numeric_rank(m, point))
            except ZeroDivisionError:
                pass
            attempts += 1
        assert best + len(basis) == ncols


def test_determinism():
    rng1, rng2 = random.Random(77), random.Random(77)
    m1 = _random_matrix(rng1, 2, 4)
    m2 = _random_matrix(rng2, 2, 4)
    b1, b2 = nullspace(m1), nullspace(m2)
    assert [[str(c) for c in v] for v in b1] == [[str(c) for c in v] for v in b2]


def test_sign_convention():
    for vec in nullspace(matrix([[P("n"), P("n"), P("0")],
                                 [P("0"), P("0"), P("0")]])):
        lead = next(c for c in vec if not c.is_zero())
        assert lead.leading_coeff() > 0
