from __future__ import annotations

import random

from hypothesis import given, settings, strategies as st

from hlc import linalg
from hlc.gf import make_field
from hlc.poly import Poly, product

F13 = make_field(13)
coeff_lists = st.lists(st.integers(0, 12), max_size=8)


@settings(max_examples=200, deadline=None)
@given(coeff_lists, coeff_lists)
def test_divmod_identity(a, b):
    pa, pb = Poly(F13, a), Poly(F13, b)
    if not pb:
        return
    q, r = divmod(pa, pb)
    assert q * pb + r == pa
    assert not r or r.degree < pb.degree


@settings(max_examples=200, deadline=None)
@given(coeff_lists, st.integers(1, 6), st.integers(1, 12))
def test_mod_binomial_matches_divmod(a, n, c):
    pa = Poly(F13, a)
    binom = Poly(F13, [F13.neg(c)] + [0] * (n - 1) + [1])
    assert pa.mod_binomial(n, c) == pa % binom


@settings(max_examples=100, deadline=None)
@given(coeff_lists, coeff_lists, st.integers(0, 12))
def test_evaluation_is_a_ring_map(a, b, x):
    pa, pb = Poly(F13, a), Poly(F13, b)
    assert (pa * pb)(x) == F13.mul(pa(x), pb(x))
    assert (pa + pb)(x) == F13.add(pa(x), pb(x))


def test_product_of_linear_factors_over_coset():
    # (X - 4)(X - 12)(X - 10) = X^3 - 4^3
    prod = product(F13, [Poly(F13, [F13.neg(g), 1]) for g in (4, 12, 10)])
    assert prod == Poly(F13, [F13.neg(12), 0, 0, 1])
    assert repr(Poly(F13, [7, 0, 0, 0, 0, 0, 7])) == "7X^6 + 7"


def _random_matrix(rng, rows, cols, q=13):
    return [[rng.randrange(q) for _ in range(cols)] for _ in range(rows)]


def test_rank_nullspace_inverse():
    rng = random.Random(5)
    for _ in range(50):
        rows, cols = rng.randint(1, 5), rng.randint(1, 6)
        M = _random_matrix(rng, rows, cols)
        rk = linalg.rank(F13, M)
        ns = linalg.nullspace(F13, M, cols)
        assert len(ns) == cols - rk
        for v in ns:
            assert all(F13.dot(row, v) == 0 for row in M)
        if rows == cols and rk == rows:
            inv = linalg.inverse(F13, M)
            assert linalg.matmul(F13, M, inv) == linalg.identity(rows)


def test_echelon_express():
    rng = random.Random(9)
    ech = linalg.Echelon(F13)
    vecs = [[rng.randrange(13) for _ in range(5)] for _ in range(3)]
    added = [v for v in vecs if ech.add(v)]
    assert ech.rank == linalg.rank(F13, vecs)
    coeffs = [3, 7, 11][:len(added)]
    target = [F13.total(F13.mul(c, v[j]) for c, v in zip(coeffs, added)) for j in range(5)]
    combo = ech.express(target)
    assert combo is not None
    rebuilt = [0] * 5
    for idx, c in combo.items():
        rebuilt = [F13.add(x, F13.mul(c, y)) for x, y in zip(rebuilt, vecs[idx])]
    assert rebuilt == target


def test_rref_is_canonical():
    A = [[1, 2, 3], [2, 4, 7]]
    B = [[3, 6, 10], [1, 2, 4]]       # same row space
    assert linalg.rref(F13, A) == linalg.rref(F13, B)
