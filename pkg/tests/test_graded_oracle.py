import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from genkoszul.graded_oracle import free_dimension, monomials, rank_q, span_dimension, syzygy_dimension
from genkoszul.ring import PolyRing

sympy = pytest.importorskip("sympy")


@given(st.integers(1, 5), st.integers(1, 6), st.integers(0, 10 ** 6))
def test_rank_matches_sympy(nr, nc, seed):
    rng = random.Random(seed)
    dense = [[Fraction(rng.choice((0, 0, 1, -1, 2, 3)), rng.choice((1, 2))) for _ in range(nc)] for _ in range(nr)]
    if nr > 1 and rng.random() < 0.5:
        dense[-1] = [a + 2 * b for a, b in zip(dense[0], dense[1 % nr])]
    rows = [{j: a for j, a in enumerate(r) if a} for r in dense]
    assert rank_q(rows) == sympy.Matrix(dense).rank()


def test_monomial_counts():
    assert len(monomials(3, 6)) == 28
    assert monomials(2, -1) == []
    assert free_dimension(2, [0, 1], 2) == 3 + 2


def test_span_and_syzygies_of_koszul_pair():
    R = PolyRing(["x", "y"])
    x, y = R.gens()
    gens = [(x,), (y,)]
    # (x, y)_D has codimension 1 in degree D >= 1; Syz is generated by (y, -x) in degree 2
    assert [span_dimension(R, gens, [0], D) for D in range(4)] == [0, 2, 3, 4]
    assert [syzygy_dimension(R, gens, [0], D) for D in range(4)] == [0, 0, 1, 2]
