from hypothesis import given, strategies as st

from typecount import polyfq
from typecount.towerfield import gf_of_order


def test_factor_examples():
    F = gf_of_order(2)
    assert polyfq.is_irreducible(F, (1, 1, 1))
    assert polyfq.factor(F, (1, 0, 1)) == [((1, 1), 2)]
    assert polyfq.roots(gf_of_order(3), (2, 0, 1)) == [1, 2]


def test_charpoly_and_rank():
    F = gf_of_order(3)
    A = ((0, 1), (1, 1))
    cp = polyfq.charpoly(F, A)
    assert cp == (2, 2, 1)  # x^2 - x - 1
    assert polyfq.rank(F, polyfq.poly_of_matrix(F, cp, A)) == 0
    assert polyfq.det(F, A) == 2


polys = st.lists(st.integers(0, 2), min_size=1, max_size=7).map(lambda c: tuple(c) + (1,))


@given(polys)
def test_factorization_multiplies_back(p):
    F = gf_of_order(3)
    acc = (1,)
    for f, e in polyfq.factor(F, p):
        assert polyfq.is_irreducible(F, f)
        for _ in range(e):
            acc = polyfq.mul(F, acc, f)
    assert acc == polyfq.trim(p)


@given(polys, st.lists(st.integers(0, 2), min_size=1, max_size=4).map(lambda c: tuple(c) + (1,)))
def test_divmod_identity(a, b):
    F = gf_of_order(3)
    quo, rem = polyfq.divmod_(F, a, b)
    assert polyfq.add(F, polyfq.mul(F, quo, b), rem) == polyfq.trim(a)
    assert len(polyfq.trim(rem)) < len(polyfq.trim(b))
