import math

import pytest

from typecount.greenchar import (
    CuspidalCharacter, character_table, class_data, conj_classes, depth_zero_bound, gl_order,
    green_value, inner_product, trivial_character,
)
from typecount.projcensus import BudgetExceeded
from typecount.towerfield import cyc_abs, make_tower, regular_orbits

GRID = [(2, 2), (3, 2), (4, 2), (5, 2), (2, 3), (3, 3)]


@pytest.mark.parametrize("q,n,count", [(2, 2, 3), (3, 2, 8), (2, 3, 6)])
def test_class_counts(q, n, count):
    classes = conj_classes(q, n)
    assert len(classes) == count
    assert sum(c.size for c in classes) == gl_order(q, n)


def test_conj_classes_budget():
    with pytest.raises(BudgetExceeded):
        conj_classes(3, 3, budget=1000)


def test_identity_value_is_dimension():
    for q, n in GRID:
        ident = tuple(tuple(int(i == j) for j in range(n)) for i in range(n))
        for k in regular_orbits(make_tower(q, n)):
            chi = CuspidalCharacter(k, q, n)
            assert green_value(chi, class_data(ident, q)) == chi.dimension()
            assert chi.dimension() == math.prod(q ** i - 1 for i in range(1, n))


def test_elliptic_class_q2():
    chi = CuspidalCharacter(1, 2, 2)
    assert chi(class_data(((0, 1), (1, 1)), 2)) == 1


def test_split_class_is_zero():
    c = class_data(((1, 0), (0, 2)), 3)
    for k in regular_orbits(make_tower(3, 2)):
        assert CuspidalCharacter(k, 3, 2)(c) == 0


def test_non_regular_rejected():
    with pytest.raises(ValueError):
        CuspidalCharacter(4, 3, 2)


@pytest.mark.parametrize("q,n", GRID)
def test_orthonormality(q, n):
    classes, chars, values = character_table(q, n)
    cols = [[row[j] for row in values] for j in range(len(chars))]
    triv = trivial_character(classes)
    for a in range(len(chars)):
        assert inner_product(cols[a], cols[a], classes) == 1
        assert inner_product(cols[a], triv, classes) == 0
        for b in range(a + 1, len(chars)):
            assert inner_product(cols[a], cols[b], classes) == 0


@pytest.mark.parametrize("q,n", GRID)
def test_irreducible_classes_bounded_by_n(q, n):
    classes, chars, values = character_table(q, n)
    for c, row in zip(classes, values):
        if c.primary and c.d == n:
            assert max(cyc_abs(v) for v in row) <= n + 1e-9


@pytest.mark.parametrize("q,n", GRID)
def test_depth_zero_bound_is_attained_modulus(q, n):
    classes, chars, values = character_table(q, n)
    for c, row in zip(classes, values):
        if c.is_central:
            with pytest.raises(ValueError):
                depth_zero_bound(c, q, n)
            continue
        bound = depth_zero_bound(c, q, n)
        assert max(cyc_abs(v) for v in row) <= bound + 1e-9
        assert bound <= math.prod(q ** i - 1 for i in range(1, n)) or bound == n


def test_depth_zero_bound_examples():
    assert depth_zero_bound(class_data(((0, 1), (1, 1)), 2), 2, 2) == 2
    assert depth_zero_bound(class_data(((1, 0), (0, 2)), 3), 3, 2) == 0
    unip = class_data(((1, 1), (0, 1)), 2)
    assert unip.r == 1
    assert CuspidalCharacter(1, 2, 2)(unip) == -1
    assert depth_zero_bound(unip, 2, 2) == 1


def test_regular_count_from_degrees():
    # sum over cuspidal characters of dim^2 is (number of regular orbits) * dim^2
    for q, n in GRID:
        classes, chars, values = character_table(q, n)
        assert len(chars) == len(regular_orbits(make_tower(q, n)))
        assert len(chars) == sum(1 for k in range(q ** n - 1)
                                 if len({k * q ** i % (q ** n - 1) for i in range(n)}) == n) // n


def test_jordan_block_count():
    assert class_data(((2, 0, 0), (0, 2, 0), (0, 0, 2)), 3).r == 3
    assert class_data(((2, 1, 0), (0, 2, 0), (0, 0, 2)), 3).r == 2
    assert class_data(((2, 1, 0), (0, 2, 1), (0, 0, 2)), 3).r == 1
