import cmath
import math
import random

import pytest
from hypothesis import given, settings, strategies as st

from typecount.towerfield import (
    CycInt, char_value, cyc_abs, frobenius_orbit, gf_of_order, is_regular, make_tower,
    prime_power, regular_orbits,
)


@pytest.mark.parametrize("q,n,big", [(2, 2, 4), (3, 2, 9), (2, 3, 8)])
def test_make_tower_sizes(q, n, big):
    T = make_tower(q, n)
    assert T.big.order == big and T.small.order == q
    assert len(T.base_elements()) == q


@pytest.mark.parametrize("q,n", [(2, 4), (6, 2), (1, 2)])
def test_make_tower_rejects(q, n):
    with pytest.raises(ValueError):
        make_tower(q, n)


@pytest.mark.parametrize("q,n", [(2, 2), (3, 2), (2, 3), (4, 2), (5, 2), (3, 3)])
def test_generator_and_frobenius(q, n):
    T = make_tower(q, n)
    big = T.big
    g = T.generator
    orders = [j for j in range(1, T.order + 1) if big.pow(g, j) == 1]
    assert orders[0] == q ** n - 1
    fixed = {x for x in big.elements() if T.frobenius(x) == x}
    assert fixed == set(T.base_elements())
    # the embedding is a ring homomorphism
    F = T.small
    for a in F.elements():
        for b in F.elements():
            assert T.embed(F.add(a, b)) == big.add(T.embed(a), T.embed(b))
            assert T.embed(F.mul(a, b)) == big.mul(T.embed(a), T.embed(b))


@pytest.mark.parametrize("q,n", [(2, 2), (3, 2), (2, 3), (4, 2)])
def test_modulus_is_minimal_polynomial_of_generator(q, n):
    T = make_tower(q, n)
    big = T.big
    acc = 0
    for c in reversed(T.modulus):
        acc = big.add(big.mul(acc, T.generator), T.embed(c))
    assert acc == 0 and len(T.modulus) == n + 1 and T.modulus[-1] == 1


@pytest.mark.parametrize("k,q,n,want", [(0, 2, 2, False), (1, 2, 2, True), (4, 3, 2, False)])
def test_is_regular_examples(k, q, n, want):
    assert is_regular(k, make_tower(q, n)) is want


def test_regular_orbit_examples():
    assert regular_orbits(make_tower(2, 2)) == [1]
    T = make_tower(3, 2)
    assert regular_orbits(T) == [1, 2, 5]
    assert [set(frobenius_orbit(k, T)) for k in (1, 2, 5)] == [{1, 3}, {2, 6}, {5, 7}]
    T = make_tower(2, 3)
    assert [set(frobenius_orbit(k, T)) for k in regular_orbits(T)] == [{1, 2, 4}, {3, 5, 6}]


@pytest.mark.parametrize("q,n", [(2, 2), (3, 2), (2, 3), (4, 2), (5, 2), (2, 5), (3, 3)])
def test_regular_orbits_partition_regular_indices(q, n):
    T = make_tower(q, n)
    reps = regular_orbits(T)
    covered = [x for k in reps for x in frobenius_orbit(k, T)]
    assert len(covered) == len(set(covered)) == len(reps) * n
    assert set(covered) == {k for k in range(T.order) if is_regular(k, T)}


def test_char_value_examples():
    T = make_tower(2, 2)
    assert char_value(1, 1, T) == 1
    assert char_value(0, 2, T) == 1
    w = T.generator
    assert char_value(1, w, T) + char_value(1, T.big.mul(w, w), T) == -1
    with pytest.raises(ValueError):
        char_value(1, 0, T)


@pytest.mark.parametrize("q,n", [(2, 2), (3, 2), (2, 3), (4, 2), (5, 2), (7, 2), (2, 5), (3, 3)])
def test_char_value_multiplicative_exhaustive(q, n):
    T = make_tower(q, n)
    big = T.big
    k = regular_orbits(T)[0]
    for x in big.units():
        cx = char_value(k, x, T)
        for y in big.units():
            assert char_value(k, big.mul(x, y), T) == cx * char_value(k, y, T)


def test_cyc_abs_examples():
    z = CycInt.zeta(3)
    assert cyc_abs(CycInt.integer(1)) == pytest.approx(1.0)
    assert cyc_abs(z + z * z) == pytest.approx(1.0)
    assert cyc_abs(CycInt.integer(0)) == 0.0


@pytest.mark.parametrize("m", [1, 2, 3, 4, 6, 8, 9, 12, 15, 24, 63])
def test_sum_of_all_roots_reduces_to_zero(m):
    total = sum((CycInt.zeta(m, j) for j in range(m)), CycInt.integer(0, m))
    assert total == 0 or m == 1


def test_prime_subgroup_coset_relation():
    # sum over a full coset of the order-3 subgroup of mu_12 vanishes
    coset = sum((CycInt.zeta(12, 1 + 4 * j) for j in range(3)), CycInt.integer(0))
    assert coset == 0


def test_conjugation_inverts_roots():
    for j in range(8):
        assert CycInt.zeta(8, j).conj() == CycInt.zeta(8, -j)
        assert CycInt.zeta(8, j) * CycInt.zeta(8, j).conj() == 1


cyc = st.builds(
    lambda m, terms: CycInt.from_exponents(m, terms),
    st.sampled_from([3, 4, 8, 12, 15]),
    st.lists(st.tuples(st.integers(0, 30), st.integers(-5, 5)), max_size=6),
)


@given(cyc, cyc, cyc)
def test_cycint_ring_laws(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert (a - a) == 0
    assert (a * b).conj() == a.conj() * b.conj()


@given(cyc, cyc)
def test_cycint_numeric_agrees(a, b):
    assert abs(complex(a * b) - complex(a) * complex(b)) < 1e-9 * (1 + abs(complex(a)) * abs(complex(b)))
    assert abs(complex(a + b) - complex(a) - complex(b)) < 1e-9


@settings(max_examples=30)
@given(st.integers(0, 10 ** 6))
def test_fifty_term_products_numeric(seed):
    rng = random.Random(seed)
    m = rng.choice([7, 8, 9, 24, 63])
    exact, numeric = CycInt.integer(1, m), 1 + 0j
    for _ in range(50):
        j = rng.randrange(m)
        exact = exact * CycInt.zeta(m, j)
        numeric *= cmath.exp(2j * math.pi * j / m)
    assert abs(complex(exact) - numeric) < 1e-10


@pytest.mark.parametrize("q", [2, 3, 4, 5, 7, 8, 9, 16, 25, 27])
def test_field_axioms_spot(q):
    F = gf_of_order(q)
    p, _ = prime_power(q)
    for a in F.units():
        assert F.mul(a, F.inv(a)) == 1
        assert F.add(a, F.neg(a)) == 0
    assert all(F.trace_to_prime(a) < p for a in F.elements())
