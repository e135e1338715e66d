import itertools

import pytest

from typecount import polyfq
from typecount.localring import polymat
from typecount.simpletypes import (
    _Quotient, _ident, _madd, group_data, group_data_brute, iwahori_index, make_minimal_ram,
    make_minimal_unram, make_type, p_valuation, psi_beta, theta_pairing, type_trace_bound,
)
from typecount.towerfield import gf_of_order


@pytest.mark.parametrize("q,n,m,lam", [(2, 2, 1, 1), (2, 2, 2, 2), (3, 2, 2, 3), (2, 3, 2, 8)])
def test_unram_lambda_dim(q, n, m, lam):
    d = make_minimal_unram(q, n, m)
    assert d.lam_dim == lam and d.k == (m + 1) // 2 and d.level == m + 1


@pytest.mark.parametrize("q,n,m", [(2, 2, 1), (2, 2, 3), (2, 3, 1), (2, 3, 2), (3, 3, 4)])
def test_ramified_valid(q, n, m):
    d = make_minimal_ram(q, n, m)
    assert p_valuation(d.beta_num, "ramified", n) - n * d.s == -m


def test_ramified_gcd_rejected():
    with pytest.raises(ValueError):
        make_minimal_ram(2, 2, 2)


@pytest.mark.parametrize("q,n,m", [(2, 2, 1), (2, 2, 2), (3, 2, 3), (2, 3, 2)])
def test_unram_beta_valuation_and_field(q, n, m):
    d = make_minimal_unram(q, n, m)
    F = gf_of_order(q)
    assert p_valuation(d.beta_num, "unramified", n) == 0 and d.s == m
    res = tuple(tuple(e[0] if e else 0 for e in row) for row in d.beta_num)
    assert polyfq.is_irreducible(F, polyfq.charpoly(F, res))


@pytest.mark.parametrize("q,n,want", [(2, 2, 3), (3, 2, 4), (2, 3, 21)])
def test_iwahori_index(q, n, want):
    assert iwahori_index(q, n) == want


def test_group_data_examples():
    g = group_data(make_type("unramified", 2, 2, 2))
    assert g.W_dim == 2 and g.W_size == 4
    assert group_data(make_type("unramified", 3, 2, 2)).order_J // group_data(make_type("unramified", 3, 2, 2)).order_J1 == 8
    assert group_data(make_type("unramified", 2, 3, 2)).W_dim == 6
    with pytest.raises(ValueError):
        group_data(make_type("unramified", 2, 2, 3))


@pytest.mark.parametrize("case,q,n,m", [
    ("unramified", 2, 2, 2), ("unramified", 3, 2, 2), ("unramified", 2, 2, 4),
    ("ramified", 2, 3, 2), ("ramified", 3, 3, 2),
])
def test_group_orders_match_coset_count(case, q, n, m):
    d = make_type(case, q, n, m)
    g = group_data(d)
    assert group_data_brute(d) == (g.order_H1, g.order_J1, g.order_J)
    assert g.order_J1 // g.order_H1 == g.W_size == d.lam_dim ** 2
    assert g.order_J // g.order_H1 == g.W_size * g.residue_units


@pytest.mark.parametrize("q,n,m", list(itertools.product((2, 3), (2, 3), (2, 4))))
def test_pairing_nondegenerate(q, n, m):
    d = make_type("unramified", q, n, m)
    P = theta_pairing(d)
    assert P.is_alternating() and P.rank == n * n - n
    assert theta_pairing(d, twist=1).gram == P.gram
    assert theta_pairing(d, unit_factors=True, seed=7).gram == P.gram
    vals = P.character_values()
    assert all(vals[i][i] == 1 for i in range(P.dim))


def test_pairing_rejects_odd_m():
    with pytest.raises(ValueError):
        theta_pairing(make_type("unramified", 2, 2, 3))


@pytest.mark.parametrize("m", [1, 2])
def test_psi_beta_homomorphism(m):
    d = make_type("unramified", 2, 2, m)
    Q = _Quotient(d)
    F = gf_of_order(2)
    one = _ident(2)
    elems = [Q.red(_madd(F, one, X)) for X in Q.P_elements(d.h1)]
    for x in elems:
        for y in elems:
            assert psi_beta(d, Q.mul(x, y)) == psi_beta(d, x) * psi_beta(d, y)


def test_trace_bound_examples():
    d = make_type("unramified", 2, 2, 2)
    b = type_trace_bound(polymat([[0, 1], [1, 1]]), d)
    assert b.bound <= 2 and b.lemma_applies
    b = type_trace_bound(polymat([[1, (0, 1)], [0, 2]]), make_type("unramified", 3, 2, 2))
    assert b.bound == 0 and b.closed_form == 0
    g = polymat([[1, (0, 1)], [(0, 1), (1, 1)]])
    b = type_trace_bound(g, d, route="formula")
    assert b.bound <= b.closed_form == 2 * 4 ** 2 * d.lam_dim
    with pytest.raises(ValueError):
        type_trace_bound(polymat([[1, 0], [0, 1]]), d)


def test_trace_bound_irreducible_residue_at_most_n():
    for q in (2, 3):
        F = gf_of_order(q)
        for m in (1, 2, 3, 4):
            d = make_type("unramified", q, 2, m)
            for flat in itertools.product(range(q), repeat=4):
                res = (flat[:2], flat[2:])
                if not polyfq.is_irreducible(F, polyfq.charpoly(F, res)):
                    continue
                g = polymat([[(res[i][j], (i + j) % q) for j in range(2)] for i in range(2)])
                b = type_trace_bound(g, d, route="formula")
                assert b.bound <= 2


def test_ramified_trace_bound_within_closed_form():
    d = make_type("ramified", 2, 3, 2)
    g = polymat([[1, 1, 0], [0, 1, 1], [(0, 1), 0, 1]])
    b = type_trace_bound(g, d, route="formula")
    assert b.bound <= b.closed_form
