import pytest
from hypothesis import given, settings, strategies as st

from typecount.localring import (
    format_matrix, hensel_roots, make_ring, nth_power_roots, parse_matrix, poly_eval,
    polymat, ring_det, ring_mat_inv, ring_mat_mul, ring_matrix,
)
from typecount.towerfield import make_tower


@pytest.mark.parametrize("args,size", [
    (("base", 2, None, 1), 2),
    (("unramified", 2, 2, 2), 16),
    (("ramified", 3, 2, 3), 27),
])
def test_make_ring_sizes(args, size):
    R = make_ring(*args)
    assert R.size == size == sum(1 for _ in R.elements())


def test_make_ring_rejects_kind():
    with pytest.raises(ValueError):
        make_ring("split", 2, 2, 1)


@pytest.mark.parametrize("kind,q,n,k", [
    (kind, q, n, k)
    for kind in ("base", "unramified", "ramified")
    for q, n in ((2, 2), (3, 2), (2, 3), (4, 2))
    for k in (1, 2, 3)
    if (q ** n) ** k <= 2 ** 12
])
def test_unit_group_order(kind, q, n, k):
    R = make_ring(kind, q, n, k)
    units = sum(1 for a in R.elements() if R.is_unit(a))
    assert units == R.unit_count() == (R.residue_size - 1) * R.residue_size ** (k - 1)
    if kind == "unramified":
        assert units == (q ** n - 1) * q ** (n * (k - 1))


def test_ramified_valuation_of_t():
    R = make_ring("ramified", 3, 2, 5)
    t = R.from_base((0, 1))
    assert R.val(t) == 2


@settings(max_examples=60)
@given(st.data())
def test_valuation_additive(data):
    R = make_ring("ramified", 2, 3, 6)
    a = tuple(data.draw(st.integers(0, 1)) for _ in range(6))
    b = tuple(data.draw(st.integers(0, 1)) for _ in range(6))
    ab = R.mul(a, b)
    if any(a) and any(b) and R.val(a) + R.val(b) < R.k:
        assert R.val(ab) == R.val(a) + R.val(b)


@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_hensel_companion_two_roots_every_level(k):
    R = make_ring("unramified", 2, 2, k)
    coeffs = [R.from_base((c,)) for c in (1, 1, 1)]
    roots = hensel_roots(coeffs, R)
    assert len(roots) == 2 and not roots.fallback
    for r in roots:
        assert poly_eval(R, coeffs, r) == R.zero


def test_hensel_x2_minus_1_over_f9():
    R = make_ring("unramified", 3, 2, 2)
    coeffs = [R.from_base((2,)), R.zero, R.one]
    roots = hensel_roots(coeffs, R)
    assert len(roots) == 2
    assert {r[0] for r in roots} == {1, make_tower(3, 2).embed(2)}


def test_hensel_irreducible_image_no_roots():
    # x^3 + x + 1 is irreducible over F_4 (degree 3, coprime to 2)
    R = make_ring("unramified", 2, 2, 2)
    coeffs = [R.from_base((c,)) for c in (1, 1, 0, 1)]
    assert len(hensel_roots(coeffs, R)) == 0


def test_nth_power_roots_examples():
    R = make_ring("unramified", 3, 2, 1)
    assert len(nth_power_roots(R.one, R, 2)) == 2
    big = R.field
    nonsquare = big.generator  # odd power of a generator
    assert len(nth_power_roots((nonsquare,), R, 2)) == 0
    R2 = make_ring("unramified", 2, 2, 3)
    res = nth_power_roots(R2.one, R2, 2)
    assert res.fallback
    for r in res:
        assert R2.mul(r, r) == R2.one


@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_simple_root_count_constant_in_k(k):
    R = make_ring("unramified", 3, 2, k)
    coeffs = [R.from_base((c,)) for c in (2, 2, 1)]  # x^2 - x - 1, irreducible over F_3
    assert len(hensel_roots(coeffs, R)) == 2


def test_matrix_parse_roundtrip():
    g = parse_matrix("0,1,1,1:1")
    assert g == polymat([[0, 1], [1, (1, 1)]])
    assert format_matrix(g) == "0,1,1,1:1"
    with pytest.raises(ValueError):
        parse_matrix("1,2,3")


def test_ring_matrix_inverse():
    R = make_ring("unramified", 2, 2, 3)
    A = ring_matrix(R, parse_matrix("0,1,1,1:1"))
    Ainv = ring_mat_inv(R, A)
    I = ring_mat_mul(R, A, Ainv)
    assert I == ((R.one, R.zero), (R.zero, R.one))
    assert R.is_unit(ring_det(R, A))
