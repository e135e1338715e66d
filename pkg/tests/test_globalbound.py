import json
import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from typecount.archweyl import Poly
from typecount.globalbound import (
    GlobalConfig, TypeDescriptor, c1, certified_scan, config_from_dict, crossover, load_config, lower_bound,
    min_cuspidal_dim, positivity_scan, type_dimension,
)

ONE = (Poly.const(2, 1),)


def test_c1_examples():
    assert c1(GlobalConfig(2, 2, (2,))) == 1
    assert c1(GlobalConfig(2, 2, (2, 4))) == Fraction(3, 2)
    with pytest.raises(ValueError):
        c1(GlobalConfig(2, 2, ()))


def test_masses_divisible_by_mu():
    with pytest.raises(ValueError):
        GlobalConfig(2, 4, (2,))
    with pytest.raises(ValueError):
        GlobalConfig(4, 1, (1,))


@given(st.lists(st.integers(1, 30).map(lambda m: 2 * m), min_size=1, max_size=6), st.randoms())
def test_c1_exact_and_permutation_invariant(masses, rnd):
    from math import lcm
    v = c1(GlobalConfig(2, 2, tuple(masses)))
    shuffled = list(masses)
    rnd.shuffle(shuffled)
    assert v == c1(GlobalConfig(2, 2, tuple(shuffled)))
    assert lcm(*masses) % v.denominator == 0


@pytest.mark.parametrize("q,n,want", [(3, 2, 2), (2, 3, 3), (5, 2, 4)])
def test_min_cuspidal_dim(q, n, want):
    assert min_cuspidal_dim(q, n) == want


def test_type_dimension_examples():
    assert type_dimension(TypeDescriptor((), ((0, 0),))) == 1
    assert type_dimension(TypeDescriptor(((3, 2),), ((1, 0),)), 2) == 4
    assert type_dimension(TypeDescriptor(((3, 2), (5, 4)), ((2, 0),)), 2) == 8 * 3
    with pytest.raises(ValueError):
        type_dimension(TypeDescriptor(((5, 3),), ()), 2)


def test_lower_bound_examples():
    cfg = GlobalConfig(2, 2, (2,))
    desc = TypeDescriptor(((3, 2),), ((1, 0),))
    assert lower_bound(cfg, desc, 1, ONE) == 2
    assert lower_bound(cfg, desc, 0, ONE) == c1(cfg) * 4
    with pytest.raises(ValueError):
        lower_bound(cfg, desc, -1, ONE)


@given(st.integers(0, 20), st.fractions(0, 10))
def test_lower_bound_at_most_main_term(a, C2):
    cfg = GlobalConfig(2, 2, (2, 4))
    desc = TypeDescriptor(((3, 2),), ((a, 0),))
    assert lower_bound(cfg, desc, C2, ONE) <= c1(cfg) * type_dimension(desc, 2)


def test_scan_zero_C2_empty():
    cfg = GlobalConfig(2, 2, (2,), C_2=Fraction(0), P_v=ONE, places=(3,))
    assert positivity_scan(cfg, box=5).exceptional == ()


def test_scan_matches_direct_inequality():
    # C_2/C_1 = 3, P = 1: (a, 0) exceptional iff mindim * (a + 1) <= 3 * 2^|S|
    cfg = GlobalConfig(2, 2, (2,), C_2=Fraction(3), P_v=ONE, places=(3, 5))
    scan = positivity_scan(cfg, box=10)
    got = {(tuple(q for q, _ in d.finite), d.weights[0][0]) for d in scan.exceptional}
    want = set()
    for S in [(), (3,), (5,), (3, 5)]:
        md = 1
        for q in S:
            md *= min_cuspidal_dim(q, 2)
        for a in range(11):
            if md * (a + 1) <= 3 * 2 ** len(S):
                want.add((S, a))
    assert got == want and scan.certified


def test_scan_degree_precondition():
    cfg = GlobalConfig(2, 2, (2,), C_2=Fraction(1), P_v=(Poly.var(2, 0),))
    with pytest.raises(ValueError):
        positivity_scan(cfg, box=3)


def test_scan_stable_under_doubling_random_configs():
    rng = random.Random(8)
    for _ in range(5):
        n = 3
        P = Poly.from_coeffs(3, [[[1, 0, 0], rng.randint(0, 3)], [[0, 0, 0], rng.randint(1, 4)]])
        cfg = GlobalConfig(n, 2, (2, 4), C_2=Fraction(rng.randint(1, 6)), P_v=(P,), places=(2,))
        a = certified_scan(cfg, box=4)
        b = positivity_scan(cfg, box=2 * a.box)
        assert a.certified and set(a.exceptional) == set(b.exceptional)
        assert len(a.exceptional) < 10 ** 4


def test_crossover_along_ray():
    # dim(s, 0, 0) = (s+1)(s+2)/2 against 15 s: the step to s has size s - 14
    P = Poly.from_coeffs(3, [[[1, 0, 0], 3]])
    cfg = GlobalConfig(3, 2, (2,), C_2=Fraction(5), P_v=(P,))
    s0 = crossover(cfg, TypeDescriptor((), ((0, 0, 0),)), limit=200)
    assert s0 == 13
    vals = [lower_bound(cfg, TypeDescriptor((), ((s, 0, 0),))) for s in range(s0, 200)]
    assert all(x <= y for x, y in zip(vals, vals[1:]))


def test_config_aggregation_and_load(tmp_path):
    d = {"n": 2, "mu_E": 2, "masses": [2, 6], "places": [{"q": 5}],
         "terms": [{"mass": 0, "C_x": 1, "P": [{"place": 0, "coeffs": [[[0, 0], 1]]}]},
                   {"mass": 1, "C_x": "3", "P": [{"place": 0, "coeffs": [[[0, 0], 2]]}]}]}
    path = tmp_path / "cfg.json"
    path.write_text(json.dumps(d))
    cfg = load_config(path)
    assert cfg.C_2 == 1 and cfg.P_v[0]((0, 0)) == 3
    assert cfg == config_from_dict(d)
    desc = TypeDescriptor(((5, 4),), ((2, 0),))
    assert lower_bound(cfg, desc) == 10
