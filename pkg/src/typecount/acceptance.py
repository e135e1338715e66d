"""Acceptance suites: the ten desk-scale checks of the whole package.

Each check returns a :class:`Result`; ``SUITES`` maps suite names (and the
numbers 1 to 10) to the checks, and :func:`run` evaluates a selection.
"""
from __future__ import annotations

import cmath
import math
import random
import time
from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from . import polyfq
from .archweyl import (
    cc_degree_scan, dominant_weights, regular_bound, schur_trace, weyl_dim, weyl_polynomial,
)
from .globalbound import (
    TypeDescriptor, c1, config_from_dict, lower_bound, positivity_scan,
)
from .greenchar import (
    CuspidalCharacter, character_table, class_data, inner_product, trivial_character,
)
from .localring import polymat_residue
from .projcensus import census, census_formula, census_induced, in_iwahori
from .simpletypes import make_type, theta_pairing
from .towerfield import cyc_abs, gf_of_order, make_tower, regular_orbits

__all__ = ["Result", "SUITES", "GLOBAL_FIXTURES", "run", "suite_names"]

GREEN_GRID = ((2, 2), (3, 2), (4, 2), (5, 2), (2, 3), (3, 3))
ABS_TOL = 1e-9


@dataclass(frozen=True)
class Result:
    number: int
    name: str
    passed: bool
    detail: str
    seconds: float = 0.0

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"[{status}] {self.number:2d} {self.name}: {self.detail}"


# --- matrix grids -----------------------------------------------------------------

def _invertible(F, g) -> bool:
    return polyfq.det(F, polymat_residue(g)) != 0


def _central(g) -> bool:
    n = len(g)
    return (all(not any(g[i][j]) for i in range(n) for j in range(n) if i != j)
            and len({g[i][i] for i in range(n)}) == 1)


def exhaustive_gl(q: int, n: int, k: int):
    """Every element of GL_n(F_q[t]/t^k) as a polymat."""
    F = gf_of_order(q)
    entries = list(product(F.elements(), repeat=k))
    for flat in product(entries, repeat=n * n):
        g = tuple(tuple(flat[i * n:(i + 1) * n]) for i in range(n))
        if _invertible(F, g):
            yield g


def sampled_gl(q: int, n: int, k: int, count: int, seed: int):
    F = gf_of_order(q)
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        g = tuple(tuple(tuple(rng.randrange(q) for _ in range(k)) for _ in range(n))
                  for _ in range(n))
        if _invertible(F, g):
            out.append(g)
    return out


def census_grid(budget=None):
    """(q, n, k, g) over the census grids: exhaustive noncentral GL_2 for
    q in {2, 3}, k <= 2, and 150 sampled GL_3 elements per level for q = 2."""
    for q in (2, 3):
        for k in (1, 2):
            for g in exhaustive_gl(q, 2, k):
                if not _central(g):
                    yield q, 2, k, g
    for k in (1, 2):
        for g in sampled_gl(2, 3, k, 150, seed=1000 + k):
            if not _central(g):
                yield 2, 3, k, g


def _residue_kind(F, g):
    cp = polyfq.charpoly(F, polymat_residue(g))
    factors = polyfq.factor(F, cp)
    if len(factors) > 1:
        return "split"
    return "irreducible" if factors[0][1] == 1 else "primary"


# --- criteria ------------------------------------------------------------------------

def check_green_orthogonality(budget=None) -> tuple[bool, str]:
    bad = []
    total = 0
    for q, n in GREEN_GRID:
        classes, chars, values = character_table(q, n, budget)
        cols = [[values[i][j] for i in range(len(classes))] for j in range(len(chars))]
        triv = trivial_character(classes)
        for a in range(len(chars)):
            total += 1
            if inner_product(cols[a], cols[a], classes) != 1:
                bad.append((q, n, chars[a].k, "self"))
            if inner_product(cols[a], triv, classes) != 0:
                bad.append((q, n, chars[a].k, "trivial"))
            for b in range(a + 1, len(chars)):
                if inner_product(cols[a], cols[b], classes) != 0:
                    bad.append((q, n, chars[a].k, chars[b].k))
    return not bad, f"{total} cuspidal characters on {len(GREEN_GRID)} groups, failures {bad[:5]}"


def check_green_dimension(budget=None) -> tuple[bool, str]:
    bad = []
    for q, n in GREEN_GRID:
        ident = tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))
        c = class_data(ident, q)
        want = math.prod(q ** i - 1 for i in range(1, n))
        for k in regular_orbits(make_tower(q, n)):
            v = CuspidalCharacter(k, q, n)(c)
            if not (v.is_integer() and v.to_int() == want):
                bad.append((q, n, k))
    return not bad, f"identity trace equals (q-1)...(q^(n-1)-1) on all grids, failures {bad}"


def _depth_zero_abs(q, n, res, cache):
    if res not in cache:
        c = class_data(res, q)
        cache[res] = [CuspidalCharacter(k, q, n)(c) for k in regular_orbits(make_tower(q, n))]
    return cache[res]


def check_case_irreducible(budget=None) -> tuple[bool, str]:
    bad, seen = [], 0
    cache: dict = {}
    for q, n, k, g in census_grid(budget):
        F = gf_of_order(q)
        if _residue_kind(F, g) != "irreducible":
            continue
        seen += 1
        cnt = census(g, "unram", q, n, k, budget).count
        vals = _depth_zero_abs(q, n, polymat_residue(g), cache)
        big = max(cyc_abs(v) for v in vals)
        ind = census_induced(g, q, n, k, "formula", budget).count
        if cnt > n or big > n + ABS_TOL or ind != 0:
            bad.append((q, n, k, g, cnt, big, ind))
    return not bad, f"{seen} elements with irreducible residue, failures {len(bad)}"


def check_case_split(budget=None) -> tuple[bool, str]:
    bad, seen = [], 0
    cache: dict = {}
    for q, n, k, g in census_grid(budget):
        F = gf_of_order(q)
        if _residue_kind(F, g) != "split":
            continue
        seen += 1
        counts = [census(g, "unram", q, n, k, budget).count,
                  census_induced(g, q, n, k, "brute", budget).count]
        if in_iwahori(g, q):
            counts.append(census(g, "ram", q, n, k, budget).count)
        vals = _depth_zero_abs(q, n, polymat_residue(g), cache)
        if any(counts) or any(not (v.is_integer() and v.to_int() == 0) for v in vals):
            bad.append((q, n, k, g, counts))
    return not bad, f"{seen} elements with two distinct residue eigenvalues, failures {len(bad)}"


def check_census_oracles(budget=None) -> tuple[bool, str]:
    bad, compared, fixed = [], 0, 0
    for q, n, k, g in census_grid(budget):
        models = ["unram"] + (["ram"] if in_iwahori(g, q) else [])
        for model in models:
            a = census(g, model, q, n, k, budget)
            b = census_formula(g, model, q, n, k)
            compared += 1
            fixed += "every-point-fixed" in b.flags
            if a.count != b.count:
                bad.append((model, q, n, k, g, a.count, b.count))
    return not bad, f"{compared} brute/formula comparisons ({fixed} with every point fixed), mismatches {len(bad)}"


def check_pairing(budget=None) -> tuple[bool, str]:
    bad, done = [], 0
    for q, n, m in product((2, 3), (2, 3), (2, 4)):
        d = make_type("unramified", q, n, m)
        P = theta_pairing(d)
        twisted = theta_pairing(d, twist=1)
        scaled = theta_pairing(d, unit_factors=True, seed=q * 100 + n * 10 + m)
        done += 1
        ok = (P.is_alternating() and P.rank == n * n - n and P.dim == n * n - n
              and twisted.gram == P.gram and scaled.gram == P.gram)
        if not ok:
            bad.append((q, n, m, P.rank))
    return not bad, f"{done} unramified types, alternating of rank n^2-n, failures {bad}"


def check_weyl_schur(budget=None) -> tuple[bool, str]:
    bad, count = [], 0
    for n in range(1, 5):
        for w in dominant_weights(n, 6):
            for shift in (0, -2):
                lam = tuple(a + shift for a in w)
                count += 1
                if schur_trace(lam, [1] * n) != weyl_dim(lam):
                    bad.append(lam)
    degs = {n: weyl_polynomial(n).degree() for n in range(1, 6)}
    deg_ok = all(d == (n * n - n) // 2 for n, d in degs.items())
    return (not bad and deg_ok,
            f"{count} weights, mismatches {bad[:5]}, degrees {degs}")


def check_regular_bound(budget=None) -> tuple[bool, str]:
    rng = random.Random(20240)
    worst, bad, spectra = 0.0, 0, 0  # worst = max |s_lambda(x)| / bound
    for n in (2, 3):
        for _ in range(100):
            x = [cmath.exp(2j * math.pi * rng.random()) for _ in range(n)]
            spectra += 1
            bound = regular_bound(x)
            for lam in dominant_weights(n, 30):
                s = abs(schur_trace(lam, x))
                worst = max(worst, s / bound)
                if s - bound > ABS_TOL:
                    bad += 1
    return bad == 0, f"{spectra} spectra, max |trace|/bound {worst:.6f}, violations {bad}"


def check_degree_scan(budget=None) -> tuple[bool, str]:
    s = cc_degree_scan((1, 1, -1), 20, margin=0.5)
    ok = s.exponent <= 2.5 and s.passes
    return ok, f"fitted exponent {s.exponent:.3f} against Weyl degree {s.weyl_degree}"


# Five global configurations with hand-computed C_1 and lower bounds.
GLOBAL_FIXTURES = (
    {
        "config": {"n": 2, "mu_E": 2, "masses": [2], "C_2": 1,
                   "P_v": [{"place": 0, "coeffs": [[[0, 0], 1]]}], "places": [{"q": 3}]},
        "desc": {"finite": [[3, 2]], "weights": [[1, 0]]},
        "c1": "1", "bound": "2",
    },
    {
        "config": {"n": 2, "mu_E": 2, "masses": [2, 4], "C_2": "1/2",
                   "P_v": [{"place": 0, "coeffs": [[[0, 0], 2]]}], "places": [{"q": 3}, {"q": 5}]},
        "desc": {"finite": [], "weights": [[3, 0]]},
        "c1": "3/2", "bound": "5",
    },
    {
        "config": {"n": 3, "mu_E": 6, "masses": [6, 12, 12], "C_2": 3,
                   "P_v": [{"place": 0, "coeffs": [[[1, 0, 0], 1], [[0, 0, 1], -1], [[0, 0, 0], 2]]}],
                   "places": [{"q": 2}]},
        "desc": {"finite": [[2, 3]], "weights": [[2, 1, 0]]},
        "c1": "2", "bound": "12",
    },
    {
        "config": {"n": 2, "mu_E": 2, "masses": [2, 6], "places": [{"q": 5}],
                   "terms": [{"mass": 0, "C_x": 1, "P": [{"place": 0, "coeffs": [[[0, 0], 1]]}]},
                             {"mass": 1, "C_x": 3, "P": [{"place": 0, "coeffs": [[[0, 0], 2]]}]}]},
        "desc": {"finite": [[5, 4]], "weights": [[2, 0]]},
        "c1": "4/3", "bound": "10",
    },
    {
        "config": {"n": 2, "mu_E": 4, "masses": [4, 4, 8], "C_2": "2/3",
                   "P_v": [{"place": 0, "coeffs": [[[0, 0], 1]]},
                           {"place": 1, "coeffs": [[[0, 0], "1/2"]]}],
                   "places": [{"q": 2}]},
        "desc": {"finite": [], "weights": [[1, 0], [4, 0]]},
        "c1": "5/2", "bound": "74/3",
    },
)


def fixture_descriptor(fx) -> TypeDescriptor:
    d = fx["desc"]
    return TypeDescriptor(tuple(tuple(p) for p in d["finite"]),
                          tuple(tuple(w) for w in d["weights"]))


def check_global(budget=None) -> tuple[bool, str]:
    bad, sizes = [], []
    for i, fx in enumerate(GLOBAL_FIXTURES):
        cfg = config_from_dict(fx["config"])
        desc = fixture_descriptor(fx)
        if c1(cfg) != Fraction(fx["c1"]) or lower_bound(cfg, desc) != Fraction(fx["bound"]):
            bad.append((i, "value", c1(cfg), lower_bound(cfg, desc)))
        scan = positivity_scan(cfg, box=6)
        sizes.append(len(scan.exceptional))
        if not scan.certified:
            bad.append((i, "scan", scan.boundary_positive, scan.monotone, scan.stable))
    return not bad, f"{len(GLOBAL_FIXTURES)} fixtures, exceptional set sizes {sizes}, failures {bad}"


# --- registry --------------------------------------------------------------------------

_CRITERIA = (
    (1, "green-orthogonality", check_green_orthogonality),
    (2, "green-dimension", check_green_dimension),
    (3, "trace-irreducible", check_case_irreducible),
    (4, "trace-split", check_case_split),
    (5, "census-oracles", check_census_oracles),
    (6, "pairing", check_pairing),
    (7, "weyl-schur", check_weyl_schur),
    (8, "regular-bound", check_regular_bound),
    (9, "degree-scan", check_degree_scan),
    (10, "global", check_global),
)

SUITES = {name: (num, fn) for num, name, fn in _CRITERIA}


def suite_names() -> list[str]:
    return [name for _, name, _ in _CRITERIA]


def _resolve(name: str):
    if name == "all":
        return list(_CRITERIA)
    for num, nm, fn in _CRITERIA:
        if name in (nm, str(num)):
            return [(num, nm, fn)]
    raise KeyError(f"unknown suite {name!r}; choose from all, {', '.join(suite_names())}")


def run_one(num: int, name: str, fn, budget=None) -> Result:
    t0 = time.perf_counter()
    passed, detail = fn(budget)
    return Result(num, name, bool(passed), detail, time.perf_counter() - t0)


def run(suite: str = "all", budget=None) -> list[Result]:
    return [run_one(num, name, fn, budget) for num, name, fn in _resolve(suite)]
