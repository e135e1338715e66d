"""The global multiplicity lower bound and its finiteness scan.

For a definite unitary group the multiplicity of a global type tau is

    m(tau) = C_1 dim(tau) + sum_{g in R} 1/|K_g| sum_{x in K_g noncentral} Tr tau(x),

with C_1 = |mu_E| * sum_g 1/|K_g|.  Each noncentral x contributes at most
C_x n^|S(tau)| prod_v P_{x,v}(lambda_v), so

    m(tau) >= C_1 dim(tau) - C_2 n^|S(tau)| prod_v P_v(lambda_v),

with C_2 = sum_{g, x} C_x / |K_g| and P_v = sum_x P_{x,v}.  The masses
|K_g|, the constants C_x and the polynomials P_{x,v} come from global
arithmetic and are inputs here.

Config (JSON)::

    {"n": 2, "mu_E": 2, "masses": [2, 4],
     "C_2": "1/2",
     "P_v": [{"place": 0, "coeffs": [[[0, 0], 1]]}],
     "places": [{"q": 3}, {"q": 5}],
     "terms": [{"mass": 0, "C_x": 1, "P": [{"place": 0, "coeffs": ...}]}]}

``C_2``/``P_v`` may be omitted when ``terms`` is given; they are then
aggregated from the terms.  ``coeffs`` lists [exponent vector, coefficient]
pairs; coefficients are ints, floats or rational strings.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product

from .archweyl import Poly, dominant_weights, weyl_dim
from .towerfield import is_prime, prime_power

__all__ = [
    "GlobalConfig", "TypeDescriptor", "ScanResult", "load_config", "config_from_dict",
    "c1", "min_cuspidal_dim", "type_dimension", "lower_bound", "positivity_scan",
    "certified_scan", "crossover",
]


def _num(x):
    """Exact Fraction for ints and rational strings; float stays float."""
    if isinstance(x, float):
        return Fraction(x) if x.is_integer() else x
    return Fraction(x)


@dataclass(frozen=True)
class GlobalConfig:
    n: int
    mu_E: int
    masses: tuple
    C_2: object = None
    P_v: tuple = ()
    places: tuple = ()
    terms: tuple = ()

    def __post_init__(self):
        if not is_prime(self.n):
            raise ValueError(f"n={self.n} must be prime")
        if any(int(m) <= 0 for m in self.masses):
            raise ValueError("masses must be positive integers")
        bad = [m for m in self.masses if m % self.mu_E]
        if bad:
            raise ValueError(f"masses {bad} are not divisible by mu_E={self.mu_E}")

    @property
    def infinite_places(self) -> int:
        return len(self.P_v)

    def aggregated(self) -> tuple[object, tuple]:
        """(C_2, P_v) from explicit values or from the noncentral terms."""
        if self.C_2 is not None:
            return self.C_2, self.P_v
        if not self.terms:
            raise ValueError("config needs C_2 or a list of noncentral terms")
        C2 = sum(Fraction(t["C_x"]) / self.masses[t["mass"]] for t in self.terms)
        places = max(len(t["P"]) for t in self.terms)
        P = []
        for v in range(places):
            acc = Poly(self.n)
            for t in self.terms:
                acc = acc + t["P"][v]
            P.append(acc)
        return C2, tuple(P)


def _poly_list(n, items):
    out = {}
    for it in items:
        out[int(it["place"])] = Poly.from_coeffs(n, it["coeffs"])
    return tuple(out[i] for i in sorted(out))


def config_from_dict(d: dict) -> GlobalConfig:
    n = int(d["n"])
    terms = tuple(
        {"mass": int(t["mass"]), "C_x": _num(t["C_x"]), "P": _poly_list(n, t["P"])}
        for t in d.get("terms", ())
    )
    cfg = GlobalConfig(
        n=n,
        mu_E=int(d["mu_E"]),
        masses=tuple(int(m) for m in d["masses"]),
        C_2=_num(d["C_2"]) if "C_2" in d else None,
        P_v=_poly_list(n, d.get("P_v", ())),
        places=tuple(int(p["q"]) for p in d.get("places", ())),
        terms=terms,
    )
    if cfg.C_2 is None and terms:
        C2, P = cfg.aggregated()
        cfg = GlobalConfig(cfg.n, cfg.mu_E, cfg.masses, C2, P, cfg.places, terms)
    return cfg


def load_config(path) -> GlobalConfig:
    with open(path) as fh:
        return config_from_dict(json.load(fh))


@dataclass(frozen=True)
class TypeDescriptor:
    """finite: (q_v, dim_v) for v in S(tau); weights: one dominant weight
    per infinite place."""
    finite: tuple = ()
    weights: tuple = ()

    @property
    def S_size(self) -> int:
        return len(self.finite)


def c1(cfg: GlobalConfig) -> Fraction:
    if not cfg.masses:
        raise ValueError("masses must be nonempty")
    return cfg.mu_E * sum(Fraction(1, m) for m in cfg.masses)


def min_cuspidal_dim(q: int, n: int) -> int:
    """(q-1)(q^2-1)...(q^(n-1)-1), the smallest supercuspidal type dimension."""
    prime_power(q)
    return math.prod(q ** i - 1 for i in range(1, n))


def type_dimension(desc: TypeDescriptor, n: int | None = None) -> int:
    for q, dim in desc.finite:
        if n is not None and dim < min_cuspidal_dim(q, n):
            raise ValueError(f"dim {dim} at q={q} is below the minimal cuspidal dimension")
    return math.prod(d for _, d in desc.finite) * math.prod(weyl_dim(w) for w in desc.weights)


def lower_bound(cfg: GlobalConfig, desc: TypeDescriptor, C_2=None, P_v=None):
    """C_1 dim(tau) - C_2 n^|S(tau)| prod_v P_v(lambda_v); exact when the
    inputs are rational."""
    if C_2 is None or P_v is None:
        agg_C2, agg_P = cfg.aggregated()
        C_2 = agg_C2 if C_2 is None else C_2
        P_v = agg_P if P_v is None else P_v
    if C_2 < 0:
        raise ValueError("C_2 must be nonnegative")
    if len(P_v) != len(desc.weights):
        raise ValueError("one polynomial per infinite place is required")
    penalty = C_2 * cfg.n ** desc.S_size
    for P, w in zip(P_v, desc.weights):
        penalty = penalty * P(w)
    return c1(cfg) * type_dimension(desc, cfg.n) - penalty


@dataclass(frozen=True)
class ScanResult:
    """Exceptional descriptors (bound <= 0) inside the box, with the
    checks that the set is complete: every boundary point of the box has a
    positive bound that increases along each weight axis up to ``2*box``,
    and the exceptional set does not change when the box is doubled."""
    box: int
    exceptional: tuple
    boundary_positive: bool
    monotone: bool
    stable: bool = True
    extras: dict = field(default_factory=dict)

    @property
    def certified(self) -> bool:
        return self.boundary_positive and self.monotone and self.stable


def _subsets(places):
    for r in range(len(places) + 1):
        yield from combinations(places, r)


def _check_degrees(cfg, P_v):
    deg = (cfg.n * cfg.n - cfg.n) // 2
    for P in P_v:
        if P.degree() >= deg:
            raise ValueError(f"P_v has degree {P.degree()}, not below the Weyl degree {deg}")


def _exceptional(cfg, C_2, P_v, places, box):
    n = cfg.n
    out = []
    for S in _subsets(places):
        finite = tuple((q, min_cuspidal_dim(q, n)) for q in S)
        grids = [list(dominant_weights(n, box)) for _ in P_v]
        for ws in product(*grids):
            desc = TypeDescriptor(finite, tuple(ws))
            if lower_bound(cfg, desc, C_2, P_v) <= 0:
                out.append(desc)
    return tuple(out)


def _edge_checks(cfg, C_2, P_v, places, box):
    """Positivity on the outer face a_1 = box and monotonicity along a_1
    from there to 2*box, for every subset and every other coordinate."""
    n = cfg.n
    positive = monotone = True
    for S in _subsets(places):
        finite = tuple((q, min_cuspidal_dim(q, n)) for q in S)
        grids = [list(dominant_weights(n, box)) for _ in P_v]
        for v in range(len(P_v)):
            face = [w for w in grids[v] if w[0] == box]
            others = [g if i != v else face for i, g in enumerate(grids)]
            for ws in product(*others):
                prev = None
                for s in range(0, box + 1):
                    ws2 = list(ws)
                    ws2[v] = (ws[v][0] + s,) + ws[v][1:]
                    b = lower_bound(cfg, TypeDescriptor(finite, tuple(ws2)), C_2, P_v)
                    if s == 0 and b <= 0:
                        positive = False
                    if prev is not None and b < prev:
                        monotone = False
                    prev = b
    return positive, monotone


def positivity_scan(cfg: GlobalConfig, C_2=None, P_v=None, places=None, box: int = 10,
                    check_stability: bool = True) -> ScanResult:
    """Descriptors with lower_bound <= 0, ranging over subsets of ``places``
    (each at the minimal cuspidal dimension) and dominant weights with
    a_n = 0 (one representative per twist class) and a_1 <= box at every
    infinite place."""
    agg_C2, agg_P = cfg.aggregated()
    C_2 = agg_C2 if C_2 is None else C_2
    P_v = agg_P if P_v is None else tuple(P_v)
    places = cfg.places if places is None else tuple(places)
    _check_degrees(cfg, P_v)
    if C_2 == 0:
        return ScanResult(box, (), True, True, True)
    exc = _exceptional(cfg, C_2, P_v, places, box)
    positive, monotone = _edge_checks(cfg, C_2, P_v, places, box)
    stable = True
    if check_stability:
        exc2 = _exceptional(cfg, C_2, P_v, places, 2 * box)
        stable = set(exc2) == set(exc)
    return ScanResult(box, exc, positive, monotone, stable)


def crossover(cfg: GlobalConfig, desc: TypeDescriptor, place: int = 0, axis: int = 0,
              C_2=None, P_v=None, limit: int = 10 ** 4) -> int:
    """Smallest s0 such that the bound is nondecreasing along
    lambda_place + s e_axis for all s0 <= s <= limit."""
    def at(s):
        ws = list(desc.weights)
        w = list(ws[place])
        w[axis] += s
        ws[place] = tuple(w)
        return lower_bound(cfg, TypeDescriptor(desc.finite, tuple(ws)), C_2, P_v)

    vals = [at(s) for s in range(limit + 1)]
    s0 = 0
    for s in range(1, limit + 1):
        if vals[s] < vals[s - 1]:
            s0 = s
    return s0


def certified_scan(cfg: GlobalConfig, box: int = 4, max_box: int = 64, **kw) -> ScanResult:
    """Run :func:`positivity_scan`, doubling the box until the result is
    certified or ``max_box`` is passed; returns the last scan."""
    while True:
        scan = positivity_scan(cfg, box=box, **kw)
        if scan.certified or 2 * box > max_box:
            return scan
        box *= 2
