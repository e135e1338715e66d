"""Cuspidal characters of GL_n(F_q), n prime, via Green's formula.

A regular character theta^k of F_{q^n}^x gives a cuspidal representation
tau_k.  At an element whose characteristic polynomial is a power of one
irreducible f of degree d,

    Tr tau_k(g) = (-1)^(n-1) * prod_{i=1}^{r-1} (1 - q^i) * sum_gamma theta^k(gamma),

the sum running over the d roots of f in F_{q^n} and r being the number of
Jordan blocks of g over F_q; at every other element the trace is zero.

Conjugacy classes are found by brute force (orbits of the conjugation
action under a generating set), which gives an independent check of the
formula through the orthogonality relations.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product

from . import polyfq
from .towerfield import CycInt, char_value, gf_of_order, is_regular, make_tower, regular_orbits

__all__ = [
    "ConjClassData", "CuspidalCharacter", "gl_order", "class_data", "conj_classes",
    "green_value", "character_table", "inner_product", "trivial_character",
    "depth_zero_bound",
]


def gl_order(q: int, n: int) -> int:
    return math.prod(q ** n - q ** i for i in range(n))


@dataclass(frozen=True)
class ConjClassData:
    """Invariants of one conjugacy class of GL_n(F_q).

    ``factors`` is the factorization of the characteristic polynomial as
    (factor, multiplicity) pairs.  When that polynomial is f^(n/d) for a
    single irreducible f, ``f``/``d``/``r`` hold f, its degree and the
    number of Jordan blocks; otherwise they are None.  ``size`` is None for
    data computed from a lone matrix.
    """
    rep: tuple
    q: int
    charpoly: tuple
    factors: tuple
    f: tuple | None
    d: int | None
    r: int | None
    size: int | None = None

    @property
    def n(self) -> int:
        return len(self.rep)

    @property
    def is_central(self) -> bool:
        n = self.n
        return (all(self.rep[i][j] == 0 for i in range(n) for j in range(n) if i != j)
                and len({self.rep[i][i] for i in range(n)}) == 1)

    @property
    def primary(self) -> bool:
        """Characteristic polynomial is a power of one irreducible."""
        return self.f is not None


def class_data(A, q: int, size: int | None = None) -> ConjClassData:
    F = gf_of_order(q)
    A = tuple(tuple(row) for row in A)
    n = len(A)
    cp = polyfq.charpoly(F, A)
    factors = tuple(polyfq.factor(F, cp))
    f = d = r = None
    if len(factors) == 1:
        f, _ = factors[0]
        d = len(f) - 1
        # r = dim ker f(A) / d: the Jordan blocks of A over F_q, each
        # contributing d to the kernel of f(A)
        r = (n - polyfq.rank(F, polyfq.poly_of_matrix(F, f, A))) // d
    return ConjClassData(A, q, cp, factors, f, d, r, size)


def _generators(F, n):
    """Transvections I + c E_ij over an F_p-basis of F_q, plus diag(w, 1, ...)."""
    basis = [F.pow(F.generator, i) for i in range(F.d)]
    gens = []
    for i in range(n):
        for j in range(n):
            if i != j:
                for c in basis:
                    S = [[1 if a == b else 0 for b in range(n)] for a in range(n)]
                    S[i][j] = c
                    Sinv = [row[:] for row in S]
                    Sinv[i][j] = F.neg(c)
                    gens.append((tuple(map(tuple, S)), tuple(map(tuple, Sinv))))
    if F.order > 2:
        D = [[1 if a == b else 0 for b in range(n)] for a in range(n)]
        Dinv = [row[:] for row in D]
        D[0][0] = F.generator
        Dinv[0][0] = F.inv(F.generator)
        gens.append((tuple(map(tuple, D)), tuple(map(tuple, Dinv))))
    return gens


@lru_cache(maxsize=None)
def _conj_classes(q: int, n: int) -> tuple:
    F = gf_of_order(q)
    gens = _generators(F, n)
    seen: set = set()
    out = []
    for entries in product(F.elements(), repeat=n * n):
        A = tuple(tuple(entries[i * n:(i + 1) * n]) for i in range(n))
        if A in seen or polyfq.det(F, A) == 0:
            continue
        orbit = {A}
        frontier = [A]
        while frontier:
            nxt = []
            for X in frontier:
                for S, Sinv in gens:
                    Y = polyfq.mat_mul(F, polyfq.mat_mul(F, S, X), Sinv)
                    if Y not in orbit:
                        orbit.add(Y)
                        nxt.append(Y)
            frontier = nxt
        seen |= orbit
        # A is the first element of its orbit in enumeration order
        out.append(class_data(A, q, len(orbit)))
    assert sum(c.size for c in out) == gl_order(q, n)
    return tuple(out)


def conj_classes(q: int, n: int, budget: int | None = None) -> list[ConjClassData]:
    """All conjugacy classes of GL_n(F_q), representatives minimal in code order."""
    from .projcensus import BudgetExceeded, default_budget
    budget = default_budget() if budget is None else budget
    if gl_order(q, n) > budget:
        raise BudgetExceeded(f"|GL_{n}(F_{q})| = {gl_order(q, n)} exceeds budget {budget}")
    return list(_conj_classes(q, n))


@dataclass(frozen=True)
class CuspidalCharacter:
    """The cuspidal character tau_k of GL_n(F_q); k must be regular."""
    k: int
    q: int
    n: int

    def __post_init__(self):
        if not is_regular(self.k, make_tower(self.q, self.n)):
            raise ValueError(f"k={self.k} is not regular for q={self.q}, n={self.n}")

    def __call__(self, c: ConjClassData) -> CycInt:
        return green_value(self, c)

    def dimension(self) -> int:
        return math.prod(self.q ** i - 1 for i in range(1, self.n))


@lru_cache(maxsize=None)
def _roots_in_big(q: int, n: int, f: tuple) -> tuple:
    T = make_tower(q, n)
    big = T.big
    lifted = [T.embed(c) for c in f]
    out = []
    for x in big.units():
        acc = 0
        for c in reversed(lifted):
            acc = big.add(big.mul(acc, x), c)
        if acc == 0:
            out.append(x)
    return tuple(out)


def green_value(chi: CuspidalCharacter, c: ConjClassData) -> CycInt:
    q, n = chi.q, chi.n
    T = make_tower(q, n)
    if not c.primary:
        return CycInt.integer(0, T.order)
    roots = _roots_in_big(q, n, c.f)
    assert len(roots) == c.d
    s = CycInt.integer(0, T.order)
    for g in roots:
        s = s + char_value(chi.k, g, T)
    coef = (-1) ** (n - 1) * math.prod(1 - q ** i for i in range(1, c.r))
    return s * coef


def character_table(q: int, n: int, budget: int | None = None):
    """(classes, characters, values) with values[i][j] = chi_j(class_i)."""
    classes = conj_classes(q, n, budget)
    chars = [CuspidalCharacter(k, q, n) for k in regular_orbits(make_tower(q, n))]
    values = [[green_value(chi, c) for chi in chars] for c in classes]
    return classes, chars, values


def trivial_character(classes) -> list[CycInt]:
    return [CycInt.integer(1) for _ in classes]


def inner_product(v1, v2, classes) -> Fraction:
    """(1/|G|) sum over classes of size * v1 * conj(v2), exactly.

    ``v1``/``v2`` are class functions given as value lists aligned with
    ``classes``.  Raises ValueError if the result is not rational.
    """
    total = CycInt.integer(0)
    order = 0
    for a, b, c in zip(v1, v2, classes, strict=True):
        total = total + (a * b.conj()) * c.size
        order += c.size
    if not total.is_integer():
        raise ValueError("inner product is not rational")
    return Fraction(total.to_int(), order)


def depth_zero_bound(c: ConjClassData, q: int, n: int) -> int:
    """Upper bound for |Tr tau(c)| over all cuspidal tau of GL_n(F_q).

    n for an irreducible characteristic polynomial, 0 when the polynomial
    has two distinct irreducible factors, and prod_{i<r}(q^i - 1) for a
    noncentral scalar-times-unipotent class (the exact modulus there).
    """
    if c.is_central:
        raise ValueError("depth_zero_bound is for noncentral classes")
    if not c.primary:
        return 0
    if c.d == n:
        return n
    return math.prod(q ** i - 1 for i in range(1, c.r))
