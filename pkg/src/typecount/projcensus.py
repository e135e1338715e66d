"""Finite coset models X_k and fixed-point censuses.

Unramified model: points of P^{n-1}(O_E/p_E^k) whose coordinates reduce to
an F_q-basis of F_{q^n}, modulo unit scalars.  All coordinates of such a
point are units, so the canonical representative has u_0 = 1.

Ramified model: tuples of units (u_0, ..., u_{n-1}) of O_E/p_E^k modulo
unit scalars, standing for [u_0 : u_1 w : ... : u_{n-1} w^{n-1}].  The
Iwahori subgroup acts through the staggered congruences, so a matrix entry
g_ij is needed modulo p_E^{k+i-j}; the ring at level k+n-1 covers every
entry.  Canonical representative again has u_0 = 1.

Two counting routes: ``census`` enumerates X_k; ``census_formula`` counts
without enumeration (roots of characteristic polynomials, the
scalar-perturbation recursion, the x^n - eta test).
"""
from __future__ import annotations

import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import islice, product

from . import polyfq
from .localring import (
    hensel_roots, make_ring, polymat, polymat_coeff, polymat_degree,
    polymat_mul, polymat_residue, ring_charpoly, ring_matrix, ring_mat_vec, _is_scalar,
)
from .towerfield import gf_of_order, make_tower

__all__ = [
    "DEFAULT_BUDGET", "BudgetExceeded", "FormulaNotCovered", "CensusReport", "ScalarDecomp",
    "normalize_model", "unram_size", "ram_size", "model_size",
    "UnramifiedModel", "RamifiedModel", "get_model",
    "enum_unram_Xk", "enum_ram_Xk", "act_unram", "act_ram",
    "census", "census_formula", "scalar_reduction", "census_induced", "flag_representatives",
    "in_iwahori",
]

DEFAULT_BUDGET = 10 ** 8


class BudgetExceeded(RuntimeError):
    """An enumeration would exceed the configured budget."""


class FormulaNotCovered(ValueError):
    """No closed-form counting route applies to this input."""


def default_budget() -> int:
    env = os.environ.get("TYPECOUNT_BUDGET")
    return int(float(env)) if env else DEFAULT_BUDGET


def normalize_model(model: str) -> str:
    m = {"unram": "unramified", "unramified": "unramified",
         "ram": "ramified", "ramified": "ramified"}.get(model)
    if m is None:
        raise ValueError(f"unknown model {model!r}")
    return m


def unram_size(q: int, n: int, k: int) -> int:
    x1 = math.prod(q ** n - q ** i for i in range(1, n))
    return x1 * q ** (n * (n - 1) * (k - 1))


def ram_size(q: int, n: int, k: int) -> int:
    return (q - 1) ** (n - 1) * q ** ((n - 1) * (k - 1))


def model_size(model: str, q: int, n: int, k: int) -> int:
    return unram_size(q, n, k) if normalize_model(model) == "unramified" else ram_size(q, n, k)


@dataclass(frozen=True)
class CensusReport:
    model: str
    q: int
    n: int
    k: int
    count: int
    route: str
    flags: frozenset = field(default_factory=frozenset)

    def row(self) -> list:
        return [self.model, self.q, self.n, self.k, self.count, self.route,
                "|".join(sorted(self.flags))]


def _check_budget(cost: int, budget: int | None):
    budget = default_budget() if budget is None else budget
    if cost > budget:
        raise BudgetExceeded(f"enumeration needs {cost} point-operations, budget is {budget}")


def in_iwahori(g, q: int) -> bool:
    """Residue upper triangular and invertible."""
    res = polymat_residue(g)
    n = len(res)
    return (all(res[i][j] == 0 for i in range(n) for j in range(i))
            and all(res[i][i] for i in range(n)))


def _check_invertible(g, q: int):
    if polyfq.det(gf_of_order(q), polymat_residue(g)) == 0:
        raise ValueError("matrix is not invertible over O_F")


class UnramifiedModel:
    """X_k for E/F unramified of degree n."""

    name = "unramified"

    def __init__(self, q: int, n: int, k: int):
        self.q, self.n, self.k = q, n, k
        self.tower = make_tower(q, n)
        self.ring = make_ring("unramified", q, n, k)
        self.size = unram_size(q, n, k)

    def _residue_frames(self):
        """Tuples (1, b_1, ..., b_{n-1}) forming an F_q-basis, in code order."""
        T = self.tower
        big = T.big
        base = T.base_elements()

        def extend(frame, span):
            if len(frame) == self.n:
                yield tuple(frame)
                return
            for b in big.units():
                if b in span:
                    continue
                new_span = {big.add(s, big.mul(c, b)) for s in span for c in base}
                yield from extend(frame + [b], new_span)

        yield from extend([1], set(base))

    def points(self):
        R = self.ring
        Q = R.residue_size
        tails = list(product(range(Q), repeat=self.k - 1))
        for frame in self._residue_frames():
            for combo in product(tails, repeat=self.n - 1):
                yield (R.one,) + tuple((b,) + tl for b, tl in zip(frame[1:], combo))

    def prepare(self, g):
        _check_invertible(g, self.q)
        return ring_matrix(self.ring, g)

    def act_prepared(self, G, u):
        R = self.ring
        v = ring_mat_vec(R, G, u)
        c = R.inv(v[0])
        return tuple(R.mul(c, x) for x in v)


class RamifiedModel:
    """X_k for E/F totally ramified of degree n (Iwahori level)."""

    name = "ramified"

    def __init__(self, q: int, n: int, k: int):
        self.q, self.n, self.k = q, n, k
        self.ring = make_ring("ramified", q, n, k)
        self.hi = make_ring("ramified", q, n, k + n - 1)
        self.size = ram_size(q, n, k)

    def points(self):
        R = self.ring
        units = list(R.units())
        for rest in product(units, repeat=self.n - 1):
            yield (R.one,) + rest

    def prepare(self, g):
        if not in_iwahori(g, self.q):
            raise ValueError("matrix is not in the Iwahori subgroup (residue not upper-triangular invertible)")
        n, k, hi = self.n, self.k, self.hi
        return tuple(
            tuple(hi.shift(hi.from_base(g[i][j]), j - i)[:k] for j in range(n))
            for i in range(n)
        )

    def act_prepared(self, C, u):
        R = self.ring
        v = ring_mat_vec(R, C, u)
        c = R.inv(v[0])
        return tuple(R.mul(c, x) for x in v)


@lru_cache(maxsize=None)
def get_model(model: str, q: int, n: int, k: int):
    model = normalize_model(model)
    return (UnramifiedModel if model == "unramified" else RamifiedModel)(q, n, k)


def enum_unram_Xk(q: int, n: int, k: int, budget: int | None = None) -> list:
    _check_budget(unram_size(q, n, k), budget)
    return list(get_model("unramified", q, n, k).points())


def enum_ram_Xk(q: int, n: int, k: int, budget: int | None = None) -> list:
    _check_budget(ram_size(q, n, k), budget)
    return list(get_model("ramified", q, n, k).points())


def act_unram(g, x, q: int, n: int, k: int):
    M = get_model("unramified", q, n, k)
    return M.act_prepared(M.prepare(polymat(g)), x)


def act_ram(g, x, q: int, n: int, k: int):
    M = get_model("ramified", q, n, k)
    return M.act_prepared(M.prepare(polymat(g)), x)


def _count_chunk(model, q, n, k, g, start, stop):
    M = get_model(model, q, n, k)
    G = M.prepare(g)
    act = M.act_prepared
    return sum(1 for u in islice(M.points(), start, stop) if act(G, u) == u)


def census(g, model: str, q: int, n: int, k: int, budget: int | None = None,
           workers: int = 1) -> CensusReport:
    """Brute-force fixed-point count of g on X_k.

    With ``workers > 1`` the point set is cut into contiguous chunks counted
    in separate processes; the sum does not depend on the partition.
    """
    model = normalize_model(model)
    g = polymat(g)
    M = get_model(model, q, n, k)
    _check_budget(M.size, budget)
    M.prepare(g)
    if workers <= 1:
        count = _count_chunk(model, q, n, k, g, 0, M.size)
    else:
        step = -(-M.size // workers)
        bounds = [(s, min(s + step, M.size)) for s in range(0, M.size, step)]
        with ProcessPoolExecutor(max_workers=workers) as ex:
            futs = [ex.submit(_count_chunk, model, q, n, k, g, a, b) for a, b in bounds]
            count = sum(f.result() for f in futs)
    flags = {"every-point-fixed"} if count == M.size else set()
    return CensusReport(model, q, n, k, count, "brute", frozenset(flags))


# --- scalar decompositions --------------------------------------------------

@dataclass(frozen=True)
class ScalarDecomp:
    """g = alpha + h with h in P^l, l maximal.

    Unramified: ``a`` is the polymat t^{-l}(g - alpha).  Ramified: ``a`` is
    the matrix w^{j-i-l} h_ij over O_E/p_E^level, together with l = n t + r,
    the exponent tables ``eps``/``e`` and ``eta``, the product of the a_ij
    with j - i = r (mod n).  ``l = 0`` with ``alpha = None`` is the pass-
    through for a residue that is not of single-eigenvalue type.
    """
    model: str
    l: int
    alpha: tuple | None = None
    a: tuple | None = None
    level: int | None = None
    t: int | None = None
    r: int | None = None
    eps: tuple | None = None
    e: tuple | None = None
    eta: tuple | None = None


def _val(poly) -> float:
    for i, c in enumerate(poly):
        if c:
            return i
    return math.inf


def _common_prefix(polys) -> float:
    L = max(len(p) for p in polys)
    pad = [tuple(p) + (0,) * (L - len(p)) for p in polys]
    for i in range(L):
        if len({p[i] for p in pad}) > 1:
            return i
    return math.inf


def _sub_scalar(F, g, alpha):
    n = len(g)
    return tuple(
        tuple(polyfq.sub(F, g[i][j], alpha) if i == j else g[i][j] for j in range(n))
        for i in range(n)
    )


def scalar_reduction(g, model: str, q: int, n: int, level: int | None = None) -> ScalarDecomp:
    """Decompose g = alpha + h with l maximal.

    Unramified: requires a scalar residue; ``level`` (in t) bounds the search
    and g central modulo t^level raises.  Ramified: requires g in the Iwahori
    subgroup; ``level`` is the E-adic precision of ``a`` (default 1).
    """
    model = normalize_model(model)
    F = gf_of_order(q)
    g = polymat(g)
    res = polymat_residue(g)
    if model == "unramified":
        if not _is_scalar(res):
            return ScalarDecomp(model, 0)
        top = polymat_degree(g) + 1 if level is None else level
        l = next((i for i in range(1, top) if not _is_scalar(polymat_coeff(g, i))), None)
        if l is None:
            raise ValueError("g is central at the working level; no decomposition")
        alpha = polyfq.trim(polymat_coeff(g, i)[0][0] for i in range(l))
        h = _sub_scalar(F, g, alpha)
        a = tuple(tuple(polyfq.trim(e[l:]) for e in row) for row in h)
        return ScalarDecomp(model, l, alpha, a)

    if not in_iwahori(g, q):
        raise ValueError("g is not in the Iwahori subgroup")
    diag = [g[i][i] for i in range(n)]
    D = _common_prefix(diag)
    if D == 0:
        return ScalarDecomp(model, 0)
    off = [n * _val(g[i][j]) + j - i for i in range(n) for j in range(n) if i != j]
    l = min(min(off, default=math.inf), n * D)
    if l == math.inf:
        raise ValueError("g is central; no decomposition")
    l = int(l)
    alpha = polyfq.trim(diag[0] if D == math.inf else diag[0][: int(D)])
    h = _sub_scalar(F, g, alpha)
    t, r = divmod(l, n)
    eps = tuple(tuple((n - 1 + r + i - j) // n for j in range(n)) for i in range(n))
    e = tuple(tuple((j - i - r) % n for j in range(n)) for i in range(n))
    prec = 1 if level is None else level
    R = make_ring("ramified", q, n, prec)
    hi = make_ring("ramified", q, n, prec + l + n - 1)
    a = tuple(
        tuple(hi.shift(hi.from_base(h[i][j]), j - i - l)[:prec] for j in range(n))
        for i in range(n)
    )
    eta = R.one
    for i in range(n):
        eta = R.mul(eta, a[i][(i + r) % n])
    dec = ScalarDecomp(model, l, alpha, a, prec, t, r, eps, e, eta)
    if not any(R.is_unit(a[i][(i + r) % n]) for i in range(n)):
        raise AssertionError("maximality failed: no unit on the r-th diagonal")
    if r == 0 and len({a[i][i][0] for i in range(n)}) == 1:
        raise AssertionError("maximality failed: residue of a is scalar")
    return dec


# --- formula route ------------------------------------------------------------

def _nonscalar_unram_count(a, q: int, n: int, j: int):
    """Fixed points of a (non-scalar residue) on X_j: roots of its
    characteristic polynomial when that is irreducible mod p, else none."""
    F = gf_of_order(q)
    res = polymat_residue(a)
    if not polyfq.is_irreducible(F, polyfq.charpoly(F, res)):
        return 0, False
    R = make_ring("unramified", q, n, j)
    roots = hensel_roots(ring_charpoly(R, ring_matrix(R, a)), R)
    return len(roots), roots.fallback


def census_formula(g, model: str, q: int, n: int, k: int) -> CensusReport:
    """Fixed-point count of g on X_k without enumerating X_k."""
    model = normalize_model(model)
    g = polymat(g)
    flags: set[str] = set()
    size = model_size(model, q, n, k)
    if model == "unramified":
        _check_invertible(g, q)
        if not _is_scalar(polymat_residue(g)):
            count, fb = _nonscalar_unram_count(g, q, n, k)
        else:
            try:
                dec = scalar_reduction(g, model, q, n)
            except ValueError:
                dec = None
            if dec is None or k <= dec.l:
                count, fb = size, False
            else:
                sub, fb = _nonscalar_unram_count(dec.a, q, n, k - dec.l)
                count = q ** (dec.l * (n * n - n)) * sub
    else:
        if not in_iwahori(g, q):
            raise FormulaNotCovered("ramified census needs g in the Iwahori subgroup")
        fb = False
        try:
            dec = scalar_reduction(g, model, q, n)
        except ValueError:
            dec = None
        if dec is None:
            count = size
        elif dec.alpha is None:
            count = 0
        elif k <= dec.l:
            count = size
        else:
            j = k - dec.l
            dec = scalar_reduction(g, model, q, n, level=j)
            R = make_ring("ramified", q, n, j)
            a = dec.a
            if dec.r == 0:
                if any(a[i][c][0] for i in range(n) for c in range(n) if i != c):
                    raise ValueError("r = 0 but residue of a is not diagonal (l not maximal)")
                count = 0
            elif not all(R.is_unit(a[i][(i + dec.r) % n]) for i in range(n)):
                count = 0
            else:
                roots = hensel_roots(ring_charpoly(R, a), R)
                fb = roots.fallback
                count = q ** ((n - 1) * dec.l) * len(roots)
    if fb:
        flags.add("hensel-fallback")
    if count == size:
        flags.add("every-point-fixed")
    return CensusReport(model, q, n, k, count, "formula", frozenset(flags))


# --- Iwahori-to-K induction ---------------------------------------------------

@lru_cache(maxsize=None)
def flag_representatives(q: int, n: int) -> tuple:
    """One constant matrix y per coset y B(F_q) of GL_n(F_q), i.e. per
    complete flag, in a deterministic order."""
    F = gf_of_order(q)
    seen, reps = set(), []
    for entries in product(F.elements(), repeat=n * n):
        y = tuple(tuple(entries[i * n:(i + 1) * n]) for i in range(n))
        if polyfq.det(F, y) == 0:
            continue
        key = _flag_key(F, y)
        if key not in seen:
            seen.add(key)
            reps.append(y)
    return tuple(reps)


def _flag_key(F, y):
    n = len(y)
    cols = [tuple(y[i][j] for i in range(n)) for j in range(n)]
    key, span = [], {(0,) * n}
    for c in cols:
        span = {tuple(F.add(s, F.mul(a, x)) for s, x in zip(v, c)) for v in span for a in F.elements()}
        key.append(frozenset(span))
    return tuple(key)


def census_induced(g, q: int, n: int, k: int, route: str = "brute",
                   budget: int | None = None) -> CensusReport:
    """Fixed points of g on K/J for a ramified J: the sum over complete flags
    y with y^{-1} g y in the Iwahori subgroup of the X_k census."""
    F = gf_of_order(q)
    g = polymat(g)
    _check_invertible(g, q)
    total, flags = 0, set()
    for y in flag_representatives(q, n):
        yinv = _const_inverse(F, y)
        h = polymat_mul(F, polymat_mul(F, polymat(yinv), g), polymat(y))
        if not in_iwahori(h, q):
            continue
        rep = (census(h, "ramified", q, n, k, budget) if route == "brute"
               else census_formula(h, "ramified", q, n, k))
        total += rep.count
        flags |= rep.flags - {"every-point-fixed"}
    return CensusReport("ramified-induced", q, n, k, total, route, frozenset(flags))


def _const_inverse(F, y):
    n = len(y)
    M = [list(y[i]) + [1 if i == j else 0 for j in range(n)] for i in range(n)]
    for c in range(n):
        piv = next(i for i in range(c, n) if M[i][c])
        M[c], M[piv] = M[piv], M[c]
        inv = F.inv(M[c][c])
        M[c] = [F.mul(inv, x) for x in M[c]]
        for i in range(n):
            if i != c and M[i][c]:
                f = M[i][c]
                M[i] = [F.sub(x, F.mul(f, z)) for x, z in zip(M[i], M[c])]
    return tuple(tuple(r[n:]) for r in M)
