"""Positive-depth simple types of GL_n(F), n prime, at finite level.

F = F_q((t)).  Two families of minimal elements are used:

* unramified: beta = t^-m C, C the companion matrix of the minimal
  polynomial of the fixed generator of F_{q^n}; the order is M_n(O_F) and
  P = t M_n(O_F);
* ramified: beta = Pi^-m with Pi the Eisenstein uniformizer (Pi_{i,i+1} = 1,
  Pi_{n-1,0} = t, so Pi^n = t) and gcd(m, n) = 1; the order is the
  standard Iwahori order and P = Pi * (Iwahori order).

Group elements are exact polynomial matrices reduced modulo P^L, where
L = m + 1 is the working level.  Every group here lies in 1 + P or in
O_E^x (1 + P^k), so quotients modulo 1 + P^L are finite and computable.
beta is stored as t^-s * beta_num with beta_num integral.
"""
from __future__ import annotations

import math
import random
from dataclasses import dataclass
from itertools import permutations, product

from . import polyfq
from .localring import polymat, polymat_mul, polymat_residue
from .projcensus import (
    BudgetExceeded, _const_inverse, census, census_formula, census_induced, default_budget,
    flag_representatives, in_iwahori, normalize_model, scalar_reduction,
)
from .towerfield import CycInt, gf_of_order, make_tower

__all__ = [
    "TypeDatum", "GroupData", "PairingMatrix", "TraceBound",
    "make_minimal_unram", "make_minimal_ram", "make_type",
    "p_valuation", "psi_beta", "group_data", "group_data_brute",
    "theta_pairing", "iwahori_index", "type_trace_bound",
]


# --- exact matrix helpers ------------------------------------------------------

def _zero(n):
    return tuple(tuple(() for _ in range(n)) for _ in range(n))


def _ident(n):
    return tuple(tuple((1,) if i == j else () for j in range(n)) for i in range(n))


def _madd(F, A, B):
    return tuple(tuple(polyfq.add(F, a, b) for a, b in zip(ra, rb)) for ra, rb in zip(A, B))


def _msub(F, A, B):
    return tuple(tuple(polyfq.sub(F, a, b) for a, b in zip(ra, rb)) for ra, rb in zip(A, B))


def _mmul(F, A, B):
    n = len(A)
    out = []
    for i in range(n):
        row = []
        for j in range(n):
            acc: tuple = ()
            for k in range(n):
                if A[i][k] and B[k][j]:
                    acc = polyfq.add(F, acc, polyfq.mul(F, A[i][k], B[k][j]))
            row.append(acc)
        out.append(tuple(row))
    return tuple(out)


def _mscale(F, c, A):
    """Multiply by a constant c in F_q."""
    return tuple(tuple(polyfq.scale(F, c, e) for e in row) for row in A)


def _tshift(A, j):
    return tuple(tuple(((0,) * j + e) if e else () for e in row) for row in A)


def _val(e):
    for i, c in enumerate(e):
        if c:
            return i
    return math.inf


def uniformizer_power(n: int, j: int):
    """Pi^j for the Eisenstein uniformizer Pi of the ramified model, j >= 0."""
    t, r = divmod(j, n)
    rows = [[() for _ in range(n)] for _ in range(n)]
    for i in range(n):
        c = i + r
        rows[i][c % n] = (0,) * (t + (1 if c >= n else 0)) + (1,)
    return tuple(tuple(r) for r in rows)


def p_valuation(A, case: str, n: int) -> float:
    """Largest j with A in P^j for the order of ``case``."""
    if normalize_model(case) == "unramified":
        return min((_val(e) for row in A for e in row), default=math.inf)
    return min((n * _val(A[a][b]) + b - a for a in range(n) for b in range(n)),
               default=math.inf)


def _reduce(A, case, n, L):
    """A modulo P^L (canonical: drop t-coefficients that lie in P^L)."""
    if normalize_model(case) == "unramified":
        return tuple(tuple(polyfq.trim(e[:L]) for e in row) for row in A)
    return tuple(
        tuple(polyfq.trim(A[a][b][: max(0, -(-(L - (b - a)) // n))]) for b in range(n))
        for a in range(n)
    )


# --- type data ---------------------------------------------------------------

@dataclass(frozen=True)
class TypeDatum:
    """One minimal-element type family member.

    ``beta = t^-s * beta_num``; ``k = floor((m+1)/2)`` and ``h1 = ceil((m+1)/2)``
    are the P-exponents in J = O_E^x (1 + P^k) and H^1 = (1 + p_E)(1 + P^h1).
    ``lam_dim`` is the dimension of lambda, sqrt of the size of W.
    """
    case: str
    q: int
    n: int
    m: int
    s: int
    beta_num: tuple
    k: int
    h1: int
    lam_dim: int
    level: int

    @property
    def e(self) -> int:
        return 1 if self.case == "unramified" else self.n

    @property
    def f(self) -> int:
        return self.n if self.case == "unramified" else 1

    @property
    def uniformizer(self):
        """A uniformizer of E as a matrix: t (unramified) or Pi (ramified)."""
        if self.case == "unramified":
            return _tshift(_ident(self.n), 1)
        return uniformizer_power(self.n, 1)

    @property
    def residue_generator(self):
        """A constant matrix generating the residue field of E inside M_n(F_q)."""
        if self.case == "unramified":
            return polymat_residue(self.beta_num)
        return polymat_residue(_ident(self.n))


def _companion(F, poly):
    """Companion matrix with ones on the subdiagonal and -coefficients in
    the last column (constant term first in ``poly``)."""
    n = len(poly) - 1
    rows = [[0] * n for _ in range(n)]
    for i in range(1, n):
        rows[i][i - 1] = 1
    for i in range(n):
        rows[i][n - 1] = F.neg(poly[i])
    return tuple(tuple(r) for r in rows)


def make_minimal_unram(q: int, n: int, m: int) -> TypeDatum:
    if m < 1:
        raise ValueError("m must be positive")
    T = make_tower(q, n)
    F = T.small
    C = _companion(F, T.modulus)
    if not polyfq.is_irreducible(F, polyfq.charpoly(F, C)):
        raise AssertionError("residue of t^m beta does not generate the residue field of E")
    k, h1 = (m + 1) // 2, (m + 2) // 2
    lam = 1 if m % 2 else q ** ((n * n - n) // 2)
    return TypeDatum("unramified", q, n, m, m, polymat(C), k, h1, lam, m + 1)


def make_minimal_ram(q: int, n: int, m: int) -> TypeDatum:
    if m < 1:
        raise ValueError("m must be positive")
    if math.gcd(m, n) != 1:
        raise ValueError(f"gcd(m, n) = {math.gcd(m, n)}; ramified minimal elements need gcd(m, n) = 1")
    gf_of_order(q)
    s = -(-m // n)
    k, h1 = (m + 1) // 2, (m + 2) // 2
    # W has dimension n - 1 over F_q when m is even
    lam = 1 if m % 2 else q ** ((n - 1) // 2)
    return TypeDatum("ramified", q, n, m, s, uniformizer_power(n, n * s - m), k, h1, lam, m + 1)


def make_type(case: str, q: int, n: int, m: int) -> TypeDatum:
    case = normalize_model(case)
    return (make_minimal_unram if case == "unramified" else make_minimal_ram)(q, n, m)


def _psi0(F, a: int) -> CycInt:
    """The fixed additive character of F_q: a -> zeta_p^Tr(a)."""
    return CycInt.zeta(F.p, F.trace_to_prime(a))


def _beta_trace(d: TypeDatum, z) -> int:
    """Residue of Tr(beta z) in F_q, i.e. the t^s coefficient of Tr(beta_num z)."""
    F = gf_of_order(d.q)
    acc = 0
    prod_ = _mmul(F, d.beta_num, z)
    for i in range(d.n):
        e = prod_[i][i]
        if d.s < len(e):
            acc = F.add(acc, e[d.s])
    return acc


def psi_beta(d: TypeDatum, x) -> CycInt:
    """psi_beta(x) = psi(Tr(beta (x - 1))) for x in 1 + P^h1."""
    F = gf_of_order(d.q)
    x = polymat(x)
    z = _msub(F, x, _ident(d.n))
    if p_valuation(z, d.case, d.n) < d.h1:
        raise ValueError("psi_beta is only defined on 1 + P^ceil((m+1)/2)")
    return _psi0(F, _beta_trace(d, z))


# --- quotient groups at the working level ---------------------------------------

class _Quotient:
    """Multiplicative arithmetic in (1 + P) / (1 + P^L) and its O_E^x-extension."""

    def __init__(self, d: TypeDatum, L: int | None = None):
        self.d = d
        self.F = gf_of_order(d.q)
        self.n = d.n
        self.L = d.level if L is None else L

    def red(self, A):
        return _reduce(A, self.d.case, self.n, self.L)

    def mul(self, A, B):
        return self.red(_mmul(self.F, A, B))

    def inv_one_plus(self, X):
        """Inverse of X in 1 + P by the geometric series."""
        F, n = self.F, self.n
        u = _msub(F, X, _ident(n))
        if p_valuation(u, self.d.case, n) < 1:
            raise ValueError("element is not in 1 + P")
        acc, term = _ident(n), _ident(n)
        neg_u = _mscale(F, F.neg(1), u)
        while True:
            term = self.mul(term, neg_u)
            if not any(e for row in term for e in row):
                return self.red(acc)
            acc = _madd(F, acc, term)

    def commutator(self, X, Y):
        return self.mul(self.mul(X, Y), self.mul(self.inv_one_plus(X), self.inv_one_plus(Y)))

    def E_elements(self, lo: int, units: bool = False):
        """Elements of p_E^lo (or O_E^x when ``units``) modulo p_E^L, as matrices."""
        d, F, n = self.d, self.F, self.n
        if d.case == "unramified":
            # O_E = F_q[C][[t]]; p_E^j = t^j O_E
            C = polymat_residue(d.beta_num)
            powers = [polyfq.identity(n)]
            for _ in range(n - 1):
                powers.append(polyfq.mat_mul(F, powers[-1], C))
            layer = []
            for cs in product(F.elements(), repeat=n):
                M = [[0] * n for _ in range(n)]
                for c, P in zip(cs, powers):
                    for i in range(n):
                        for j in range(n):
                            M[i][j] = F.add(M[i][j], F.mul(c, P[i][j]))
                layer.append(polymat(M))
            start = 0 if units else lo
            for combo in product(layer, repeat=self.L - start):
                if units and not any(combo[0][i][j] for i in range(n) for j in range(n)):
                    continue
                acc = _zero(n)
                for i, M in enumerate(combo):
                    acc = _madd(F, acc, _tshift(M, start + i))
                yield self.red(acc)
        else:
            start = 0 if units else lo
            for cs in product(F.elements(), repeat=self.L - start):
                if units and cs[0] == 0:
                    continue
                acc = _zero(n)
                for i, c in enumerate(cs):
                    if c:
                        acc = _madd(F, acc, _mscale(F, c, uniformizer_power(n, start + i)))
                yield self.red(acc)

    def random_E(self, lo: int, rng):
        """A random element of p_E^lo modulo p_E^L."""
        d, F, n = self.d, self.F, self.n
        acc = _zero(n)
        for i in range(lo, self.L):
            if d.case == "unramified":
                C = polymat_residue(d.beta_num)
                M = polyfq.poly_of_matrix(F, [rng.randrange(F.order) for _ in range(n)], C)
                acc = _madd(F, acc, _tshift(polymat(M), i))
            else:
                c = rng.randrange(F.order)
                if c:
                    acc = _madd(F, acc, _mscale(F, c, uniformizer_power(n, i)))
        return self.red(acc)

    def P_elements(self, lo: int):
        """Elements of P^lo modulo P^L."""
        d, n = self.d, self.n
        cells = []
        for a in range(n):
            for b in range(n):
                if d.case == "unramified":
                    v0, v1 = lo, self.L
                else:
                    v0 = max(0, -(-(lo - (b - a)) // n))
                    v1 = max(0, -(-(self.L - (b - a)) // n))
                cells.append((a, b, v0, max(v0, v1)))
        slots = [(a, b, v) for a, b, v0, v1 in cells for v in range(v0, v1)]
        for cs in product(self.F.elements(), repeat=len(slots)):
            rows = [[[] for _ in range(n)] for _ in range(n)]
            for (a, b, v), c in zip(slots, cs):
                e = rows[a][b]
                e.extend([0] * (v + 1 - len(e)))
                e[v] = c
            yield tuple(tuple(polyfq.trim(e) for e in r) for r in rows)


# --- group orders and W ------------------------------------------------------------

@dataclass(frozen=True)
class GroupData:
    """Orders of the images of H^1, J^1, J modulo 1 + P^level, and W = J^1/H^1."""
    level: int
    order_H1: int
    order_J1: int
    order_J: int
    residue_units: int
    W_dim: int
    W_basis: tuple

    @property
    def W_size(self) -> int:
        return self.order_J1 // self.order_H1


def _one_plus_order(d: TypeDatum, j: int) -> int:
    """|(1 + p_E)(1 + P^j) / (1 + P^L)| for 1 <= j <= L."""
    L, n, q = d.level, d.n, d.q
    layer = q ** (n * n) if d.case == "unramified" else q ** n   # |P^i / P^(i+1)|
    e_layer = q ** d.f                                           # |p_E^i / p_E^(i+1)|
    return layer ** (L - j) * e_layer ** (j - 1)


def _W_basis(d: TypeDatum):
    """Matrices in P^k whose classes form an F_q-basis of P^k / (p_E^k + P^(k+1))."""
    F, n, k = gf_of_order(d.q), d.n, d.k
    if d.case == "unramified":
        C = polymat_residue(d.beta_num)
        span = [polyfq.identity(n)]
        for _ in range(n - 1):
            span.append(polyfq.mat_mul(F, span[-1], C))
        vecs = [tuple(x for row in M for x in row) for M in span]
        cands = []
        for a in range(n):
            for b in range(n):
                E = [[0] * n for _ in range(n)]
                E[a][b] = 1
                cands.append((tuple(x for row in E for x in row), _tshift(polymat(E), k)))
    else:
        vecs = [tuple([1] * n)]
        cands = []
        Pk = uniformizer_power(n, k)
        for a in range(n):
            D = [[0] * n for _ in range(n)]
            D[a][a] = 1
            cands.append((tuple(1 if i == a else 0 for i in range(n)),
                          _mmul(F, Pk, polymat(D))))
    basis = []
    rk = polyfq.rank(F, vecs)
    for v, M in cands:
        r2 = polyfq.rank(F, vecs + [v])
        if r2 > rk:
            vecs.append(v)
            basis.append(M)
            rk = r2
    return tuple(basis)


def group_data(d: TypeDatum) -> GroupData:
    if d.m % 2:
        raise ValueError("W = J^1/H^1 is trivial for odd m; group_data needs m even")
    o_h1 = _one_plus_order(d, d.h1)
    o_j1 = _one_plus_order(d, d.k)
    res = d.q ** d.f - 1
    basis = _W_basis(d)
    w_dim = round(math.log(o_j1 // o_h1, d.q))
    assert len(basis) == w_dim
    return GroupData(d.level, o_h1, o_j1, o_j1 * res, res, w_dim, basis)


def group_data_brute(d: TypeDatum, budget: int | None = None) -> tuple[int, int, int]:
    """Orders of H^1, J^1, J modulo 1 + P^level by enumeration.

    A product set S (1 + P^j) with S inside O_E^x is a union of cosets of
    the group 1 + P^j, and e (1 + P^j) = e' (1 + P^j) iff e = e' mod P^j.
    So its order is the number of distinct residues of S modulo P^j times
    the number of enumerated elements of P^j / P^level.
    """
    Q = _Quotient(d)
    budget = default_budget() if budget is None else budget
    layer = d.n * d.n if d.case == "unramified" else d.n
    cost = d.q ** (d.f * d.level) + d.q ** (layer * (d.level - 1))
    if cost > budget:
        raise BudgetExceeded("group enumeration exceeds budget")
    one = _ident(d.n)

    def order(units, j):
        z = sum(1 for _ in Q.P_elements(j))
        if units:
            es = Q.E_elements(0, units=True)
        else:
            es = (_madd(Q.F, one, x) for x in Q.E_elements(1))
        cosets = {_reduce(e, d.case, d.n, j) for e in es}
        return len(cosets) * z

    return order(False, d.h1), order(False, d.k), order(True, d.k)


# --- the pairing -----------------------------------------------------------------

@dataclass(frozen=True)
class PairingMatrix:
    """Gram matrix over F_q (integer codes) of the commutator pairing on W."""
    q: int
    gram: tuple
    basis: tuple

    @property
    def rank(self) -> int:
        return polyfq.rank(gf_of_order(self.q), self.gram)

    @property
    def dim(self) -> int:
        return len(self.gram)

    def is_alternating(self) -> bool:
        F = gf_of_order(self.q)
        g = self.gram
        return (all(g[i][i] == 0 for i in range(self.dim))
                and all(g[i][j] == F.neg(g[j][i]) for i in range(self.dim) for j in range(self.dim)))

    def character_values(self):
        """h_theta(w_i, w_j) = psi_0(gram[i][j]) as cyclotomic integers."""
        F = gf_of_order(self.q)
        return [[_psi0(F, x) for x in row] for row in self.gram]


def _det_coeff(F, X, j):
    """t^j coefficient of det X (Leibniz expansion over F_q[t])."""
    n = len(X)
    acc: tuple = ()
    for perm in permutations(range(n)):
        term: tuple = (1,)
        for i, c in enumerate(perm):
            term = polyfq.mul(F, term, X[i][c])
        acc = polyfq.sub(F, acc, term) if polyfq._parity(perm) else polyfq.add(F, acc, term)
    return acc[j] if j < len(acc) else 0


def theta_pairing(d: TypeDatum, twist: int = 0, unit_factors: bool = False,
                  seed: int = 0) -> PairingMatrix:
    """Gram matrix of (x, y) -> theta[x, y] on W, computed from commutators.

    The commutator of x = 1 + U and y = 1 + V is formed in the group modulo
    1 + P^level.  ``twist = c`` evaluates theta_c = psi_beta * (chi_c o det)
    with chi_c(z) = psi_0(c * [t^1] z), a second extension of psi_beta to
    H^1.  ``unit_factors`` multiplies each representative by a random
    element of 1 + p_E, which changes neither its class in W nor, if the
    pairing is well defined, the result.
    """
    if d.m % 2:
        raise ValueError("the pairing on W needs m even")
    F = gf_of_order(d.q)
    Q = _Quotient(d)
    one = _ident(d.n)
    basis = _W_basis(d)
    rng = random.Random(seed)
    e_pool = [Q.red(_madd(F, one, Q.random_E(1, rng))) for _ in range(8)] if unit_factors else None

    def rep(U):
        X = Q.red(_madd(F, one, U))
        if e_pool:
            X = Q.mul(rng.choice(e_pool), X)
        return X

    gram = []
    for U in basis:
        row = []
        for V in basis:
            c = Q.commutator(rep(U), rep(V))
            z = _msub(F, c, one)
            if p_valuation(z, d.case, d.n) < d.h1:
                raise AssertionError("commutator of J^1 outside 1 + P^(k+1)")
            val = _beta_trace(d, z)
            if twist:
                val = F.add(val, F.mul(twist, _det_coeff(F, c, 1)))
            row.append(val)
        gram.append(tuple(row))
    return PairingMatrix(d.q, tuple(gram), basis)


# --- trace bounds --------------------------------------------------------------------

def iwahori_index(q: int, n: int) -> int:
    """[GL_n(O_F) : Iwahori] = prod_{k=1}^{n-1} (1 + q + ... + q^k)."""
    return math.prod(sum(q ** i for i in range(j + 1)) for j in range(1, n))


@dataclass(frozen=True)
class TraceBound:
    """Bound for |Tr tau(g)| from the Frobenius formula.

    ``count`` fixed points on K/J, each contributing at most ``per_point``;
    ``bound = count * per_point``.  ``closed_form`` is the coarser bound
    n (#k_E)^(ln) lambda_dim (times [K : Iwahori] for ramified types), or
    n / 0 in the residue-non-scalar cases.
    """
    count: int
    per_point: int
    bound: int
    closed_form: int
    lemma_applies: bool
    flags: frozenset


def _is_central(g) -> bool:
    n = len(g)
    return (all(not g[i][j] for i in range(n) for j in range(n) if i != j)
            and len({g[i][i] for i in range(n)}) == 1)


def type_trace_bound(g, d: TypeDatum, route: str = "brute",
                     budget: int | None = None) -> TraceBound:
    g = polymat(g)
    if _is_central(g):
        raise ValueError("type_trace_bound is for noncentral g")
    F = gf_of_order(d.q)
    q, n = d.q, d.n
    res = polymat_residue(g)
    res_scalar = all(res[i][j] == (res[0][0] if i == j else 0) for i in range(n) for j in range(n))
    flags: set[str] = set()

    if d.case == "unramified":
        rep = (census(g, "unram", q, n, d.k, budget) if route == "brute"
               else census_formula(g, "unram", q, n, d.k))
        lemma = d.m % 2 == 0 and not res_scalar
        per_point = 1 if lemma else d.lam_dim
        if not res_scalar:
            closed = n if polyfq.is_irreducible(F, polyfq.charpoly(F, res)) else 0
        else:
            dec = scalar_reduction(g, "unram", q, n)
            closed = n * (q ** n) ** (dec.l * n) * d.lam_dim
    else:
        rep = census_induced(g, q, n, d.k, route, budget)
        lemma = False
        per_point = d.lam_dim
        ls = []
        for y in flag_representatives(q, n):
            h = polymat_mul(F, polymat_mul(F, polymat(_const_inverse(F, y)), g), polymat(y))
            if in_iwahori(h, q):
                dec = scalar_reduction(h, "ram", q, n)
                if dec.alpha is not None:
                    ls.append(dec.l)
        closed = (iwahori_index(q, n) * n * q ** (max(ls) * n) * q ** ((n * n - n) // 2)
                  if ls else 0)
    flags |= set(rep.flags)
    bound = rep.count * per_point
    if bound > closed:
        flags.add("exceeds-closed-form")
    return TraceBound(rep.count, per_point, bound, closed, lemma, frozenset(flags))
