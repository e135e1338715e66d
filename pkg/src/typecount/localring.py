"""Truncated local rings over the equal-characteristic field F_q((t)).

Three kinds of ring, all of the form k[w]/(w^k) for a finite field k and a
uniformizer w:

* ``base``        F_q[t]/(t^k)
* ``unramified``  F_{q^n}[t]/(t^k)             (O_E / p_E^k, E unramified)
* ``ramified``    F_q[u]/(u^k) with t = u^n   (O_E / p_E^k, E Eisenstein)

An element is a tuple of k coefficient codes (constant term first) in the
coefficient field.  Matrices over O_F with polynomial entries ("polymats",
nested tuples of F_q[t] coefficient tuples) are exact elements of
GL_n(F_q[t]) inside GL_n(O_F) and can be pushed into any of the rings.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations, product

from . import polyfq
from .towerfield import GF, gf_of_order, make_tower, prime_power

__all__ = [
    "KINDS", "TruncRing", "make_ring", "HenselRoots", "hensel_roots", "nth_power_roots",
    "poly_eval", "poly_deriv", "polymat", "parse_matrix", "format_matrix",
    "polymat_mul", "polymat_coeff", "polymat_residue", "polymat_is_central",
    "ring_mat_mul", "ring_mat_vec", "ring_det", "ring_charpoly", "ring_mat_inv",
]

KINDS = ("base", "unramified", "ramified")
_CACHE_LIMIT = 4096


class TruncRing:
    """O/(w^k) for one of the three kinds; see the module docstring."""

    def __init__(self, kind: str, q: int, n: int | None, k: int):
        if kind not in KINDS:
            raise ValueError(f"invalid ring kind {kind!r}; expected one of {KINDS}")
        if k < 1:
            raise ValueError("truncation level must be >= 1")
        prime_power(q)
        self.kind, self.q, self.n, self.k = kind, q, n, k
        if kind == "base":
            self.tower = make_tower(q, n) if n else None
            self.field: GF = gf_of_order(q)
            self.e = self.f = 1
        else:
            if n is None:
                raise ValueError(f"{kind} ring needs the degree n")
            self.tower = make_tower(q, n)
            if kind == "unramified":
                self.field = self.tower.big
                self.e, self.f = 1, n
            else:
                self.field = self.tower.small
                self.e, self.f = n, 1
        self.residue_size = self.field.order
        self.size = self.residue_size ** k
        self.zero = (0,) * k
        self.one = (1,) + (0,) * (k - 1)
        self._mulcache: dict | None = {} if self.size <= _CACHE_LIMIT else None

    def __repr__(self):
        return f"TruncRing({self.kind}, q={self.q}, n={self.n}, k={self.k})"

    def __reduce__(self):
        return (make_ring, (self.kind, self.q, self.n, self.k))

    # construction --------------------------------------------------------
    def element(self, coeffs) -> tuple[int, ...]:
        c = tuple(coeffs)[: self.k]
        return c + (0,) * (self.k - len(c))

    def scalar(self, c: int) -> tuple[int, ...]:
        """A coefficient-field constant."""
        return (c,) + (0,) * (self.k - 1)

    def from_base(self, poly) -> tuple[int, ...]:
        """Image of an F_q[t] polynomial (small codes) in this ring."""
        out = [0] * self.k
        if self.kind == "unramified":
            emb = self.tower.embed
            for i, c in enumerate(poly[: self.k]):
                out[i] = emb(c)
        elif self.kind == "ramified":
            for i, c in enumerate(poly):
                if i * self.n >= self.k:
                    break
                out[i * self.n] = c
        else:
            for i, c in enumerate(poly[: self.k]):
                out[i] = c
        return tuple(out)

    def at_level(self, k: int) -> "TruncRing":
        return make_ring(self.kind, self.q, self.n, k)

    def reduce(self, a, k: int) -> tuple[int, ...]:
        return tuple(a[:k])

    def lift(self, a, k: int) -> tuple[int, ...]:
        return tuple(a) + (0,) * (k - len(a))

    def elements(self):
        for tail in product(range(self.residue_size), repeat=self.k):
            yield tail

    def units(self):
        R = self.residue_size
        for c0 in range(1, R):
            for tail in product(range(R), repeat=self.k - 1):
                yield (c0,) + tail

    def unit_count(self) -> int:
        return (self.residue_size - 1) * self.residue_size ** (self.k - 1)

    # arithmetic ----------------------------------------------------------
    def add(self, a, b):
        F = self.field
        return tuple(F.add(x, y) for x, y in zip(a, b))

    def sub(self, a, b):
        F = self.field
        return tuple(F.sub(x, y) for x, y in zip(a, b))

    def neg(self, a):
        F = self.field
        return tuple(F.neg(x) for x in a)

    def mul(self, a, b):
        cache = self._mulcache
        if cache is not None:
            key = (a, b)
            hit = cache.get(key)
            if hit is not None:
                return hit
        F, k = self.field, self.k
        out = [0] * k
        for i, x in enumerate(a):
            if x:
                for j in range(k - i):
                    y = b[j]
                    if y:
                        out[i + j] = F.add(out[i + j], F.mul(x, y))
        res = tuple(out)
        if cache is not None:
            cache[key] = res
        return res

    def scale(self, c: int, a):
        F = self.field
        return tuple(F.mul(c, x) for x in a)

    def times_int(self, m: int, a):
        return self.scale(m % self.field.p, a)

    def pow(self, a, e: int):
        if e < 0:
            return self.pow(self.inv(a), -e)
        result, base = self.one, a
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    def val(self, a) -> int | float:
        """w-adic valuation; ``math.inf`` for zero."""
        for i, x in enumerate(a):
            if x:
                return i
        return math.inf

    def is_unit(self, a) -> bool:
        return a[0] != 0

    def residue(self, a) -> int:
        return a[0]

    def inv(self, a):
        if not a[0]:
            raise ZeroDivisionError(f"{a} is not a unit in {self}")
        F = self.field
        b0 = F.inv(a[0])
        b = [b0]
        for j in range(1, self.k):
            s = 0
            for i in range(1, j + 1):
                s = F.add(s, F.mul(a[i], b[j - i]))
            b.append(F.neg(F.mul(b0, s)))
        return tuple(b)

    def shift(self, a, j: int):
        """Multiply by w^j; negative j divides exactly (raises if not divisible)."""
        if j >= 0:
            return ((0,) * j + tuple(a))[: self.k]
        if any(a[: -j]):
            raise ValueError(f"{a} is not divisible by w^{-j}")
        return tuple(a[-j:]) + (0,) * (-j)


@lru_cache(maxsize=None)
def make_ring(kind: str, q: int, n: int | None = None, k: int = 1) -> TruncRing:
    return TruncRing(kind, q, n, k)


# --- polynomials over a ring ------------------------------------------------

def poly_eval(ring: TruncRing, coeffs, x):
    acc = ring.zero
    for c in reversed(coeffs):
        acc = ring.add(ring.mul(acc, x), c)
    return acc


def poly_deriv(ring: TruncRing, coeffs):
    return [ring.times_int(i, c) for i, c in enumerate(coeffs)][1:]


@dataclass(frozen=True)
class HenselRoots:
    """Unit roots found by :func:`hensel_roots`.

    ``fallback`` is set when some residue root was multiple, so the lifts
    were found by exhaustive search over fibers instead of Newton steps.
    """
    roots: tuple
    fallback: bool = False

    def __len__(self):
        return len(self.roots)

    def __iter__(self):
        return iter(self.roots)


def hensel_roots(coeffs, ring: TruncRing) -> HenselRoots:
    """All unit roots in ``ring`` of the polynomial with ring coefficients
    ``coeffs`` (constant term first).

    Residue roots are found by exhaustive search; simple ones are lifted by
    Newton iteration (unique lift), multiple ones level by level over the
    fibers of reduction.
    """
    coeffs = [ring.element(c) for c in coeffs]
    F = ring.field
    res_poly = [c[0] for c in coeffs]
    res_der = [F.mul(i % F.p, c) for i, c in enumerate(res_poly)][1:]
    out, fallback = [], False
    for r0 in range(1, ring.residue_size):
        if polyfq.evaluate(F, res_poly, r0) != 0:
            continue
        if polyfq.evaluate(F, res_der, r0) != 0:
            r = ring.scalar(r0)
            der = poly_deriv(ring, coeffs)
            prec = 1
            while prec < ring.k:
                r = ring.sub(r, ring.mul(poly_eval(ring, coeffs, r), ring.inv(poly_eval(ring, der, r))))
                prec *= 2
            assert poly_eval(ring, coeffs, r) == ring.zero
            out.append(r)
        else:
            fallback = True
            layer = [(r0,)]
            for j in range(1, ring.k):
                sub = ring.at_level(j + 1)
                cs = [c[: j + 1] for c in coeffs]
                layer = [
                    cand for r in layer for c in range(ring.residue_size)
                    for cand in [r + (c,)]
                    if poly_eval(sub, cs, cand) == sub.zero
                ]
            out.extend(layer)
    return HenselRoots(tuple(sorted(out)), fallback)


def nth_power_roots(eta, ring: TruncRing, n: int) -> HenselRoots:
    """Roots of x^n - eta for a unit eta."""
    eta = ring.element(eta)
    if not ring.is_unit(eta):
        raise ValueError("eta must be a unit")
    return hensel_roots([ring.neg(eta)] + [ring.zero] * (n - 1) + [ring.one], ring)


# --- polymats: exact matrices over F_q[t] -----------------------------------

def _entry(x):
    if isinstance(x, int):
        return polyfq.trim((x,))
    return polyfq.trim(tuple(x))


def polymat(rows):
    """Normalize nested rows whose entries are ints (constants) or
    coefficient sequences in t into a hashable polymat."""
    rows = [list(r) for r in rows]
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise ValueError("matrix must be square")
    return tuple(tuple(_entry(x) for x in r) for r in rows)


def parse_matrix(text: str, n: int | None = None):
    """Parse a row-major comma-separated entry list; an entry is either a
    constant or colon-separated t-coefficients ``c0:c1:c2``."""
    items = [s.strip() for s in text.split(",") if s.strip()]
    if n is None:
        n = math.isqrt(len(items))
    if n * n != len(items):
        raise ValueError(f"expected {n * n} entries, got {len(items)}")
    entries = [tuple(int(c) for c in it.split(":")) for it in items]
    return polymat([entries[i * n:(i + 1) * n] for i in range(n)])


def format_matrix(g) -> str:
    return ",".join(":".join(str(c) for c in e) if len(e) > 1 else str(e[0] if e else 0)
                    for row in g for e in row)


def polymat_mul(F: GF, A, B):
    n = len(A)
    return tuple(
        tuple(
            _sum_polys(F, [polyfq.mul(F, A[i][k], B[k][j]) for k in range(n)])
            for j in range(n)
        )
        for i in range(n)
    )


def _sum_polys(F, ps):
    acc: tuple[int, ...] = ()
    for p in ps:
        acc = polyfq.add(F, acc, p)
    return acc


def polymat_coeff(A, i: int):
    """Matrix of t^i coefficients."""
    return tuple(tuple(e[i] if i < len(e) else 0 for e in row) for row in A)


def polymat_residue(A):
    return polymat_coeff(A, 0)


def polymat_degree(A) -> int:
    return max((len(e) for row in A for e in row), default=0) - 1


def polymat_is_central(A, level: int | None = None) -> bool:
    """Scalar matrix (optionally only modulo t^level)."""
    top = polymat_degree(A) + 1 if level is None else level
    for i in range(top):
        C = polymat_coeff(A, i)
        if not _is_scalar(C):
            return False
    return True


def _is_scalar(C) -> bool:
    n = len(C)
    return all(C[i][j] == (C[0][0] if i == j else 0) for i in range(n) for j in range(n))


# --- matrices over a truncated ring -----------------------------------------

def ring_matrix(ring: TruncRing, A):
    """Push a polymat into ``ring``."""
    return tuple(tuple(ring.from_base(e) for e in row) for row in A)


def ring_mat_mul(ring: TruncRing, A, B):
    n = len(A)
    out = []
    for i in range(n):
        row = []
        for j in range(len(B[0])):
            s = ring.zero
            for k in range(len(B)):
                s = ring.add(s, ring.mul(A[i][k], B[k][j]))
            row.append(s)
        out.append(tuple(row))
    return tuple(out)


def ring_mat_vec(ring: TruncRing, A, v):
    out = []
    for row in A:
        s = ring.zero
        for a, x in zip(row, v):
            s = ring.add(s, ring.mul(a, x))
        out.append(s)
    return tuple(out)


def _parity(perm) -> int:
    return polyfq._parity(perm)


def ring_det(ring: TruncRing, A):
    n = len(A)
    total = ring.zero
    for perm in permutations(range(n)):
        term = ring.one
        for i, j in enumerate(perm):
            term = ring.mul(term, A[i][j])
        total = ring.sub(total, term) if _parity(perm) else ring.add(total, term)
    return total


def _rp_mul(ring, a, b):
    out = [ring.zero] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] = ring.add(out[i + j], ring.mul(x, y))
    return out


def ring_charpoly(ring: TruncRing, A) -> list:
    """det(x I - A) with ring coefficients, constant term first."""
    n = len(A)
    ent = [[[ring.neg(A[i][j]), ring.one] if i == j else [ring.neg(A[i][j])]
            for j in range(n)] for i in range(n)]
    total = [ring.zero] * (n + 1)
    for perm in permutations(range(n)):
        term = [ring.one]
        for i, j in enumerate(perm):
            term = _rp_mul(ring, term, ent[i][j])
        sign = _parity(perm)
        for d, c in enumerate(term):
            total[d] = ring.sub(total[d], c) if sign else ring.add(total[d], c)
    return total


def ring_mat_inv(ring: TruncRing, A):
    """Inverse over a local ring by Gauss-Jordan with unit pivots."""
    n = len(A)
    M = [list(A[i]) + [ring.one if i == j else ring.zero for j in range(n)] for i in range(n)]
    for c in range(n):
        piv = next((i for i in range(c, n) if ring.is_unit(M[i][c])), None)
        if piv is None:
            raise ValueError("matrix is not invertible over the ring")
        M[c], M[piv] = M[piv], M[c]
        inv = ring.inv(M[c][c])
        M[c] = [ring.mul(inv, x) for x in M[c]]
        for i in range(n):
            if i != c and M[i][c] != ring.zero:
                f = M[i][c]
                M[i] = [ring.sub(x, ring.mul(f, y)) for x, y in zip(M[i], M[c])]
    return tuple(tuple(row[n:]) for row in M)
