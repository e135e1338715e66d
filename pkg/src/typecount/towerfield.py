"""Finite fields F_q inside F_{q^n}, Frobenius orbits of characters, and
exact character values as cyclotomic integers.

Field elements are encoded as integers ``0 .. p^d - 1``: the base-p digits
of the code are the coefficients (constant term first) of a polynomial in
the generator, reduced modulo the field's defining polynomial.  Codes
``0 .. p-1`` are therefore the prime field in every field, and ``0``/``1``
are zero/one.

The defining polynomial of ``GF(p, d)`` is the lexicographically smallest
(by code of its lower coefficients) monic primitive polynomial of degree d
over F_p, and the fixed multiplicative generator is its root.  A
:class:`TowerField` takes F_{q^n} = GF(p, e*n) and embeds F_q = GF(p, e)
by sending the small generator to the smallest root of its defining
polynomial in the big field.
"""
from __future__ import annotations

import cmath
import math
from functools import lru_cache

__all__ = [
    "GF", "gf", "TowerField", "make_tower", "CycInt",
    "is_prime", "prime_power", "factorize",
    "is_regular", "frobenius_orbit", "regular_orbits", "char_value", "cyc_abs",
]

_TABLE_LIMIT = 1024


def factorize(n: int) -> dict[int, int]:
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def is_prime(n: int) -> bool:
    return n >= 2 and factorize(n) == {n: 1}


def prime_power(q: int) -> tuple[int, int]:
    """Return (p, e) with q = p**e, or raise ValueError."""
    if not isinstance(q, int) or q < 2:
        raise ValueError(f"q={q!r} is not a prime power")
    f = factorize(q)
    if len(f) != 1:
        raise ValueError(f"q={q} is not a prime power")
    (p, e), = f.items()
    return p, e


class GF:
    """The finite field with p**d elements, integer-coded."""

    def __init__(self, p: int, d: int):
        if not is_prime(p) or d < 1:
            raise ValueError(f"bad field parameters p={p}, d={d}")
        self.p = p
        self.d = d
        self.order = p ** d
        self.modulus, self.exp = self._find_primitive()
        self.log = [0] * self.order
        for j, a in enumerate(self.exp):
            self.log[a] = j
        self.generator = self.exp[1] if self.order > 2 else 1
        Q = self.order
        if Q <= _TABLE_LIMIT:
            self._add = [[self._add_digits(a, b) for b in range(Q)] for a in range(Q)]
        else:
            self._add = None
        self._neg = [self._scale_digits(a, p - 1) for a in range(Q)]
        self._inv = [0] * Q
        for a in range(1, Q):
            self._inv[a] = self.exp[(-self.log[a]) % (Q - 1)]

    def __repr__(self):
        return f"GF({self.p}^{self.d})"

    # digit-level helpers ------------------------------------------------
    def digits(self, a: int) -> list[int]:
        out = []
        for _ in range(self.d):
            a, r = divmod(a, self.p)
            out.append(r)
        return out

    def from_digits(self, ds) -> int:
        a = 0
        for c in reversed(list(ds)):
            a = a * self.p + c % self.p
        return a

    def _add_digits(self, a, b):
        p = self.p
        out, mult = 0, 1
        while a or b:
            out += ((a % p + b % p) % p) * mult
            a //= p
            b //= p
            mult *= p
        return out

    def _scale_digits(self, a, c):
        p = self.p
        out, mult = 0, 1
        while a:
            out += ((a % p) * c % p) * mult
            a //= p
            mult *= p
        return out

    def _find_primitive(self):
        p, d = self.p, self.d
        Q = p ** d
        for low in range(p ** d):
            lo = [(low // p ** i) % p for i in range(d)]
            if lo[0] == 0:
                continue
            # x^d = -(lo[0] + lo[1] x + ...)
            red = [(-c) % p for c in lo]
            exp = [1]
            cur = [1] + [0] * (d - 1)
            ok = True
            for _ in range(Q - 2):
                top = cur[-1]
                cur = [0] + cur[:-1]
                if top:
                    cur = [(c + top * r) % p for c, r in zip(cur, red)]
                code = sum(c * p ** i for i, c in enumerate(cur))
                if code == 1:
                    ok = False
                    break
                exp.append(code)
            if not ok:
                continue
            top = cur[-1]
            cur = [0] + cur[:-1]
            if top:
                cur = [(c + top * r) % p for c, r in zip(cur, red)]
            if cur != [1] + [0] * (d - 1):
                continue
            return tuple(lo) + (1,), exp
        raise AssertionError("no primitive polynomial found")

    # arithmetic -----------------------------------------------------------
    def add(self, a: int, b: int) -> int:
        if self._add is not None:
            return self._add[a][b]
        return self._add_digits(a, b)

    def neg(self, a: int) -> int:
        return self._neg[a]

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self._neg[b])

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return self.exp[(self.log[a] + self.log[b]) % (self.order - 1)]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero in " + repr(self))
        return self._inv[a]

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if a == 0:
            if e < 0:
                raise ZeroDivisionError("0 ** negative")
            return 1 if e == 0 else 0
        return self.exp[(self.log[a] * e) % (self.order - 1)]

    def elements(self) -> range:
        return range(self.order)

    def units(self) -> range:
        return range(1, self.order)

    def trace_to_prime(self, a: int) -> int:
        """Absolute trace F_{p^d} -> F_p, returned as an integer mod p."""
        s, x = 0, a
        for _ in range(self.d):
            s = self.add(s, x)
            x = self.pow(x, self.p)
        return s


@lru_cache(maxsize=None)
def gf(p: int, d: int = 1) -> GF:
    return GF(p, d)


def gf_of_order(q: int) -> GF:
    p, e = prime_power(q)
    return gf(p, e)


class TowerField:
    """F_q inside F_{q^n}, n prime.

    ``small`` and ``big`` are the two :class:`GF` instances; ``embed`` maps
    small codes to big codes.  ``modulus`` is the minimal polynomial of the
    big generator over F_q (small codes, constant term first, monic).
    """

    def __init__(self, q: int, n: int):
        p, e = prime_power(q)
        if not is_prime(n):
            raise ValueError(f"n={n} is not prime")
        self.q, self.n, self.p, self.e = q, n, p, e
        self.small = gf(p, e)
        self.big = gf(p, e * n)
        big = self.big
        rho = None
        for cand in big.elements():
            acc = 0
            for c in reversed(self.small.modulus):
                acc = big.add(big.mul(acc, cand), c)
            if acc == 0:
                rho = cand
                break
        assert rho is not None
        self.embed_table = []
        for a in self.small.elements():
            acc = 0
            for c in reversed(self.small.digits(a)):
                acc = big.add(big.mul(acc, rho), c)
            self.embed_table.append(acc)
        self._unembed = {b: a for a, b in enumerate(self.embed_table)}
        self.generator = big.generator
        self.order = big.order - 1
        # minimal polynomial of the generator over F_q
        poly = [1]
        for i in range(n):
            root = big.pow(self.generator, q ** i)
            nxt = [0] * (len(poly) + 1)
            for j, c in enumerate(poly):
                nxt[j + 1] = big.add(nxt[j + 1], c)
                nxt[j] = big.sub(nxt[j], big.mul(c, root))
            poly = nxt
        self.modulus = tuple(self.unembed(c) for c in poly)

    def __repr__(self):
        return f"TowerField(q={self.q}, n={self.n})"

    def embed(self, a: int) -> int:
        return self.embed_table[a]

    def unembed(self, b: int) -> int:
        try:
            return self._unembed[b]
        except KeyError:
            raise ValueError(f"{b} does not lie in F_{self.q}") from None

    def in_base(self, b: int) -> bool:
        return b in self._unembed

    def frobenius(self, b: int, times: int = 1) -> int:
        return self.big.pow(b, self.q ** times)

    def log(self, b: int) -> int:
        if b == 0:
            raise ValueError("discrete log of zero")
        return self.big.log[b]

    def base_elements(self) -> list[int]:
        """The subfield F_q as big-field codes."""
        return list(self.embed_table)


@lru_cache(maxsize=None)
def make_tower(q: int, n: int) -> TowerField:
    return TowerField(q, n)


# ---------------------------------------------------------------------------
# cyclotomic integers

@lru_cache(maxsize=None)
def _cyclotomic_poly(m: int) -> tuple[int, ...]:
    """Integer coefficients of Phi_m, constant term first."""
    num = [-1] + [0] * (m - 1) + [1]
    for d in range(1, m):
        if m % d == 0:
            den = _cyclotomic_poly(d)
            # exact division by a monic polynomial
            num = list(num)
            out = [0] * (len(num) - len(den) + 1)
            for i in range(len(out) - 1, -1, -1):
                c = num[i + len(den) - 1]
                out[i] = c
                if c:
                    for j, dc in enumerate(den):
                        num[i + j] -= c * dc
            assert not any(num[: len(den) - 1])
            num = out
    return tuple(num)


@lru_cache(maxsize=None)
def _reduction_table(m: int) -> tuple[tuple[int, ...], ...]:
    """Row j: coefficients of zeta_m^j reduced modulo Phi_m."""
    phi = _cyclotomic_poly(m)
    deg = len(phi) - 1
    rows = []
    cur = [1] + [0] * (deg - 1)
    for _ in range(m):
        rows.append(tuple(cur))
        top = cur[-1]
        cur = [0] + cur[:-1]
        if top:
            cur = [c - top * pc for c, pc in zip(cur, phi)]
    return tuple(rows)


class CycInt:
    """Element of Z[zeta_m], canonically reduced modulo the m-th cyclotomic
    polynomial (coefficient vector of length phi(m)).  Immutable."""

    __slots__ = ("m", "coeffs")

    def __init__(self, m: int, coeffs):
        self.m = m
        self.coeffs = tuple(coeffs)

    @classmethod
    def from_exponents(cls, m: int, terms) -> "CycInt":
        """Sum of c * zeta_m^j over (j, c) pairs."""
        table = _reduction_table(m)
        acc = [0] * len(table[0])
        for j, c in terms:
            if c:
                for i, r in enumerate(table[j % m]):
                    if r:
                        acc[i] += c * r
        return cls(m, acc)

    @classmethod
    def zeta(cls, m: int, j: int = 1) -> "CycInt":
        return cls.from_exponents(m, [(j, 1)])

    @classmethod
    def integer(cls, c: int, m: int = 1) -> "CycInt":
        return cls.from_exponents(m, [(0, c)])

    def _promote(self, m: int) -> "CycInt":
        if m == self.m:
            return self
        s = m // self.m
        return CycInt.from_exponents(m, [(i * s, c) for i, c in enumerate(self.coeffs)])

    def _coerce(self, other):
        if isinstance(other, int):
            other = CycInt.integer(other, self.m)
        elif not isinstance(other, CycInt):
            return None, None
        L = math.lcm(self.m, other.m)
        return self._promote(L), other._promote(L)

    def __add__(self, other):
        a, b = self._coerce(other)
        if a is None:
            return NotImplemented
        return CycInt(a.m, [x + y for x, y in zip(a.coeffs, b.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return CycInt(self.m, [-x for x in self.coeffs])

    def __sub__(self, other):
        a, b = self._coerce(other)
        if a is None:
            return NotImplemented
        return CycInt(a.m, [x - y for x, y in zip(a.coeffs, b.coeffs)])

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return CycInt(self.m, [other * x for x in self.coeffs])
        a, b = self._coerce(other)
        if a is None:
            return NotImplemented
        m = a.m
        terms: dict[int, int] = {}
        for i, x in enumerate(a.coeffs):
            if x:
                for j, y in enumerate(b.coeffs):
                    if y:
                        k = (i + j) % m
                        terms[k] = terms.get(k, 0) + x * y
        return CycInt.from_exponents(m, terms.items())

    __rmul__ = __mul__

    def conj(self) -> "CycInt":
        return CycInt.from_exponents(self.m, [(-i, c) for i, c in enumerate(self.coeffs)])

    def is_integer(self) -> bool:
        return not any(self.coeffs[1:])

    def to_int(self) -> int:
        if not self.is_integer():
            raise ValueError(f"{self} is not a rational integer")
        return self.coeffs[0] if self.coeffs else 0

    def __complex__(self):
        m = self.m
        return sum((c * cmath.exp(2j * math.pi * i / m) for i, c in enumerate(self.coeffs) if c), 0j)

    def __abs__(self):
        return abs(complex(self))

    def __eq__(self, other):
        a, b = self._coerce(other)
        if a is None:
            return NotImplemented
        return a.coeffs == b.coeffs

    def __hash__(self):
        # consistent with == for a fixed m and for rational integers
        if self.is_integer():
            return hash(self.to_int())
        return hash((self.m, self.coeffs))

    def __bool__(self):
        return any(self.coeffs)

    def __repr__(self):
        return f"CycInt({self.m}, {list(self.coeffs)})"

    def __str__(self):
        parts = []
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            parts.append(str(c) if i == 0 else f"{c}*z({self.m})^{i}")
        if not parts:
            return "0"
        return " + ".join(parts).replace("+ -", "- ")


def cyc_abs(v: CycInt) -> float:
    return abs(complex(v))


# ---------------------------------------------------------------------------
# characters of F_{q^n}^x

def frobenius_orbit(k: int, tower: TowerField) -> tuple[int, ...]:
    M = tower.order
    orbit, x = [], k % M
    while x not in orbit:
        orbit.append(x)
        x = (x * tower.q) % M
    return tuple(orbit)


def is_regular(k: int, tower: TowerField) -> bool:
    """theta^k has n distinct Galois conjugates."""
    return len(frobenius_orbit(k, tower)) == tower.n


def regular_orbits(tower: TowerField) -> list[int]:
    """Minimal representatives of the regular Frobenius orbits, ascending."""
    seen, reps = set(), []
    for k in range(tower.order):
        if k in seen:
            continue
        orb = frobenius_orbit(k, tower)
        seen.update(orb)
        if len(orb) == tower.n:
            reps.append(min(orb))
    return reps


def char_value(k: int, x: int, tower: TowerField) -> CycInt:
    """theta^k(x) = zeta_{q^n-1}^(k log x) for x a nonzero big-field code."""
    if x == 0:
        raise ValueError("character value at zero")
    return CycInt.zeta(tower.order, k * tower.log(x))
