"""Dense polynomials over an integer-coded finite field (constant term
first, trailing zeros stripped) and small matrix utilities over a field."""
from __future__ import annotations

from itertools import product, permutations

from .towerfield import GF


def trim(a) -> tuple[int, ...]:
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return tuple(a)


def add(F: GF, a, b) -> tuple[int, ...]:
    n = max(len(a), len(b))
    a = tuple(a) + (0,) * (n - len(a))
    b = tuple(b) + (0,) * (n - len(b))
    return trim(F.add(x, y) for x, y in zip(a, b))


def neg(F: GF, a) -> tuple[int, ...]:
    return tuple(F.neg(x) for x in a)


def sub(F: GF, a, b) -> tuple[int, ...]:
    return add(F, a, neg(F, b))


def mul(F: GF, a, b) -> tuple[int, ...]:
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] = F.add(out[i + j], F.mul(x, y))
    return trim(out)


def scale(F: GF, c: int, a) -> tuple[int, ...]:
    return trim(F.mul(c, x) for x in a)


def divmod_(F: GF, a, b) -> tuple[tuple[int, ...], tuple[int, ...]]:
    b = trim(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    a = list(trim(a))
    inv_lead = F.inv(b[-1])
    if len(a) < len(b):
        return (), tuple(a)
    quo = [0] * (len(a) - len(b) + 1)
    for i in range(len(quo) - 1, -1, -1):
        c = F.mul(a[i + len(b) - 1], inv_lead)
        quo[i] = c
        if c:
            for j, y in enumerate(b):
                a[i + j] = F.sub(a[i + j], F.mul(c, y))
    return trim(quo), trim(a[: len(b) - 1])


def evaluate(F: GF, a, x: int) -> int:
    acc = 0
    for c in reversed(a):
        acc = F.add(F.mul(acc, x), c)
    return acc


def monic_polys(F: GF, d: int):
    """All monic polynomials of degree d, in lexicographic code order."""
    for low in product(F.elements(), repeat=d):
        yield tuple(low) + (1,)


def factor(F: GF, a) -> list[tuple[tuple[int, ...], int]]:
    """Factor a monic polynomial into monic irreducibles by trial division.

    Intended for the small degrees used here (degree <= 5 or so): divisors of
    degree <= deg/2 are tried in increasing degree, so every divisor found is
    irreducible, and what is left over at the end is irreducible too.
    """
    a = trim(a)
    if not a or a[-1] != 1:
        raise ValueError("factor expects a monic polynomial")
    out = []
    d = 1
    while 2 * d <= len(a) - 1:
        for f in monic_polys(F, d):
            mult = 0
            while True:
                qt, rem = divmod_(F, a, f)
                if rem:
                    break
                a, mult = qt, mult + 1
            if mult:
                out.append((f, mult))
        d += 1
    if len(a) > 1:
        for i, (f, mult) in enumerate(out):
            if f == a:
                out[i] = (f, mult + 1)
                break
        else:
            out.append((a, 1))
    out.sort(key=lambda fm: (len(fm[0]), fm[0]))
    return out


def is_irreducible(F: GF, a) -> bool:
    fs = factor(F, a)
    return len(fs) == 1 and fs[0][1] == 1


def roots(F: GF, a) -> list[int]:
    return [x for x in F.elements() if evaluate(F, a, x) == 0]


# --- matrices over a field, stored as tuples of rows ------------------------

def mat_mul(F: GF, A, B):
    n, m, r = len(A), len(B), len(B[0])
    out = []
    for i in range(n):
        row = []
        for j in range(r):
            s = 0
            for k in range(m):
                s = F.add(s, F.mul(A[i][k], B[k][j]))
            row.append(s)
        out.append(tuple(row))
    return tuple(out)


def identity(n: int):
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def rank(F: GF, rows) -> int:
    M = [list(r) for r in rows]
    if not M:
        return 0
    rk, cols = 0, len(M[0])
    for c in range(cols):
        piv = next((i for i in range(rk, len(M)) if M[i][c]), None)
        if piv is None:
            continue
        M[rk], M[piv] = M[piv], M[rk]
        inv = F.inv(M[rk][c])
        M[rk] = [F.mul(inv, x) for x in M[rk]]
        for i in range(len(M)):
            if i != rk and M[i][c]:
                f = M[i][c]
                M[i] = [F.sub(x, F.mul(f, y)) for x, y in zip(M[i], M[rk])]
        rk += 1
    return rk


def det(F: GF, A) -> int:
    n = len(A)
    total = 0
    for perm in permutations(range(n)):
        term = 1
        for i, j in enumerate(perm):
            term = F.mul(term, A[i][j])
            if not term:
                break
        if term:
            if _parity(perm):
                term = F.neg(term)
            total = F.add(total, term)
    return total


def _parity(perm) -> int:
    perm, par = list(perm), 0
    for i in range(len(perm)):
        while perm[i] != i:
            j = perm[i]
            perm[i], perm[j] = perm[j], perm[i]
            par ^= 1
    return par


def charpoly(F: GF, A) -> tuple[int, ...]:
    """det(x I - A), constant term first."""
    n = len(A)
    entries = [[((F.neg(A[i][j]), 1) if i == j else ((F.neg(A[i][j]),) if A[i][j] else ()))
                for j in range(n)] for i in range(n)]
    total: tuple[int, ...] = ()
    for perm in permutations(range(n)):
        term: tuple[int, ...] = (1,)
        for i, j in enumerate(perm):
            term = mul(F, term, trim(entries[i][j]))
            if not term:
                break
        if term:
            total = sub(F, total, term) if _parity(perm) else add(F, total, term)
    return total


def poly_of_matrix(F: GF, f, A):
    """f(A) by Horner's rule."""
    n = len(A)
    acc = tuple(tuple(0 for _ in range(n)) for _ in range(n))
    for c in reversed(f):
        acc = mat_mul(F, acc, A)
        acc = tuple(tuple(F.add(acc[i][j], c if i == j else 0) for j in range(n)) for i in range(n))
    return acc
