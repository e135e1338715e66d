"""Weights and characters of the compact unitary group U(n).

Weights are integer tuples (a_1, ..., a_n), dominant when non-increasing.
The Weyl dimension polynomial is kept as an exact multivariate polynomial
with rational coefficients; Schur characters are evaluated through the
Jacobi-Trudi determinant det[h_{a_i - i + j}], which stays well defined
when eigenvalues repeat.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

import numpy as np

__all__ = [
    "Poly", "RootData", "root_data", "is_dominant", "dominant_weights",
    "weyl_dim", "weyl_polynomial", "complete_homogeneous", "schur_trace",
    "regular_bound", "DegreeScan", "cc_degree_scan",
]

_UNIT_TOL = 1e-12


# --- a small exact polynomial type -------------------------------------------

class Poly:
    """Polynomial in n variables with Fraction coefficients, keyed by
    exponent tuples."""

    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms=None):
        self.n = n
        self.terms: dict[tuple[int, ...], Fraction] = {}
        for e, c in (terms or {}).items():
            c = Fraction(c)
            if c:
                self.terms[tuple(e)] = self.terms.get(tuple(e), 0) + c
        self.terms = {e: c for e, c in self.terms.items() if c}

    @classmethod
    def const(cls, n: int, c) -> "Poly":
        return cls(n, {(0,) * n: c})

    @classmethod
    def var(cls, n: int, i: int) -> "Poly":
        e = [0] * n
        e[i] = 1
        return cls(n, {tuple(e): 1})

    @classmethod
    def from_coeffs(cls, n: int, coeffs) -> "Poly":
        """From a list of [exponents, coefficient] pairs; coefficients may be
        ints, floats or strings like "3/2"."""
        out: dict = {}
        for e, c in coeffs:
            if len(e) != n:
                raise ValueError(f"exponent {e} does not have {n} entries")
            out[tuple(e)] = out.get(tuple(e), 0) + Fraction(c)
        return cls(n, out)

    def _lift(self, other):
        return other if isinstance(other, Poly) else Poly.const(self.n, other)

    def __add__(self, other):
        other = self._lift(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return Poly(self.n, out)

    __radd__ = __add__

    def __neg__(self):
        return Poly(self.n, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __mul__(self, other):
        other = self._lift(other)
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return Poly(self.n, out)

    __rmul__ = __mul__

    def __eq__(self, other):
        return isinstance(other, Poly) and self.n == other.n and self.terms == other.terms

    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def __call__(self, point):
        """Evaluate; exact for int/Fraction inputs."""
        total = 0
        for e, c in self.terms.items():
            term = c
            for x, k in zip(point, e):
                if k:
                    term = term * x ** k
            total = total + term
        return total

    def coefficients(self) -> list[tuple[tuple[int, ...], Fraction]]:
        return sorted(self.terms.items(), key=lambda ec: (-sum(ec[0]), tuple(-x for x in ec[0])))

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.coefficients():
            mono = "*".join(f"a{i + 1}" + (f"^{k}" if k > 1 else "") for i, k in enumerate(e) if k)
            if not mono:
                parts.append(f"{c}")
            elif abs(c) == 1:
                parts.append(mono if c > 0 else f"-{mono}")
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self):
        return f"Poly({self.n}, {self.terms!r})"


# --- roots and weights -------------------------------------------------------------

@dataclass(frozen=True)
class RootData:
    """Positive roots e_i - e_j (i < j), simple roots and delta for U(n),
    in coordinates of the dual basis e_i*, which is orthonormal for the
    form induced by B_0(X, Y) = Tr XY."""
    n: int
    positive_roots: tuple
    simple_roots: tuple
    delta: tuple

    def inner(self, x, y):
        return sum(Fraction(a) * Fraction(b) for a, b in zip(x, y))


def root_data(n: int) -> RootData:
    if n < 1:
        raise ValueError("n must be positive")

    def root(i, j):
        return tuple(1 if k == i else -1 if k == j else 0 for k in range(n))

    pos = tuple(root(i, j) for i, j in combinations(range(n), 2))
    simple = tuple(root(i, i + 1) for i in range(n - 1))
    half_sum = tuple(Fraction(sum(r[k] for r in pos), 2) for k in range(n))
    return RootData(n, pos, simple, half_sum)


def is_dominant(weight) -> bool:
    return all(a >= b for a, b in zip(weight, weight[1:]))


def _check_dominant(weight):
    if not all(isinstance(a, (int, np.integer)) for a in weight):
        raise ValueError(f"weight {weight} is not integral")
    if not is_dominant(weight):
        raise ValueError(f"weight {tuple(weight)} is not dominant")


def dominant_weights(n: int, box: int, last: int = 0):
    """Dominant weights with a_n = ``last`` and a_1 - a_n <= box, in
    lexicographic order."""
    def rec(prefix, hi, left):
        if left == 0:
            yield tuple(prefix) + (last,)
            return
        for a in range(last, hi + 1):
            yield from rec(prefix + [a], a, left - 1)

    if n == 1:
        yield (last,)
        return
    for a1 in range(last, last + box + 1):
        yield from rec([a1], a1, n - 2)


def weyl_dim(weight) -> int:
    """prod_{i<j} (a_i - a_j + j - i) / prod_{k<n} k!."""
    _check_dominant(weight)
    n = len(weight)
    num = math.prod(weight[i] - weight[j] + j - i for i, j in combinations(range(n), 2))
    den = math.prod(math.factorial(k) for k in range(1, n))
    q, r = divmod(num, den)
    assert r == 0
    return q


def weyl_polynomial(n: int) -> Poly:
    """The dimension of the irreducible representation with highest weight
    (a_1, ..., a_n), as a polynomial in the a_i."""
    P = Poly.const(n, 1)
    for i, j in combinations(range(n), 2):
        P = P * (Poly.var(n, i) - Poly.var(n, j) + (j - i))
    den = math.prod(math.factorial(k) for k in range(1, n))
    return P * Fraction(1, den)


# --- Schur characters ---------------------------------------------------------------------

def complete_homogeneous(x, K: int) -> list:
    """[h_0(x), ..., h_K(x)] by h_k(x_1..x_j) = h_k(x_1..x_{j-1}) + x_j h_{k-1}(x_1..x_j)."""
    h = [1] + [0] * K
    for xj in x:
        for k in range(1, K + 1):
            h[k] = h[k] + xj * h[k - 1]
    return h


def _exact_det(M):
    """Determinant over Q by fraction-free Gaussian elimination (Bareiss)."""
    M = [[Fraction(v) for v in row] for row in M]
    n = len(M)
    sign, prev = 1, Fraction(1)
    for c in range(n - 1):
        piv = next((r for r in range(c, n) if M[r][c]), None)
        if piv is None:
            return 0
        if piv != c:
            M[c], M[piv] = M[piv], M[c]
            sign = -sign
        for r in range(c + 1, n):
            for j in range(c + 1, n):
                M[r][j] = (M[r][j] * M[c][c] - M[r][c] * M[c][j]) / prev
            M[r][c] = 0
        prev = M[c][c]
    d = sign * M[n - 1][n - 1]
    return int(d) if d.denominator == 1 else d


def _is_exact(v) -> bool:
    return isinstance(v, (int, Fraction)) and not isinstance(v, bool)


def schur_trace(weight, x):
    """Tr xi_lambda(diag(x)) = s_lambda(x).

    Negative entries are handled by s_lambda = (prod x)^{a_n} s_{lambda - a_n}.
    With integer or Fraction eigenvalues the result is exact; otherwise
    the eigenvalues must have modulus 1 and the value is a complex number.
    """
    _check_dominant(weight)
    n = len(weight)
    if len(x) != n:
        raise ValueError(f"need {n} eigenvalues, got {len(x)}")
    exact = all(_is_exact(v) for v in x)
    if not exact:
        x = [complex(v) for v in x]
        if any(abs(abs(v) - 1) > _UNIT_TOL for v in x):
            raise ValueError("eigenvalues must have modulus 1")
    shift = weight[-1]
    lam = [a - shift for a in weight]
    K = lam[0] + n
    h = complete_homogeneous(x, K)

    def H(k):
        return h[k] if 0 <= k <= K else 0

    M = [[H(lam[i] - i + j) for j in range(n)] for i in range(n)]
    if exact:
        val = _exact_det(M)
        det_x = math.prod(Fraction(v) for v in x)
    else:
        val = complex(np.linalg.det(np.array(M, dtype=complex)))
        det_x = complex(np.prod(np.array(x, dtype=complex)))
    if shift:
        val = val * det_x ** shift
        if exact and isinstance(val, Fraction) and val.denominator == 1:
            val = int(val)
    return val


def regular_bound(x) -> float:
    """n! / |Vandermonde(x)|: bounds |s_lambda(x)| for every dominant lambda
    when the x_i are distinct and of modulus 1 (bialternant formula)."""
    x = [complex(v) for v in x]
    n = len(x)
    if any(abs(abs(v) - 1) > _UNIT_TOL for v in x):
        raise ValueError("eigenvalues must have modulus 1")
    vand = math.prod(abs(x[i] - x[j]) for i, j in combinations(range(n), 2))
    if vand < _UNIT_TOL:
        raise ValueError("eigenvalues must be pairwise distinct")
    return math.factorial(n) / vand


@dataclass(frozen=True)
class DegreeScan:
    """Growth of max |s_lambda(x)| over the box a_n = 0, a_1 <= b.

    ``running_max[b]`` is that maximum; ``exponent`` is the least-squares
    slope of log running_max against log(b + 1) over the upper half of the
    box; ``max_ratio`` is max |s_lambda(x)| / weyl_dim(lambda).
    """
    n: int
    box: int
    weyl_degree: int
    running_max: tuple
    exponent: float
    max_ratio: float
    margin: float

    @property
    def passes(self) -> bool:
        return self.exponent <= self.weyl_degree - self.margin


def cc_degree_scan(x, box: int, margin: float = 0.5) -> DegreeScan:
    n = len(x)
    xs = [complex(v) for v in x]
    if all(abs(v - xs[0]) < _UNIT_TOL for v in xs):
        raise ValueError("central element: all eigenvalues equal")
    best = [0.0] * (box + 1)
    ratio = 0.0
    for lam in dominant_weights(n, box):
        s = abs(schur_trace(lam, x))
        best[lam[0]] = max(best[lam[0]], s)
        ratio = max(ratio, s / weyl_dim(lam))
    running = list(np.maximum.accumulate(best))
    lo = max(1, box // 2)
    bs = np.arange(lo, box + 1)
    ys = np.array(running[lo:], dtype=float)
    if np.all(ys > 0):
        slope = float(np.polyfit(np.log(bs + 1), np.log(ys), 1)[0])
    else:
        slope = 0.0
    return DegreeScan(n, box, (n * n - n) // 2, tuple(running), slope, ratio, margin)
