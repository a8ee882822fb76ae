"""Exact Stern-Brocot / Farey tree combinatorics.

The tree lives on vertices (n, k) with floor n >= 0 and horizontal index
0 <= k <= 2**n.  Every vertex carries a reduced fraction label in [0, 1]:
the endpoints of floor n are 0/1 and 1/1, even indices copy the label one
floor up, and odd indices take the mediant of their two neighbours.  All
arithmetic in this module is exact (stdlib ``Fraction`` over big integers);
nothing here ever touches floating point except ``partition_function``,
which is a plain real Dirichlet-series truncation.

Vertices are passed around as plain ``(n, k)`` integer pairs.  Continued
fractions of values in [0, 1] are tuples of positive integers ``(a1, ..., at)``
with the canonical convention ``at >= 2``; the two endpoint values get the
distinguished encodings ``() == 0`` and ``(1,) == 1``.

Everything is a pure function of its arguments; the only cache is the
read-only row memo, so concurrent use is safe.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

__all__ = [
    "CF",
    "Mat2",
    "MAT_A",
    "MAT_B",
    "MAT_J",
    "cf_convergents",
    "cf_decode",
    "cf_encode",
    "cf_normalize",
    "children_of_star",
    "euler_phi",
    "farey_inverse_orbit",
    "farey_map",
    "farey_map_cf",
    "farey_preimages",
    "height",
    "label",
    "matrix_m",
    "matrix_to_vertex",
    "mediant",
    "partition_function",
    "question_mark",
    "question_mark_inv",
    "row",
    "totient_fiber",
    "totient_sieve",
    "vertex_to_matrix",
    "verify_matrix_words",
]

CF = tuple[int, ...]

MAX_ROW_FLOOR = 24  # row(n) materialises 2**n + 1 fractions


# ---------------------------------------------------------------------------
# labels and rows


def mediant(x: Fraction, y: Fraction) -> Fraction:
    """Freshman sum (p+p')/(q+q') of two reduced fractions."""
    return Fraction(x.numerator + y.numerator, x.denominator + y.denominator)


def _check_vertex(n: int, k: int) -> None:
    if n < 0:
        raise ValueError(f"floor must be >= 0, got {n}")
    if not 0 <= k <= 2**n:
        raise ValueError(f"index {k} out of range for floor {n}")


@lru_cache(maxsize=None)
def row(n: int) -> tuple[Fraction, ...]:
    """All 2**n + 1 labels of floor n, strictly increasing.

    Built iteratively floor by floor: even positions copy the previous row,
    odd positions are mediants of their neighbours.  Guarded at
    n <= MAX_ROW_FLOOR since the result has 2**n + 1 entries.
    """
    if n < 0:
        raise ValueError(f"floor must be >= 0, got {n}")
    if n > MAX_ROW_FLOOR:
        raise ValueError(f"floor {n} too large for row materialisation (max {MAX_ROW_FLOOR})")
    if n == 0:
        return (Fraction(0), Fraction(1))
    prev = row(n - 1)
    out: list[Fraction] = [prev[0]]
    for left, right in zip(prev, prev[1:]):
        out.append(mediant(left, right))
        out.append(right)
    return tuple(out)


def label(n: int, k: int) -> Fraction:
    """Label of vertex (n, k), computed in O(n) big-integer steps.

    Walks the binary digits of k, halving the Stern-Brocot interval at the
    mediant each floor, so single labels at large n never materialise a row.
    """
    _check_vertex(n, k)
    if k == 2**n:
        return Fraction(1)
    lo, hi = Fraction(0), Fraction(1)
    for bit in format(k, f"0{n}b") if n else "":
        mid = mediant(lo, hi)
        if bit == "0":
            hi = mid
        else:
            lo = mid
    return lo


def children_of_star() -> tuple[int, int]:
    """Indices at floor 0 reachable from the augmentation vertex."""
    return (0, 1)


# ---------------------------------------------------------------------------
# continued fractions


def cf_normalize(terms: Sequence[int]) -> CF:
    """Canonicalise a term list: fold a trailing 1 into its predecessor.

    (a1, ..., at, 1) and (a1, ..., at + 1) denote the same value; the
    canonical form has last term >= 2, except for the value 1 == (1,).
    """
    t = tuple(terms)
    if any(a < 1 for a in t):
        raise ValueError(f"continued-fraction terms must be positive, got {t}")
    while len(t) >= 2 and t[-1] == 1:
        t = t[:-2] + (t[-2] + 1,)
    return t


def cf_encode(x: Fraction) -> CF:
    """Canonical continued fraction of x in [0, 1].

    Returns () for 0 and (1,) for 1; otherwise the Euclidean expansion,
    whose last term is automatically >= 2 on (0, 1).
    """
    if not 0 <= x <= 1:
        raise ValueError(f"value {x} outside [0, 1]")
    if x == 0:
        return ()
    if x == 1:
        return (1,)
    terms: list[int] = []
    p, q = x.numerator, x.denominator
    # Euclid on 1/x: q = a*p + r with 0 <= r < p.
    while p:
        a, r = divmod(q, p)
        terms.append(a)
        p, q = r, p
    return tuple(terms)


def cf_decode(terms: Sequence[int]) -> Fraction:
    """Value of a (not necessarily canonical) term tuple, folded right to left."""
    value = Fraction(0)
    for a in reversed(terms):
        if a < 1:
            raise ValueError(f"continued-fraction terms must be positive, got {terms}")
        value = Fraction(1, a + value)
    return value


def cf_convergents(terms: Sequence[int]) -> list[Fraction]:
    """Convergents p_l/q_l with the seed p_{-1}=1, q_{-1}=0, p_0=0, q_0=1."""
    p_prev, q_prev, p_cur, q_cur = 1, 0, 0, 1
    out: list[Fraction] = []
    for a in terms:
        p_prev, q_prev, p_cur, q_cur = p_cur, q_cur, a * p_cur + p_prev, a * q_cur + q_prev
        out.append(Fraction(p_cur, q_cur))
    return out


def height(x: Fraction) -> int:
    """First floor on which x appears as a label: sum of CF terms minus 1."""
    if x == 0:
        return 0
    return sum(cf_encode(x)) - 1


# ---------------------------------------------------------------------------
# Minkowski question mark


def question_mark(x: Fraction | Sequence[int]) -> Fraction:
    """?(x) as an exact dyadic rational, via the alternating series
    sum_k (-1)**(k-1) / 2**((a1+...+ak) - 1) over the CF terms of x.
    """
    terms = cf_encode(x) if isinstance(x, Fraction) else cf_normalize(x)
    total = Fraction(0)
    partial = 0
    for i, a in enumerate(terms):
        partial += a
        term = Fraction(1, 2 ** (partial - 1))
        total += term if i % 2 == 0 else -term
    return total


def question_mark_inv(k: int, n: int) -> Fraction:
    """Inverse of the question mark on dyadics: k/2**n maps back to label(n, k)."""
    _check_vertex(n, k)
    return label(n, k)


# ---------------------------------------------------------------------------
# the Farey map and its inverse branches


def farey_map(x: Fraction) -> Fraction:
    """Two-branch interval map: x/(1-x) on [0, 1/2], (1-x)/x on (1/2, 1]."""
    if not 0 <= x <= 1:
        raise ValueError(f"value {x} outside [0, 1]")
    if 2 * x <= 1:
        return x / (1 - x)
    return (1 - x) / x


def farey_map_cf(terms: Sequence[int]) -> CF:
    """Digit-shift form of the map: decrement a1, dropping it when a1 == 1."""
    t = cf_normalize(terms)
    if not t:
        return ()
    if t[0] == 1:
        return cf_normalize(t[1:]) if len(t) > 1 else ()
    return cf_normalize((t[0] - 1,) + t[1:])


def farey_preimages(y: Fraction) -> tuple[Fraction, Fraction]:
    """The two solutions of farey_map(x) == y: (y/(1+y), 1/(1+y))."""
    if not 0 <= y <= 1:
        raise ValueError(f"value {y} outside [0, 1]")
    return y / (1 + y), 1 / (1 + y)


def farey_inverse_orbit(n: int) -> list[Fraction]:
    """Sorted n-th inverse image of {0}; has 2**(n-1) + 1 elements for n >= 1.

    Coincides with row(n-1) as a set, and with the rationals whose CF terms
    sum to at most n (plus 0 itself).  Guarded at n <= 14 (set size doubles
    per step).
    """
    if not 0 <= n <= 14:
        raise ValueError("n must lie in 0..14")
    current = {Fraction(0)}
    for _ in range(n):
        nxt = set()
        for y in current:
            f1, f2 = farey_preimages(y)
            nxt.add(f1)
            nxt.add(f2)
        current = nxt
    return sorted(current)


# ---------------------------------------------------------------------------
# totient fibers of the denominator map and the associated Dirichlet series


def totient_sieve(qmax: int) -> list[int]:
    """phi(0..qmax) by the standard linear sieve (phi[0] is set to 0)."""
    phi = list(range(qmax + 1))
    for p in range(2, qmax + 1):
        if phi[p] == p:  # p prime
            for m in range(p, qmax + 1, p):
                phi[m] -= phi[m] // p
    if qmax >= 0:
        phi[0] = 0
    return phi


def euler_phi(q: int) -> int:
    """phi(q) by trial factorisation; independent of the sieve."""
    if q < 1:
        raise ValueError("q must be >= 1")
    result, m, p = q, q, 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1
    if m > 1:
        result -= result // m
    return result


def totient_fiber(q: int) -> int:
    """Number of odd-index vertices whose denominator equals q.

    For each p coprime to q the vertex is located through the continued
    fraction: first floor n = sum(terms) - 1, index k = 2**n * ?(p/q).
    Internal assertions check that k is odd and that the located vertex
    really carries the label p/q; their failure would mean the tree
    bijection itself is broken.  The count always equals phi(q).
    """
    if q < 2:
        raise ValueError("q must be >= 2")
    count = 0
    for p in range(1, q):
        if math.gcd(p, q) != 1:
            continue
        x = Fraction(p, q)
        n = height(x)
        qm = question_mark(x) * 2**n
        assert qm.denominator == 1, (p, q)
        k = qm.numerator
        assert k % 2 == 1, (p, q, k)
        assert label(n, k) == x, (p, q, n, k)
        count += 1
    return count


def partition_function(s: float, qmax: int) -> float:
    """Truncated Dirichlet series sum_{q=1}^{qmax} phi(q) * q**(-s).

    Converges to zeta(s-1)/zeta(s) for s > 2; the truncation tail is
    O(qmax**(2-s)) since phi(q) <= q.  Rejects s <= 2 (divergent).
    """
    if s <= 2:
        raise ValueError("series diverges for s <= 2")
    if qmax < 1:
        raise ValueError("qmax must be >= 1")
    phi = totient_sieve(qmax)
    return sum(phi[q] * q**-s for q in range(1, qmax + 1))


# ---------------------------------------------------------------------------
# the matrix-word correspondence


@dataclass(frozen=True)
class Mat2:
    """Integer 2x2 matrix [[a, b], [c, d]]."""

    a: int
    b: int
    c: int
    d: int

    def __matmul__(self, other: "Mat2") -> "Mat2":
        return Mat2(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def det(self) -> int:
        return self.a * self.d - self.b * self.c

    def power(self, n: int) -> "Mat2":
        if n < 0:
            raise ValueError("negative powers not needed here")
        result = Mat2(1, 0, 0, 1)
        for _ in range(n):
            result = result @ self
        return result

    def in_gamma_plus(self) -> bool:
        """Membership in {[[p', p], [q', q]] : det = 1, 0 <= p <= q, 0 <= p' <= q'}."""
        return self.det() == 1 and 0 <= self.b <= self.d and 0 <= self.a <= self.c


MAT_A = Mat2(1, 0, 1, 1)
MAT_B = Mat2(1, 1, 0, 1)
MAT_J = Mat2(0, 1, 1, 0)


def matrix_m(a: int) -> Mat2:
    return Mat2(a, 1, 1, 0)


def vertex_to_matrix(n: int, k: int) -> Mat2:
    """[[p', p], [q', q]] built from the neighbour pair (label(n,k), label(n,k+1)).

    Defined for k < 2**n; the rightmost vertex has no right neighbour.
    """
    _check_vertex(n, k)
    if k >= 2**n:
        raise ValueError(f"vertex ({n}, {k}) has no right neighbour")
    left = label(n, k)
    right = label(n, k + 1)
    return Mat2(right.numerator, left.numerator, right.denominator, left.denominator)


def matrix_to_vertex(m: Mat2) -> tuple[int, int]:
    """Inverse of vertex_to_matrix on Gamma^+.

    The dyadic images ?(p/q) = u/2**s and ?(p'/q') = u'/2**s' locate the
    unique floor n = max(s, s') at which the two columns are neighbours.
    """
    if not m.in_gamma_plus():
        raise ValueError(f"{m} is not in Gamma^+")
    left = Fraction(m.b, m.d)
    right = Fraction(m.a, m.c)
    d_left = question_mark(left)
    d_right = question_mark(right)
    n = max(d_left.denominator.bit_length(), d_right.denominator.bit_length()) - 1
    k = d_left.numerator * (2**n // d_left.denominator)
    k_right = d_right.numerator * (2**n // d_right.denominator)
    if k_right != k + 1 or label(n, k) != left:
        raise ValueError(f"{m} does not describe a neighbour pair")
    return n, k


def verify_matrix_words(amax: int, bmax: int) -> tuple[bool, tuple[int, int, str] | None]:
    """Exhaustively check B^a A^b == M(a) M(b) and A^a B^b == J M(a) M(b) J.

    Returns (True, None) on success, else (False, (a, b, which)) for the
    first failing pair.
    """
    for a in range(1, amax + 1):
        for b in range(1, bmax + 1):
            mm = matrix_m(a) @ matrix_m(b)
            if MAT_B.power(a) @ MAT_A.power(b) != mm:
                return False, (a, b, "B^a A^b = M(a)M(b)")
            if MAT_A.power(a) @ MAT_B.power(b) != MAT_J @ mm @ MAT_J:
                return False, (a, b, "A^a B^b = J M(a)M(b) J")
    return True, None
