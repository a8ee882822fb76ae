"""Traces as weight functions on the memoryless tree.

Augment the diagram with a root ``STAR = (-1, 0)`` joined to both floor-0
vertices, then forget the memory columns: what remains is the binary-ish
tree T on STAR and the odd-index vertices (n, k).  A trace corresponds to a
weight phi: V(T) -> [0, 1] with phi(STAR) = 1 satisfying, at every vertex,

    phi(v) >= sum of phi over the branch set C(v),

where C(v) collects the neighbours of the infinite vertical line below v:
left-then-rights and right-then-lefts (one-sided at STAR and at (0, 1)).
Since C(v) is infinite, a candidate carries the pointwise evaluator plus an
optional exact tail oracle for the mass beyond a floor; without the oracle
only the truncated necessary condition can be checked and the report says
so.  Candidate evaluators must be deterministic and side-effect free.

From a valid weight the full family of diagram values alpha is rebuilt
floor by floor: odd indices read phi, even indices subtract the adjacent
odd values from the vertex one floor up.  All arithmetic is exact.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional

from .core import CF, cf_decode, cf_encode, cf_normalize, label

__all__ = [
    "STAR",
    "TraceCandidate",
    "TraceReport",
    "alpha_from_phi",
    "candidate_from_json",
    "cf_of_vertex",
    "check_trace",
    "geometric_candidate",
    "move_left",
    "move_left_cf",
    "move_right",
    "move_right_cf",
    "neighbor_set",
    "table_candidate",
    "tree_vertices",
    "vertex_of_cf",
    "zero_candidate",
]

Vertex = tuple[int, int]

STAR: Vertex = (-1, 0)

MAX_DEPTH = 20


def _check_tree_vertex(v: Vertex) -> None:
    n, k = v
    if v == STAR:
        return
    if n < 0 or k % 2 == 0 or not 0 <= k <= 2**n:
        raise ValueError(f"{v} is not a vertex of the memoryless tree")


def tree_vertices(max_floor: int) -> list[Vertex]:
    """STAR plus all odd-index vertices with floor <= max_floor."""
    out: list[Vertex] = [STAR]
    for n in range(max_floor + 1):
        out.extend((n, k) for k in range(1, 2**n + 1, 2))
    return out


# ---------------------------------------------------------------------------
# moves, in coordinates and on continued fractions


def move_left(v: Vertex) -> Vertex:
    """(n, k) -> (n+1, 2k-1); undefined at STAR."""
    _check_tree_vertex(v)
    if v == STAR:
        raise ValueError("no left move from the root")
    n, k = v
    return (n + 1, 2 * k - 1)


def move_right(v: Vertex) -> Vertex:
    """(n, k) -> (n+1, 2k+1); STAR -> (0, 1); undefined at (0, 1)."""
    _check_tree_vertex(v)
    if v == STAR:
        return (0, 1)
    n, k = v
    if k >= 2**n:
        raise ValueError(f"no right move from {v}")
    return (n + 1, 2 * k + 1)


def move_left_cf(terms: CF) -> CF:
    """Left move on labels: append-or-extend depending on term-count parity."""
    t = cf_normalize(terms)
    if not t:
        raise ValueError("no left move from the root")
    if len(t) % 2 == 0:
        return t[:-1] + (t[-1] - 1, 2)
    return t[:-1] + (t[-1] + 1,)


def move_right_cf(terms: CF) -> CF:
    """Right move on labels; the root's label 0 moves to 1."""
    t = cf_normalize(terms)
    if not t:
        return (1,)
    if t == (1,):
        raise ValueError("no right move from label 1")
    if len(t) % 2 == 0:
        return t[:-1] + (t[-1] + 1,)
    return t[:-1] + (t[-1] - 1, 2)


def cf_of_vertex(v: Vertex) -> CF:
    """Label of a tree vertex as a continued fraction; STAR carries 0."""
    _check_tree_vertex(v)
    if v == STAR:
        return ()
    return cf_encode(label(*v))


def vertex_of_cf(terms: CF) -> Vertex:
    """Inverse of cf_of_vertex: a rational's unique first-appearance vertex."""
    t = cf_normalize(terms)
    if not t:
        return STAR
    x = cf_decode(t)
    n = sum(t) - 1
    from .core import question_mark

    k = question_mark(x) * 2**n
    assert k.denominator == 1 and k.numerator % 2 == 1
    return (n, k.numerator)


# ---------------------------------------------------------------------------
# branch sets


def neighbor_set(v: Vertex, max_floor: int) -> list[Vertex]:
    """The branch set C(v) truncated to floors <= max_floor.

    Right-then-lefts only at STAR, left-then-rights only at (0, 1), both
    branches elsewhere.
    """
    _check_tree_vertex(v)
    out: list[Vertex] = []
    if v == STAR:
        w = move_right(v)  # (0, 1)
        while w[0] <= max_floor:
            out.append(w)
            w = move_left(w)
    elif v == (0, 1):
        w = move_left(v)
        while w[0] <= max_floor:
            out.append(w)
            w = move_right(w)
    else:
        w = move_left(v)
        while w[0] <= max_floor:
            out.append(w)
            w = move_right(w)
        w = move_right(v)
        while w[0] <= max_floor:
            out.append(w)
            w = move_left(w)
    return sorted(out)


# ---------------------------------------------------------------------------
# candidates


@dataclass(frozen=True)
class TraceCandidate:
    """Weight evaluator plus an optional exact tail oracle.

    ``phi(v)`` must return a nonnegative Fraction with phi(STAR) = 1.
    ``tail(v, depth)``, when present, must return the exact mass of C(v)
    beyond the given floor.
    """

    phi: Callable[[Vertex], Fraction]
    tail: Optional[Callable[[Vertex, int], Fraction]] = None


def zero_candidate() -> TraceCandidate:
    """Supported on STAR only; corresponds to the one-dimensional quotient."""
    return TraceCandidate(
        phi=lambda v: Fraction(v == STAR),
        tail=lambda v, depth: Fraction(0),
    )


def geometric_candidate(ratio: Fraction) -> TraceCandidate:
    """phi(n, k) = ratio**(n+1), with closed-form geometric tails."""
    if not 0 < ratio < 1:
        raise ValueError("ratio must lie in (0, 1)")

    def phi(v: Vertex) -> Fraction:
        return Fraction(1) if v == STAR else ratio ** (v[0] + 1)

    def tail(v: Vertex, depth: int) -> Fraction:
        # branch members sit one per floor (STAR, (0,1)) or two per floor
        start = max(depth, v[0])
        per_floor = 1 if v in (STAR, (0, 1)) else 2
        return per_floor * ratio ** (start + 2) / (1 - ratio)

    return TraceCandidate(phi, tail)


def table_candidate(entries: dict[Vertex, Fraction], default: Fraction = Fraction(0)) -> TraceCandidate:
    """Finite table with a default; exact tails exist only for default 0."""
    for v in entries:
        _check_tree_vertex(v)
    table = dict(entries)
    max_floor = max((v[0] for v in table), default=-1)

    def phi(v: Vertex) -> Fraction:
        if v == STAR:
            return Fraction(1)
        return table.get(v, default)

    if default != 0:
        return TraceCandidate(phi, None)

    def tail(v: Vertex, depth: int) -> Fraction:
        rest = [w for w in neighbor_set(v, max_floor) if w[0] > depth]
        return sum((phi(w) for w in rest), Fraction(0))

    return TraceCandidate(phi, tail)


def candidate_from_json(text: str) -> TraceCandidate:
    """Accepts {"kind":"geometric","ratio":"1/4"} or
    {"kind":"table","entries":[[n,k,"p/q"],...],"default":"0"}."""
    payload = json.loads(text)
    kind = payload.get("kind")
    if kind == "geometric":
        return geometric_candidate(Fraction(payload["ratio"]))
    if kind == "table":
        entries = {(int(n), int(k)): Fraction(value) for n, k, value in payload.get("entries", [])}
        return table_candidate(entries, Fraction(payload.get("default", "0")))
    raise ValueError(f"unknown candidate kind {kind!r}")


# ---------------------------------------------------------------------------
# the trace condition


@dataclass(frozen=True)
class TraceReport:
    valid: bool
    exact: bool  # False when no tail oracle was available (necessary-only)
    first_violation: Vertex | None
    rows: tuple[tuple[Vertex, Fraction, Fraction], ...]  # (vertex, phi, branch sum)


def check_trace(candidate: TraceCandidate, depth: int) -> TraceReport:
    """Verify phi(v) >= branch mass for every v with floor < depth.

    With a tail oracle the branch mass is exact and the verdict definitive;
    otherwise only the truncated sum is compared and a pass means merely
    "no violation visible at this depth".
    """
    if not 1 <= depth <= MAX_DEPTH:
        raise ValueError(f"depth must lie in 1..{MAX_DEPTH}")
    if candidate.phi(STAR) != 1:
        raise ValueError("a trace candidate must have weight exactly 1 at the root")
    rows = []
    first: Vertex | None = None
    for v in tree_vertices(depth - 1):
        value = candidate.phi(v)
        if value < 0:
            raise ValueError(f"negative weight at {v}")
        mass = sum((candidate.phi(w) for w in neighbor_set(v, depth)), Fraction(0))
        if candidate.tail is not None:
            mass += candidate.tail(v, depth)
        rows.append((v, value, mass))
        if value < mass and first is None:
            first = v
    return TraceReport(first is None, candidate.tail is not None, first, tuple(rows))


def alpha_from_phi(candidate: TraceCandidate, depth: int) -> dict[Vertex, Fraction]:
    """Rebuild the diagram weights on every vertex down to the given floor.

    Odd indices read phi; the even index 2m at floor n+1 receives the value
    at (n, m) minus its adjacent odd values one floor down.  The result
    satisfies the three-term recursion exactly by construction; a negative
    value (reported with its vertex) means the candidate is not a trace.
    """
    if not 0 <= depth <= MAX_DEPTH:
        raise ValueError(f"depth must lie in 0..{MAX_DEPTH}")
    if candidate.phi(STAR) != 1:
        raise ValueError("a trace candidate must have weight exactly 1 at the root")
    alpha: dict[Vertex, Fraction] = {STAR: Fraction(1)}

    def put(v: Vertex, value: Fraction) -> None:
        if value < 0:
            raise ValueError(f"negative reconstructed weight {value} at {v}")
        alpha[v] = value

    if depth >= 0:
        put((0, 1), candidate.phi((0, 1)))
        put((0, 0), alpha[STAR] - alpha[(0, 1)])
    for n in range(depth):
        for k in range(1, 2 ** (n + 1) + 1, 2):
            put((n + 1, k), candidate.phi((n + 1, k)))
        for m in range(2**n + 1):
            k = 2 * m
            value = alpha[(n, m)]
            if k > 0:
                value -= alpha[(n + 1, k - 1)]
            if k < 2 ** (n + 1):
                value -= alpha[(n + 1, k + 1)]
            put((n + 1, k), value)
    return alpha
