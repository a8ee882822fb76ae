"""Subdiagrams of the tree that encode primitive ideals and their quotients.

A ``LevelSet`` records, per floor 0..depth, which horizontal indices a
subdiagram retains.  ``quotient_levels`` produces the retained indices of a
quotient diagram for a given target value theta:

- irrational theta (given as a lazy continued-fraction stream): the pair of
  neighbouring vertices whose labels straddle theta, at every floor;
- rational theta: the straddling pair up to the floor n0 where theta first
  appears as a label, then one of three tails -- the theta column alone
  (plain), the column plus its right neighbour (plus), or the column plus
  its left neighbour (minus).

The ideal side is the floorwise complement.  Ideal sides of a diagram are
characterised by two finite checks: every child of a retained vertex is
retained (hereditary), and a vertex all of whose children are retained is
itself retained (directed).  Quotient sides are characterised by the
admissibility automaton: singletons double, pairs move to one of the two
shifted pairs or collapse onto their middle child.

Comparisons of an irrational stream against rationals use exact convergent
intervals only; no floating point anywhere.  Level sets are immutable and
every function here is pure (a CFStream memoises the digits it has read,
but never rewrites them), so concurrent use is safe.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

from .core import height, label, mediant

__all__ = [
    "AdmissibilityReport",
    "CFStream",
    "ConvergenceReport",
    "IdealSpec",
    "LevelSet",
    "ParentPair",
    "children",
    "classify_admissible",
    "complement",
    "convergence_check",
    "ideal_contains",
    "ideal_join",
    "ideal_levels",
    "is_directed",
    "is_hereditary",
    "kernel_intersection",
    "levelset_from_json",
    "levelset_to_dot",
    "levelset_to_json",
    "parents_of",
    "quotient_levels",
]

MAX_QUOTIENT_DEPTH = 60
MAX_COMPLEMENT_DEPTH = 20  # explicit complements hold sum(2**n + 1) indices


def children(n: int, k: int) -> tuple[int, ...]:
    """Indices at floor n+1 connected to (n, k): {2k-1, 2k, 2k+1} clamped."""
    if n < 0 or not 0 <= k <= 2**n:
        raise ValueError(f"({n}, {k}) is not a vertex")
    top = 2 ** (n + 1)
    return tuple(j for j in (2 * k - 1, 2 * k, 2 * k + 1) if 0 <= j <= top)


# ---------------------------------------------------------------------------
# irrational targets


class CFStream:
    """Continued-fraction digits of an irrational value in (0, 1), pulled lazily.

    Wraps any iterable of positive integers (typically an infinite generator,
    e.g. ``itertools.cycle((2,))`` for sqrt(2) - 1).  Supports exact
    comparison against rationals by narrowing the open convergent interval
    that must contain the value; raises if the iterable runs dry before a
    comparison is decided, so a silently-truncated prefix can never give a
    wrong answer.
    """

    def __init__(self, terms: Iterable[int]):
        self._iter: Iterator[int] = iter(terms)
        self.terms: list[int] = []
        self._p_prev, self._q_prev = 1, 0
        self._p, self._q = 0, 1

    def _extend(self) -> bool:
        a = next(self._iter, None)
        if a is None:
            return False
        if a < 1:
            raise ValueError(f"continued-fraction terms must be positive, got {a}")
        self.terms.append(a)
        self._p_prev, self._p = self._p, a * self._p + self._p_prev
        self._q_prev, self._q = self._q, a * self._q + self._q_prev
        return True

    def bounds(self) -> tuple[Fraction, Fraction]:
        """Open interval around the value determined by the digits read so far."""
        if not self.terms:
            return Fraction(0), Fraction(1)
        x = Fraction(self._p, self._q)
        y = Fraction(self._p + self._p_prev, self._q + self._q_prev)
        return (x, y) if x < y else (y, x)

    def compare(self, m: Fraction) -> int:
        """-1 if the value is < m, +1 if > m.  Never 0 for an irrational."""
        while True:
            lo, hi = self.bounds()
            if m <= lo:
                return 1
            if m >= hi:
                return -1
            if not self._extend():
                raise ValueError(
                    "continued-fraction stream exhausted before a comparison was decided; "
                    "supply more terms (term sum must exceed the requested depth)"
                )


@dataclass(frozen=True)
class IdealSpec:
    """Target value plus variant selecting one of the primitive ideals.

    ``theta`` is a Fraction in [0, 1] or a CFStream; ``variant`` is one of
    'plain', 'plus', 'minus'.  'plus' does not exist for theta = 1, 'minus'
    does not exist for theta = 0, and streams (irrationals) admit only
    'plain'.
    """

    theta: Fraction | CFStream
    variant: str = "plain"

    def __post_init__(self) -> None:
        if self.variant not in ("plain", "plus", "minus"):
            raise ValueError(f"unknown variant {self.variant!r}")
        if isinstance(self.theta, CFStream):
            if self.variant != "plain":
                raise ValueError("irrational targets admit only the plain ideal")
            return
        if not 0 <= self.theta <= 1:
            raise ValueError(f"theta {self.theta} outside [0, 1]")
        if self.variant == "plus" and self.theta == 1:
            raise ValueError("no plus ideal at theta = 1")
        if self.variant == "minus" and self.theta == 0:
            raise ValueError("no minus ideal at theta = 0")


@dataclass(frozen=True)
class LevelSet:
    """Retained index sets of a subdiagram, one sorted tuple per floor 0..depth."""

    depth: int
    retained: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        if self.depth < 0 or len(self.retained) != self.depth + 1:
            raise ValueError("retained must list floors 0..depth")
        for n, idx in enumerate(self.retained):
            if list(idx) != sorted(set(idx)):
                raise ValueError(f"floor {n} indices must be sorted and unique")
            if idx and not (0 <= idx[0] and idx[-1] <= 2**n):
                raise ValueError(f"floor {n} index out of range")

    def labels(self) -> tuple[tuple[Fraction, ...], ...]:
        return tuple(tuple(label(n, k) for k in idx) for n, idx in enumerate(self.retained))


# ---------------------------------------------------------------------------
# quotient / ideal level construction


def quotient_levels(spec: IdealSpec, depth: int) -> LevelSet:
    """Retained (quotient-side) indices per floor for the ideal named by spec."""
    if not 0 <= depth <= MAX_QUOTIENT_DEPTH:
        raise ValueError(f"depth must lie in 0..{MAX_QUOTIENT_DEPTH}")
    theta, variant = spec.theta, spec.variant

    if isinstance(theta, Fraction) and theta == 0:
        pick = (0,) if variant == "plain" else (0, 1)
        return LevelSet(depth, tuple(pick for _ in range(depth + 1)))
    if isinstance(theta, Fraction) and theta == 1:
        if variant == "plain":
            return LevelSet(depth, tuple((2**n,) for n in range(depth + 1)))
        return LevelSet(depth, tuple((2**n - 1, 2**n) for n in range(depth + 1)))

    if isinstance(theta, Fraction):
        compare = lambda m: (theta > m) - (theta < m)  # noqa: E731
    else:
        compare = theta.compare

    retained: list[tuple[int, ...]] = []
    j = 0  # straddling pair is (j, j+1) until theta surfaces as a label
    lo, hi = Fraction(0), Fraction(1)
    vertex: int | None = None  # index of the theta column once it exists
    for n in range(depth + 1):
        if vertex is None:
            retained.append((j, j + 1))
        elif variant == "plain":
            retained.append((vertex,))
        elif variant == "plus":
            retained.append((vertex, vertex + 1))
        else:
            retained.append((vertex - 1, vertex))
        if n == depth:
            break
        if vertex is not None:
            vertex *= 2
            continue
        m = mediant(lo, hi)
        side = compare(m)
        if side < 0:
            j, hi = 2 * j, m
        elif side > 0:
            j, lo = 2 * j + 1, m
        else:
            vertex = 2 * j + 1  # first appearance: n0 = n + 1
    return LevelSet(depth, tuple(retained))


def complement(ls: LevelSet) -> LevelSet:
    """Floorwise complement inside {0..2**n}; materialises every index."""
    if ls.depth > MAX_COMPLEMENT_DEPTH:
        raise ValueError(f"complement materialisation guarded at depth {MAX_COMPLEMENT_DEPTH}")
    out = []
    for n, idx in enumerate(ls.retained):
        keep = set(idx)
        out.append(tuple(k for k in range(2**n + 1) if k not in keep))
    return LevelSet(ls.depth, tuple(out))


def ideal_levels(spec: IdealSpec, depth: int) -> LevelSet:
    """Ideal-side level set: the complement of quotient_levels per floor."""
    return complement(quotient_levels(spec, depth))


# ---------------------------------------------------------------------------
# diagram-side checks


def is_hereditary(ls: LevelSet) -> bool:
    """Every child (within depth) of a retained vertex is retained."""
    for n in range(ls.depth):
        next_floor = set(ls.retained[n + 1])
        for k in ls.retained[n]:
            if any(c not in next_floor for c in children(n, k)):
                return False
    return True


def is_directed(ls: LevelSet) -> bool:
    """No omitted vertex has all of its children retained.

    This is the saturation half of the ideal characterisation: together with
    hereditarity it makes the retained set the diagram of an ideal.  Checked
    on every floor strictly below the horizon.
    """
    for n in range(ls.depth):
        here = set(ls.retained[n])
        next_floor = set(ls.retained[n + 1])
        for k in range(2**n + 1):
            if k in here:
                continue
            if all(c in next_floor for c in children(n, k)):
                return False
    return True


# ---------------------------------------------------------------------------
# admissibility of quotient-side sequences


@dataclass(frozen=True)
class AdmissibilityReport:
    admissible: bool
    failure_floor: int | None = None
    reason: str | None = None
    intervals: tuple[tuple[Fraction, Fraction], ...] = ()
    tag: str | None = None


def classify_admissible(ls: LevelSet) -> AdmissibilityReport:
    """Validate a quotient-side level set against the allowed transitions.

    Singletons {a} must double to {2a}; pairs {a, a+1} may move to
    {2a, 2a+1}, {2a+1, 2a+2}, or collapse to {2a+1}.  On success the report
    carries the nested interval [label(n, min), label(n, max+1)] per floor
    and a tag.  Only 'rational-plain' is ever determinable at finite depth
    (a singleton was observed; singletons persist).  An all-pairs window is
    provably reproduced exactly by the plus construction of its final left
    label, by the minus construction of its final right label, and by
    irrational targets inside the final gap, so no pair window gets a tag.
    """
    for n, idx in enumerate(ls.retained):
        if len(idx) == 1 or (len(idx) == 2 and idx[1] == idx[0] + 1):
            continue
        return AdmissibilityReport(False, n, f"floor {n} set {idx} is not a singleton or adjacent pair")
    if not set(ls.retained[0]) <= {0, 1}:
        return AdmissibilityReport(False, 0, "floor 0 must retain a subset of {0, 1}")
    for n in range(ls.depth):
        cur, nxt = ls.retained[n], ls.retained[n + 1]
        a = cur[0]
        if len(cur) == 1:
            allowed = ((2 * a,),)
        else:
            allowed = ((2 * a, 2 * a + 1), (2 * a + 1, 2 * a + 2), (2 * a + 1,))
        if nxt not in allowed:
            return AdmissibilityReport(
                False, n + 1, f"transition {cur} -> {nxt} between floors {n} and {n + 1} is not allowed"
            )

    intervals = tuple(
        (label(n, idx[0]), label(n, min(idx[-1] + 1, 2**n)))
        for n, idx in enumerate(ls.retained)
    )
    tag = "rational-plain" if len(ls.retained[-1]) == 1 else None
    return AdmissibilityReport(True, None, None, intervals, tag)


# ---------------------------------------------------------------------------
# parents of a first appearance


@dataclass(frozen=True)
class ParentPair:
    left: Fraction
    right: Fraction


def parents_of(x: Fraction) -> ParentPair:
    """Labels of the two floor-(n0 - 1) neighbours whose mediant is x.

    The left parent p'/q' comes from the modular inverse of the numerator:
    q' = inverse of p mod q, p' = (p * q' - 1) / q; the right parent is the
    coordinate difference (p - p') / (q - q').
    """
    if not 0 < x < 1:
        raise ValueError("endpoints have no parent pair")
    p, q = x.numerator, x.denominator
    p_bar = pow(p, -1, q)
    q_left = p_bar
    p_left = (p * p_bar - 1) // q
    left = Fraction(p_left, q_left)
    right = Fraction(p - p_left, q - q_left)
    assert mediant(left, right) == x
    return ParentPair(left, right)


# ---------------------------------------------------------------------------
# lattice operations on ideal sides and finite-depth topology checks


def _require_equal_depths(sets: Sequence[LevelSet]) -> int:
    depths = {ls.depth for ls in sets}
    if len(depths) != 1:
        raise ValueError(f"level sets have mismatched depths {sorted(depths)}")
    return depths.pop()


def ideal_contains(a: LevelSet, b: LevelSet) -> bool:
    """Whether ideal-side a is floorwise contained in ideal-side b."""
    _require_equal_depths((a, b))
    return all(set(x) <= set(y) for x, y in zip(a.retained, b.retained))


def kernel_intersection(sets: Sequence[LevelSet]) -> LevelSet:
    """Floorwise intersection of ideal sides: the kernel of a family of ideals."""
    depth = _require_equal_depths(sets)
    out = []
    for n in range(depth + 1):
        common = set(sets[0].retained[n])
        for ls in sets[1:]:
            common &= set(ls.retained[n])
        out.append(tuple(sorted(common)))
    return LevelSet(depth, tuple(out))


def ideal_join(sets: Sequence[LevelSet]) -> LevelSet:
    """Floorwise union of ideal sides: the smallest ideal containing the family."""
    depth = _require_equal_depths(sets)
    out = []
    for n in range(depth + 1):
        union: set[int] = set()
        for ls in sets:
            union |= set(ls.retained[n])
        out.append(tuple(sorted(union)))
    return LevelSet(depth, tuple(out))


@dataclass(frozen=True)
class ConvergenceReport:
    converged: bool
    # per floor: first sequence position from which the floor-n quotient
    # set always meets the target's, or None if it fails through the end
    settled_from: tuple[int | None, ...] = field(default=())


def convergence_check(
    thetas: Sequence[Fraction],
    theta: Fraction | CFStream,
    depth: int,
) -> ConvergenceReport:
    """Finite-depth ideal convergence: per floor, the quotient sets of the
    sequence must eventually meet the target's quotient set and keep meeting
    it through the end of the sequence."""
    target = quotient_levels(IdealSpec(theta), depth)
    members = [quotient_levels(IdealSpec(t), depth) for t in thetas]
    settled: list[int | None] = []
    for n in range(depth + 1):
        hit = [bool(set(m.retained[n]) & set(target.retained[n])) for m in members]
        pos = None
        for i in range(len(hit), 0, -1):
            if not hit[i - 1]:
                break
            pos = i - 1
        settled.append(pos)
    return ConvergenceReport(all(p is not None for p in settled), tuple(settled))


# ---------------------------------------------------------------------------
# serialisation


def levelset_to_json(ls: LevelSet) -> str:
    payload = {
        "depth": ls.depth,
        "retained": [list(idx) for idx in ls.retained],
        "labels": [[str(x) for x in floor] for floor in ls.labels()],
    }
    return json.dumps(payload)


def levelset_from_json(text: str) -> LevelSet:
    payload = json.loads(text)
    ls = LevelSet(payload["depth"], tuple(tuple(idx) for idx in payload["retained"]))
    if "labels" in payload:
        want = [[str(x) for x in floor] for floor in ls.labels()]
        if payload["labels"] != want:
            raise ValueError("labels in payload do not match the retained indices")
    return ls


def levelset_to_dot(quotient: LevelSet) -> str:
    """Full diagram down to the horizon, quotient vertices drawn filled.

    Mirrors the two-class figure convention: quotient (lighter) vertices are
    filled boxes, ideal vertices plain circles.  Guarded since every vertex
    is drawn.
    """
    if quotient.depth > 10:
        raise ValueError("dot export draws every vertex; use depth <= 10")
    lines = ["digraph farey_bratteli {", "\trankdir=TB;", "\tnode [fontsize=10];"]
    for n, idx in enumerate(quotient.retained):
        keep = set(idx)
        lines.append("\t{ rank = same;")
        for k in range(2**n + 1):
            shape = "box, style=filled, fillcolor=lightgrey" if k in keep else "circle"
            lines.append(f'\t\t"v{n}_{k}" [label="{label(n, k)}", shape={shape}];')
        lines.append("\t}")
    for n in range(quotient.depth):
        for k in range(2**n + 1):
            for c in children(n, k):
                lines.append(f'\t"v{n}_{k}" -> "v{n + 1}_{c}";')
    lines.append("}")
    return "\n".join(lines)
