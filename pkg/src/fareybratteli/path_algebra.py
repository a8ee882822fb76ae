"""Finite-floor path model of the diagram and its projection relations.

A path is the tuple of horizontal coordinates (xi_0, ..., xi_N) of a
monotone walk from the augmentation root (whose coordinate is fixed at 0)
down to floor N; consecutive coordinates satisfy |2*xi_n - xi_{n+1}| <= 1.
Matrix units T(xi, eta) act on the free module over the path set by
rerouting the head of a path, so operators are sparse matrices indexed by
path pairs with a common endpoint; every operator built here stays inside
those endpoint blocks and the block sizes reproduce the tree denominators.

Scalars live in Q(sqrt(lam)) for a fixed positive rational lam, stored as
exact pairs a + b*sqrt(lam); every identity verified in this module is
decided exactly, with no tolerances.  For square lam the pair arithmetic is
the formal quotient ring, and collapsing b into a via the rational root is
provided as a consistency check.

The three suite runners return machine-readable reports:

- ``verify_relation_suite``: the idempotent family (R1), the support and
  intertwining laws of the diamond flips (R2)-(R4), the vanishing products,
  the nonzero-product whitelist, far-floor commutation, and the braid
  triples.
- ``yang_baxter_check``: R_n(s) = 1 + s*v_n on a 3x3 rational grid; both
  sides are polynomials of degree <= 2 per variable, so agreement on three
  distinct values per axis proves the operator identity at this floor.
- ``verify_braiding_suite``: projection properties of E_n/F_n, their
  orthogonality, commutation at distance >= 2, the eight triple-product
  identities, the eight vanishing mixed products, the product expansions,
  and positive-semidefinite dominance established by exhibiting
  tau*E_n - E_n E_m E_n as tau times an exact self-adjoint idempotent.

Generators for a given (N, lam) are built once per ``Representation`` and
shared read-only; suite checks are independent of one another.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import isqrt
from typing import Callable, Iterable

__all__ = [
    "Check",
    "PathContext",
    "QuadScalar",
    "Report",
    "Representation",
    "SparseOperator",
    "enumerate_paths",
    "flip_isometry",
    "generator",
    "path_context",
    "path_matrix_unit",
    "random_sign_mutation",
    "run_all_suites",
    "sqrt_fraction",
    "tl_projection",
    "verify_braiding_suite",
    "verify_relation_suite",
    "yang_baxter_check",
]

MAX_PATH_FLOOR = 9  # 3**N + 1 paths

Path = tuple[int, ...]


def _xi(path: Path, n: int) -> int:
    """Coordinate at floor n, with the root floor fixed at 0."""
    return 0 if n < 0 else path[n]


def enumerate_paths(floor: int) -> tuple[Path, ...]:
    """All monotone paths from the root to the given floor, lexicographic."""
    ctx = path_context(floor)
    return ctx.paths


@lru_cache(maxsize=None)
def path_context(floor: int) -> "PathContext":
    return PathContext(floor)


class PathContext:
    """Shared read-only path enumeration for one floor."""

    def __init__(self, floor: int):
        if not 0 <= floor <= MAX_PATH_FLOOR:
            raise ValueError(f"floor must lie in 0..{MAX_PATH_FLOOR}")
        self.floor = floor
        paths: list[Path] = []
        stack: list[Path] = [(1,), (0,)]
        while stack:
            p = stack.pop()
            n = len(p) - 1
            if n == floor:
                paths.append(p)
                continue
            top = 2 ** (n + 1)
            for c in (2 * p[-1] + 1, 2 * p[-1], 2 * p[-1] - 1):
                if 0 <= c <= top:
                    stack.append(p + (c,))
        paths.sort()
        self.paths = tuple(paths)
        self.index = {p: i for i, p in enumerate(self.paths)}
        self.endpoint = tuple(p[-1] for p in self.paths)
        self.dim = len(self.paths)


def sqrt_fraction(x: Fraction) -> Fraction | None:
    """Exact rational square root, or None if x is not a perfect square."""
    if x < 0:
        return None
    n, d = isqrt(x.numerator), isqrt(x.denominator)
    if n * n == x.numerator and d * d == x.denominator:
        return Fraction(n, d)
    return None


@dataclass(frozen=True, slots=True)
class QuadScalar:
    """a + b*sqrt(lam) with exact rational components."""

    a: Fraction
    b: Fraction
    lam: Fraction

    @staticmethod
    def of(value, lam: Fraction) -> "QuadScalar":
        return QuadScalar(Fraction(value), Fraction(0), lam)

    @staticmethod
    def root(lam: Fraction, scale=1) -> "QuadScalar":
        """scale * sqrt(lam)."""
        return QuadScalar(Fraction(0), Fraction(scale), lam)

    def _match(self, other: "QuadScalar") -> None:
        if self.lam != other.lam:
            raise ValueError(f"mixed scalar rings: sqrt({self.lam}) vs sqrt({other.lam})")

    def __add__(self, other: "QuadScalar") -> "QuadScalar":
        self._match(other)
        return QuadScalar(self.a + other.a, self.b + other.b, self.lam)

    def __sub__(self, other: "QuadScalar") -> "QuadScalar":
        self._match(other)
        return QuadScalar(self.a - other.a, self.b - other.b, self.lam)

    def __neg__(self) -> "QuadScalar":
        return QuadScalar(-self.a, -self.b, self.lam)

    def __mul__(self, other: "QuadScalar") -> "QuadScalar":
        self._match(other)
        if not self.b:
            if not other.b:  # both rational: one multiply instead of five
                return QuadScalar(self.a * other.a, self.b, self.lam)
            return QuadScalar(self.a * other.a, self.a * other.b, self.lam)
        if not other.b:
            return QuadScalar(self.a * other.a, self.b * other.a, self.lam)
        return QuadScalar(
            self.a * other.a + self.b * other.b * self.lam,
            self.a * other.b + self.b * other.a,
            self.lam,
        )

    def conjugate(self) -> "QuadScalar":
        return QuadScalar(self.a, -self.b, self.lam)

    def inverse(self) -> "QuadScalar":
        norm = self.a * self.a - self.b * self.b * self.lam
        if norm == 0:
            raise ZeroDivisionError(f"{self} is not invertible in the pair ring")
        return QuadScalar(self.a / norm, -self.b / norm, self.lam)

    def __bool__(self) -> bool:
        return bool(self.a) or bool(self.b)

    def __str__(self) -> str:
        return f"{self.a}+{self.b}*sqrt({self.lam})"


class SparseOperator:
    """Sparse matrix over Q(sqrt(lam)) indexed by floor-N paths.

    Entries couple only paths with the same endpoint; this block structure
    is asserted whenever entries are created.
    """

    __slots__ = ("ctx", "lam", "entries")

    def __init__(self, ctx: PathContext, lam: Fraction, entries: dict[tuple[int, int], QuadScalar]):
        self.ctx = ctx
        self.lam = lam
        self.entries = {key: val for key, val in entries.items() if val}
        endpoint = ctx.endpoint
        for i, j in self.entries:
            if endpoint[i] != endpoint[j]:
                raise ValueError(f"entry ({i}, {j}) leaves the endpoint blocks")

    # -- constructors ------------------------------------------------------

    @staticmethod
    def zero(ctx: PathContext, lam: Fraction) -> "SparseOperator":
        return SparseOperator(ctx, lam, {})

    @staticmethod
    def identity(ctx: PathContext, lam: Fraction) -> "SparseOperator":
        one = QuadScalar.of(1, lam)
        return SparseOperator(ctx, lam, {(i, i): one for i in range(ctx.dim)})

    @staticmethod
    def diagonal(ctx: PathContext, lam: Fraction, keep: Callable[[Path], bool]) -> "SparseOperator":
        one = QuadScalar.of(1, lam)
        return SparseOperator(ctx, lam, {(i, i): one for i, p in enumerate(ctx.paths) if keep(p)})

    # -- ring operations ----------------------------------------------------

    def _match(self, other: "SparseOperator") -> None:
        if self.ctx is not other.ctx or self.lam != other.lam:
            raise ValueError("operators live in different representations")

    def __add__(self, other: "SparseOperator") -> "SparseOperator":
        self._match(other)
        out = dict(self.entries)
        for key, val in other.entries.items():
            cur = out.get(key)
            out[key] = val if cur is None else cur + val
        return SparseOperator(self.ctx, self.lam, out)

    def __sub__(self, other: "SparseOperator") -> "SparseOperator":
        return self + (-other)

    def __neg__(self) -> "SparseOperator":
        return SparseOperator(self.ctx, self.lam, {k: -v for k, v in self.entries.items()})

    def __mul__(self, other: "SparseOperator") -> "SparseOperator":
        self._match(other)
        rows_of_other: dict[int, list[tuple[int, QuadScalar]]] = {}
        for (j, k), val in other.entries.items():
            rows_of_other.setdefault(j, []).append((k, val))
        out: dict[tuple[int, int], QuadScalar] = {}
        for (i, j), a in self.entries.items():
            hits = rows_of_other.get(j)
            if not hits:
                continue
            for k, b in hits:
                key = (i, k)
                prod = a * b
                cur = out.get(key)
                out[key] = prod if cur is None else cur + prod
        return SparseOperator(self.ctx, self.lam, out)

    def scale(self, value) -> "SparseOperator":
        s = value if isinstance(value, QuadScalar) else QuadScalar.of(value, self.lam)
        return SparseOperator(self.ctx, self.lam, {k: s * v for k, v in self.entries.items()})

    def adjoint(self) -> "SparseOperator":
        # entries lie in Q(sqrt(lam)) inside the reals, so * is plain
        # transposition; the Galois map sqrt(lam) -> -sqrt(lam) plays no role
        return SparseOperator(self.ctx, self.lam, {(j, i): v for (i, j), v in self.entries.items()})

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, SparseOperator)
            and self.ctx is other.ctx
            and self.lam == other.lam
            and self.entries == other.entries
        )

    def __hash__(self) -> int:  # operators are de-facto immutable
        return hash((id(self.ctx), self.lam, frozenset(self.entries.items())))

    def is_zero(self) -> bool:
        return not self.entries

    def is_projection(self) -> bool:
        return self == self.adjoint() and self * self == self

    def commutes_with(self, other: "SparseOperator") -> bool:
        return (self * other - other * self).is_zero()

    def trace(self) -> QuadScalar:
        total = QuadScalar.of(0, self.lam)
        for (i, j), v in self.entries.items():
            if i == j:
                total = total + v
        return total

    def first_entry_of_difference(self, other: "SparseOperator") -> dict | None:
        diff = self - other
        if diff.is_zero():
            return None
        row, col = min(diff.entries)
        return {"row": row, "col": col, "value": str(diff.entries[(row, col)])}

    def embed_root(self) -> "SparseOperator":
        """For square lam, fold b*sqrt(lam) into the rational component."""
        root = sqrt_fraction(self.lam)
        if root is None:
            raise ValueError(f"{self.lam} is not a perfect square")
        out = {k: QuadScalar(v.a + v.b * root, Fraction(0), self.lam) for k, v in self.entries.items()}
        return SparseOperator(self.ctx, self.lam, out)

    def rank(self) -> int:
        """Exact rank by Gaussian elimination (rational route for square lam)."""
        root = sqrt_fraction(self.lam)
        if root is not None:
            rows = [dict() for _ in range(self.ctx.dim)]
            for (i, j), v in self.entries.items():
                val = v.a + v.b * root
                if val:
                    rows[i][j] = val
            return _rank_of_rows(rows, lambda x: 1 / x)
        rows = [dict() for _ in range(self.ctx.dim)]
        for (i, j), v in self.entries.items():
            rows[i][j] = v
        return _rank_of_rows(rows, lambda x: x.inverse())


def _rank_of_rows(rows: list[dict], invert) -> int:
    rank = 0
    rows = [r for r in rows if r]
    while rows:
        row = rows.pop()
        if not row:
            continue
        rank += 1
        pivot = min(row)
        inv = invert(row[pivot])
        reduced = {c: inv * v for c, v in row.items()}
        remaining = []
        for other in rows:
            if pivot in other:
                factor = other[pivot]
                new = dict(other)
                for c, v in reduced.items():
                    cur = new.get(c)
                    val = (cur - factor * v) if cur is not None else -factor * v
                    if val:
                        new[c] = val
                    elif c in new:
                        del new[c]
                if new:
                    remaining.append(new)
            else:
                remaining.append(other)
        rows = remaining
    return rank


def path_matrix_unit(ctx: PathContext, lam: Fraction, head: Path, tail_head: Path) -> SparseOperator:
    """The embedded matrix unit T(head, tail_head): reroutes every floor-N
    path starting with ``tail_head`` onto ``head``; both prefixes must end
    at the same vertex."""
    r = len(head) - 1
    if len(tail_head) != len(head) or head[-1] != tail_head[-1]:
        raise ValueError("matrix units need equal-floor prefixes with a common endpoint")
    one = QuadScalar.of(1, lam)
    entries = {}
    for j, p in enumerate(ctx.paths):
        if p[: r + 1] == tail_head:
            entries[(ctx.index[head + p[r + 1 :]], j)] = one
    return SparseOperator(ctx, lam, entries)


# ---------------------------------------------------------------------------
# generators


class Representation:
    """All generators of the floor-N model over Q(sqrt(lam)), built once.

    Valid index ranges at floor N: e_1..e_N, f_0..f_N, g_0..g_N (diagonal
    edge-class projections), the diamond flips v_0..v_{N-1} and w_1..w_{N-1},
    and the derived projections E_0..E_{N-1}, F_1..F_{N-1}.
    """

    def __init__(self, floor: int, lam: Fraction):
        lam = Fraction(lam)
        if lam <= 0:
            raise ValueError("lam must be a positive rational")
        self.floor = floor
        self.lam = lam
        self.ctx = path_context(floor)
        self._gens: dict[tuple[str, int], SparseOperator] = {}
        self._tl: dict[tuple[str, int], SparseOperator] = {}
        for n in range(1, floor + 1):
            self._gens[("e", n)] = self._edge_projection(n, -1)
        for n in range(floor + 1):
            self._gens[("f", n)] = self._edge_projection(n, +1)
            self._gens[("g", n)] = self._edge_projection(n, 0)
        for n in range(floor):
            self._gens[("v", n)] = self._flip(n, +1)
        for n in range(1, floor):
            self._gens[("w", n)] = self._flip(n, -1)

    def _edge_projection(self, n: int, offset: int) -> SparseOperator:
        return SparseOperator.diagonal(
            self.ctx, self.lam, lambda p: _xi(p, n) == 2 * _xi(p, n - 1) + offset
        )

    def _flip(self, n: int, sign: int) -> SparseOperator:
        """Diamond flip at floor n: sources sit on the straight edge with the
        floor-(n+1) coordinate at 4*xi_{n-1} + sign; targets move xi_n to
        2*xi_{n-1} + sign.  sign +1 builds v_n, sign -1 builds w_n."""
        one = QuadScalar.of(1, self.lam)
        entries = {}
        for j, p in enumerate(self.ctx.paths):
            base = _xi(p, n - 1)
            if p[n] == 2 * base and p[n + 1] == 4 * base + sign:
                target = p[:n] + (2 * base + sign,) + p[n + 1 :]
                entries[(self.ctx.index[target], j)] = one
        return SparseOperator(self.ctx, self.lam, entries)

    # -- access --------------------------------------------------------------

    def has(self, kind: str, n: int) -> bool:
        return (kind, n) in self._gens

    def gen(self, kind: str, n: int) -> SparseOperator:
        try:
            return self._gens[(kind, n)]
        except KeyError:
            raise ValueError(f"{kind}_{n} is not defined at floor {self.floor}") from None

    def identity(self) -> SparseOperator:
        return SparseOperator.identity(self.ctx, self.lam)

    def tau(self) -> Fraction:
        return self.lam / (1 + self.lam) ** 2

    def tl(self, kind: str, n: int) -> SparseOperator:
        """E_n (from v_n) or F_n (from w_n)."""
        if kind not in ("E", "F"):
            raise ValueError(f"unknown projection kind {kind!r}")
        key = (kind, n)
        if key not in self._tl:
            u = self.gen("v" if kind == "E" else "w", n)
            root = QuadScalar.root(self.lam, Fraction(1, 1 + self.lam))
            unit = Fraction(1, 1 + self.lam)
            self._tl[key] = (
                (u.adjoint() * u).scale(unit)
                + u.scale(root)
                + u.adjoint().scale(root)
                + (u * u.adjoint()).scale(unit * self.lam)
            )
        return self._tl[key]

    def with_sign_flip(self, kind: str, n: int, entry: tuple[int, int]) -> "Representation":
        """Copy of the representation with one generator entry negated."""
        mutated = object.__new__(Representation)
        mutated.floor, mutated.lam, mutated.ctx = self.floor, self.lam, self.ctx
        mutated._gens = dict(self._gens)
        mutated._tl = {}
        victim = self.gen(kind, n)
        if entry not in victim.entries:
            raise ValueError(f"{kind}_{n} has no entry at {entry}")
        new_entries = dict(victim.entries)
        new_entries[entry] = -new_entries[entry]
        mutated._gens[(kind, n)] = SparseOperator(self.ctx, self.lam, new_entries)
        return mutated


@lru_cache(maxsize=8)
def _representation(floor: int, lam: Fraction) -> Representation:
    return Representation(floor, lam)


def generator(kind: str, n: int, floor: int, lam=Fraction(1)) -> SparseOperator:
    """Edge-class projection e/f/g at index n in the floor-N model."""
    if kind not in ("e", "f", "g"):
        raise ValueError(f"unknown generator kind {kind!r}")
    return _representation(floor, Fraction(lam)).gen(kind, n)


def flip_isometry(kind: str, n: int, floor: int, lam=Fraction(1)) -> SparseOperator:
    """Diamond flip v/w at index n in the floor-N model."""
    if kind not in ("v", "w"):
        raise ValueError(f"unknown isometry kind {kind!r}")
    return _representation(floor, Fraction(lam)).gen(kind, n)


def tl_projection(kind: str, n: int, floor: int, lam) -> SparseOperator:
    """Temperley-Lieb-type projection E_n or F_n over Q(sqrt(lam))."""
    return _representation(floor, Fraction(lam)).tl(kind, n)


# ---------------------------------------------------------------------------
# reports


@dataclass(frozen=True)
class Check:
    equation: str
    indices: dict
    status: str
    witness: dict | None = None

    @staticmethod
    def equality(equation: str, indices: dict, left: SparseOperator, right: SparseOperator) -> "Check":
        witness = left.first_entry_of_difference(right)
        return Check(equation, indices, "pass" if witness is None else "fail", witness)

    @staticmethod
    def vanishes(equation: str, indices: dict, op: SparseOperator) -> "Check":
        if op.is_zero():
            return Check(equation, indices, "pass")
        row, col = min(op.entries)
        return Check(equation, indices, "fail", {"row": row, "col": col, "value": str(op.entries[(row, col)])})

    @staticmethod
    def nonzero(equation: str, indices: dict, op: SparseOperator) -> "Check":
        if op.is_zero():
            return Check(equation, indices, "fail", {"row": -1, "col": -1, "value": "0"})
        return Check(equation, indices, "pass")


@dataclass
class Report:
    checks: list[Check] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.status == "pass" for c in self.checks)

    def failures(self) -> list[Check]:
        return [c for c in self.checks if c.status != "pass"]

    def extend(self, other: "Report") -> None:
        self.checks.extend(other.checks)

    def to_json(self) -> str:
        payload = []
        for c in self.checks:
            item = {"equation": c.equation, "indices": c.indices, "status": c.status}
            if c.witness is not None:
                item["witness"] = c.witness
            payload.append(item)
        return json.dumps(payload)


# ---------------------------------------------------------------------------
# suites


def _diagonal_family(rep: Representation) -> list[tuple[str, int, SparseOperator]]:
    out = []
    for n in range(1, rep.floor + 1):
        out.append(("e", n, rep.gen("e", n)))
    for n in range(rep.floor + 1):
        out.append(("f", n, rep.gen("f", n)))
        out.append(("g", n, rep.gen("g", n)))
    return out


def _isometry_family(rep: Representation) -> list[tuple[str, int, SparseOperator]]:
    out = [("v", n, rep.gen("v", n)) for n in range(rep.floor)]
    out += [("w", n, rep.gen("w", n)) for n in range(1, rep.floor)]
    return out


def verify_relation_suite(floor: int, lam, rep: Representation | None = None) -> Report:
    """(R1)-(R4), the vanishing products, the nonzero whitelist, far-floor
    commutation (the locality of the model), the braid triples, and the
    partition of unity by embedded matrix units.

    Needs floor >= 4 so that every index family contributes instances."""
    if floor < 4:
        raise ValueError("the relation suite needs floor >= 4")
    rep = rep or _representation(floor, Fraction(lam))
    one = rep.identity()
    report = Report()
    add = report.checks.append

    # (R1): self-adjoint idempotents summing to 1, mutually commuting
    diag = _diagonal_family(rep)
    for kind, n, p in diag:
        status = "pass" if p.is_projection() else "fail"
        add(Check("R1", {"kind": kind, "n": n}, status))
    for n in range(rep.floor + 1):
        total = rep.gen("f", n) + rep.gen("g", n)
        if n >= 1:
            total = total + rep.gen("e", n)
        add(Check.equality("R1", {"sum_at": n}, total, one))
    for i in range(len(diag)):
        for j in range(i + 1, len(diag)):
            k1, n1, p1 = diag[i]
            k2, n2, p2 = diag[j]
            add(
                Check.vanishes(
                    "R1", {"commutator": f"{k1}{n1},{k2}{n2}"}, p1 * p2 - p2 * p1
                )
            )

    # (R2): support laws
    for n in range(rep.floor):
        v = rep.gen("v", n)
        f, g = rep.gen("f", n), rep.gen("g", n)
        e1, f1 = rep.gen("e", n + 1), rep.gen("f", n + 1)
        add(Check.vanishes("R2", {"family": "v", "n": n, "law": "(1-f_n)v_n"}, (one - f) * v))
        add(Check.vanishes("R2", {"family": "v", "n": n, "law": "(1-e_n+1)v_n"}, (one - e1) * v))
        add(Check.vanishes("R2", {"family": "v", "n": n, "law": "v_n(1-g_n)"}, v * (one - g)))
        add(Check.vanishes("R2", {"family": "v", "n": n, "law": "v_n(1-f_n+1)"}, v * (one - f1)))
    for n in range(1, rep.floor):
        w = rep.gen("w", n)
        e, g = rep.gen("e", n), rep.gen("g", n)
        e1, f1 = rep.gen("e", n + 1), rep.gen("f", n + 1)
        add(Check.vanishes("R2", {"family": "w", "n": n, "law": "(1-e_n)w_n"}, (one - e) * w))
        add(Check.vanishes("R2", {"family": "w", "n": n, "law": "(1-f_n+1)w_n"}, (one - f1) * w))
        add(Check.vanishes("R2", {"family": "w", "n": n, "law": "w_n(1-g_n)"}, w * (one - g)))
        add(Check.vanishes("R2", {"family": "w", "n": n, "law": "w_n(1-e_n+1)"}, w * (one - e1)))

    # (R3): intertwining
    for n in range(rep.floor):
        v = rep.gen("v", n)
        add(Check.equality("R3", {"family": "v", "n": n, "law": "v g = f v"}, v * rep.gen("g", n), rep.gen("f", n) * v))
        add(
            Check.equality(
                "R3", {"family": "v", "n": n, "law": "v f' = e' v"}, v * rep.gen("f", n + 1), rep.gen("e", n + 1) * v
            )
        )
    for n in range(1, rep.floor):
        w = rep.gen("w", n)
        add(Check.equality("R3", {"family": "w", "n": n, "law": "w g = e w"}, w * rep.gen("g", n), rep.gen("e", n) * w))
        add(
            Check.equality(
                "R3", {"family": "w", "n": n, "law": "w e' = f' w"}, w * rep.gen("e", n + 1), rep.gen("f", n + 1) * w
            )
        )

    # (R4): initial and final supports
    for n in range(rep.floor):
        v = rep.gen("v", n)
        add(Check.equality("R4", {"family": "v", "n": n, "law": "v*v"}, v.adjoint() * v, rep.gen("g", n) * rep.gen("f", n + 1)))
        add(Check.equality("R4", {"family": "v", "n": n, "law": "vv*"}, v * v.adjoint(), rep.gen("f", n) * rep.gen("e", n + 1)))
    for n in range(1, rep.floor):
        w = rep.gen("w", n)
        add(Check.equality("R4", {"family": "w", "n": n, "law": "w*w"}, w.adjoint() * w, rep.gen("g", n) * rep.gen("e", n + 1)))
        add(Check.equality("R4", {"family": "w", "n": n, "law": "ww*"}, w * w.adjoint(), rep.gen("e", n) * rep.gen("f", n + 1)))

    # vanishing products between adjacent and equal indices
    def op(kind: str, n: int, star: bool) -> SparseOperator | None:
        if not rep.has(kind, n):
            return None
        base = rep.gen(kind, n)
        return base.adjoint() if star else base

    vanishing = []
    for n in range(rep.floor):
        vanishing += [
            ("v_n+1 v_n", ("v", n + 1, False), ("v", n, False)),
            ("v_n v_n", ("v", n, False), ("v", n, False)),
            ("v_n+1 v_n*", ("v", n + 1, False), ("v", n, True)),
            ("v_n-1 v_n*", ("v", n - 1, False), ("v", n, True)),
            ("v_n+1* v_n", ("v", n + 1, True), ("v", n, False)),
            ("v_n-1* v_n", ("v", n - 1, True), ("v", n, False)),
            ("w_n+1 w_n", ("w", n + 1, False), ("w", n, False)),
            ("w_n w_n", ("w", n, False), ("w", n, False)),
            ("w_n+1 w_n*", ("w", n + 1, False), ("w", n, True)),
            ("w_n-1 w_n*", ("w", n - 1, False), ("w", n, True)),
            ("w_n+1* w_n", ("w", n + 1, True), ("w", n, False)),
            ("w_n-1* w_n", ("w", n - 1, True), ("w", n, False)),
            ("v_n w_n", ("v", n, False), ("w", n, False)),
            ("v_n+1 w_n", ("v", n + 1, False), ("w", n, False)),
            ("v_n-1 w_n", ("v", n - 1, False), ("w", n, False)),
            ("w_n v_n", ("w", n, False), ("v", n, False)),
            ("w_n+1 v_n", ("w", n + 1, False), ("v", n, False)),
            ("w_n-1 v_n", ("w", n - 1, False), ("v", n, False)),
            ("v_n w_n*", ("v", n, False), ("w", n, True)),
            ("v_n+1 w_n*", ("v", n + 1, False), ("w", n, True)),
            ("v_n-1 w_n*", ("v", n - 1, False), ("w", n, True)),
            ("v_n* w_n", ("v", n, True), ("w", n, False)),
            # note: v_n* w_{n-1} is NOT zero (its adjoint is the whitelisted
            # w_{n-1}* v_n); the doubly-starred neighbours do vanish
            ("v_n* w_n+1*", ("v", n, True), ("w", n + 1, True)),
            ("v_n* w_n-1*", ("v", n, True), ("w", n - 1, True)),
        ]
    for law, (k1, n1, s1), (k2, n2, s2) in vanishing:
        a, b = op(k1, n1, s1), op(k2, n2, s2)
        if a is None or b is None:
            continue
        add(Check.vanishes("6.1", {"law": law, "n": min(n1, n2)}, a * b))

    # the nonzero-product whitelist among adjacent-index isometries
    whitelist = {("v", False, "v", False), ("w", False, "w", False), ("w", True, "v", False), ("v", True, "w", False)}
    for n in range(rep.floor - 1):
        for k1 in ("v", "w"):
            for s1 in (False, True):
                for k2 in ("v", "w"):
                    for s2 in (False, True):
                        a, b = op(k1, n, s1), op(k2, n + 1, s2)
                        if a is None or b is None:
                            continue
                        name = f"{k1}{'*' if s1 else ''}_n {k2}{'*' if s2 else ''}_n+1"
                        if (k1, s1, k2, s2) in whitelist:
                            add(Check.nonzero("whitelist", {"product": name, "n": n}, a * b))
                        else:
                            add(Check.vanishes("whitelist", {"product": name, "n": n}, a * b))

    # locality: operators two or more floors apart commute
    isos = _isometry_family(rep)
    for k1, n1, a in isos:
        for k2, n2, b in isos:
            if n2 - n1 >= 2:
                for s1, x in (("", a), ("*", a.adjoint())):
                    for s2, y in (("", b), ("*", b.adjoint())):
                        add(
                            Check.vanishes(
                                "locality",
                                {"commutator": f"{k1}{s1}{n1},{k2}{s2}{n2}"},
                                x * y - y * x,
                            )
                        )
        for kind, r, p in diag:
            if r <= n1 - 1 or r >= n1 + 2:
                add(Check.vanishes("locality", {"commutator": f"{k1}{n1},{kind}{r}"}, a * p - p * a))

    # braid triples (both sides vanish) and the 6.3 list
    for kind in ("v", "w"):
        lowest = 0 if kind == "v" else 1
        for n in range(lowest, rep.floor - 1):
            a, b = rep.gen(kind, n), rep.gen(kind, n + 1)
            add(Check.equality("braid", {"family": kind, "n": n}, a * b * a, b * a * b))
            add(Check.vanishes("6.3", {"family": kind, "law": "x_n x_n+1 x_n", "n": n}, a * b * a))
            add(Check.vanishes("6.3", {"family": kind, "law": "x_n+1 x_n x_n+1", "n": n}, b * a * b))

    # partition of unity by the embedded floor-r matrix units
    for r in range(rep.floor):
        prefixes = sorted({p[: r + 1] for p in rep.ctx.paths})
        total = SparseOperator.zero(rep.ctx, rep.lam)
        for prefix in prefixes:
            total = total + path_matrix_unit(rep.ctx, rep.lam, prefix, prefix)
        add(Check.equality("unit-partition", {"r": r}, total, one))

    return report


def yang_baxter_check(floor: int, lam=Fraction(1), pairs: Iterable[tuple] | None = None, rep: Representation | None = None) -> Report:
    """R_n(s) R_{n+1}(s+t) R_n(t) == R_{n+1}(t) R_n(s+t) R_{n+1}(s) with
    R_n(s) = 1 + s*v_n, on a rational grid.

    Both sides have degree <= 2 in each of s and t, so checking a 3x3 grid
    with three distinct values per axis decides the operator identity (a
    nonzero bivariate polynomial of per-variable degree 2 cannot vanish on
    such a grid).  The default grid is {0, 1, 2} x {0, 1, 2}.
    """
    rep = rep or _representation(floor, Fraction(lam))
    if pairs is None:
        pairs = [(s, t) for s in (0, 1, 2) for t in (0, 1, 2)]
    one = rep.identity()
    report = Report()
    for n in range(rep.floor - 1):
        v_lo, v_hi = rep.gen("v", n), rep.gen("v", n + 1)
        for s, t in pairs:
            s, t = Fraction(s), Fraction(t)
            r_lo_s = one + v_lo.scale(s)
            r_lo_t = one + v_lo.scale(t)
            r_lo_st = one + v_lo.scale(s + t)
            r_hi_s = one + v_hi.scale(s)
            r_hi_t = one + v_hi.scale(t)
            r_hi_st = one + v_hi.scale(s + t)
            report.checks.append(
                Check.equality(
                    "6.4",
                    {"n": n, "s": str(s), "t": str(t)},
                    r_lo_s * r_hi_st * r_lo_t,
                    r_hi_t * r_lo_st * r_hi_s,
                )
            )
    return report


def verify_braiding_suite(floor: int, lam, rep: Representation | None = None) -> Report:
    """Projection properties of E/F, orthogonality, distance-2 commutation,
    the eight triple-product identities with exact right-hand sides, the
    vanishing mixed products, the product expansions, and the dominance
    tau*E_n - E_n E_m E_n == tau * (exact self-adjoint idempotent).

    Needs floor >= 4 so that consecutive triples fit."""
    if floor < 4:
        raise ValueError("the braiding suite needs floor >= 4")
    rep = rep or _representation(floor, Fraction(lam))
    lam = rep.lam
    tau = rep.tau()
    one = rep.identity()
    report = Report()
    add = report.checks.append

    projections = [("E", n) for n in range(rep.floor)] + [("F", n) for n in range(1, rep.floor)]
    for kind, n in projections:
        p = rep.tl(kind, n)
        add(Check("6.5" if kind == "E" else "6.6", {"kind": kind, "n": n, "law": "projection"},
                  "pass" if p.is_projection() else "fail"))

    # 6.7: E_n and F_n are orthogonal
    for n in range(1, rep.floor):
        e_proj, f_proj = rep.tl("E", n), rep.tl("F", n)
        add(Check.vanishes("6.7", {"n": n, "law": "E F"}, e_proj * f_proj))
        add(Check.vanishes("6.7", {"n": n, "law": "F E"}, f_proj * e_proj))

    # 6.8: commutation at distance >= 2
    for k1, n1 in projections:
        for k2, n2 in projections:
            if n2 - n1 >= 2:
                a, b = rep.tl(k1, n1), rep.tl(k2, n2)
                add(Check.vanishes("6.8", {"commutator": f"{k1}{n1},{k2}{n2}"}, a * b - b * a))

    # 6.9 - 6.12: triple products with exact right-hand sides
    for n in range(rep.floor - 1):
        e_lo, e_hi = rep.tl("E", n), rep.tl("E", n + 1)
        if n + 2 <= rep.floor:
            add(Check.equality("6.9", {"n": n, "law": "E_n E_n+1 E_n"},
                               e_lo * e_hi * e_lo, (e_lo * rep.gen("e", n + 2)).scale(tau)))
        add(Check.equality("6.9", {"n": n, "law": "E_n+1 E_n E_n+1"},
                           e_hi * e_lo * e_hi, (e_hi * rep.gen("g", n)).scale(tau)))
    for n in range(1, rep.floor - 1):
        f_lo, f_hi = rep.tl("F", n), rep.tl("F", n + 1)
        if n + 2 <= rep.floor:
            add(Check.equality("6.10", {"n": n, "law": "F_n F_n+1 F_n"},
                               f_lo * f_hi * f_lo, (f_lo * rep.gen("f", n + 2)).scale(tau)))
        add(Check.equality("6.10", {"n": n, "law": "F_n+1 F_n F_n+1"},
                           f_hi * f_lo * f_hi, (f_hi * rep.gen("g", n)).scale(tau)))
    for n in range(rep.floor - 1):
        e_lo = rep.tl("E", n)
        f_hi = rep.tl("F", n + 1)
        if n + 2 <= rep.floor:
            add(Check.equality("6.11", {"n": n, "law": "E_n F_n+1 E_n"},
                               e_lo * f_hi * e_lo, (e_lo * rep.gen("f", n + 2)).scale(lam * tau)))
        if n >= 1 and n + 2 <= rep.floor:
            f_lo, e_hi = rep.tl("F", n), rep.tl("E", n + 1)
            add(Check.equality("6.11", {"n": n, "law": "F_n E_n+1 F_n"},
                               f_lo * e_hi * f_lo, (f_lo * rep.gen("e", n + 2)).scale(lam * tau)))
    for n in range(1, rep.floor - 1):
        e_hi, f_lo = rep.tl("E", n + 1), rep.tl("F", n)
        add(Check.equality("6.12", {"n": n, "law": "E_n+1 F_n E_n+1"},
                           e_hi * f_lo * e_hi, (e_hi * rep.gen("e", n)).scale(lam * tau)))
    for n in range(rep.floor - 1):
        f_hi, e_lo = rep.tl("F", n + 1), rep.tl("E", n)
        add(Check.equality("6.12", {"n": n, "law": "F_n+1 E_n F_n+1"},
                           f_hi * e_lo * f_hi, (f_hi * rep.gen("f", n)).scale(lam * tau)))

    # 6.13 / 6.14: vanishing mixed products
    for n in range(1, rep.floor - 1):
        e_lo, e_hi = rep.tl("E", n), rep.tl("E", n + 1)
        f_lo, f_hi = rep.tl("F", n), rep.tl("F", n + 1)
        for law, prod in (
            ("E_n E_n+1 F_n", e_lo * e_hi * f_lo),
            ("E_n F_n+1 F_n", e_lo * f_hi * f_lo),
            ("E_n+1 E_n F_n+1", e_hi * e_lo * f_hi),
            ("E_n+1 F_n F_n+1", e_hi * f_lo * f_hi),
        ):
            add(Check.vanishes("6.13", {"n": n, "law": law}, prod))
        for law, prod in (
            ("F_n E_n+1 E_n", f_lo * e_hi * e_lo),
            ("F_n F_n+1 E_n", f_lo * f_hi * e_lo),
            ("F_n+1 E_n E_n+1", f_hi * e_lo * e_hi),
            ("F_n+1 F_n E_n+1", f_hi * f_lo * e_hi),
        ):
            add(Check.vanishes("6.14", {"n": n, "law": law}, prod))

    # 6.15 / 6.16: the two-factor expansions of E_n E_n+1 and E_n+1 E_n
    unit = Fraction(1, (1 + lam) ** 2)
    for n in range(rep.floor - 1):
        v_lo, v_hi = rep.gen("v", n), rep.gen("v", n + 1)
        e_lo, e_hi = rep.tl("E", n), rep.tl("E", n + 1)
        root = QuadScalar.root(lam, unit)
        left_factor = v_lo.adjoint() * v_lo + v_lo.scale(QuadScalar.root(lam))
        right_factor = v_hi + (v_hi * v_hi.adjoint()).scale(QuadScalar.root(lam))
        add(Check.equality("6.15", {"n": n}, e_lo * e_hi, (left_factor * right_factor).scale(root)))
        add(Check.equality("6.16", {"n": n}, e_hi * e_lo, (e_lo * e_hi).adjoint()))

    # dominance: tau E_n - E_n E_m E_n is tau times an exact projection
    for n in range(rep.floor - 1):
        e_lo, e_hi = rep.tl("E", n), rep.tl("E", n + 1)
        if n + 2 <= rep.floor:
            residue = e_lo * (one - rep.gen("e", n + 2))
            ok = residue.is_projection()
            add(Check("dominance", {"n": n, "law": "E_n(1-e_n+2) projection"}, "pass" if ok else "fail"))
            add(Check.equality("dominance", {"n": n, "law": "tau E_n - E_n E_n+1 E_n"},
                               e_lo.scale(tau) - e_lo * e_hi * e_lo, residue.scale(tau)))
        residue = e_hi * (one - rep.gen("g", n))
        ok = residue.is_projection()
        add(Check("dominance", {"n": n, "law": "E_n+1(1-g_n) projection"}, "pass" if ok else "fail"))
        add(Check.equality("dominance", {"n": n, "law": "tau E_n+1 - E_n+1 E_n E_n+1"},
                           e_hi.scale(tau) - e_hi * e_lo * e_hi, residue.scale(tau)))

    return report


def run_all_suites(floor: int, lam, rep: Representation | None = None) -> Report:
    rep = rep or _representation(floor, Fraction(lam))
    report = verify_relation_suite(floor, lam, rep)
    report.extend(yang_baxter_check(floor, lam, rep=rep))
    report.extend(verify_braiding_suite(floor, lam, rep))
    return report


def random_sign_mutation(rep: Representation, rng: random.Random) -> tuple[Representation, dict]:
    """Flip the sign of one uniformly chosen nonzero entry of one generator."""
    kinds = [("e", n) for n in range(1, rep.floor + 1)]
    kinds += [("f", n) for n in range(rep.floor + 1)]
    kinds += [("g", n) for n in range(rep.floor + 1)]
    kinds += [("v", n) for n in range(rep.floor)]
    kinds += [("w", n) for n in range(1, rep.floor)]
    kind, n = kinds[rng.randrange(len(kinds))]
    entries = sorted(rep.gen(kind, n).entries)
    entry = entries[rng.randrange(len(entries))]
    info = {"kind": kind, "n": n, "row": entry[0], "col": entry[1]}
    return rep.with_sign_flip(kind, n, entry), info
