"""Quotient/ideal level sets, admissibility, and finite-depth topology checks."""

import itertools
from fractions import Fraction

import pytest

from fareybratteli.core import cf_convergents, height, label
from fareybratteli.ideals import (
    CFStream,
    IdealSpec,
    LevelSet,
    children,
    classify_admissible,
    complement,
    convergence_check,
    ideal_contains,
    ideal_join,
    ideal_levels,
    is_directed,
    is_hereditary,
    kernel_intersection,
    levelset_from_json,
    levelset_to_dot,
    levelset_to_json,
    parents_of,
    quotient_levels,
)

F = Fraction


def stream(*period):
    return CFStream(itertools.cycle(period))


def test_children():
    assert children(1, 0) == (0, 1)
    assert children(1, 1) == (1, 2, 3)
    assert children(2, 4) == (7, 8)
    assert children(0, 0) == (0, 1)
    with pytest.raises(ValueError):
        children(1, 3)


# ---------------------------------------------------------------------------
# quotient level sets


def test_quotient_one_third_plain():
    ls = quotient_levels(IdealSpec(F(1, 3)), 5)
    assert ls.retained == ((0, 1), (0, 1), (1,), (2,), (4,), (8,))
    for n in range(2, 6):
        (k,) = ls.retained[n]
        assert label(n, k) == F(1, 3)
    # single retained column of denominator 3: the quotient is a 3x3 block
    assert label(2, 1).denominator == 3


def test_quotient_one_third_plus_matches_two_column_figure():
    ls = quotient_levels(IdealSpec(F(1, 3), "plus"), 5)
    assert ls.retained == ((0, 1), (0, 1), (1, 2), (2, 3), (4, 5), (8, 9))
    assert ls.labels()[3] == (F(1, 3), F(2, 5))
    assert ls.labels()[4] == (F(1, 3), F(3, 8))
    assert ls.labels()[5] == (F(1, 3), F(4, 11))


def test_quotient_two_fifths_minus_matches_two_column_figure():
    ls = quotient_levels(IdealSpec(F(2, 5), "minus"), 5)
    assert ls.retained == ((0, 1), (0, 1), (1, 2), (2, 3), (5, 6), (11, 12))
    assert ls.labels()[3] == (F(1, 3), F(2, 5))
    assert ls.labels()[4] == (F(3, 8), F(2, 5))
    assert ls.labels()[5] == (F(5, 13), F(2, 5))


def test_quotient_endpoints():
    assert quotient_levels(IdealSpec(F(0)), 4).retained == ((0,),) * 5
    assert quotient_levels(IdealSpec(F(1)), 3).retained == ((1,), (2,), (4,), (8,))
    assert quotient_levels(IdealSpec(F(0), "plus"), 3).retained == ((0, 1),) * 4
    assert quotient_levels(IdealSpec(F(1), "minus"), 3).retained == ((0, 1), (1, 2), (3, 4), (7, 8))


def test_spec_validation():
    with pytest.raises(ValueError):
        IdealSpec(F(1), "plus")
    with pytest.raises(ValueError):
        IdealSpec(F(0), "minus")
    with pytest.raises(ValueError):
        IdealSpec(F(1, 3), "both")
    with pytest.raises(ValueError):
        IdealSpec(stream(1, 2), "plus")


def test_quotient_figure_chain_labels():
    # theta = [1,2,2,1,1,...]: the second quotient column walks through the
    # convergents 2/3, 5/7, 7/10, 12/17.
    ls = quotient_levels(IdealSpec(stream(1, 2, 2, 1)), 8)
    flat = {x for floor in ls.labels() for x in floor}
    for conv in cf_convergents((1, 2, 2, 1, 1)):
        assert conv in flat
    assert ls.labels()[2] == (F(2, 3), F(1, 1))
    assert ls.labels()[6] == (F(7, 10), F(12, 17))


def test_stream_exhaustion_is_an_error():
    with pytest.raises(ValueError):
        quotient_levels(IdealSpec(CFStream(iter([1, 2]))), 10)


def test_irrational_straddle_property():
    theta = stream(2)  # sqrt(2) - 1
    ls = quotient_levels(IdealSpec(theta), 12)
    lo, hi = theta.bounds()
    for n, (a, b) in enumerate(ls.retained):
        assert b == a + 1
        # the retained labels straddle every approximant of theta
        assert label(n, a) < lo and hi < label(n, b) or label(n, a) < hi and lo < label(n, b)


def test_effros_shen_two_column_labels():
    # Between consecutive first-appearance floors the quotient pair is
    # {p_n/q_n, (p_{n-1} + (m - h_n) p_n) / (q_{n-1} + (m - h_n) q_n)}.
    for period in ((1, 2, 2, 1), (2,)):
        ls = quotient_levels(IdealSpec(stream(*period)), 20)
        terms = []
        cycle = itertools.cycle(period)
        while sum(terms) <= 21:
            terms.append(next(cycle))
        convs = cf_convergents(terms)
        p = [0] + [c.numerator for c in convs]
        q = [1] + [c.denominator for c in convs]
        heights = [None] + [height(c) for c in convs]
        for n in range(1, len(convs)):
            h_n, h_next = heights[n], heights[n + 1]
            for m in range(h_n, min(h_next, 21)):
                want = {
                    F(p[n], q[n]),
                    F(p[n - 1] + (m - h_n) * p[n], q[n - 1] + (m - h_n) * q[n]),
                }
                assert set(ls.labels()[m]) == want, (period, n, m)


# ---------------------------------------------------------------------------
# ideal sides


def test_ideal_plus_quotient_partition():
    spec = IdealSpec(F(1, 3))
    quot = quotient_levels(spec, 8)
    side = ideal_levels(spec, 8)
    for n in range(9):
        assert sorted(quot.retained[n] + side.retained[n]) == list(range(2**n + 1))


def test_ideal_sides_hereditary_and_directed():
    for spec in (
        IdealSpec(F(1, 3)),
        IdealSpec(F(1, 3), "plus"),
        IdealSpec(F(2, 5), "minus"),
        IdealSpec(F(0)),
        IdealSpec(F(1)),
    ):
        side = ideal_levels(spec, 12)
        assert is_hereditary(side)
        assert is_directed(side)
    side = ideal_levels(IdealSpec(stream(1, 2, 2, 1)), 12)
    assert is_hereditary(side) and is_directed(side)


def test_non_hereditary_counterexample():
    only_11 = LevelSet(2, ((), (1,), ()))
    assert not is_hereditary(only_11)
    assert is_directed(only_11)  # no omitted vertex has all children retained


def test_full_diagram_hereditary_and_directed():
    full = LevelSet(5, tuple(tuple(range(2**n + 1)) for n in range(6)))
    assert is_hereditary(full)
    assert is_directed(full)


def test_ideal_lattice_relations_at_depth_12():
    depth = 12
    plain = ideal_levels(IdealSpec(F(1, 3)), depth)
    plus = ideal_levels(IdealSpec(F(1, 3), "plus"), depth)
    minus = ideal_levels(IdealSpec(F(1, 3), "minus"), depth)
    # the one-sided ideals sit inside the plain one, not conversely
    assert ideal_contains(plus, plain)
    assert ideal_contains(minus, plain)
    assert not ideal_contains(plain, plus)
    assert not ideal_contains(plain, minus)
    # the plain ideal is exactly their join; its quotient is the floorwise
    # intersection of the two quotient columns
    assert ideal_join([plus, minus]) == plain
    qplain = quotient_levels(IdealSpec(F(1, 3)), depth)
    qplus = quotient_levels(IdealSpec(F(1, 3), "plus"), depth)
    qminus = quotient_levels(IdealSpec(F(1, 3), "minus"), depth)
    assert kernel_intersection([qplus, qminus]) == qplain
    # kernel of the pair of ideal sides is itself an ideal diagram
    meet = kernel_intersection([plus, minus])
    assert is_hereditary(meet) and is_directed(meet)


def test_kernel_intersection_depth_mismatch():
    a = ideal_levels(IdealSpec(F(1, 3)), 4)
    b = ideal_levels(IdealSpec(F(1, 3)), 5)
    with pytest.raises(ValueError):
        kernel_intersection([a, b])


def test_complement_guard():
    deep = quotient_levels(IdealSpec(F(1, 3)), 40)
    assert len(deep.retained) == 41
    with pytest.raises(ValueError):
        complement(deep)


def test_deep_stream_walk_keeps_invariants():
    # full advertised depth with an irrational stream: indices near 2**60,
    # nested straddling intervals all the way down
    theta = stream(1, 2, 2, 1)
    ls = quotient_levels(IdealSpec(theta), 60)
    previous = None
    for n, (a, b) in enumerate(ls.retained):
        assert b == a + 1 and 0 <= a and b <= 2**n
        left, right = label(n, a), label(n, b)
        # the stream itself certifies the strict straddle at every floor
        assert theta.compare(left) == 1 and theta.compare(right) == -1
        if previous is not None:
            assert previous[0] <= left and right <= previous[1]
        previous = (left, right)
    with pytest.raises(ValueError):
        quotient_levels(IdealSpec(theta), 61)


# ---------------------------------------------------------------------------
# admissibility


def test_computed_quotients_are_admissible():
    specs = [
        IdealSpec(F(1, 3)),
        IdealSpec(F(1, 3), "plus"),
        IdealSpec(F(1, 3), "minus"),
        IdealSpec(F(2, 5), "minus"),
        IdealSpec(F(3, 7), "plus"),
        IdealSpec(F(1, 2)),
        IdealSpec(F(0)),
        IdealSpec(F(0), "plus"),
        IdealSpec(F(1)),
        IdealSpec(F(1), "minus"),
    ]
    for spec in specs:
        report = classify_admissible(quotient_levels(spec, 20))
        assert report.admissible, spec
    assert classify_admissible(quotient_levels(IdealSpec(stream(1, 2, 2, 1)), 20)).admissible


def test_admissible_tags():
    assert classify_admissible(quotient_levels(IdealSpec(F(1, 3)), 10)).tag == "rational-plain"
    # A pair window is never attributable: the plus construction of its final
    # left label reproduces it exactly, as do minus and irrational targets.
    plus_window = quotient_levels(IdealSpec(F(1, 3), "plus"), 10)
    assert classify_admissible(plus_window).tag is None
    left_final = label(10, plus_window.retained[10][0])
    assert quotient_levels(IdealSpec(left_final, "plus"), 10) == plus_window
    minus_window = quotient_levels(IdealSpec(F(2, 5), "minus"), 10)
    assert classify_admissible(minus_window).tag is None
    right_final = label(10, minus_window.retained[10][1])
    assert quotient_levels(IdealSpec(right_final, "minus"), 10) == minus_window
    # and conversely the minus window is also a plus window for another target
    other = label(10, minus_window.retained[10][0])
    assert quotient_levels(IdealSpec(other, "plus"), 10) == minus_window
    assert classify_admissible(quotient_levels(IdealSpec(stream(1, 2, 2, 1)), 20)).tag is None


def test_inadmissible_singleton_jump():
    # singleton {1} must double to {2}; jumping to {3} is not allowed
    ls = LevelSet(2, ((0, 1), (1,), (3,)))
    report = classify_admissible(ls)
    assert not report.admissible
    assert report.failure_floor == 2


def test_inadmissible_wide_floor():
    ls = LevelSet(1, ((0, 1), (0, 1, 2)))
    report = classify_admissible(ls)
    assert not report.admissible


def test_nested_intervals_contain_theta():
    theta = F(2, 5)
    report = classify_admissible(quotient_levels(IdealSpec(theta, "minus"), 15))
    previous = None
    for lo, hi in report.intervals:
        assert lo <= theta <= hi
        if previous is not None:
            assert previous[0] <= lo and hi <= previous[1]
        previous = (lo, hi)


def admissible_sequences(depth):
    """DFS over the transition rules, yielding every quotient-form sequence."""
    starts = [((0,),), ((1,),), ((0, 1),)]
    stack = [(s, 0) for s in starts]
    while stack:
        seq, n = stack.pop()
        if n == depth:
            yield seq
            continue
        cur = seq[-1]
        a = cur[0]
        if len(cur) == 1:
            nexts = [(2 * a,)]
        else:
            nexts = [(2 * a, 2 * a + 1), (2 * a + 1, 2 * a + 2), (2 * a + 1,)]
        for nxt in nexts:
            stack.append((seq + (nxt,), n + 1))


def test_depth6_enumeration_matches_automaton_count():
    depth = 6
    found = list(admissible_sequences(depth))
    for seq in found:
        assert classify_admissible(LevelSet(depth, seq)).admissible
    # abstract automaton: singleton -> singleton; pair -> 2 pairs + 1 singleton
    pair_ways = 1
    for _ in range(depth):
        pair_ways = 2 * pair_ways + 1
    assert len(found) == 2 + pair_ways == 129
    assert len(set(found)) == len(found)


# ---------------------------------------------------------------------------
# parents


def test_parents_examples():
    assert parents_of(F(1, 2)) == parents_of(F(1, 2)).__class__(F(0), F(1))
    pair = parents_of(F(2, 5))
    assert (pair.left, pair.right) == (F(1, 3), F(1, 2))
    pair = parents_of(F(3, 7))
    assert (pair.left, pair.right) == (F(2, 5), F(1, 2))
    with pytest.raises(ValueError):
        parents_of(F(0))


def test_parents_heights_drop():
    for q in range(2, 40):
        for p in range(1, q):
            if F(p, q).denominator != q:
                continue
            x = F(p, q)
            pair = parents_of(x)
            assert pair.left < x < pair.right or pair.left == 0
            assert pair.left < pair.right
            assert height(pair.left) < height(x)
            assert height(pair.right) < height(x)


def test_gap_bounds():
    # Pair gap below a repeated label: r(n, 2j+1) - r(n, 2j-1) < 2/q^2, and
    # the k-step bound below a first appearance: max one-sided gap < 1/(k q^2).
    for q in range(2, 31):
        for p in range(1, q):
            x = F(p, q)
            if x.denominator != q:
                continue
            n0 = height(x)
            import fareybratteli.core as core

            qm = core.question_mark(x)
            j0 = qm.numerator * (2**n0 // qm.denominator)
            for k in range(1, 11):
                n, j = n0 + k, 2**k * j0
                left, mid, right = label(n, j - 1), label(n, j), label(n, j + 1)
                assert mid == x
                assert right - left < F(2, q * q)
                assert max(right - x, x - left) < F(1, k * q * q)


# ---------------------------------------------------------------------------
# convergence


def test_convergence_check_positive():
    thetas = [F(1, 2) + F(1, m + 10) for m in range(1, 41)]
    report = convergence_check(thetas, F(1, 2), 10)
    assert report.converged
    assert all(pos is not None for pos in report.settled_from)


def test_convergence_check_negative():
    thetas = [F(1, 3)] * 20
    report = convergence_check(thetas, F(1, 2), 10)
    assert not report.converged
    # floor 0 always meets; deep floors never do
    assert report.settled_from[0] == 0
    assert report.settled_from[-1] is None


def test_convergence_matches_numeric_limit():
    import random

    rng = random.Random(7)
    for _ in range(5):
        target = F(rng.randrange(1, 7), 7)
        # fast geometric approach so every floor <= 8 settles inside the window
        converging = [target + F((-1) ** m, 2 ** (m + 2)) for m in range(1, 30)]
        assert convergence_check(converging, target, 8).converged
        away = F(1, 5) if target != F(1, 5) else F(2, 5)
        staying = [away] * 30
        assert not convergence_check(staying, target, 8).converged


# ---------------------------------------------------------------------------
# serialisation


def test_json_round_trip():
    ls = quotient_levels(IdealSpec(F(1, 3), "plus"), 6)
    text = levelset_to_json(ls)
    assert levelset_from_json(text) == ls
    import json

    payload = json.loads(text)
    assert payload["depth"] == 6
    assert payload["retained"][2] == [1, 2]
    assert payload["labels"][2] == ["1/3", "1/2"]


def test_json_rejects_inconsistent_labels():
    ls = quotient_levels(IdealSpec(F(1, 3)), 3)
    import json

    payload = json.loads(levelset_to_json(ls))
    payload["labels"][2] = ["1/2"]
    with pytest.raises(ValueError):
        levelset_from_json(json.dumps(payload))


def test_dot_export():
    ls = quotient_levels(IdealSpec(F(1, 3)), 4)
    dot = levelset_to_dot(ls)
    assert dot.startswith("digraph")
    assert '"v2_1" [label="1/3", shape=box' in dot
    assert '"v2_0" [label="0", shape=circle]' in dot
    assert '"v0_0" -> "v1_0"' in dot
    with pytest.raises(ValueError):
        levelset_to_dot(quotient_levels(IdealSpec(F(1, 3)), 11))
