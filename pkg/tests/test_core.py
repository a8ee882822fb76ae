"""Tree labels, continued fractions, question mark, Farey map, matrix words."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fareybratteli.core import (
    MAT_A,
    MAT_B,
    Mat2,
    cf_convergents,
    cf_decode,
    cf_encode,
    cf_normalize,
    euler_phi,
    farey_inverse_orbit,
    farey_map,
    farey_map_cf,
    farey_preimages,
    height,
    label,
    matrix_m,
    matrix_to_vertex,
    mediant,
    partition_function,
    question_mark,
    question_mark_inv,
    row,
    totient_fiber,
    totient_sieve,
    verify_matrix_words,
    vertex_to_matrix,
)

F = Fraction


def fracs(*pairs):
    return tuple(F(p, q) for p, q in pairs)


# Rows 0..5 transcribed from the tree figure, frozen verbatim.
ROWS_VERBATIM = {
    0: fracs((0, 1), (1, 1)),
    1: fracs((0, 1), (1, 2), (1, 1)),
    2: fracs((0, 1), (1, 3), (1, 2), (2, 3), (1, 1)),
    3: fracs((0, 1), (1, 4), (1, 3), (2, 5), (1, 2), (3, 5), (2, 3), (3, 4), (1, 1)),
    4: fracs(
        (0, 1), (1, 5), (1, 4), (2, 7), (1, 3), (3, 8), (2, 5), (3, 7), (1, 2),
        (4, 7), (3, 5), (5, 8), (2, 3), (5, 7), (3, 4), (4, 5), (1, 1),
    ),
    5: fracs(
        (0, 1), (1, 6), (1, 5), (2, 9), (1, 4), (3, 11), (2, 7), (3, 10), (1, 3),
        (4, 11), (3, 8), (5, 13), (2, 5), (5, 12), (3, 7), (4, 9), (1, 2),
        (5, 9), (4, 7), (7, 12), (3, 5), (8, 13), (5, 8), (7, 11), (2, 3),
        (7, 10), (5, 7), (8, 11), (3, 4), (7, 9), (4, 5), (5, 6), (1, 1),
    ),
}


def test_rows_match_figure_verbatim():
    for n, expected in ROWS_VERBATIM.items():
        assert row(n) == expected


def test_row_structure():
    for n in range(1, 11):
        prev, cur = row(n - 1), row(n)
        assert len(cur) == 2**n + 1
        assert cur[::2] == prev
        for k in range(1, len(cur), 2):
            assert cur[k] == mediant(cur[k - 1], cur[k + 1])
        assert all(a < b for a, b in zip(cur, cur[1:]))


def test_row_sums():
    # Stern-Brocot mass: denominators sum to 3**n + 1, numerators to half that.
    for n in range(15):
        r = row(n)
        assert sum(x.denominator for x in r) == 3**n + 1
        assert sum(x.numerator for x in r) == (3**n + 1) // 2
    # The 9-entry row 3 in particular (sum 28); the 17-entry row is floor 4.
    assert tuple(x.denominator for x in row(3)) == (1, 4, 3, 5, 2, 5, 3, 4, 1)
    assert sum(x.denominator for x in row(3)) == 28
    assert tuple(x.denominator for x in row(4)) == (1, 5, 4, 7, 3, 8, 5, 7, 2, 7, 5, 8, 3, 7, 4, 5, 1)


def test_row_guard():
    with pytest.raises(ValueError):
        row(25)
    with pytest.raises(ValueError):
        row(-1)


def test_determinant_identity():
    for n in range(13):
        r = row(n)
        for k in range(2**n):
            assert r[k + 1].numerator * r[k].denominator - r[k].numerator * r[k + 1].denominator == 1


def test_label_examples():
    assert label(0, 0) == 0
    assert label(2, 1) == F(1, 3)
    assert label(4, 7) == F(3, 7)
    assert label(1, 1) == F(1, 2)
    assert label(7, 2**7) == 1


def test_label_matches_rows():
    for n in range(9):
        for k, x in enumerate(row(n)):
            assert label(n, k) == x


def test_label_errors():
    with pytest.raises(ValueError):
        label(2, 5)
    with pytest.raises(ValueError):
        label(-1, 0)


# ---------------------------------------------------------------------------
# continued fractions


def test_cf_endpoints():
    assert cf_encode(F(0)) == ()
    assert cf_encode(F(1)) == (1,)
    assert cf_decode(()) == 0
    assert cf_decode((1,)) == 1


def test_cf_examples():
    for n in range(1, 12):
        assert cf_encode(F(1, n + 1)) == (n + 1,)
    assert cf_encode(F(2, 5)) == (2, 2)
    assert cf_decode((2, 2)) == F(2, 5)


def test_cf_canonical_last_term():
    for q in range(2, 40):
        for p in range(1, q):
            terms = cf_encode(F(p, q))
            assert terms[-1] >= 2 or terms == (1,)
            assert cf_decode(terms) == F(p, q)


def test_cf_normalize():
    assert cf_normalize((1, 2, 2, 1)) == (1, 2, 3)
    assert cf_normalize((2, 1)) == (3,)
    assert cf_normalize((1,)) == (1,)
    with pytest.raises(ValueError):
        cf_normalize((1, 0, 2))


def test_cf_convergents_figure_labels():
    # Quotient labels seen along the [1,2,2,1,1] chain.
    assert cf_convergents((1, 2, 2, 1, 1)) == [F(1), F(2, 3), F(5, 7), F(7, 10), F(12, 17)]


@given(st.fractions(min_value=0, max_value=1))
def test_cf_round_trip(x):
    assert cf_decode(cf_encode(x)) == x


def test_height():
    assert height(F(0)) == 0
    assert height(F(1)) == 0
    assert height(F(1, 2)) == 1
    assert height(F(2, 5)) == 3
    # x appears at floor h iff ?(x) * 2**h is an integer, so the first
    # appearance is the dyadic exponent of ?(x) -- an independent route.
    for q in range(2, 41):
        for p in range(1, q):
            x = F(p, q)
            h = height(x)
            assert question_mark(x).denominator == 2**h
            if h <= 12:
                assert x in row(h)
                assert h == 0 or x not in row(h - 1)


# ---------------------------------------------------------------------------
# question mark


def test_question_mark_endpoints():
    assert question_mark(F(0)) == 0
    assert question_mark(F(1)) == 1


def test_question_mark_values():
    assert question_mark(F(1, 3)) == F(1, 4)
    assert question_mark(F(2, 5)) == F(3, 8)  # series 1/2 - 1/8 for CF (2, 2)
    assert question_mark((2, 2)) == F(3, 8)
    assert label(3, 3) == F(2, 5)


def test_question_mark_sends_labels_to_dyadics():
    for n in range(13):
        for k, x in enumerate(row(n)):
            assert question_mark(x) == F(k, 2**n)


def test_question_mark_inv_round_trip():
    for n in range(13):
        for k in range(0, 2**n + 1, max(1, 2**n // 64)):
            x = question_mark_inv(k, n)
            assert question_mark(x) == F(k, 2**n)


def test_question_mark_strictly_increasing_on_rows():
    for n in range(9):
        values = [question_mark(x) for x in row(n)]
        assert all(a < b for a, b in zip(values, values[1:]))


# ---------------------------------------------------------------------------
# Farey map


def test_farey_map_values():
    assert farey_map(F(1, 2)) == 1
    assert farey_map(F(0)) == 0
    assert farey_map(F(1)) == 0
    assert farey_map(F(2, 5)) == F(2, 3)


def test_farey_preimages():
    assert farey_preimages(F(0)) == (F(0), F(1))
    for n in range(11):
        for y in row(n):
            f1, f2 = farey_preimages(y)
            assert farey_map(f1) == y
            assert farey_map(f2) == y
            assert f2 == 1 - f1


def all_cfs_with_sum_at_most(s):
    """Every canonical CF tuple (last term >= 2, or (1,)) with term sum <= s."""
    out = [(1,)] if s >= 1 else []
    stack = [((a,), a) for a in range(2, s + 1)]
    out.extend(t for t, _ in stack)
    while stack:
        terms, total = stack.pop()
        # extend on the left so the last term stays >= 2
        for a in range(1, s - total + 1):
            stack.append(((a,) + terms, total + a))
            out.append((a,) + terms)
    return out


def test_farey_map_shifts_cf_digits():
    for terms in all_cfs_with_sum_at_most(8):
        x = cf_decode(terms)
        shifted = farey_map_cf(terms)
        assert cf_encode(farey_map(x)) == shifted
        assert farey_map(x) == cf_decode(shifted)


def test_farey_inverse_orbit():
    assert farey_inverse_orbit(1) == [F(0), F(1)]
    assert farey_inverse_orbit(2) == [F(0), F(1, 2), F(1)]
    with pytest.raises(ValueError):
        farey_inverse_orbit(15)
    for n in range(1, 11):
        orbit = farey_inverse_orbit(n)
        assert len(orbit) == 2 ** (n - 1) + 1
        assert orbit == sorted(set(row(n - 1)))
        cf_side = {F(0)} | {cf_decode(t) for t in all_cfs_with_sum_at_most(n)}
        assert set(orbit) == cf_side


# ---------------------------------------------------------------------------
# totients and the Dirichlet series


def test_totient_fiber_small():
    assert totient_fiber(2) == 1
    assert totient_fiber(5) == 4
    assert totient_fiber(12) == 4


def test_totient_fiber_matches_phi():
    for q in range(2, 61):
        assert totient_fiber(q) == euler_phi(q)


def test_totient_sieve_matches_trial_factorisation():
    sieve = totient_sieve(200)
    for q in range(1, 201):
        assert sieve[q] == euler_phi(q)


def zeta_series(s: float, terms: int) -> float:
    """Independent oracle: direct partial sum with an Euler-Maclaurin tail."""
    partial = sum(n**-s for n in range(1, terms + 1))
    n = float(terms)
    tail = n ** (1 - s) / (s - 1) - 0.5 * n**-s + (s / 12.0) * n ** (-s - 1)
    return partial + tail


def test_partition_function_single_term():
    assert partition_function(4, 1) == 1.0


def test_partition_function_matches_zeta_ratio():
    want = zeta_series(2, 10000) / zeta_series(3, 10000)
    got = partition_function(3, 10**5)
    assert abs(got - want) < 1e-4


def test_partition_function_monotone_in_qmax():
    values = [partition_function(3, q) for q in (10, 100, 1000)]
    assert values == sorted(values)
    with pytest.raises(ValueError):
        partition_function(2, 10)


# ---------------------------------------------------------------------------
# matrix words


def test_matrix_word_base_case():
    assert MAT_B @ MAT_A == Mat2(2, 1, 1, 1)
    assert matrix_m(1) @ matrix_m(1) == Mat2(2, 1, 1, 1)


def test_matrix_words_exhaustive():
    ok, witness = verify_matrix_words(12, 12)
    assert ok, witness


def test_vertex_to_matrix_examples():
    assert vertex_to_matrix(0, 0) == Mat2(1, 0, 1, 1)
    m = vertex_to_matrix(2, 1)
    assert m == Mat2(1, 1, 2, 3)
    assert m.det() == 1
    assert m.in_gamma_plus()
    with pytest.raises(ValueError):
        vertex_to_matrix(2, 4)


def test_matrix_vertex_round_trip():
    for n in range(9):
        for k in range(2**n):
            assert matrix_to_vertex(vertex_to_matrix(n, k)) == (n, k)


def test_matrix_vertex_round_trip_deep():
    # far beyond row materialisation: the dyadic walk carries both directions
    import random

    rng = random.Random(11)
    for _ in range(40):
        n = rng.randrange(20, 45)
        k = rng.randrange(0, 2**n)
        m = vertex_to_matrix(n, k)
        assert m.det() == 1 and m.in_gamma_plus()
        assert matrix_to_vertex(m) == (n, k)


def test_matrix_to_vertex_rejects_non_gamma_plus():
    with pytest.raises(ValueError):
        matrix_to_vertex(Mat2(1, 1, 0, 1))  # det 1 but p' > q' fails 0<=p'<=q'... b<=d ok, a<=c fails
