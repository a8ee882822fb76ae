"""Walk the Stern-Brocot/Farey tree: rows, the question mark, the interval map.

Run:  python3 demos/01_tree_and_question_mark.py
"""

from fractions import Fraction

from fareybratteli.core import (
    cf_encode,
    farey_inverse_orbit,
    farey_map,
    height,
    partition_function,
    question_mark,
    question_mark_inv,
    row,
    totient_fiber,
    verify_matrix_words,
)

print("The first floors of the tree (even indices copy, odd ones are mediants):")
for n in range(5):
    print(f"  floor {n}: " + "  ".join(str(x) for x in row(n)))

print("\nDenominator mass per floor is 3^n + 1:")
for n in (3, 8, 14):
    print(f"  n={n:2d}: sum of denominators = {sum(x.denominator for x in row(n))} = 3^{n}+1")

print("\nThe question mark straightens the tree onto dyadics, exactly:")
for x in (Fraction(1, 3), Fraction(2, 5), Fraction(3, 7)):
    image = question_mark(x)
    n = image.denominator.bit_length() - 1
    print(f"  ?({x}) = {image}   (continued fraction {cf_encode(x)}, first appears on floor {height(x)})")
    assert question_mark_inv(image.numerator, n) == x

print("\nLabels at huge floors come from the dyadic walk, no row needed:")
k = 2**59 + 3**25  # any odd index works
print(f"  label(60, 2^59 + 3^25) = {question_mark_inv(k, 60)}")

print("\nThe interval map shifts continued-fraction digits; its inverse orbit")
print("of 0 sweeps out exactly the rows:")
x = Fraction(2, 5)
print(f"  F({x}) = {farey_map(x)}  ({cf_encode(x)} -> {cf_encode(farey_map(x))})")
orbit = farey_inverse_orbit(4)
print(f"  F^-4(0) = {[str(v) for v in orbit]}")
assert set(orbit) == set(row(3))

print("\nEach denominator q >= 2 labels exactly phi(q) odd-index vertices;")
print("summing phi(q)/q^s approximates the classical ratio of zeta values:")
print(f"  fiber sizes for q = 5, 12, 60: {totient_fiber(5)}, {totient_fiber(12)}, {totient_fiber(60)}")
print(f"  sum_(q<=10^5) phi(q) q^-3 = {partition_function(3, 10**5):.6f}  (zeta(2)/zeta(3) = 1.368432...)")

ok, _ = verify_matrix_words(12, 12)
print(f"\nWord identities B^a A^b = M(a)M(b) and A^a B^b = J M(a)M(b) J for a,b <= 12: {'pass' if ok else 'FAIL'}")
