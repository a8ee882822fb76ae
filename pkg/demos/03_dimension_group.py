"""The ordered K0 group of the codimension-one ideal as polynomial arithmetic.

Run:  python3 demos/03_dimension_group.py
"""

from fareybratteli.dimension_group import (
    LevelPoly,
    add_classes,
    beta_lift,
    beta_step,
    eval_phi,
    expand_to_laurent,
    is_positive_class,
    q_prime_row,
    rho_n,
    stern_brocot_generating,
    verify_unit_decomposition,
)

print("One connecting step: d[2k] = c[k], d[2k+1] = c[k] + c[k+1]:")
p = LevelPoly(1, (0, 1))
print(f"  {p} -> {beta_step(p)}")
print(f"  the constant 1 lifted two floors: {beta_lift(LevelPoly(0, (1,)), 2)}")

print("\nThe worked class addition [X+1/X] + [X^3+1/X^3]:")
total = add_classes(LevelPoly(1, (0, 1)), LevelPoly(2, (0, 0, 0, 1)))
print(f"  = {total}, i.e. Laurent {expand_to_laurent(total)}")

print("\nPositivity is read off at the element's own level and is lift-stable:")
neg = LevelPoly(1, (1, -1))
print(f"  {neg}: positive = {is_positive_class(neg)}; after lifting 5 floors: "
      f"{is_positive_class(beta_lift(neg, 6))}")

print("\nUnit decomposition: the block-size weights rebuild the full product polynomial:")
print(f"  weights at level 3: {q_prime_row(3)}")
print(f"  weights at level 4: {q_prime_row(4)}")
print(f"  identity holds for n <= 10: {all(verify_unit_decomposition(n) for n in range(11))}")
print(f"  rho_3 support: degrees {rho_n(3).support()[0]}..{rho_n(3).support()[-1]}, coefficient sum {3**3}")

print("\nThe infinite product (1+X+X^2)(1+X^2+X^4)(1+X^4+X^8)... generates the")
print("denominator sequence read floor by floor:")
print(f"  first 16 coefficients: {stern_brocot_generating(16)}")

print("\nThe normalised cosh basis is an exact partition of unity:")
for y in (0.0, 1.0, 2.5):
    total = sum(q_prime_row(6)[k] * eval_phi(6, k, y) for k in range(2**6))
    print(f"  level 6, y = {y}: weighted sum = {total:.15f}")
