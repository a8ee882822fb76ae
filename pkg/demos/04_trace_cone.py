"""Traces as weights on the memoryless tree: moves, branch sets, candidates.

Run:  python3 demos/04_trace_cone.py
"""

from fractions import Fraction

from fareybratteli.core import label
from fareybratteli.traces import (
    STAR,
    alpha_from_phi,
    check_trace,
    cf_of_vertex,
    geometric_candidate,
    move_left,
    move_right,
    neighbor_set,
    zero_candidate,
)

F = Fraction

print("Moves on the memoryless tree (only odd indices, plus the root):")
v = move_right(STAR)
print(f"  R(root) = {v}, label {label(*v)}")
for _ in range(3):
    v = move_left(v)
    print(f"  L -> {v}, label {label(*v)}")

print("\nBranch sets in coordinates and labels:")
for v in (STAR, (0, 1), (1, 1)):
    members = neighbor_set(v, 5)
    labels = ", ".join(str(label(*w)) for w in members)
    name = "root" if v == STAR else str(v)
    print(f"  C({name}) to floor 5: {members}  labels {{{labels}}}")
print(f"  continued fraction of (3,3): {cf_of_vertex((3, 3))}")

print("\nThe zero candidate (mass only at the root) is a trace:")
print(f"  valid = {check_trace(zero_candidate(), 12).valid}")

print("\nGeometric weights ratio 1/4 satisfy every branch inequality with room:")
quarter = check_trace(geometric_candidate(F(1, 4)), 12)
rows = {v: (val, mass) for v, val, mass in quarter.rows}
print(f"  valid = {quarter.valid} (exact tails);  at the root: phi = 1, branch mass = {rows[STAR][1]}")
print(f"  at (2,3): phi = {rows[(2, 3)][0]}, branch mass = {rows[(2, 3)][1]}")

print("\nRatio 1/2 fails at the first vertex with two branches:")
half = check_trace(geometric_candidate(F(1, 2)), 12)
print(f"  valid = {half.valid}, first violation at {half.first_violation}")

print("\nA valid weight rebuilds nonnegative masses on the whole diagram:")
alpha = alpha_from_phi(geometric_candidate(F(1, 4)), 8)
print(f"  alpha at (3,0), (3,4), (3,8): {alpha[(3, 0)]}, {alpha[(3, 4)]}, {alpha[(3, 8)]}")
print(f"  minimum over {len(alpha)} vertices: {min(alpha.values())} (>= 0)")
