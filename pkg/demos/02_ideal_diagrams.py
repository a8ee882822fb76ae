"""Quotient and ideal subdiagrams: rational columns, one-sided companions,
irrational staircases, and the finite-depth topology checks.

Run:  python3 demos/02_ideal_diagrams.py
"""

import itertools
from fractions import Fraction

from fareybratteli.ideals import (
    CFStream,
    IdealSpec,
    classify_admissible,
    convergence_check,
    ideal_contains,
    ideal_join,
    ideal_levels,
    is_directed,
    is_hereditary,
    levelset_to_dot,
    parents_of,
    quotient_levels,
)

F = Fraction


def show(title, levels):
    print(title)
    for n, idx in enumerate(levels.retained):
        labels = ", ".join(str(x) for x in levels.labels()[n])
        print(f"  floor {n}: indices {list(idx)}  labels {{{labels}}}")


show("Quotient of the plain ideal at 1/3 (pair, pair, then the 1/3 column):", quotient_levels(IdealSpec(F(1, 3)), 5))
show("\nPlus variant keeps the right companion, which falls onto 1/3:", quotient_levels(IdealSpec(F(1, 3), "plus"), 5))
show("\nMinus variant at 2/5 keeps the left companion:", quotient_levels(IdealSpec(F(2, 5), "minus"), 5))

print("\nIrrational targets are continued-fraction streams; here [1,2,2,1,1,...]:")
chain = quotient_levels(IdealSpec(CFStream(itertools.cycle((1, 2, 2, 1)))), 8)
show("", chain)
print("  (the second column walks through the convergents 2/3, 5/7, 7/10, 12/17)")

print("\nEvery computed quotient passes the transition automaton:")
for spec in (IdealSpec(F(1, 3)), IdealSpec(F(2, 5), "minus"), IdealSpec(CFStream(itertools.cycle((2,))))):
    report = classify_admissible(quotient_levels(spec, 20))
    print(f"  admissible={report.admissible}  tag={report.tag}")

print("\nIdeal sides are hereditary and directed, and the plain ideal is the")
print("join of its two one-sided companions (depth 12):")
plain = ideal_levels(IdealSpec(F(1, 3)), 12)
plus = ideal_levels(IdealSpec(F(1, 3), "plus"), 12)
minus = ideal_levels(IdealSpec(F(1, 3), "minus"), 12)
print(f"  hereditary={is_hereditary(plain)} directed={is_directed(plain)}")
print(f"  plus inside plain: {ideal_contains(plus, plain)}; join(plus, minus) == plain: {ideal_join([plus, minus]) == plain}")

print("\nParents of a first appearance, via the modular inverse of the numerator:")
for x in (F(2, 5), F(3, 7), F(5, 13)):
    pair = parents_of(x)
    print(f"  {x}: left {pair.left}, right {pair.right} (mediant check passes)")

print("\nIdeal convergence mirrors numeric convergence, floor by floor:")
approach = [F(1, 2) + F(1, m + 10) for m in range(1, 41)]
print(f"  theta_m -> 1/2: converged = {convergence_check(approach, F(1, 2), 10).converged}")
print(f"  theta_m == 1/3 vs target 1/2: converged = {convergence_check([F(1, 3)] * 40, F(1, 2), 10).converged}")

print("\nDOT export of the 1/3 quotient (first lines):")
print("\n".join(levelset_to_dot(quotient_levels(IdealSpec(F(1, 3)), 3)).splitlines()[:6]))
print("  ...")
