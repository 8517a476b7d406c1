#!/usr/bin/env python3
"""From hypothetical functionals to points outside the seed set: the three
realiser reductions, honest on the symbolic universe, plus the spot-checks
that reject invalid moduli."""

from fractions import Fraction as F

from abyss import (InvalidModulus, Q2, adversarial_cliq_modulus,
                   canonical_cliq_modulus, canonical_regulation_modulus,
                   cantor_diagonal, exhaustive_sup_oracle,
                   extract_enumeration_from_sup, realiser_from_cliq_modulus,
                   realiser_from_regulation_modulus, realiser_from_sup,
                   sqrt2_family)

A = sqrt2_family()
oracle = exhaustive_sup_oracle()

print("1. An exact supremum functional leaks the whole enumeration:")
for e in extract_enumeration_from_sup(oracle, A, 16, rounds=3):
    print("   spike %d located: value %-6s bits %s" % (e.index, e.value, e.bits))
print("   (the first row is sqrt2/2 in binary)")
print()

z = realiser_from_sup(oracle, A, 12)
print("   diagonalising the enumeration gives z =", z)
print("   exact comparisons certify z differs from members 0..15:",
      all(A.member(n) != Q2.of(z) for n in range(16)))
print()

print("2. A cliquishness modulus drives nested intervals past every member:")
z2 = realiser_from_cliq_modulus(canonical_cliq_modulus(A), A, 12)
print("   z =", z2, " outside the set:", A.index_of(Q2.of(z2)) is None)
try:
    realiser_from_cliq_modulus(adversarial_cliq_modulus(), A, 8)
except InvalidModulus as e:
    print("   an adversarial modulus fails its spot-check:", str(e)[:60])
print()

print("3. A regulation modulus gives radius data for the same construction:")
z3 = realiser_from_regulation_modulus(canonical_regulation_modulus(A), A, 12)
print("   z =", z3, " outside the set:", A.index_of(Q2.of(z3)) is None)
print()

print("Plain diagonalisation against the enumeration, for comparison:")
z4 = cantor_diagonal(lambda n: A.member(n), 10, fuel=12)
print("   z =", z4, " avoids members 0..11:",
      all(A.member(n) != Q2.of(z4) for n in range(12)))
