#!/usr/bin/env python3
"""Finite subcovers from a positive gauge - and the covering instances whose
ball multisets provably never add up to the whole interval."""

from fractions import Fraction as F
from itertools import combinations

from abyss import (ClassRefusal, build_cover_psi, constant, cousin_subcover,
                   linear, sqrt2_family)

A = sqrt2_family()

print("Uniform gauge 1/8: the enumeration prefix that covers [0,1]:")
balls = cousin_subcover(constant(F(1, 8)))
print("  %d balls; first few centers: %s"
      % (len(balls), ", ".join(str(c) for c, _ in balls[:6])))
print()

print("Variable gauge x/2 + 1/16:")
balls = cousin_subcover(linear(F(1, 2), F(1, 16)))
print("  %d balls, verified gap-free by exact interval arithmetic" % len(balls))
print()

psi = build_cover_psi(A, False)
print("The cliquish covering instance is refused:")
try:
    cousin_subcover(psi)
except ClassRefusal as e:
    print("  " + str(e)[:100] + "...")
print()

print("And the refusal is not cosmetic: every ball multiset drawn from the")
print("banded copy (plus 0) has total length strictly below 1.")
til = psi.a_set
lengths = [2 * psi.eval(til.member(i)).as_rational() for i in range(12)]
lengths.append(2 * psi.eval(F(0)).as_rational())
worst = F(0)
for size in range(1, 13):
    for sel in combinations(range(13), size):
        worst = max(worst, sum(lengths[i] for i in sel))
print("  largest total over all selections of size <= 12: %s (~ %.4f) < 1"
      % (worst, float(worst)))
print()

psiu = build_cover_psi(A, True)
print("The upper-semicontinuous modification is refused too:")
try:
    cousin_subcover(psiu)
except ClassRefusal as e:
    print("  " + str(e)[:100] + "...")
