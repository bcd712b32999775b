#!/usr/bin/env python3
"""Rank-one compounds and their families of preimages.

When the compound has rank one it no longer pins the source down: every
matrix U Sigma T V^T with det(T) = 1 has the same k-th compound.  The
package returns that whole family and a membership test, rather than
pretending one representative is "the" answer.
"""

import numpy as np

from compound_kit import (
    RankOneFamily,
    compound,
    family_contains,
    inverse_compound,
)
from compound_kit.testkit import load_fixtures

np.set_printoptions(precision=4, suppress=True)

fx = load_fixtures()["rank-one-3x3"]
A, B, M = fx.inputs["A"], fx.inputs["B"], fx.inputs["M"]

print("Two different 3x3 matrices with the same second compound:")
print("A =")
print(A)
print("B =")
print(B)
print("C_2(A) = C_2(B) =")
print(M)
print(f"rank of the compound: {np.linalg.matrix_rank(M)}")
print()

outcome = inverse_compound(M, 3, 3, 2).outcome
assert isinstance(outcome, RankOneFamily)
print("The inverse returns a family U Sigma T V^T parametrized by det(T) = 1:")
print("U =")
print(outcome.U)
print(f"Sigma = diag{tuple(np.round(np.diag(outcome.Sigma), 4))}")
print("V =")
print(outcome.V)
print()

print("Membership checks:")
print(f"  A in family      : {family_contains(A, outcome)}")
print(f"  B in family      : {family_contains(B, outcome)}")
print(f"  2A in family     : {family_contains(2 * A, outcome)}  "
      "(doubles the compound, so no)")
print(f"  zeros in family  : {family_contains(np.zeros((3, 3)), outcome)}")
print()

rep = outcome.representative()
print("A canonical representative (T = I):")
print(rep)
print(f"  residual of C_2(representative) vs M: "
      f"{np.linalg.norm(compound(rep, 2) - M):.2e}")
print()

print("The zero compound is looser still — every matrix of rank below k")
print("maps to it:")
zero_outcome = inverse_compound(np.zeros((6, 6)), 4, 4, 2).outcome
print(f"  outcome type: {type(zero_outcome).__name__}")
print(f"  representative:")
print(zero_outcome.representative())
