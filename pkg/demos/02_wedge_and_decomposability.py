#!/usr/bin/env python3
"""Wedge products, wedge matrices, and the decomposability test.

A vector with binom(n, k) coordinates is "decomposable" when it is the
wedge of k vectors — equivalently, when it is a column of some k-th
compound.  The test is linear algebra: the wedge matrix of z maps x to
x wedge z, and z is decomposable exactly when that map has a k-dimensional
kernel (the span of the factors themselves).
"""

import numpy as np

from compound_kit import compound, is_decomposable, wedge, wedge_matrix

np.set_printoptions(precision=4, suppress=True)

u = np.array([1.0, 0.0, 2.0, 0.0])
v = np.array([0.0, 1.0, 0.0, 3.0])
z = wedge(u, v)
print("z = u ^ v for u = (1,0,2,0), v = (0,1,0,3):")
print(f"  z = {z}   (coordinates on pairs (1,2),(1,3),(1,4),(2,3),(2,4),(3,4))")
print()

Mz = wedge_matrix(z, n=4, k=2)
print("The wedge matrix of z maps x to x ^ z; its kernel is span{u, v}:")
result = is_decomposable(z, n=4, k=2)
print(f"  is_decomposable: {result.decomposable}")
print(f"  kernel basis (columns):")
print(result.kernel)
residual_u = np.linalg.norm(Mz.data @ u)
residual_v = np.linalg.norm(Mz.data @ v)
print(f"  |M_z u| = {residual_u:.2e},  |M_z v| = {residual_v:.2e}")
print()

print("The same z appears as the first column of a compound whose source")
print("has u and v as its first two columns:")
B = np.column_stack([u, v, np.array([0.0, 0.0, 1.0, 1.0]), np.array([1.0, 1.0, 0.0, 0.0])])
print(f"  C_2(B)[:, 0] = {compound(B, 2)[:, 0]}")
print()

q = np.array([1.0, 0.0, 0.0, 0.0, 0.0, 1.0]) / np.sqrt(2.0)
print("Not every 2-vector is a wedge.  The unit vector")
print(f"  q = (e_12 + e_34)/sqrt(2) = {q}")
result_q = is_decomposable(q, n=4, k=2)
print(f"  is_decomposable: {result_q.decomposable} "
      f"(kernel dimension {result_q.kernel.shape[1]}, needs 2)")
print()
print("This failure mode is why the inverse pipeline certifies each kernel")
print("it extracts instead of assuming its input really is a compound.")
