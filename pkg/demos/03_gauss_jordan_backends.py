"""
Exact Gauss-Jordan elimination with two pivot searches
======================================================

The reduced row-echelon form is unique, so the classical scan and the
Grover pivot search give the same answer even though Grover may pick a
different pivot row along the way.
"""
from fractions import Fraction

from qnnpr.gje import Matrix, is_consistent, pseudoinverse, rref, solve

A = Matrix.from_rows([[0, 2, 4, 1], [0, 0, 3, 3], [1, 1, 1, 1], [2, 2, 2, 2]])
classical = rref(A, "classical")
quantum = rref(A, "quantum-sim", seed=3)
print(classical.rref)
print("pivots:", classical.pivot_cols, "rank:", classical.rank)
print("same result:", classical.rref == quantum.rref)
print("grover stats:", quantum.backend_stats)

# Kronecker test and the full solution set
B = [[1, 2], [2, 4]]
print("consistent (3, 6):", is_consistent(B, [3, 6]), " (3, 7):", is_consistent(B, [3, 7]))
sol = solve(B, [3, 6])
print("particular:", sol.particular, "nullspace:", sol.nullspace_basis)

# Moore-Penrose pseudoinverse in exact arithmetic
P = pseudoinverse(Matrix.from_rows([[1, 1], [1, 1], [0, Fraction(1, 2)]]))
print("pinv:\n" + str(P))
