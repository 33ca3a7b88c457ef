"""
Rows, columns and adjoints on small relations.

A row [R1 R2] adds the outputs of two relations that act on separate
inputs; a column [C1; C2] feeds one input to two relations and stacks the
outputs.  For matrices these are the usual block matrices.  For multivalued
relations the adjoint of a column only contains the row of the adjoints in
general, and the two coincide exactly when the row closes up.
"""

import numpy as np

from linrel import relation as rel
from linrel import rowcol as rc

rng = np.random.default_rng(0)

# matrices first: [M1 M2] and [M1; M2] are block matrices
M1, M2 = rng.standard_normal((2, 3)), rng.standard_normal((2, 3))
R = rc.row(rel.from_matrix(M1.T), rel.from_matrix(M2.T))
C = rc.column(rel.from_matrix(M1), rel.from_matrix(M2))
print("row matches hstack:", rel.equal(R, rel.from_matrix(np.hstack([M1.T, M2.T]))))
print("column matches vstack:", rel.equal(C, rel.from_matrix(np.vstack([M1, M2]))))
print("[M1; M2]* = [M1* M2*]:", rel.equal(rel.adjoint(C), R))

# a relation with a multivalued part: (0, e2) belongs to it
A = rel.from_pairs([((1.0, 0.0), (1.0, 0.0)), ((0.0, 0.0), (0.0, 1.0))])
p = rel.parts(A)
print("\nA:", A, "dim mul =", p.mul.rank, " dim dom =", p.dom.rank)
print("A* mul is the complement of dom A:", p.dom.rank + rel.parts(rel.adjoint(A)).mul.rank == 2)

# the row [A A] and the mul formula
T = rc.row(A, A)
print("mul [A A] has dim", rel.parts(T).mul.rank, "(mul A + mul A)")

# a relation on R x R that is not a row of its restrictions
D = rel.from_pairs([((1.0, 1.0), (0.0,))])
f = rc.is_row(D, rc.ProductShape(1, 1))
print("\nspan{((1,1),0)} is a row:", f.holds, f"(gap {f.residual:.3f} rad)")

rep = rc.adjoint_of_column_report(A, rel.identity(2))
print("adjoint of [A; I] contains closure of [A* I]:", rep.inclusion_holds)
print("and equals [A* I]:", rep.equality_holds)
