"""
Block relations built from four entries.

The block [[A11, A12], [A21, A22]] can be assembled as a column of rows or
as a row of columns; both give the same relation.  Its adjoint contains the
transposed block of adjoints, with equality under closedness conditions that
always hold in finite dimensions.
"""

import numpy as np

from linrel import relation as rel
from linrel import rowcol as rc
from linrel.subspace import span_columns

rng = np.random.default_rng(3)
Ms = [[rng.standard_normal((2, 3)), rng.standard_normal((2, 1))],
      [rng.standard_normal((1, 3)), rng.standard_normal((1, 1))]]
blocks = [rel.from_matrix(M) for row in Ms for M in row]

b = rc.block_relation(*blocks)
print("block of matrices equals np.block:", rel.equal(b.relation, rel.from_matrix(np.block(Ms))))
print(f"column-of-rows vs row-of-columns gap: {b.factor_residual:.2e}")

# now with genuinely multivalued entries
def random_relation(dH, dK):
    g = int(rng.integers(1, dH + dK + 1))
    return rel.LinearRelation(dH, dK, span_columns(rng.standard_normal((dH + dK, g))))

A = [random_relation(h, k) for k in (2, 1) for h in (3, 2)]
b = rc.block_relation(*A)
print("\nrandom relation blocks:", b.relation)
print(f"factorization gap: {b.factor_residual:.2e}")

star = rel.adjoint(b.relation)
transposed = rc.block_transpose_adjoint(*A)
print("adjoint contains the transposed block of adjoints:", rel.includes(star, transposed))
for i, cond in rc.block_condition_report(*A).items():
    print(f"  conditions for i={i}: C={cond.C.holds} C'={cond.Cprime.holds} C''={cond.Cdouble.holds}")
print("equality:", rel.equal(star, transposed))
