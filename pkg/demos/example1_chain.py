"""
Adjoint of a column whose second entry is a product M x N.

When dom C1 sits inside M, the adjoint of [C1; M x N] can be written four
ways, and the second member of the column can be replaced by H x N without
changing anything.  This script builds one seeded instance and prints the
pairwise gaps between the four relations.
"""

import sys

from linrel import laws
from linrel import relation as rel
from linrel import rowcol as rc
from linrel.subspace import Subspace

seed = int(sys.argv[1]) if len(sys.argv) > 1 else 7
inst = laws.generate_instance(laws.InstanceSpec(seed=seed, kind=laws.Kind.PRODUCT_FORM))
C1, M, N = inst["C1"], inst["M"], inst["N"]

print(f"seed {seed}: C1 maps R^{C1.dom_dim} to R^{C1.codom_dim}, N lives in R^{N.ambient_dim}")
print(f"dim dom C1 = {rel.parts(C1).dom.rank}, dim M = {M.rank}, dim N = {N.rank}")

chain = rc.example1_chain(C1, M, N)
labels = ["[C1; M x N]*", "[C1*  N^⊥ x M^⊥]", "[C1*  N^⊥ x {0}]", "[C1; H x N]*"]
for label, member in zip(labels, chain.members):
    print(f"  {label:<18} dim {member.dim}")
print("largest pairwise gap:", f"{chain.residual:.2e}", "->", "equal" if chain.all_equal else "differ")

# if dom C1 is not inside M the chain is not claimed
try:
    rc.example1_chain(rel.identity(3), Subspace.coordinate(3, [0]), N)
except rc.PreconditionError as exc:
    print("\nprecondition check:", exc)
