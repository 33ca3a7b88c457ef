"""Numerical calculus of linear relations (multivalued linear operators)."""

from .subspace import (
    Containment,
    DimensionMismatchError,
    Subspace,
    Tolerance,
    UndefinedAnglesError,
    compare,
    complement,
    intersect,
    orthonormalize,
    principal_angles,
    tolerance,
)
from .relation import (
    LinearRelation,
    ShapeMismatchError,
    adjoint,
    closure,
    compose,
    cw_sum,
    from_matrix,
    from_pairs,
    intersect_relations,
    inverse,
    op_sum,
    parts,
    predicates,
    restrict,
)
from .rowcol import (
    ProductShape,
    adjoint_of_column_report,
    block_relation,
    check_conditions,
    column,
    example1_chain,
    projection_relation,
    row,
    singular_relation,
)

__version__ = "0.1.0"
