"""
Rows, columns and 2x2 block relations.

For ``R_i ⊆ H_i x K`` the row ``[R1 R2]`` maps ``H1 x H2`` to ``K``; for
``C_i ⊆ H x K_i`` the column ``[C1; C2]`` maps ``H`` to ``K1 x K2``.  Product
spaces always put the first factor on top.

The condition checks below are evaluated structurally (closures and
complements are actually computed) so that the flags can be compared with
the identities they are supposed to control.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from . import relation as rel
from . import subspace as sp
from .relation import LinearRelation, ShapeMismatchError
from .subspace import Subspace, Tolerance

__all__ = [
    "ProductShape",
    "Flag",
    "ConditionReport",
    "ColumnAdjointReport",
    "Example1Chain",
    "BlockRelation",
    "BlockConditions",
    "BlockShapeError",
    "PreconditionError",
    "projection_relation",
    "embedding_relation",
    "row",
    "row_via_formulas",
    "column",
    "column_via_intersection",
    "is_row",
    "adjoint_of_column_report",
    "subspace_closedness",
    "check_conditions",
    "singular_relation",
    "example1_chain",
    "block_relation",
    "block_transpose_adjoint",
    "block_closure",
    "block_condition_report",
    "block_from_dict",
]


class BlockShapeError(ShapeMismatchError):
    """Raised when the four blocks of a block relation do not fit together."""


class PreconditionError(ValueError):
    pass


class ProductShape(NamedTuple):
    d1: int
    d2: int

    @property
    def dim(self) -> int:
        return self.d1 + self.d2


class Flag(NamedTuple):
    holds: bool
    residual: float

    def __bool__(self):
        return self.holds


def _flag(residual: float, tol: Tolerance | None) -> Flag:
    return Flag(residual < sp.get_tolerance(tol).angle_abs, residual)


def _which(which) -> int:
    if which in (1, "first"):
        return 1
    if which in (2, "second"):
        return 2
    raise ValueError(f"which must be 'first' or 'second', got {which!r}")


def projection_relation(shape: ProductShape, which) -> LinearRelation:
    """The coordinate map ``(h1, h2) -> h_i`` as a relation."""
    d1, d2 = shape
    if _which(which) == 1:
        M = np.hstack([np.eye(d1), np.zeros((d1, d2))])
    else:
        M = np.hstack([np.zeros((d2, d1)), np.eye(d2)])
    return rel.from_matrix(M)


def embedding_relation(shape: ProductShape, which) -> LinearRelation:
    """``h1 -> (h1, 0)`` or ``h2 -> (0, h2)``, built directly from its matrix."""
    d1, d2 = shape
    if _which(which) == 1:
        M = np.vstack([np.eye(d1), np.zeros((d2, d1))])
    else:
        M = np.vstack([np.zeros((d1, d2)), np.eye(d2)])
    return rel.from_matrix(M)


def row(R1: LinearRelation, R2: LinearRelation) -> LinearRelation:
    """``[R1 R2] = {((h1, h2), k1 + k2) : (h_i, k_i) in R_i}``.

    Spanned by ``((h1, 0), k1)`` and ``((0, h2), k2)`` over both graph bases.
    """
    if R1.codom_dim != R2.codom_dim:
        raise ShapeMismatchError(
            f"row needs a common codomain, got R^{R1.codom_dim} and R^{R2.codom_dim}"
        )
    d1, d2, dK = R1.dom_dim, R2.dom_dim, R1.codom_dim
    left = np.vstack([R1.top, np.zeros((d2, R1.dim)), R1.bottom])
    right = np.vstack([np.zeros((d1, R2.dim)), R2.top, R2.bottom])
    return rel._relation_from_columns(d1 + d2, dK, np.hstack([left, right]))


def row_via_formulas(R1: LinearRelation, R2: LinearRelation,
                     tol: Tolerance | None = None) -> tuple[LinearRelation, LinearRelation]:
    """The row rebuilt two ways from standard operations.

    Returns ``(R1 E1^-1 ⊞ R2 E2^-1, R1 P1 + R2 P2)`` where ``P_i`` are the
    coordinate projections and ``E_i = P_i*`` the coordinate embeddings.
    """
    if R1.codom_dim != R2.codom_dim:
        raise ShapeMismatchError(
            f"row needs a common codomain, got R^{R1.codom_dim} and R^{R2.codom_dim}"
        )
    shape = ProductShape(R1.dom_dim, R2.dom_dim)
    P1, P2 = projection_relation(shape, 1), projection_relation(shape, 2)
    E1inv = rel.inverse(rel.adjoint(P1))
    E2inv = rel.inverse(rel.adjoint(P2))
    cw = rel.cw_sum(rel.compose(R1, E1inv, tol), rel.compose(R2, E2inv, tol), tol)
    op = rel.op_sum(rel.compose(R1, P1, tol), rel.compose(R2, P2, tol), tol)
    return cw, op


def column(C1: LinearRelation, C2: LinearRelation, tol: Tolerance | None = None) -> LinearRelation:
    """``[C1; C2] = {(h, (k1, k2)) : (h, k_i) in C_i}``."""
    if C1.dom_dim != C2.dom_dim:
        raise ShapeMismatchError(
            f"column needs a common domain, got R^{C1.dom_dim} and R^{C2.dom_dim}"
        )
    dH, k1, k2 = C1.dom_dim, C1.codom_dim, C2.codom_dim
    joint = sp.direct_product(C1.graph, C2.graph)  # (h, k1, h', k2)
    constraints = np.hstack([np.eye(dH), np.zeros((dH, k1)), -np.eye(dH), np.zeros((dH, k2))])
    output = np.block([
        [np.eye(dH), np.zeros((dH, k1 + dH + k2))],
        [np.zeros((k1, dH)), np.eye(k1), np.zeros((k1, dH + k2))],
        [np.zeros((k2, dH + k1 + dH)), np.eye(k2)],
    ])
    return LinearRelation(dH, k1 + k2, sp.image_of_kernel(joint, constraints, output, tol))


def column_via_intersection(C1: LinearRelation, C2: LinearRelation,
                            tol: Tolerance | None = None) -> LinearRelation:
    """``(Q1^-1 C1) ∩ (Q2^-1 C2)`` with ``Q_i`` the projections of ``K1 x K2``."""
    if C1.dom_dim != C2.dom_dim:
        raise ShapeMismatchError(
            f"column needs a common domain, got R^{C1.dom_dim} and R^{C2.dom_dim}"
        )
    shape = ProductShape(C1.codom_dim, C2.codom_dim)
    A1 = rel.compose(rel.inverse(projection_relation(shape, 1)), C1, tol)
    A2 = rel.compose(rel.inverse(projection_relation(shape, 2)), C2, tol)
    return rel.intersect_relations(A1, A2, tol)


def is_row(T: LinearRelation, shape: ProductShape, tol: Tolerance | None = None) -> Flag:
    """Whether ``T`` (defined on ``R^{d1} x R^{d2}``) is the row of its factor restrictions.

    ``T_i = T E_i`` with ``E_i`` the coordinate embedding; ``T`` is a row iff
    ``T = [T_1 T_2]``.  The inclusion ``[T_1 T_2] ⊆ T`` always holds.
    """
    if T.dom_dim != shape.dim:
        raise ShapeMismatchError(f"relation domain R^{T.dom_dim} does not split as {tuple(shape)}")
    T1 = rel.compose(T, rel.adjoint(projection_relation(shape, 1)), tol)
    T2 = rel.compose(T, rel.adjoint(projection_relation(shape, 2)), tol)
    return _flag(rel.gap(row(T1, T2), T), tol)


@dataclass(frozen=True)
class ColumnAdjointReport:
    col_star: LinearRelation
    row_of_adjoints: LinearRelation
    closure_of_row: LinearRelation
    inclusion: Flag       # closure of the row ⊆ adjoint of the column
    closure_equality: Flag  # adjoint of the column = closure of the row
    equality: Flag        # adjoint of the column = row of the adjoints
    row_closed: Flag
    is_row: Flag

    @property
    def inclusion_holds(self) -> bool:
        return self.inclusion.holds

    @property
    def equality_holds(self) -> bool:
        return self.equality.holds


def adjoint_of_column_report(C1: LinearRelation, C2: LinearRelation,
                             tol: Tolerance | None = None) -> ColumnAdjointReport:
    col_star = rel.adjoint(column(C1, C2, tol))
    r = row(rel.adjoint(C1), rel.adjoint(C2))
    rbar = rel.closure(r)
    return ColumnAdjointReport(
        col_star=col_star,
        row_of_adjoints=r,
        closure_of_row=rbar,
        inclusion=_flag(rel.inclusion_residual(rbar, col_star), tol),
        closure_equality=_flag(rel.gap(col_star, rbar), tol),
        equality=_flag(rel.gap(col_star, r), tol),
        row_closed=_flag(rel.gap(rbar, r), tol),
        is_row=is_row(col_star, ProductShape(C1.codom_dim, C2.codom_dim), tol),
    )


@dataclass(frozen=True)
class ConditionReport:
    """Named closedness conditions for a pair of relations.

    ``C``: closure of the column equals the column of closures.
    ``Cprime``: ``dom cl C1 + dom cl C2`` is closed.
    ``R``: ``dom C1* + dom C2*`` is closed (pair read as a row; ``None``
    when the codomains differ).
    ``a``: ``dom C1 ⊆ dom C2``.  ``b``: ``cl(mul C2) = mul cl C2``.
    ``c``: ``dom cl C2`` is closed.
    """

    C: Flag
    Cprime: Flag
    R: Flag | None
    a: Flag
    b: Flag
    c: Flag

    def as_dict(self) -> dict:
        out = {}
        for name in ("C", "Cprime", "R", "a", "b", "c"):
            f = getattr(self, name)
            out[name] = None if f is None else {"holds": f.holds, "residual": f.residual}
        return out


def subspace_closedness(S: Subspace, tol: Tolerance | None = None) -> Flag:
    """Closedness of a subspace, tested as ``closure(S) == S``."""
    return _flag(sp.distance(sp.closure(S), S), tol)


def check_conditions(C1: LinearRelation, C2: LinearRelation,
                     tol: Tolerance | None = None) -> ConditionReport:
    if C1.dom_dim != C2.dom_dim:
        raise ShapeMismatchError(
            f"conditions need a common domain, got R^{C1.dom_dim} and R^{C2.dom_dim}"
        )
    cl1, cl2 = rel.closure(C1), rel.closure(C2)
    p1, p2 = rel.parts(C1, tol), rel.parts(C2, tol)
    pc1, pc2 = rel.parts(cl1, tol), rel.parts(cl2, tol)

    flag_C = _flag(rel.gap(rel.closure(column(C1, C2, tol)), column(cl1, cl2, tol)), tol)
    flag_Cp = subspace_closedness(sp.sum(pc1.dom, pc2.dom, tol), tol)
    flag_R = None
    if C1.codom_dim == C2.codom_dim:
        d1 = rel.parts(rel.adjoint(C1), tol).dom
        d2 = rel.parts(rel.adjoint(C2), tol).dom
        flag_R = subspace_closedness(sp.sum(d1, d2, tol), tol)
    flag_a = _flag(sp.containment_residual(p1.dom, p2.dom), tol)
    flag_b = _flag(sp.distance(sp.closure(p2.mul), pc2.mul), tol)
    flag_c = subspace_closedness(pc2.dom, tol)
    return ConditionReport(flag_C, flag_Cp, flag_R, flag_a, flag_b, flag_c)


def singular_relation(M: Subspace, N: Subspace) -> LinearRelation:
    """The product-form relation ``M x N``."""
    return LinearRelation(M.ambient_dim, N.ambient_dim, sp.direct_product(M, N))


@dataclass(frozen=True)
class Example1Chain:
    members: tuple[LinearRelation, LinearRelation, LinearRelation, LinearRelation]
    residuals: np.ndarray  # pairwise gaps, 4x4
    all_equal: bool

    @property
    def residual(self) -> float:
        return float(self.residuals.max())


def example1_chain(C1: LinearRelation, M: Subspace, N: Subspace,
                   tol: Tolerance | None = None) -> Example1Chain:
    """Evaluate the four members of the adjoint chain for ``[C1; M x N]``.

    1. ``[C1; M x N]*``
    2. ``[C1*  N^⊥ x M^⊥]``
    3. ``[C1*  N^⊥ x {0}]``
    4. ``[C1; H x N]*``

    Requires ``dom C1 ⊆ M``.
    """
    if M.ambient_dim != C1.dom_dim:
        raise ShapeMismatchError(f"M lives in R^{M.ambient_dim}, C1 is defined on R^{C1.dom_dim}")
    dom1 = rel.parts(C1, tol).dom
    if not sp.contains(M, dom1, tol):
        raise PreconditionError(
            "dom C1 ⊆ M fails: containment residual "
            f"{sp.containment_residual(dom1, M):.3e} rad"
        )
    dH = C1.dom_dim
    C1s = rel.adjoint(C1)
    members = (
        rel.adjoint(column(C1, singular_relation(M, N), tol)),
        row(C1s, singular_relation(sp.complement(N), sp.complement(M))),
        row(C1s, singular_relation(sp.complement(N), Subspace.zero(dH))),
        rel.adjoint(column(C1, singular_relation(Subspace.full(dH), N), tol)),
    )
    res = np.zeros((4, 4))
    for i in range(4):
        for j in range(i + 1, 4):
            res[i, j] = res[j, i] = rel.gap(members[i], members[j])
    all_equal = bool(res.max() < sp.get_tolerance(tol).angle_abs)
    return Example1Chain(members, res, all_equal)


@dataclass(frozen=True)
class BlockRelation:
    relation: LinearRelation
    col_of_rows: LinearRelation
    row_of_cols: LinearRelation
    factor_residual: float


def _block_shapes(A11, A12, A21, A22):
    blocks = {(1, 1): A11, (1, 2): A12, (2, 1): A21, (2, 2): A22}
    h1, h2 = A11.dom_dim, A12.dom_dim
    k1, k2 = A11.codom_dim, A21.codom_dim
    want = {(i, j): ((h1, h2)[j - 1], (k1, k2)[i - 1]) for i, j in blocks}
    for (i, j), A in blocks.items():
        if A.shape != want[(i, j)]:
            raise BlockShapeError(
                f"block A{i}{j} has shape R^{A.dom_dim} -> R^{A.codom_dim}, "
                f"expected R^{want[(i, j)][0]} -> R^{want[(i, j)][1]}"
            )
    return h1, h2, k1, k2


def block_relation(A11: LinearRelation, A12: LinearRelation, A21: LinearRelation,
                   A22: LinearRelation, tol: Tolerance | None = None) -> BlockRelation:
    """The relation generated by the block ``[[A11, A12], [A21, A22]]``.

    ``A_ij`` maps ``H_j`` to ``K_i``.  Built both as the column of the rows
    ``[A_i1 A_i2]`` and as the row of the columns ``[A_1j; A_2j]``.
    """
    _block_shapes(A11, A12, A21, A22)
    col_of_rows = column(row(A11, A12), row(A21, A22), tol)
    row_of_cols = row(column(A11, A21, tol), column(A12, A22, tol))
    return BlockRelation(col_of_rows, col_of_rows, row_of_cols, rel.gap(col_of_rows, row_of_cols))


def block_transpose_adjoint(A11, A12, A21, A22, tol: Tolerance | None = None) -> LinearRelation:
    """The block ``[[A11*, A21*], [A12*, A22*]]``."""
    adj = rel.adjoint
    return block_relation(adj(A11), adj(A21), adj(A12), adj(A22), tol).relation


def block_closure(A11, A12, A21, A22, tol: Tolerance | None = None) -> LinearRelation:
    """The block of the closures of the entries."""
    cl = rel.closure
    return block_relation(cl(A11), cl(A12), cl(A21), cl(A22), tol).relation


class BlockConditions(NamedTuple):
    C: Flag        # closure of [A_1i; A_2i] is the column of closures
    Cprime: Flag   # dom cl A_1i + dom cl A_2i closed
    Cdouble: Flag  # dom A_i1* + dom A_i2* closed


def block_condition_report(A11, A12, A21, A22,
                           tol: Tolerance | None = None) -> dict[int, BlockConditions]:
    """Per-index conditions ``(C_i)``, ``(C'_i)``, ``(C''_i)`` for ``i = 1, 2``."""
    _block_shapes(A11, A12, A21, A22)
    A = {(1, 1): A11, (1, 2): A12, (2, 1): A21, (2, 2): A22}
    out = {}
    for i in (1, 2):
        cond = check_conditions(A[(1, i)], A[(2, i)], tol)
        d1 = rel.parts(rel.adjoint(A[(i, 1)]), tol).dom
        d2 = rel.parts(rel.adjoint(A[(i, 2)]), tol).dom
        out[i] = BlockConditions(cond.C, cond.Cprime, subspace_closedness(sp.sum(d1, d2, tol), tol))
    return out


def block_from_dict(data: dict, tol: Tolerance | None = None) -> tuple[LinearRelation, ...]:
    """Parse ``{"A11": ..., "A12": ..., "A21": ..., "A22": ...}``."""
    missing = [k for k in ("A11", "A12", "A21", "A22") if k not in data]
    if missing:
        raise ValueError(f"block file lacks {', '.join(missing)}")
    return tuple(rel.relation_from_dict(data[k], tol) for k in ("A11", "A12", "A21", "A22"))
