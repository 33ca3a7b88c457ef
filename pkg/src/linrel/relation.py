"""
Linear relations between finite-dimensional real Hilbert spaces.

A relation from ``R^dH`` to ``R^dK`` is a subspace of ``R^{dH+dK}``.  Graph
vectors always stack the domain-side component on top of the
codomain-side component, ``(h, k)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, NamedTuple

import numpy as np
import scipy.linalg as la

from . import subspace as sp
from .subspace import DimensionMismatchError, Subspace, Tolerance

__all__ = [
    "LinearRelation",
    "RelationParts",
    "RelationPredicates",
    "ShapeMismatchError",
    "from_matrix",
    "from_pairs",
    "zero_relation",
    "identity",
    "parts",
    "inverse",
    "adjoint",
    "closure",
    "op_sum",
    "cw_sum",
    "compose",
    "intersect_relations",
    "restrict",
    "predicates",
    "is_closed",
    "closure_residual",
    "gap",
    "inclusion_residual",
    "equal",
    "includes",
    "relation_to_dict",
    "relation_from_dict",
]


class ShapeMismatchError(DimensionMismatchError):
    """Raised when relations of incompatible shapes are combined."""


@dataclass(frozen=True, eq=False)
class LinearRelation:
    dom_dim: int
    codom_dim: int
    graph: Subspace

    def __post_init__(self):
        if self.graph.ambient_dim != self.dom_dim + self.codom_dim:
            raise ShapeMismatchError(
                f"graph lives in R^{self.graph.ambient_dim}, "
                f"expected R^{self.dom_dim}+{self.codom_dim}"
            )

    @property
    def shape(self) -> tuple[int, int]:
        """``(dom_dim, codom_dim)``."""
        return self.dom_dim, self.codom_dim

    @property
    def dim(self) -> int:
        return self.graph.rank

    @property
    def top(self) -> np.ndarray:
        return self.graph.basis[: self.dom_dim]

    @property
    def bottom(self) -> np.ndarray:
        return self.graph.basis[self.dom_dim:]

    def __repr__(self):
        return f"LinearRelation(R^{self.dom_dim} -> R^{self.codom_dim}, dim={self.dim})"


class RelationParts(NamedTuple):
    dom: Subspace
    ran: Subspace
    ker: Subspace
    mul: Subspace


class RelationPredicates(NamedTuple):
    is_operator: bool
    is_closed: bool
    is_closable: bool
    is_product_form: bool
    is_isometric: bool


def _same_shape(*rels: LinearRelation):
    shapes = {r.shape for r in rels}
    if len(shapes) > 1:
        raise ShapeMismatchError(f"relation shapes differ: {sorted(shapes)}")


def from_matrix(M, tol: Tolerance | None = None) -> LinearRelation:
    """Graph ``{(h, M h)}`` of an ``m x n`` matrix, as a relation R^n -> R^m."""
    M = np.atleast_2d(np.asarray(M, dtype=float))
    m, n = M.shape
    return LinearRelation(n, m, sp.span_columns(np.vstack([np.eye(n), M]), tol))


def from_pairs(pairs: Iterable, dom_dim: int | None = None, codom_dim: int | None = None,
               tol: Tolerance | None = None) -> LinearRelation:
    """Relation spanned by ``(h, k)`` pairs.

    ``dom_dim`` and ``codom_dim`` are inferred from the first pair when not
    given; they must be given if ``pairs`` is empty.
    """
    pairs = [(np.asarray(h, dtype=float).reshape(-1), np.asarray(k, dtype=float).reshape(-1))
             for h, k in pairs]
    if dom_dim is None or codom_dim is None:
        if not pairs:
            raise ValueError("dimensions are required for an empty pair list")
        dom_dim = pairs[0][0].size if dom_dim is None else dom_dim
        codom_dim = pairs[0][1].size if codom_dim is None else codom_dim
    for h, k in pairs:
        if h.size != dom_dim or k.size != codom_dim:
            raise ShapeMismatchError(
                f"pair of lengths ({h.size}, {k.size}) in R^{dom_dim} x R^{codom_dim}"
            )
    graph = sp.orthonormalize([np.concatenate([h, k]) for h, k in pairs], dom_dim + codom_dim, tol)
    return LinearRelation(dom_dim, codom_dim, graph)


def zero_relation(dom_dim: int, codom_dim: int) -> LinearRelation:
    """The relation ``{0} x {0}``."""
    return LinearRelation(dom_dim, codom_dim, Subspace.zero(dom_dim + codom_dim))


def identity(n: int) -> LinearRelation:
    return from_matrix(np.eye(n))


def _relation_from_columns(dom_dim, codom_dim, columns, tol=None) -> LinearRelation:
    return LinearRelation(dom_dim, codom_dim, sp.span_columns(columns, tol, reference=1.0))


def parts(A: LinearRelation, tol: Tolerance | None = None) -> RelationParts:
    """Domain, range, kernel and multivalued part of ``A``."""
    dH, dK = A.shape
    dom = sp.span_columns(A.top, tol, reference=1.0)
    ran = sp.span_columns(A.bottom, tol, reference=1.0)
    top = np.hstack([np.eye(dH), np.zeros((dH, dK))])
    bot = np.hstack([np.zeros((dK, dH)), np.eye(dK)])
    ker = sp.image_of_kernel(A.graph, bot, top, tol)
    mul = sp.image_of_kernel(A.graph, top, bot, tol)
    return RelationParts(dom, ran, ker, mul)


def inverse(A: LinearRelation) -> LinearRelation:
    """``{(k, h) : (h, k) in A}``; defined whatever ``ker A`` is."""
    swapped = np.vstack([A.bottom, A.top])
    return LinearRelation(A.codom_dim, A.dom_dim, Subspace(swapped))


def adjoint(A: LinearRelation) -> LinearRelation:
    """``A* = {(k', h') : <k, k'> = <h, h'> for all (h, k) in A}``.

    Computed as the orthogonal complement of ``{(k, -h) : (h, k) in A}``.
    """
    flipped = Subspace(np.vstack([A.bottom, -A.top]))
    return LinearRelation(A.codom_dim, A.dom_dim, sp.complement(flipped))


def closure(A: LinearRelation) -> LinearRelation:
    return adjoint(adjoint(A))


def cw_sum(A1: LinearRelation, A2: LinearRelation, tol: Tolerance | None = None) -> LinearRelation:
    """Componentwise sum ``{(h1 + h2, k1 + k2)}``: the sum of the graphs."""
    _same_shape(A1, A2)
    return LinearRelation(A1.dom_dim, A1.codom_dim, sp.sum(A1.graph, A2.graph, tol))


def op_sum(A1: LinearRelation, A2: LinearRelation, tol: Tolerance | None = None) -> LinearRelation:
    """Operatorwise sum ``{(h, k1 + k2) : (h, k_i) in A_i}``."""
    _same_shape(A1, A2)
    dH, dK = A1.shape
    joint = sp.direct_product(A1.graph, A2.graph)  # (h, k1, h', k2)
    I_h, I_k = np.eye(dH), np.eye(dK)
    Z_hk, Z_kh, Z_kk = np.zeros((dH, dK)), np.zeros((dK, dH)), np.zeros((dK, dK))
    constraints = np.hstack([I_h, Z_hk, -I_h, Z_hk])
    output = np.block([[I_h, Z_hk, np.zeros((dH, dH)), Z_hk],
                       [Z_kh, I_k, Z_kh, I_k]])
    return LinearRelation(dH, dK, sp.image_of_kernel(joint, constraints, output, tol))


def compose(S: LinearRelation, X: LinearRelation, tol: Tolerance | None = None) -> LinearRelation:
    """Product ``SX = {(h, k) : (h, m) in X and (m, k) in S for some m}``.

    The joint subspace ``X x S`` in coordinates ``(h, m, m', k)`` is cut by
    ``m = m'`` and projected onto ``(h, k)``.
    """
    if X.codom_dim != S.dom_dim:
        raise ShapeMismatchError(
            f"cannot compose: X maps into R^{X.codom_dim}, S is defined on R^{S.dom_dim}"
        )
    d0, d1, d2 = X.dom_dim, X.codom_dim, S.codom_dim
    joint = sp.direct_product(X.graph, S.graph)
    constraints = np.hstack([np.zeros((d1, d0)), np.eye(d1), -np.eye(d1), np.zeros((d1, d2))])
    output = np.block([
        [np.eye(d0), np.zeros((d0, 2 * d1 + d2))],
        [np.zeros((d2, d0 + 2 * d1)), np.eye(d2)],
    ])
    return LinearRelation(d0, d2, sp.image_of_kernel(joint, constraints, output, tol))


def intersect_relations(A1: LinearRelation, A2: LinearRelation,
                        tol: Tolerance | None = None) -> LinearRelation:
    _same_shape(A1, A2)
    return LinearRelation(A1.dom_dim, A1.codom_dim, sp.intersect(A1.graph, A2.graph, tol))


def restrict(A: LinearRelation, S: Subspace, tol: Tolerance | None = None) -> LinearRelation:
    """Pairs of ``A`` whose first component lies in ``S``."""
    if S.ambient_dim != A.dom_dim:
        raise ShapeMismatchError(
            f"restriction subspace lives in R^{S.ambient_dim}, relation domain is R^{A.dom_dim}"
        )
    cylinder = sp.direct_product(S, Subspace.full(A.codom_dim))
    return LinearRelation(A.dom_dim, A.codom_dim, sp.intersect(A.graph, cylinder, tol))


def gap(A: LinearRelation, B: LinearRelation) -> float:
    """Largest principal-angle deviation between two graphs (π/2 if dims differ)."""
    _same_shape(A, B)
    return sp.distance(A.graph, B.graph)


def inclusion_residual(A: LinearRelation, B: LinearRelation) -> float:
    """Residual of ``A ⊆ B``; zero exactly when the inclusion holds."""
    _same_shape(A, B)
    return sp.containment_residual(A.graph, B.graph)


def equal(A: LinearRelation, B: LinearRelation, tol: Tolerance | None = None) -> bool:
    _same_shape(A, B)
    return sp.equal(A.graph, B.graph, tol)


def includes(A: LinearRelation, B: LinearRelation, tol: Tolerance | None = None) -> bool:
    """True when ``B ⊆ A``."""
    _same_shape(A, B)
    return sp.contains(A.graph, B.graph, tol)


def closure_residual(A: LinearRelation) -> float:
    return gap(closure(A), A)


def is_closed(A: LinearRelation, tol: Tolerance | None = None) -> bool:
    """Computed as ``closure(A) == A``; never assumed."""
    return closure_residual(A) < sp.get_tolerance(tol).angle_abs


def predicates(A: LinearRelation, tol: Tolerance | None = None) -> RelationPredicates:
    p = parts(A, tol)
    closed = is_closed(A, tol)
    closable = parts(closure(A), tol).mul.is_zero
    product_form = sp.equal(p.ker, p.dom, tol) and sp.equal(p.mul, p.ran, tol)
    isometric = includes(adjoint(A), inverse(A), tol)
    return RelationPredicates(p.mul.is_zero, closed, closable, product_form, isometric)


def relation_to_dict(A: LinearRelation) -> dict:
    return {"dom_dim": A.dom_dim, "codom_dim": A.codom_dim, "graph": A.graph.to_dict()}


def relation_from_dict(data: dict, tol: Tolerance | None = None) -> LinearRelation:
    """Parse ``{"dom_dim", "codom_dim", "graph"}`` or ``{"matrix": [[...]]}``."""
    if "matrix" in data:
        M = np.asarray(data["matrix"], dtype=float)
        if M.ndim != 2:
            raise ValueError("'matrix' must be a list of rows")
        return from_matrix(M, tol)
    dH, dK = int(data["dom_dim"]), int(data["codom_dim"])
    graph = Subspace.from_dict(data["graph"], tol)
    return LinearRelation(dH, dK, graph)
