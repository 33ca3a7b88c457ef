"""
Rank-aware arithmetic of linear subspaces of R^n.

A :class:`Subspace` is held as an orthonormal basis (columns of an
``(n, r)`` array).  Every operation returns a fresh, immutable subspace;
equality and containment are decided by principal angles, never by
comparing bases entrywise.
"""

from __future__ import annotations

import contextlib
import contextvars
import enum
import math
from dataclasses import dataclass, replace
from typing import Iterable, Iterator, NamedTuple

import numpy as np
import scipy.linalg as la

__all__ = [
    "Tolerance",
    "DEFAULT_TOLERANCE",
    "get_tolerance",
    "tolerance",
    "DimensionMismatchError",
    "UndefinedAnglesError",
    "Subspace",
    "Containment",
    "PrincipalAngles",
    "orthonormalize",
    "span_columns",
    "complement",
    "sum",
    "intersect",
    "intersect_via_complements",
    "closure",
    "direct_product",
    "image_of_kernel",
    "containment_residual",
    "distance",
    "compare",
    "contains",
    "equal",
    "principal_angles",
]


class DimensionMismatchError(ValueError):
    """Raised when operands live in spaces of different dimension."""


class UndefinedAnglesError(ValueError):
    """Raised when principal angles are requested for a zero subspace."""


@dataclass(frozen=True)
class Tolerance:
    """Numerical thresholds shared by every subspace decision.

    ``rank_rel`` scales the singular-value cutoff of rank decisions (it is
    multiplied by the largest singular value and the largest matrix
    dimension); ``angle_abs`` is the absolute angle, in radians, below which
    two subspaces are considered to coincide.
    """

    rank_rel: float = 2.0**-40
    angle_abs: float = 1e-8

    def __post_init__(self):
        if not (self.rank_rel > 0 and self.angle_abs > 0):
            raise ValueError("tolerances must be positive")


DEFAULT_TOLERANCE = Tolerance()

_current_tol: contextvars.ContextVar[Tolerance] = contextvars.ContextVar(
    "linrel_tolerance", default=DEFAULT_TOLERANCE
)


def get_tolerance(tol: Tolerance | None = None) -> Tolerance:
    """Return ``tol`` if given, else the tolerance active in this context."""
    return _current_tol.get() if tol is None else tol


@contextlib.contextmanager
def tolerance(rank_rel: float | None = None, angle_abs: float | None = None) -> Iterator[Tolerance]:
    """Temporarily override the default tolerance.

    >>> with tolerance(angle_abs=1e-6):
    ...     get_tolerance().angle_abs
    1e-06
    """
    base = _current_tol.get()
    changes = {}
    if rank_rel is not None:
        changes["rank_rel"] = rank_rel
    if angle_abs is not None:
        changes["angle_abs"] = angle_abs
    new = replace(base, **changes)
    token = _current_tol.set(new)
    try:
        yield new
    finally:
        _current_tol.reset(token)


class Subspace:
    """A linear subspace of R^n with an orthonormal basis.

    The constructor trusts its input; use :func:`orthonormalize` or
    :func:`span_columns` to build a subspace from arbitrary vectors.
    """

    __slots__ = ("_basis",)

    def __init__(self, basis: np.ndarray):
        basis = np.array(basis, dtype=float, copy=True)
        if basis.ndim != 2:
            raise ValueError("basis must be a 2-D array of column vectors")
        basis.setflags(write=False)
        self._basis = basis

    @classmethod
    def zero(cls, n: int) -> "Subspace":
        return cls(np.zeros((n, 0)))

    @classmethod
    def full(cls, n: int) -> "Subspace":
        return cls(np.eye(n))

    @classmethod
    def coordinate(cls, n: int, indices: Iterable[int]) -> "Subspace":
        """Span of the standard basis vectors ``e_i`` for ``i`` in ``indices``."""
        idx = list(indices)
        return cls(np.eye(n)[:, idx])

    @property
    def basis(self) -> np.ndarray:
        """Orthonormal basis as columns, shape ``(ambient_dim, rank)``."""
        return self._basis

    @property
    def ambient_dim(self) -> int:
        return self._basis.shape[0]

    @property
    def rank(self) -> int:
        return self._basis.shape[1]

    @property
    def is_zero(self) -> bool:
        return self.rank == 0

    @property
    def is_full(self) -> bool:
        return self.rank == self.ambient_dim

    def projector(self) -> np.ndarray:
        return self._basis @ self._basis.T

    def to_dict(self) -> dict:
        return {"ambient_dim": self.ambient_dim, "basis": self._basis.T.tolist()}

    @classmethod
    def from_dict(cls, data: dict, tol: Tolerance | None = None) -> "Subspace":
        n = int(data["ambient_dim"])
        return orthonormalize(data.get("basis", []), n, tol)

    def __repr__(self):
        return f"Subspace(ambient_dim={self.ambient_dim}, rank={self.rank})"


def _check_same_ambient(*spaces: Subspace):
    dims = {s.ambient_dim for s in spaces}
    if len(dims) > 1:
        raise DimensionMismatchError(f"ambient dimensions differ: {sorted(dims)}")


def _rank_cutoff(s: np.ndarray, shape: tuple[int, int], tol: Tolerance, reference: float | None) -> float:
    scale = s[0] if s.size else 0.0
    if reference is not None:
        scale = max(scale, reference)
    return tol.rank_rel * scale * max(shape)


def span_columns(
    matrix: np.ndarray, tol: Tolerance | None = None, reference: float | None = None
) -> Subspace:
    """Orthonormal basis for the column space of ``matrix``.

    The rank is decided from the SVD: singular values at or below
    ``rank_rel * smax * max(matrix.shape)`` are dropped.  When ``reference``
    is given, ``smax`` is replaced by ``max(smax, reference)``, which keeps
    round-off in an otherwise vanishing block from being promoted to rank.
    """
    tol = get_tolerance(tol)
    matrix = np.asarray(matrix, dtype=float)
    n, count = matrix.shape
    if count == 0 or n == 0:
        return Subspace.zero(n)
    u, s, _ = la.svd(matrix, full_matrices=False, lapack_driver="gesvd")
    cutoff = _rank_cutoff(s, matrix.shape, tol, reference)
    r = int(np.count_nonzero(s > cutoff))
    return Subspace(u[:, :r])


def orthonormalize(vectors, ambient_dim: int, tol: Tolerance | None = None) -> Subspace:
    """Span of ``vectors`` (an iterable of length-``ambient_dim`` vectors)."""
    rows = [np.asarray(v, dtype=float).reshape(-1) for v in vectors]
    for v in rows:
        if v.shape[0] != ambient_dim:
            raise DimensionMismatchError(
                f"vector of length {v.shape[0]} in ambient dimension {ambient_dim}"
            )
    if not rows:
        return Subspace.zero(ambient_dim)
    return span_columns(np.column_stack(rows), tol)


def _null_space(matrix: np.ndarray, tol: Tolerance, reference: float) -> np.ndarray:
    # orthonormal basis of the kernel, as columns
    m, k = matrix.shape
    if k == 0:
        return np.zeros((0, 0))
    if m == 0:
        return np.eye(k)
    _, s, vt = la.svd(matrix, full_matrices=True, lapack_driver="gesvd")
    cutoff = _rank_cutoff(s, matrix.shape, tol, reference)
    r = int(np.count_nonzero(s > cutoff))
    return vt[r:].T


def complement(S: Subspace) -> Subspace:
    """Orthogonal complement of ``S`` in its ambient space."""
    n, r = S.ambient_dim, S.rank
    if r == 0:
        return Subspace.full(n)
    if r == n:
        return Subspace.zero(n)
    u, _, _ = la.svd(S.basis, full_matrices=True, lapack_driver="gesvd")
    return Subspace(u[:, r:])


def sum(S1: Subspace, S2: Subspace, tol: Tolerance | None = None) -> Subspace:  # noqa: A001
    """Smallest subspace containing both operands."""
    _check_same_ambient(S1, S2)
    return span_columns(np.hstack([S1.basis, S2.basis]), tol, reference=1.0)


def intersect(S1: Subspace, S2: Subspace, tol: Tolerance | None = None) -> Subspace:
    """Intersection by the null-space method.

    Solves ``B1 x = B2 y`` through the kernel of ``[B1 | -B2]`` and maps the
    solutions back through ``B1``.
    """
    _check_same_ambient(S1, S2)
    tol = get_tolerance(tol)
    n = S1.ambient_dim
    if S1.is_zero or S2.is_zero:
        return Subspace.zero(n)
    null = _null_space(np.hstack([S1.basis, -S2.basis]), tol, reference=1.0)
    return span_columns(S1.basis @ null[: S1.rank], tol, reference=1.0)


def intersect_via_complements(S1: Subspace, S2: Subspace, tol: Tolerance | None = None) -> Subspace:
    """``(S1^⊥ + S2^⊥)^⊥``; an independent route to :func:`intersect`."""
    return complement(sum(complement(S1), complement(S2), tol))


def closure(S: Subspace) -> Subspace:
    """Double orthogonal complement.  Always ``S`` again in finite dimensions."""
    return complement(complement(S))


def direct_product(S1: Subspace, S2: Subspace) -> Subspace:
    """``S1 × S2`` inside ``R^{n1} ⊕ R^{n2}`` (first factor on top)."""
    return Subspace(la.block_diag(S1.basis, S2.basis))


def image_of_kernel(
    S: Subspace,
    constraints: np.ndarray,
    output: np.ndarray,
    tol: Tolerance | None = None,
) -> Subspace:
    """Image under ``output`` of ``{x in S : constraints @ x = 0}``.

    This is the elimination step behind compositions, operatorwise sums and
    columns: build a joint subspace, impose linear equalities among its
    coordinates, and project onto the coordinates that survive.
    """
    tol = get_tolerance(tol)
    constraints = np.asarray(constraints, dtype=float)
    output = np.asarray(output, dtype=float)
    if constraints.shape[1] != S.ambient_dim or output.shape[1] != S.ambient_dim:
        raise DimensionMismatchError("constraint/output width must equal the ambient dimension")
    if S.is_zero:
        return Subspace.zero(output.shape[0])
    ref = la.norm(constraints, 2) if constraints.size else 1.0
    null = _null_space(constraints @ S.basis, tol, reference=max(ref, 1.0))
    return span_columns(output @ (S.basis @ null), tol, reference=1.0)


def containment_residual(S1: Subspace, S2: Subspace) -> float:
    """Largest angle between a unit vector of ``S1`` and the subspace ``S2``.

    Zero exactly when ``S1 ⊆ S2``; ``π/2`` when some vector of ``S1`` is
    orthogonal to ``S2``.
    """
    _check_same_ambient(S1, S2)
    if S1.is_zero:
        return 0.0
    if S2.is_zero:
        return math.pi / 2
    resid = S1.basis - S2.basis @ (S2.basis.T @ S1.basis)
    return math.asin(min(1.0, float(la.norm(resid, 2))))


def distance(S1: Subspace, S2: Subspace) -> float:
    """Symmetric gap: the largest principal angle when ranks agree, else π/2."""
    return max(containment_residual(S1, S2), containment_residual(S2, S1))


class Containment(enum.Enum):
    EQUAL = "equal"
    S1_IN_S2 = "s1_in_s2"
    S2_IN_S1 = "s2_in_s1"
    INCOMPARABLE = "incomparable"


def contains(S: Subspace, T: Subspace, tol: Tolerance | None = None) -> bool:
    """True when ``T ⊆ S`` within the angle tolerance."""
    tol = get_tolerance(tol)
    return T.rank <= S.rank and containment_residual(T, S) < tol.angle_abs


def equal(S1: Subspace, S2: Subspace, tol: Tolerance | None = None) -> bool:
    return compare(S1, S2, tol) is Containment.EQUAL


def compare(S1: Subspace, S2: Subspace, tol: Tolerance | None = None) -> Containment:
    _check_same_ambient(S1, S2)
    in12 = contains(S2, S1, tol)
    in21 = contains(S1, S2, tol)
    if in12 and in21:
        return Containment.EQUAL
    if in12:
        return Containment.S1_IN_S2
    if in21:
        return Containment.S2_IN_S1
    return Containment.INCOMPARABLE


class PrincipalAngles(NamedTuple):
    angles: np.ndarray
    cosines: np.ndarray
    min_gap: float
    cos_friedrichs: float


def principal_angles(S1: Subspace, S2: Subspace, tol: Tolerance | None = None) -> PrincipalAngles:
    """Principal angles between two nonzero subspaces, nondecreasing.

    Cosines are the singular values of the cross-Gram matrix ``B1^T B2``.
    Angles whose cosine exceeds ``1/sqrt(2)`` are taken from the sines
    (singular values of the residual of the smaller basis against the larger
    subspace) since ``arccos`` loses half the digits near zero.

    ``min_gap`` is the Friedrichs angle, the first angle left after dropping
    the ``dim(S1 ∩ S2)`` zero angles (``π/2`` when nothing is left), and
    ``cos_friedrichs`` its cosine (``0`` when nothing is left).
    """
    _check_same_ambient(S1, S2)
    if S1.is_zero or S2.is_zero:
        raise UndefinedAnglesError("principal angles need two nonzero subspaces")
    B1, B2 = S1.basis, S2.basis
    cos = np.clip(la.svdvals(B1.T @ B2), 0.0, 1.0)  # descending
    small, big = (B2, B1) if S2.rank <= S1.rank else (B1, B2)
    sines = np.clip(la.svdvals(small - big @ (big.T @ small)), 0.0, 1.0)[::-1]  # ascending
    angles = np.where(cos**2 >= 0.5, np.arcsin(sines), np.arccos(cos))
    d = intersect(S1, S2, tol).rank
    if d < angles.size:
        min_gap, cos_f = float(angles[d]), float(cos[d])
    else:
        min_gap, cos_f = math.pi / 2, 0.0
    return PrincipalAngles(angles, cos, min_gap, cos_f)
