"""
Diagonal sequence operators and truncation-series diagnostics.

A positive bounded diagonal operator ``B = diag(b_1, b_2, ...)`` has closed
range iff ``inf b_k > 0``.  No finite section can see this directly: every
``n x n`` truncation has full range.  What the truncations do show is the
mechanism.  The reduced minimum modulus of ``[B1(n) B2(n)]``, whose range
is ``ran B1 + ran B2``, tends to zero.  So does the gap between
``R^n x {0}`` and the graph of ``B1(n)``.  These are the quantities
tabulated here, next to the per-``n`` closedness flags, which are all true
because every finite-dimensional subspace is closed.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import asdict, dataclass, field
from typing import Sequence

import numpy as np
import scipy.linalg as la

from . import relation as rel
from . import subspace as sp
from .relation import LinearRelation
from .rowcol import adjoint_of_column_report, check_conditions

__all__ = [
    "SequenceOperatorSpec",
    "TruncationDiagnostics",
    "ClosednessSeries",
    "Example2Report",
    "HARMONIC",
    "CONSTANT_ONE",
    "entries",
    "mixing_matrix",
    "truncation_matrix",
    "build_truncation",
    "inverse_truncation",
    "reduced_min_modulus",
    "classify_trend",
    "closedness_series",
    "example2_experiment",
]

GENERATORS = ("harmonic", "geometric", "constant")
MIXERS = ("none", "reversal_rotation")


@dataclass(frozen=True)
class SequenceOperatorSpec:
    """A diagonal operator given by a named entry generator.

    ``harmonic``: ``b_k = 1/k``; ``geometric``: ``b_k = r**k`` with
    ``param = r`` in ``(0, 1)``; ``constant``: ``b_k = c`` with ``param = c > 0``.
    The optional ``reversal_rotation`` mixer applies Givens rotations by
    ``theta`` between coordinates ``k`` and ``n + 1 - k`` (an orthogonal
    similarity, so positivity and singular values are kept).
    """

    generator: str = "harmonic"
    param: float | None = None
    mixer: str = "none"
    theta: float = 0.0

    def __post_init__(self):
        if self.generator not in GENERATORS:
            raise ValueError(f"unknown generator {self.generator!r}")
        if self.mixer not in MIXERS:
            raise ValueError(f"unknown mixer {self.mixer!r}")
        if self.generator == "geometric" and not (self.param is not None and 0 < self.param < 1):
            raise ValueError("geometric generator needs 0 < r < 1")
        if self.generator == "constant" and not (self.param is not None and self.param > 0):
            raise ValueError("constant generator needs c > 0")

    def mixed(self, theta: float = math.pi / 4) -> "SequenceOperatorSpec":
        return SequenceOperatorSpec(self.generator, self.param, "reversal_rotation", theta)


HARMONIC = SequenceOperatorSpec("harmonic")
CONSTANT_ONE = SequenceOperatorSpec("constant", 1.0)


def entries(spec: SequenceOperatorSpec, n: int) -> np.ndarray:
    k = np.arange(1, n + 1, dtype=float)
    if spec.generator == "harmonic":
        return 1.0 / k
    if spec.generator == "geometric":
        return spec.param**k
    return np.full(n, float(spec.param))


def mixing_matrix(spec: SequenceOperatorSpec, n: int) -> np.ndarray:
    G = np.eye(n)
    if spec.mixer == "none":
        return G
    c, s = math.cos(spec.theta), math.sin(spec.theta)
    for k in range(n // 2):
        j = n - 1 - k
        rot = np.eye(n)
        rot[k, k], rot[k, j], rot[j, k], rot[j, j] = c, -s, s, c
        G = rot @ G
    return G


def truncation_matrix(spec: SequenceOperatorSpec, n: int) -> np.ndarray:
    """The ``n x n`` section ``G diag(b_1..b_n) G^T``."""
    if n < 1:
        raise ValueError("truncation size must be at least 1")
    G = mixing_matrix(spec, n)
    return G @ np.diag(entries(spec, n)) @ G.T


def build_truncation(spec: SequenceOperatorSpec, n: int) -> LinearRelation:
    """Graph of the ``n x n`` truncation ``B(n)``."""
    return rel.from_matrix(truncation_matrix(spec, n))


def inverse_truncation(spec: SequenceOperatorSpec, n: int) -> LinearRelation:
    """``C = B(n)^-1`` taken in the sense of relations."""
    return rel.inverse(build_truncation(spec, n))


def reduced_min_modulus(A, tol: sp.Tolerance | None = None) -> float:
    """Smallest singular value above the rank cutoff; 0 for the zero map.

    ``A`` is a matrix or a :class:`LinearRelation`.  For a relation the
    operator part (values projected off ``mul A``) restricted to ``dom A``
    is used.
    """
    tol = sp.get_tolerance(tol)
    if isinstance(A, LinearRelation):
        p = rel.parts(A, tol)
        if p.dom.is_zero:
            return 0.0
        Pm = p.mul.projector() if not p.mul.is_zero else np.zeros((A.codom_dim, A.codom_dim))
        values = A.bottom - Pm @ A.bottom
        # the operator part maps A.top[:, j] to values[:, j]
        T = values @ la.pinv(A.top)
        matrix = T @ p.dom.basis
    else:
        matrix = np.atleast_2d(np.asarray(A, dtype=float))
    if matrix.size == 0:
        return 0.0
    s = la.svdvals(matrix)
    cutoff = tol.rank_rel * s[0] * max(matrix.shape)
    above = s[s > cutoff]
    return float(above[-1]) if above.size else 0.0


@dataclass
class TruncationDiagnostics:
    n: int
    gamma: float
    cos_friedrichs: float
    flag_C: bool | None = None
    flag_Cprime: bool | None = None


@dataclass
class ClosednessSeries:
    target: str
    rows: list[TruncationDiagnostics]
    trend: str

    def series(self) -> np.ndarray:
        if self.target == "range_sum":
            return np.array([r.gamma for r in self.rows])
        return np.array([1.0 - r.cos_friedrichs for r in self.rows])


def classify_trend(values: Sequence[float], ratio: float = 0.1, slack: float = 1e-12) -> str:
    """``decaying_to_zero`` when the series is nonincreasing (up to ``slack``)
    and ends below ``ratio`` times its first value; else ``bounded_below``."""
    v = np.asarray(values, dtype=float)
    monotone = bool(np.all(np.diff(v) <= slack))
    if monotone and v[-1] < ratio * v[0]:
        return "decaying_to_zero"
    return "bounded_below"


def _check_n_list(n_list):
    n_list = [int(n) for n in n_list]
    if not n_list:
        raise ValueError("n_list must be nonempty")
    if any(b <= a for a, b in zip(n_list, n_list[1:])):
        raise ValueError("n_list must be strictly increasing")
    if n_list[0] < 1:
        raise ValueError("truncation sizes must be at least 1")
    return n_list


def _graph_cos_friedrichs(B: np.ndarray) -> float:
    n = B.shape[0]
    axis = sp.Subspace(np.vstack([np.eye(n), np.zeros((n, n))]))
    return sp.principal_angles(axis, rel.from_matrix(B).graph).cos_friedrichs


def closedness_series(
    specs: tuple[SequenceOperatorSpec, SequenceOperatorSpec],
    target: str,
    n_list: Sequence[int],
    *,
    conditions: bool = True,
    ratio: float = 0.1,
    slack: float = 1e-12,
) -> ClosednessSeries:
    """Diagnostics of ``(B1(n), B2(n))`` along ``n_list``.

    Every row carries ``gamma``, the reduced minimum modulus of
    ``[B1(n) B2(n)]``, and ``cos_friedrichs`` between ``R^n x {0}`` and the
    graph of ``B1(n)``.  ``target`` picks which series is classified:
    ``range_sum`` uses ``gamma``, ``graph_angle`` uses ``1 - cos_friedrichs``.
    With ``conditions`` the flags (C) and (C') are evaluated for
    ``C_i = B_i(n)^-1``.
    """
    if target not in ("range_sum", "graph_angle"):
        raise ValueError(f"unknown target {target!r}")
    n_list = _check_n_list(n_list)
    rows = []
    for n in n_list:
        B1, B2 = truncation_matrix(specs[0], n), truncation_matrix(specs[1], n)
        diag = TruncationDiagnostics(
            n=n,
            gamma=reduced_min_modulus(np.hstack([B1, B2])),
            cos_friedrichs=_graph_cos_friedrichs(B1),
        )
        if conditions:
            cond = check_conditions(rel.inverse(rel.from_matrix(B1)), rel.inverse(rel.from_matrix(B2)))
            diag.flag_C, diag.flag_Cprime = cond.C.holds, cond.Cprime.holds
        rows.append(diag)
    out = ClosednessSeries(target, rows, "")
    out.trend = classify_trend(out.series(), ratio, slack)
    return out


REPORT_HEADER = (
    "Truncations of B_i = diag(b_k) with C_i = B_i^-1. At every finite n all\n"
    "subspaces are closed, so (C) and (C') hold; the vanishing trend of gamma,\n"
    "the reduced minimum modulus of [B1 B2], is the finite-size trace of the\n"
    "non-closed sum ran B1 + ran B2 in the limit. The limiting hypothesis\n"
    "ran B1 ∩ ran B2 = {0} has no finite-dimensional counterpart and is not modelled."
)

CSV_FIELDS = ("n", "gamma", "cos_friedrichs", "flag_C", "flag_Cprime")


@dataclass
class Example2Report:
    specs: tuple[SequenceOperatorSpec, SequenceOperatorSpec]
    rows: list[TruncationDiagnostics]
    trend: str
    inclusion: list[bool] = field(default_factory=list)
    equality: list[bool] = field(default_factory=list)
    header: str = REPORT_HEADER

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(CSV_FIELDS)
        for r in self.rows:
            w.writerow([r.n, repr(r.gamma), repr(r.cos_friedrichs), r.flag_C, r.flag_Cprime])
        return buf.getvalue()

    def to_json(self) -> str:
        payload = {
            "header": self.header,
            "specs": [asdict(s) for s in self.specs],
            "trend": self.trend,
            "rows": [asdict(r) for r in self.rows],
            "adjoint_inclusion": self.inclusion,
            "adjoint_equality": self.equality,
        }
        return json.dumps(payload, indent=2)

    def to_text(self) -> str:
        lines = ["# " + line for line in self.header.splitlines()]
        lines.append(f"{'n':>5} {'gamma':>14} {'cos_friedrichs':>16} {'flag_C':>7} {'flag_Cprime':>12}")
        for r in self.rows:
            lines.append(
                f"{r.n:>5} {r.gamma:>14.8f} {r.cos_friedrichs:>16.10f} "
                f"{str(r.flag_C):>7} {str(r.flag_Cprime):>12}"
            )
        lines.append(f"trend: {self.trend}")
        return "\n".join(lines) + "\n"


def example2_experiment(
    n_list: Sequence[int] = (4, 8, 16, 32, 64),
    specs: tuple[SequenceOperatorSpec, SequenceOperatorSpec] | None = None,
) -> Example2Report:
    """Column of two inverse truncations, checked at each ``n``.

    The default pair is the harmonic operator and its reversal-rotated copy;
    pass ``(CONSTANT_ONE, CONSTANT_ONE)`` for the control run.
    """
    if specs is None:
        specs = (HARMONIC, HARMONIC.mixed())
    series = closedness_series(specs, "range_sum", n_list)
    inclusion, equality = [], []
    for d in series.rows:
        C1, C2 = inverse_truncation(specs[0], d.n), inverse_truncation(specs[1], d.n)
        rep = adjoint_of_column_report(C1, C2)
        inclusion.append(rep.inclusion_holds)
        equality.append(rep.equality_holds)
    return Example2Report(specs, series.rows, series.trend, inclusion, equality)
