"""
Executable registry of the identities of the row/column calculus.

Each law evaluates both sides of an identity along separate code paths on a
seeded random instance and reports the largest principal-angle deviation.
Biconditional laws compare computed condition flags with computed
equalities; they never compare against a constant.
"""

from __future__ import annotations

import enum
import json
import math
import time
from dataclasses import dataclass
from typing import Callable, Iterable, NamedTuple

import numpy as np

from . import relation as rel
from . import rowcol as rc
from . import subspace as sp
from .relation import LinearRelation
from .rowcol import ProductShape
from .subspace import Subspace, Tolerance

__all__ = [
    "LawId",
    "Kind",
    "InstanceSpec",
    "Outcome",
    "Law",
    "LawReport",
    "LawSummary",
    "SuiteResult",
    "REGISTRY",
    "generate_instance",
    "random_subspace",
    "random_relation",
    "random_operator",
    "run_law",
    "run_suite",
]

MAX_DIM = 12


class LawId(str, enum.Enum):
    PI_ADJOINT = "PI_ADJOINT"
    PI_COISOMETRY = "PI_COISOMETRY"
    ROW_THREE_WAY = "ROW_THREE_WAY"
    COL_INTERSECTION = "COL_INTERSECTION"
    ADJ_ROW_EQ_COL = "ADJ_ROW_EQ_COL"
    ADJ_COL_INCLUSION = "ADJ_COL_INCLUSION"
    ADJ_COL_EQUALITY_IFF_C = "ADJ_COL_EQUALITY_IFF_C"
    ROW_ADJ_CLOSED_IFF_CPRIME = "ROW_ADJ_CLOSED_IFF_CPRIME"
    CW_SUM_ADJOINT = "CW_SUM_ADJOINT"
    DERKACH_I = "DERKACH_I"
    DERKACH_II = "DERKACH_II"
    HASSI_CLOSED_EQUIV = "HASSI_CLOSED_EQUIV"
    MUL_ROW = "MUL_ROW"
    MUL_COL = "MUL_COL"
    KER_RAN_DUALITY = "KER_RAN_DUALITY"
    CLOSURE_ROW_I = "CLOSURE_ROW_I"
    CLOSURE_ROW_II = "CLOSURE_ROW_II"
    ROW_CLOSABLE = "ROW_CLOSABLE"
    COL_CLOSABLE = "COL_CLOSABLE"
    BLOCK_FACTOR = "BLOCK_FACTOR"
    BLOCK_ADJOINT = "BLOCK_ADJOINT"
    EXAMPLE1_CHAIN = "EXAMPLE1_CHAIN"
    ABC_IMPLIES_CPRIME = "ABC_IMPLIES_CPRIME"


class Kind(str, enum.Enum):
    OPERATOR_GRAPH = "operator_graph"
    GENERAL_RELATION = "general_relation"
    PRODUCT_FORM = "product_form"
    NESTED_DOMAIN = "nested_domain"
    BLOCK = "block"


@dataclass(frozen=True)
class InstanceSpec:
    seed: int = 0
    min_dim: int = 1
    max_dim: int = 6
    kind: Kind = Kind.GENERAL_RELATION

    def __post_init__(self):
        if not (0 <= self.min_dim <= self.max_dim <= MAX_DIM):
            raise ValueError(
                f"dimension bounds must satisfy 0 <= min_dim <= max_dim <= {MAX_DIM}, "
                f"got {self.min_dim}..{self.max_dim}"
            )
        object.__setattr__(self, "kind", Kind(self.kind))


# -- random instances -------------------------------------------------------

def random_subspace(rng: np.random.Generator, n: int, r: int | None = None) -> Subspace:
    if r is None:
        r = int(rng.integers(0, n + 1))
    return sp.span_columns(rng.standard_normal((n, r)))


def random_relation(rng: np.random.Generator, dH: int, dK: int) -> LinearRelation:
    """Span of ``g`` Gaussian vectors in ``R^{dH+dK}``, ``g`` uniform in ``0..dH+dK``."""
    g = int(rng.integers(0, dH + dK + 1))
    return rel.LinearRelation(dH, dK, sp.span_columns(rng.standard_normal((dH + dK, g))))


def random_operator(rng: np.random.Generator, dH: int, dK: int,
                    domain: Subspace | None = None) -> LinearRelation:
    """A Gaussian matrix restricted to ``domain`` (a random subspace by default)."""
    M = rng.standard_normal((dK, dH))
    if domain is None:
        domain = random_subspace(rng, dH)
    return rel.restrict(rel.from_matrix(M), domain)


def _relation_with_dom_in(rng, D: Subspace, dK: int) -> LinearRelation:
    # pairs (h, k) with h drawn from D; zero h contributes to mul
    dH = D.ambient_dim
    g = int(rng.integers(0, D.rank + dK + 1))
    tops = D.basis @ rng.standard_normal((D.rank, g))
    return rel.LinearRelation(dH, dK, sp.span_columns(np.vstack([tops, rng.standard_normal((dK, g))])))


def _relation_with_ran_in(rng, D: Subspace, dH: int) -> LinearRelation:
    return rel.inverse(_relation_with_dom_in(rng, D, dH))


def generate_instance(spec: InstanceSpec) -> dict:
    """Seeded random values for the laws of ``spec.kind``.

    Every kind draws four factor dimensions ``h1, h2, k1, k2`` in
    ``min_dim..max_dim``; the values returned depend on the kind:

    * ``operator_graph``: ``M1`` (k1 x h1), ``M2`` (k1 x h2) and their graphs
      ``F1``, ``F2``; partially defined operators ``R1, R2`` (into ``K1``).
    * ``general_relation``: row pair ``R1, R2``; column pair ``C1, C2``;
      same-shape pair ``A1, A2``; ``S`` with ``X`` (ran X ⊆ dom S) and ``Y``
      (dom Y ⊆ ran S).
    * ``product_form``: ``M, N`` and ``P = M x N``; ``C1`` with dom C1 ⊆ M.
    * ``nested_domain``: relations ``C1, C2`` and operators ``O1, O2`` with
      domains nested (first inside second).
    * ``block``: relation blocks ``A11..A22`` and matrix blocks ``M11..M22``.
    """
    rng = np.random.default_rng(spec.seed)
    lo, hi = spec.min_dim, spec.max_dim
    h1, h2, k1, k2 = (int(d) for d in rng.integers(lo, hi + 1, size=4))
    out: dict = {"dims": (h1, h2, k1, k2)}
    kind = spec.kind

    if kind is Kind.OPERATOR_GRAPH:
        out["M1"] = rng.standard_normal((k1, h1))
        out["M2"] = rng.standard_normal((k1, h2))
        out["F1"], out["F2"] = rel.from_matrix(out["M1"]), rel.from_matrix(out["M2"])
        out["R1"] = random_operator(rng, h1, k1)
        out["R2"] = random_operator(rng, h2, k1)
    elif kind is Kind.GENERAL_RELATION:
        out["R1"], out["R2"] = random_relation(rng, h1, k1), random_relation(rng, h2, k1)
        out["C1"], out["C2"] = random_relation(rng, h1, k1), random_relation(rng, h1, k2)
        out["A1"], out["A2"] = random_relation(rng, h1, k1), random_relation(rng, h1, k1)
        S = random_relation(rng, h2, k1)
        out["S"] = S
        out["X"] = _relation_with_ran_in(rng, rel.parts(S).dom, h1)
        out["Y"] = _relation_with_dom_in(rng, rel.parts(S).ran, k2)
    elif kind is Kind.PRODUCT_FORM:
        # C1 first, then M grown from dom C1, so dom C1 ⊆ M by construction
        C1 = _relation_with_dom_in(rng, random_subspace(rng, h1), k1)
        dom = rel.parts(C1).dom
        extra = rng.standard_normal((h1, int(rng.integers(0, h1 - dom.rank + 1))))
        M = sp.span_columns(np.hstack([dom.basis, extra]), reference=1.0)
        N = random_subspace(rng, k2)
        out.update(C1=C1, M=M, N=N, P=rc.singular_relation(M, N))
    elif kind is Kind.NESTED_DOMAIN:
        C2 = random_relation(rng, h1, k2)
        out["C2"] = C2
        out["C1"] = _relation_with_dom_in(rng, rel.parts(C2).dom, k1)
        D2 = random_subspace(rng, h1)
        D1 = sp.span_columns(D2.basis @ rng.standard_normal((D2.rank, int(rng.integers(0, D2.rank + 1)))),
                             reference=1.0)
        out["O2"] = random_operator(rng, h1, k2, D2)
        out["O1"] = random_operator(rng, h1, k1, D1)
    elif kind is Kind.BLOCK:
        hs, ks = (h1, h2), (k1, k2)
        for i in (1, 2):
            for j in (1, 2):
                out[f"A{i}{j}"] = random_relation(rng, hs[j - 1], ks[i - 1])
        for i in (1, 2):
            for j in (1, 2):
                out[f"M{i}{j}"] = rng.standard_normal((ks[i - 1], hs[j - 1]))
    return out


# -- laws -------------------------------------------------------------------

class Outcome(NamedTuple):
    residual: float
    flags_ok: bool = True


def _max(*xs: float) -> float:
    return float(max(xs, default=0.0))


def _sum_closed_residual(S: Subspace) -> float:
    return sp.distance(sp.closure(S), S)


def _law_pi_adjoint(inst, tol):
    h1, h2, _, _ = inst["dims"]
    shape = ProductShape(h1, h2)
    return Outcome(_max(*(
        rel.gap(rel.adjoint(rc.projection_relation(shape, i)), rc.embedding_relation(shape, i))
        for i in (1, 2)
    )))


def _law_pi_coisometry(inst, tol):
    h1, h2, _, _ = inst["dims"]
    shape = ProductShape(h1, h2)
    res, ok = [], True
    for i, d in ((1, h1), (2, h2)):
        P = rc.projection_relation(shape, i)
        E = rel.adjoint(P)
        res.append(rel.gap(rel.compose(P, E, tol), rel.identity(d)))
        # P* P is the coordinate projector, a proper part of the identity
        proj = np.zeros((shape.dim, shape.dim))
        sl = slice(0, h1) if i == 1 else slice(h1, shape.dim)
        proj[sl, sl] = np.eye(d)
        res.append(rel.gap(rel.compose(E, P, tol), rel.from_matrix(proj)))
        ok &= rel.predicates(E, tol).is_isometric
    return Outcome(_max(*res), ok)


def _law_row_three_way(inst, tol):
    R1, R2 = inst["R1"], inst["R2"]
    r = rc.row(R1, R2)
    cw, op = rc.row_via_formulas(R1, R2, tol)
    return Outcome(_max(rel.gap(r, cw), rel.gap(r, op)))


def _law_col_intersection(inst, tol):
    C1, C2 = inst["C1"], inst["C2"]
    return Outcome(rel.gap(rc.column(C1, C2, tol), rc.column_via_intersection(C1, C2, tol)))


def _law_adj_row_eq_col(inst, tol):
    R1, R2 = inst["R1"], inst["R2"]
    lhs = rel.adjoint(rc.row(R1, R2))
    rhs = rc.column(rel.adjoint(R1), rel.adjoint(R2), tol)
    return Outcome(rel.gap(lhs, rhs))


def _law_adj_col_inclusion(inst, tol):
    C1, C2 = inst["C1"], inst["C2"]
    col_star = rel.adjoint(rc.column(C1, C2, tol))
    r = rc.row(rel.adjoint(C1), rel.adjoint(C2))
    return Outcome(_max(rel.inclusion_residual(rel.closure(r), col_star),
                        rel.inclusion_residual(r, rel.closure(r))))


def _law_adj_col_equality_iff_c(inst, tol):
    C1, C2 = inst["C1"], inst["C2"]
    rep = rc.adjoint_of_column_report(C1, C2, tol)
    cond = rc.check_conditions(C1, C2, tol)
    both = cond.C.holds and cond.Cprime.holds
    ok = (rep.closure_equality.holds == cond.C.holds
          and rep.equality.holds == both
          and rep.is_row.holds == both)
    claimed = [rep.inclusion.residual]
    for f in (rep.closure_equality, rep.equality, rep.is_row, cond.C, cond.Cprime):
        if f.holds:
            claimed.append(f.residual)
    return Outcome(_max(*claimed), ok)


def _law_row_adj_closed_iff_cprime(inst, tol):
    C1, C2 = inst["C1"], inst["C2"]
    r = rc.row(rel.adjoint(C1), rel.adjoint(C2))
    closed_res = rel.closure_residual(r)
    closed = closed_res < sp.get_tolerance(tol).angle_abs
    cond = rc.check_conditions(C1, C2, tol)
    claimed = [x for x, f in ((closed_res, closed), (cond.Cprime.residual, cond.Cprime.holds)) if f]
    return Outcome(_max(*claimed), closed == cond.Cprime.holds)


def _law_cw_sum_adjoint(inst, tol):
    A1, A2 = inst["A1"], inst["A2"]
    adj1, adj2 = rel.adjoint(A1), rel.adjoint(A2)
    first = rel.gap(rel.adjoint(rel.cw_sum(A1, A2, tol)), rel.intersect_relations(adj1, adj2, tol))
    second = rel.gap(
        rel.adjoint(rel.intersect_relations(rel.closure(A1), rel.closure(A2), tol)),
        rel.closure(rel.cw_sum(adj1, adj2, tol)),
    )
    return Outcome(_max(first, second))


def _hypothesis_residual(S: LinearRelation) -> float:
    # S closed with dom S / ran S closed
    p = rel.parts(S)
    return _max(rel.closure_residual(S), _sum_closed_residual(p.dom), _sum_closed_residual(p.ran))


def _law_derkach_i(inst, tol):
    S, X = inst["S"], inst["X"]
    hyp = _max(_hypothesis_residual(S),
               sp.containment_residual(rel.parts(X).ran, rel.parts(S).dom))
    lhs = rel.adjoint(rel.compose(S, X, tol))
    rhs = rel.compose(rel.adjoint(X), rel.adjoint(S), tol)
    return Outcome(_max(hyp, rel.gap(lhs, rhs)))


def _law_derkach_ii(inst, tol):
    S, Y = inst["S"], inst["Y"]
    hyp = _max(_hypothesis_residual(S),
               sp.containment_residual(rel.parts(Y).dom, rel.parts(S).ran))
    lhs = rel.adjoint(rel.compose(Y, S, tol))
    rhs = rel.compose(rel.adjoint(S), rel.adjoint(Y), tol)
    return Outcome(_max(hyp, rel.gap(lhs, rhs)))


def _law_hassi_closed_equiv(inst, tol):
    A1, A2 = inst["A1"], inst["A2"]
    r1 = rel.closure_residual(rel.cw_sum(rel.closure(A1), rel.closure(A2), tol))
    r2 = rel.closure_residual(rel.cw_sum(rel.adjoint(A1), rel.adjoint(A2), tol))
    eps = sp.get_tolerance(tol).angle_abs
    return Outcome(_max(r1, r2), (r1 < eps) == (r2 < eps))


def _law_mul_row(inst, tol):
    R1, R2 = inst["R1"], inst["R2"]
    lhs = rel.parts(rc.row(R1, R2), tol).mul
    rhs = sp.sum(rel.parts(R1, tol).mul, rel.parts(R2, tol).mul, tol)
    return Outcome(sp.distance(lhs, rhs))


def _law_mul_col(inst, tol):
    C1, C2 = inst["C1"], inst["C2"]
    lhs = rel.parts(rc.column(C1, C2, tol), tol).mul
    rhs = sp.direct_product(rel.parts(C1, tol).mul, rel.parts(C2, tol).mul)
    return Outcome(sp.distance(lhs, rhs))


def _law_ker_ran_duality(inst, tol):
    A = inst["A1"]
    As = rel.adjoint(A)
    p, ps = rel.parts(A, tol), rel.parts(As, tol)
    dims_ok = A.dim + As.dim == A.dom_dim + A.codom_dim
    return Outcome(_max(
        sp.distance(ps.ker, sp.complement(p.ran)),
        sp.distance(ps.mul, sp.complement(p.dom)),
        rel.gap(rel.adjoint(rel.inverse(A)), rel.inverse(As)),
        rel.gap(rel.adjoint(As), A),
    ), dims_ok)


def _law_closure_row_i(inst, tol):
    R1, R2 = inst["R1"], inst["R2"]
    lhs = rel.closure(rc.row(R1, R2))
    rhs = rel.closure(rc.row(rel.closure(R1), rel.closure(R2)))
    return Outcome(rel.gap(lhs, rhs))


def _law_closure_row_ii(inst, tol):
    R1, R2 = inst["R1"], inst["R2"]
    of_closures = rc.row(rel.closure(R1), rel.closure(R2))
    closed_row = rel.closure(rc.row(R1, R2))
    eq_res = rel.gap(of_closures, closed_row)
    eq = eq_res < sp.get_tolerance(tol).angle_abs
    flag_R = _row_condition(R1, R2, tol)
    claimed = [rel.inclusion_residual(of_closures, closed_row)]
    claimed += [x for x, f in ((eq_res, eq), (flag_R.residual, flag_R.holds)) if f]
    return Outcome(_max(*claimed), eq == flag_R.holds)


def _row_condition(R1: LinearRelation, R2: LinearRelation, tol) -> rc.Flag:
    d1 = rel.parts(rel.adjoint(R1), tol).dom
    d2 = rel.parts(rel.adjoint(R2), tol).dom
    return rc.subspace_closedness(sp.sum(d1, d2, tol), tol)


def _closable(A: LinearRelation, tol) -> bool:
    return rel.predicates(A, tol).is_closable


def _law_row_closable(inst, tol):
    R1, R2 = inst["R1"], inst["R2"]
    r = rc.row(R1, R2)
    row_closable = _closable(r, tol)
    both = _closable(R1, tol) and _closable(R2, tol)
    flag_R = _row_condition(R1, R2, tol)
    ok = (row_closable <= both) and (not flag_R.holds or row_closable == both)
    claimed = [flag_R.residual] if flag_R.holds else []
    if both and flag_R.holds:
        # dense domains of the adjoints with closed sum fill the codomain
        d1 = rel.parts(rel.adjoint(R1), tol).dom
        d2 = rel.parts(rel.adjoint(R2), tol).dom
        total = sp.sum(d1, d2, tol)
        ok &= total.is_full
        claimed.append(sp.distance(total, Subspace.full(total.ambient_dim)))
    return Outcome(_max(*claimed), ok)


def _law_col_closable(inst, tol):
    O1, O2 = inst["O1"], inst["O2"]
    cond = rc.check_conditions(O1, O2, tol)
    ok = rel.predicates(O1, tol).is_operator and rel.predicates(O2, tol).is_operator
    claimed = [cond.a.residual, cond.c.residual]
    if cond.a.holds and cond.c.holds and _closable(O2, tol):
        ok &= _closable(rc.column(O1, O2, tol), tol) == _closable(O1, tol)
        mul_bar = rel.parts(rel.closure(rc.column(O1, O2, tol)), tol).mul
        expected = sp.direct_product(rel.parts(rel.closure(O1), tol).mul, Subspace.zero(O2.codom_dim))
        claimed.append(sp.distance(mul_bar, expected))
    else:
        ok = False
    return Outcome(_max(*claimed), ok)


def _blocks(inst, prefix="A"):
    return tuple(inst[f"{prefix}{i}{j}"] for i in (1, 2) for j in (1, 2))


def _law_block_factor(inst, tol):
    A = _blocks(inst)
    res = [rc.block_relation(*A, tol=tol).factor_residual]
    M = np.block([[inst["M11"], inst["M12"]], [inst["M21"], inst["M22"]]])
    ops = tuple(rel.from_matrix(inst[f"M{i}{j}"]) for i in (1, 2) for j in (1, 2))
    B = rc.block_relation(*ops, tol=tol)
    res += [B.factor_residual, rel.gap(B.relation, rel.from_matrix(M))]
    return Outcome(_max(*res))


def _law_block_adjoint(inst, tol):
    A = _blocks(inst)
    block = rc.block_relation(*A, tol=tol).relation
    adj = rel.adjoint(block)
    transposed = rc.block_transpose_adjoint(*A, tol=tol)
    conds = rc.block_condition_report(*A, tol=tol)
    eps = sp.get_tolerance(tol).angle_abs
    adj_cond = all(conds[i].C.holds and conds[i].Cprime.holds for i in (1, 2))
    cl_cond = adj_cond and all(conds[i].Cdouble.holds for i in (1, 2))
    eq_res = rel.gap(adj, transposed)
    cl_res = rel.gap(rel.closure(block), rc.block_closure(*A, tol=tol))
    ok = ((eq_res < eps) == adj_cond) and ((cl_res < eps) == cl_cond)
    claimed = [rel.inclusion_residual(transposed, adj)]
    claimed += [x for x, f in ((eq_res, adj_cond), (cl_res, cl_cond)) if f]
    # block of operators: closable iff both column blocks are closable
    ops = tuple(rel.from_matrix(inst[f"M{i}{j}"]) for i in (1, 2) for j in (1, 2))
    O = rc.block_relation(*ops, tol=tol).relation
    cols = (rc.column(ops[0], ops[2], tol), rc.column(ops[1], ops[3], tol))
    ok &= _closable(O, tol) == all(_closable(c, tol) for c in cols)
    return Outcome(_max(*claimed), ok)


def _law_example1_chain(inst, tol):
    chain = rc.example1_chain(inst["C1"], inst["M"], inst["N"], tol)
    ok = rel.predicates(inst["P"], tol).is_product_form or inst["M"].is_zero or inst["N"].is_zero
    return Outcome(chain.residual, ok)


def _law_abc_implies_cprime(inst, tol):
    C1, C2 = inst["C1"], inst["C2"]
    cond = rc.check_conditions(C1, C2, tol)
    ok = cond.a.holds  # guaranteed by the nested_domain construction
    claimed = [cond.a.residual]
    if cond.a.holds and cond.c.holds:
        ok &= cond.Cprime.holds
        claimed += [cond.c.residual, cond.Cprime.residual]
    if cond.a.holds and cond.b.holds and cond.c.holds:
        col_star = rel.adjoint(rc.column(C1, C2, tol))
        claimed.append(rel.gap(col_star, rc.row(rel.adjoint(C1), rel.adjoint(C2))))
    return Outcome(_max(*claimed), ok)


@dataclass(frozen=True)
class Law:
    id: LawId
    statement: str
    kind: Kind
    check: Callable[[dict, Tolerance | None], Outcome]


def _law(id_, statement, kind, check):
    return id_, Law(id_, statement, kind, check)


_G, _O, _P, _N, _B = (Kind.GENERAL_RELATION, Kind.OPERATOR_GRAPH, Kind.PRODUCT_FORM,
                      Kind.NESTED_DOMAIN, Kind.BLOCK)

REGISTRY: dict[LawId, Law] = dict([
    _law(LawId.PI_ADJOINT, "P1* = I ⊕ 0, P2* = 0 ⊕ I", _O, _law_pi_adjoint),
    _law(LawId.PI_COISOMETRY, "P_i P_i* = I, P_i* P_i ⊊ I, P_i*^-1 ⊆ P_i**", _O, _law_pi_coisometry),
    _law(LawId.ROW_THREE_WAY, "[R1 R2] = R1 E1^-1 ⊞ R2 E2^-1 = R1 P1 + R2 P2", _G, _law_row_three_way),
    _law(LawId.COL_INTERSECTION, "[C1; C2] = (Q1^-1 C1) ∩ (Q2^-1 C2)", _G, _law_col_intersection),
    _law(LawId.ADJ_ROW_EQ_COL, "[R1 R2]* = [R1*; R2*]", _G, _law_adj_row_eq_col),
    _law(LawId.ADJ_COL_INCLUSION, "[C1; C2]* ⊇ cl[C1* C2*] ⊇ [C1* C2*]", _G, _law_adj_col_inclusion),
    _law(LawId.ADJ_COL_EQUALITY_IFF_C,
         "[C1; C2]* = cl[C1* C2*] iff (C); [C1; C2]* = [C1* C2*] iff (C),(C') iff it is a row",
         _G, _law_adj_col_equality_iff_c),
    _law(LawId.ROW_ADJ_CLOSED_IFF_CPRIME, "[C1* C2*] closed iff dom cl C1 + dom cl C2 closed",
         _G, _law_row_adj_closed_iff_cprime),
    _law(LawId.CW_SUM_ADJOINT, "(A1 ⊞ A2)* = A1* ∩ A2*, (cl A1 ∩ cl A2)* = cl(A1* ⊞ A2*)",
         _G, _law_cw_sum_adjoint),
    _law(LawId.DERKACH_I, "S closed, dom S closed, ran X ⊆ dom S  =>  (SX)* = X*S*", _G, _law_derkach_i),
    _law(LawId.DERKACH_II, "S closed, ran S closed, dom Y ⊆ ran S  =>  (YS)* = S*Y*", _G, _law_derkach_ii),
    _law(LawId.HASSI_CLOSED_EQUIV, "cl A1 ⊞ cl A2 closed iff A1* ⊞ A2* closed", _G, _law_hassi_closed_equiv),
    _law(LawId.MUL_ROW, "mul [R1 R2] = mul R1 + mul R2", _G, _law_mul_row),
    _law(LawId.MUL_COL, "mul [C1; C2] = mul C1 x mul C2", _G, _law_mul_col),
    _law(LawId.KER_RAN_DUALITY, "ker A* = (ran A)^⊥, mul A* = (dom A)^⊥, (A^-1)* = (A*)^-1, A** = A",
         _G, _law_ker_ran_duality),
    _law(LawId.CLOSURE_ROW_I, "cl[R1 R2] = cl[cl R1  cl R2]", _G, _law_closure_row_i),
    _law(LawId.CLOSURE_ROW_II, "[cl R1  cl R2] ⊆ cl[R1 R2], equality iff dom R1* + dom R2* closed",
         _G, _law_closure_row_ii),
    _law(LawId.ROW_CLOSABLE, "operators: [R1 R2] closable iff R1, R2 closable (given (R))",
         _O, _law_row_closable),
    _law(LawId.COL_CLOSABLE, "operators, C2 closable, (a), (c): [C1; C2] closable iff C1 closable",
         _N, _law_col_closable),
    _law(LawId.BLOCK_FACTOR, "[[A11 A12]; [A21 A22]] = [[A11 A12]; [A21 A22]] as column of rows = row of columns",
         _B, _law_block_factor),
    _law(LawId.BLOCK_ADJOINT, "block* ⊇ transposed block of adjoints; equality iff (C_i),(C'_i); "
         "closure iff also (C''_i)", _B, _law_block_adjoint),
    _law(LawId.EXAMPLE1_CHAIN, "[C1; M x N]* = [C1*  N^⊥ x M^⊥] = [C1*  N^⊥ x {0}] = [C1; H x N]*",
         _P, _law_example1_chain),
    _law(LawId.ABC_IMPLIES_CPRIME, "(a), (c) => (C'); (a), (b), (c) => [C1; C2]* = [C1* C2*]",
         _N, _law_abc_implies_cprime),
])


# -- running ----------------------------------------------------------------

@dataclass(frozen=True)
class LawReport:
    law: LawId
    instance: InstanceSpec
    passed: bool
    residual: float
    elapsed: float

    @property
    def seed(self) -> int:
        return self.instance.seed

    def to_dict(self, timing: bool = True) -> dict:
        return {
            "law": self.law.value,
            "seed": self.instance.seed,
            "passed": self.passed,
            "residual": self.residual,
            "elapsed": self.elapsed if timing else None,
        }


def run_law(law: LawId | str, spec: InstanceSpec, tol: Tolerance | None = None) -> LawReport:
    """Evaluate one law on the instance described by ``spec``.

    The instance kind is dictated by the law; ``spec.kind`` is overridden.
    """
    try:
        law = LawId(law)
    except ValueError:
        raise KeyError(f"unknown law {law!r}") from None
    entry = REGISTRY[law]
    spec = InstanceSpec(spec.seed, spec.min_dim, spec.max_dim, entry.kind)
    tol = sp.get_tolerance(tol)
    start = time.perf_counter()
    with sp.tolerance(tol.rank_rel, tol.angle_abs):
        out = entry.check(generate_instance(spec), tol)
    elapsed = time.perf_counter() - start
    residual = float(out.residual)
    passed = bool(out.flags_ok and residual < tol.angle_abs)
    return LawReport(law, spec, passed, residual, elapsed)


class LawSummary(NamedTuple):
    trials: int
    failures: int
    worst_residual: float
    failing_seeds: tuple[int, ...]


@dataclass
class SuiteResult:
    reports: list[LawReport]
    summary: dict[LawId, LawSummary]

    @property
    def ok(self) -> bool:
        return all(s.failures == 0 for s in self.summary.values())

    @property
    def worst_residual(self) -> float:
        return max((s.worst_residual for s in self.summary.values()), default=0.0)

    def to_json(self, timing: bool = True) -> str:
        return json.dumps([r.to_dict(timing) for r in self.reports], indent=1)


def run_suite(template: InstanceSpec, trials: int, laws: Iterable[LawId | str] | None = None,
              tol: Tolerance | None = None) -> SuiteResult:
    """Run every registered law on ``trials`` seeds ``template.seed + t``.

    Reports are ordered by (registry order, seed).
    """
    if trials < 1:
        raise ValueError("trials must be at least 1")
    ids = list(REGISTRY) if laws is None else [LawId(x) for x in laws]
    reports, summary = [], {}
    for law in ids:
        mine = [run_law(law, InstanceSpec(template.seed + t, template.min_dim, template.max_dim), tol)
                for t in range(trials)]
        reports.extend(mine)
        failing = tuple(r.seed for r in mine if not r.passed)
        worst = max(r.residual for r in mine)
        summary[law] = LawSummary(trials, len(failing), worst if math.isfinite(worst) else math.inf, failing)
    return SuiteResult(reports, summary)
