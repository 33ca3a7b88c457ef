import numpy as np
import pytest
import scipy.linalg as la
from hypothesis import given, settings
from hypothesis import strategies as st

from linrel import relation as rel
from linrel import subspace as sp
from linrel.relation import LinearRelation
from linrel.rowcol import singular_relation
from linrel.subspace import Subspace

from conftest import assert_same, random_relation, random_subspace

seeds = st.integers(min_value=0, max_value=2**32 - 1)


def _relation_from_seed(seed, max_dim=5):
    rng = np.random.default_rng(seed)
    dH, dK = (int(x) for x in rng.integers(0, max_dim + 1, size=2))
    return random_relation(rng, dH, dK)


class TestConstruction:
    def test_identity_parts(self):
        p = rel.parts(rel.from_matrix(np.eye(2)))
        assert p.dom.is_full and p.ran.is_full and p.ker.is_zero and p.mul.is_zero

    def test_zero_matrix(self):
        A = rel.from_matrix(np.zeros((2, 2)))
        assert_same(A.graph, Subspace.coordinate(4, [0, 1]))

    def test_invertible_matrix_has_trivial_kernel(self):
        M = np.array([[1.0, 2.0], [3.0, 4.0]])
        assert 1 * 4 - 2 * 3 == -2
        A = rel.from_matrix(M)
        assert A.dim == 2 and A.graph.ambient_dim == 4
        assert rel.parts(A).ker.is_zero

    def test_from_pairs(self):
        assert rel.from_pairs([((1, 0), (0, 1))]).dim == 1

    def test_pure_multivalued(self):
        p = rel.parts(rel.from_pairs([((0, 0), (0, 1))]))
        assert p.dom.is_zero
        assert_same(p.mul, Subspace.coordinate(2, [1]))

    def test_from_pairs_rank(self, rng):
        h, k = rng.standard_normal((3, 2)), rng.standard_normal((3, 2))
        A = rel.from_pairs(zip(h, k))
        assert A.dim == np.linalg.matrix_rank(np.hstack([h, k]).T)

    def test_from_pairs_length_mismatch(self):
        with pytest.raises(rel.ShapeMismatchError):
            rel.from_pairs([((1, 0), (1,)), ((1,), (1,))])

    def test_graph_shape_checked(self):
        with pytest.raises(rel.ShapeMismatchError):
            LinearRelation(2, 2, Subspace.zero(3))


class TestParts:
    def test_product_relation(self, rng):
        M, N = random_subspace(rng, 4, 2), random_subspace(rng, 3, 1)
        p = rel.parts(singular_relation(M, N))
        assert_same(p.dom, M)
        assert_same(p.ker, M)
        assert_same(p.ran, N)
        assert_same(p.mul, N)

    def test_kernel_matches_null_space(self, rng):
        M = rng.standard_normal((4, 2)) @ rng.standard_normal((2, 4))
        ker = rel.parts(rel.from_matrix(M)).ker
        assert ker.rank == 2
        assert_same(ker, Subspace(la.null_space(M)), atol=1e-8)

    def test_dimension_bookkeeping(self, rng):
        for _ in range(20):
            A = random_relation(rng, 4, 3)
            p = rel.parts(A)
            assert p.dom.rank + p.mul.rank == A.dim == p.ran.rank + p.ker.rank
            assert sp.contains(p.dom, p.ker) and sp.contains(p.ran, p.mul)


class TestInverse:
    def test_involution(self, rng):
        A = random_relation(rng, 3, 4)
        assert_same(rel.inverse(rel.inverse(A)), A)

    def test_identity(self):
        assert_same(rel.inverse(rel.identity(3)), rel.identity(3))

    def test_parts_swap(self, rng):
        A = random_relation(rng, 3, 4, g=4)
        p, q = rel.parts(A), rel.parts(rel.inverse(A))
        assert_same(q.dom, p.ran)
        assert_same(q.ran, p.dom)
        assert_same(q.ker, p.mul)
        assert_same(q.mul, p.ker)


class TestAdjoint:
    def test_zero_operator(self):
        Z = rel.from_matrix(np.zeros((2, 2)))
        assert_same(rel.adjoint(Z), Z)

    def test_transpose(self):
        M = np.array([[0.0, 1.0], [0.0, 0.0]])
        assert_same(rel.adjoint(rel.from_matrix(M)), rel.from_matrix(M.T))

    def test_product_form(self, rng):
        M, N = random_subspace(rng, 4, 2), random_subspace(rng, 3, 2)
        expected = singular_relation(sp.complement(N), sp.complement(M))
        assert_same(rel.adjoint(singular_relation(M, N)), expected)

    def test_definition(self, rng):
        # <k, k'> = <h, h'> for all (h, k) in A and (k', h') in A*
        A = random_relation(rng, 3, 4)
        As = rel.adjoint(A)
        lhs = A.bottom.T @ As.top
        rhs = A.top.T @ As.bottom
        assert np.abs(lhs - rhs).max() < 1e-12


class TestClosure:
    def test_identity(self):
        assert_same(rel.closure(rel.identity(2)), rel.identity(2))

    def test_product(self, rng):
        P = singular_relation(random_subspace(rng, 3, 1), random_subspace(rng, 2, 1))
        assert_same(rel.closure(P), P)

    def test_random(self, rng):
        A = random_relation(rng, 4, 3)
        assert rel.gap(rel.closure(A), A) < 1e-8


class TestSums:
    def test_plus_zero_operator(self, rng):
        A = random_relation(rng, 3, 2)
        assert_same(rel.op_sum(A, rel.from_matrix(np.zeros((2, 3)))), A)

    def test_matrix_sum(self, rng):
        M1, M2 = rng.standard_normal((3, 3)), rng.standard_normal((3, 3))
        assert_same(rel.op_sum(rel.from_matrix(M1), rel.from_matrix(M2)), rel.from_matrix(M1 + M2))

    def test_op_sum_domain(self, rng):
        for _ in range(10):
            A1, A2 = random_relation(rng, 4, 2), random_relation(rng, 4, 2)
            dom = rel.parts(rel.op_sum(A1, A2)).dom
            assert_same(dom, sp.intersect(rel.parts(A1).dom, rel.parts(A2).dom))

    def test_cw_plus_zero(self, rng):
        A = random_relation(rng, 2, 3)
        assert_same(rel.cw_sum(A, rel.zero_relation(2, 3)), A)

    def test_cw_sum_adjoint(self, rng):
        for _ in range(10):
            A1, A2 = random_relation(rng, 3, 3), random_relation(rng, 3, 3)
            lhs = rel.adjoint(rel.cw_sum(A1, A2))
            rhs = rel.intersect_relations(rel.adjoint(A1), rel.adjoint(A2))
            assert_same(lhs, rhs, atol=1e-8)

    def test_cw_idempotent(self, rng):
        A = rel.from_matrix(rng.standard_normal((2, 3)))
        assert_same(rel.cw_sum(A, A), A)

    def test_shape_mismatch(self):
        with pytest.raises(rel.ShapeMismatchError):
            rel.op_sum(rel.identity(2), rel.identity(3))
        with pytest.raises(rel.ShapeMismatchError):
            rel.cw_sum(rel.identity(2), rel.zero_relation(2, 3))


class TestCompose:
    def test_identity(self, rng):
        A = random_relation(rng, 3, 2)
        assert_same(rel.compose(rel.identity(2), A), A)

    def test_matrix_product(self, rng):
        M1, M2 = rng.standard_normal((3, 3)), rng.standard_normal((3, 3))
        assert_same(rel.compose(rel.from_matrix(M2), rel.from_matrix(M1)), rel.from_matrix(M2 @ M1))

    def test_adjoint_of_product(self, rng):
        for _ in range(10):
            D = random_subspace(rng, 4, 2)
            S = rel.restrict(rel.from_matrix(rng.standard_normal((3, 4))), D)
            X = rel.from_matrix(D.basis @ rng.standard_normal((2, 3)))  # ran X ⊆ dom S
            lhs = rel.adjoint(rel.compose(S, X))
            rhs = rel.compose(rel.adjoint(X), rel.adjoint(S))
            assert_same(lhs, rhs, atol=1e-8)

    def test_multivalued_middle(self):
        # X sends e1 to the line of e1 and S kills it: SX = R x {0} on that line
        X = rel.from_pairs([((1.0,), (1.0,)), ((0.0,), (1.0,))])
        S = rel.from_matrix([[0.0]])
        assert_same(rel.compose(S, X), rel.from_matrix([[0.0]]))

    def test_shape_mismatch(self):
        with pytest.raises(rel.ShapeMismatchError):
            rel.compose(rel.identity(2), rel.identity(3))


class TestIntersectRestrict:
    def test_self(self, rng):
        A = random_relation(rng, 3, 3)
        assert_same(rel.intersect_relations(A, A), A)

    def test_graphs_meet_on_kernel_of_difference(self, rng):
        M1 = rng.standard_normal((3, 4))
        M2 = M1 + rng.standard_normal((3, 1)) @ rng.standard_normal((1, 4))
        ker = Subspace(la.null_space(M1 - M2))
        expected = rel.restrict(rel.from_matrix(M1), ker)
        assert ker.rank == 3
        assert_same(rel.intersect_relations(rel.from_matrix(M1), rel.from_matrix(M2)), expected, atol=1e-8)

    def test_closures_identity(self, rng):
        A1, A2 = random_relation(rng, 3, 2), random_relation(rng, 3, 2)
        lhs = rel.intersect_relations(rel.closure(A1), rel.closure(A2))
        rhs = rel.adjoint(rel.cw_sum(rel.adjoint(A1), rel.adjoint(A2)))
        assert_same(lhs, rhs, atol=1e-8)

    def test_restrict_full(self, rng):
        A = random_relation(rng, 3, 2)
        assert_same(rel.restrict(A, Subspace.full(3)), A)

    def test_restrict_zero(self, rng):
        A = random_relation(rng, 3, 3, g=5)
        expected = singular_relation(Subspace.zero(3), rel.parts(A).mul)
        assert_same(rel.restrict(A, Subspace.zero(3)), expected)

    def test_restrict_operator_domain(self, rng):
        S = random_subspace(rng, 4, 2)
        assert_same(rel.parts(rel.restrict(rel.from_matrix(rng.standard_normal((3, 4))), S)).dom, S)

    def test_restrict_mismatch(self):
        with pytest.raises(rel.ShapeMismatchError):
            rel.restrict(rel.identity(2), Subspace.full(3))


class TestPredicates:
    def test_identity(self):
        p = rel.predicates(rel.identity(3))
        assert p.is_operator and p.is_closed and p.is_closable and p.is_isometric
        assert not p.is_product_form

    def test_product_form(self, rng):
        p = rel.predicates(singular_relation(random_subspace(rng, 3, 2), random_subspace(rng, 2, 1)))
        assert p.is_product_form and not p.is_operator

    def test_embedding_is_isometric(self):
        E = rel.from_matrix(np.vstack([np.eye(2), np.zeros((3, 2))]))
        assert rel.predicates(E).is_isometric

    def test_non_isometric(self):
        assert not rel.predicates(rel.from_matrix(2 * np.eye(2))).is_isometric


class TestSerialization:
    def test_round_trip(self, rng):
        A = random_relation(rng, 2, 3)
        d = rel.relation_to_dict(A)
        assert set(d) == {"dom_dim", "codom_dim", "graph"}
        assert_same(rel.relation_from_dict(d), A)

    def test_matrix_form(self):
        A = rel.relation_from_dict({"matrix": [[1, 2], [3, 4], [5, 6]]})
        assert A.shape == (2, 3)
        assert_same(A, rel.from_matrix(np.array([[1, 2], [3, 4], [5, 6]])))


class TestDegenerateShapes:
    def test_zero_codomain(self):
        A = rel.from_matrix(np.zeros((0, 3)))
        assert A.shape == (3, 0) and A.dim == 3
        assert rel.adjoint(A).dim == 0

    def test_zero_domain(self):
        A = rel.zero_relation(0, 2)
        assert_same(rel.adjoint(A), singular_relation(Subspace.full(2), Subspace.zero(0)))


@settings(max_examples=50, deadline=None)
@given(seeds)
def test_adjoint_involution(seed):
    A = _relation_from_seed(seed)
    assert rel.gap(rel.adjoint(rel.adjoint(A)), A) < 1e-8


@settings(max_examples=50, deadline=None)
@given(seeds)
def test_inverse_commutes_with_adjoint(seed):
    A = _relation_from_seed(seed)
    assert rel.gap(rel.adjoint(rel.inverse(A)), rel.inverse(rel.adjoint(A))) < 1e-8


@settings(max_examples=50, deadline=None)
@given(seeds)
def test_kernel_and_mul_duality(seed):
    A = _relation_from_seed(seed)
    p, ps = rel.parts(A), rel.parts(rel.adjoint(A))
    assert sp.equal(ps.ker, sp.complement(p.ran))
    assert sp.equal(ps.mul, sp.complement(p.dom))


@settings(max_examples=50, deadline=None)
@given(seeds)
def test_graph_and_adjoint_dimensions(seed):
    A = _relation_from_seed(seed)
    assert A.dim + rel.adjoint(A).dim == A.dom_dim + A.codom_dim


@settings(max_examples=50, deadline=None)
@given(seeds)
def test_cw_sum_adjoint_property(seed):
    rng = np.random.default_rng(seed)
    dH, dK = (int(x) for x in rng.integers(0, 5, size=2))
    A1, A2 = random_relation(rng, dH, dK), random_relation(rng, dH, dK)
    lhs = rel.adjoint(rel.cw_sum(A1, A2))
    assert rel.gap(lhs, rel.intersect_relations(rel.adjoint(A1), rel.adjoint(A2))) < 1e-8


@settings(max_examples=50, deadline=None)
@given(seeds)
def test_closures_of_sums_are_closed(seed):
    rng = np.random.default_rng(seed)
    A1, A2 = random_relation(rng, 3, 3), random_relation(rng, 3, 3)
    r1 = rel.closure_residual(rel.cw_sum(rel.closure(A1), rel.closure(A2)))
    r2 = rel.closure_residual(rel.cw_sum(rel.adjoint(A1), rel.adjoint(A2)))
    assert r1 < 1e-8 and r2 < 1e-8
