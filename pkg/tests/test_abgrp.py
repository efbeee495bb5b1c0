import random

import pytest
from hypothesis import given, settings, strategies as st

from cubhom.abgrp import (
    DimensionError,
    FpAbGroup,
    GroupHom,
    IntMatrix,
    InvariantFactors,
    Lattice,
    determinant,
    direct_sum,
    hnf,
    image_lattice,
    invariant_factors,
    is_injective,
    is_isomorphic,
    is_surjective,
    kernel_basis,
    kernel_lattice,
    membership,
    quotient,
    snf,
    solve,
    subgroup,
    well_defined,
)
from cubhom.properties import check_snf, random_matrix, snf_contract_failure

from oracles import det, invariant_factors_by_minors, rational_rank


@st.composite
def matrices(draw, max_size=5, bound=9):
    r = draw(st.integers(0, max_size))
    c = draw(st.integers(0, max_size))
    rows = draw(st.lists(st.lists(st.integers(-bound, bound), min_size=c, max_size=c),
                         min_size=r, max_size=r))
    return IntMatrix(r, c, rows)


def test_matrix_basics():
    A = IntMatrix.from_rows([[1, 2], [3, 4]])
    assert A.shape == (2, 2) and A[1, 0] == 3
    assert (A @ IntMatrix.identity(2)) == A
    assert A.T.tolist() == [[1, 3], [2, 4]]
    assert (A - A).is_zero()
    assert A.apply([1, 1]) == (3, 7)
    assert IntMatrix.from_columns([[1, 3], [2, 4]], 2) == A
    assert A.hstack(IntMatrix.identity(2)).shape == (2, 4)
    with pytest.raises(DimensionError):
        A @ IntMatrix(3, 1)


@given(matrices())
@settings(max_examples=300, deadline=None)
def test_snf_contract(M):
    assert snf_contract_failure(M) is None


@given(matrices(max_size=4, bound=6))
@settings(max_examples=200, deadline=None)
def test_snf_diagonal_matches_minors(M):
    _, S, _ = snf(M)
    diag = [S[i, i] for i in range(min(S.shape)) if S[i, i]]
    assert diag == invariant_factors_by_minors(M.tolist(), M.cols)


@given(matrices(max_size=5))
@settings(max_examples=200, deadline=None)
def test_determinant_matches_fractions(M):
    if M.rows != M.cols:
        return
    assert determinant(M) == det(M.tolist())


def test_snf_suite_thousand_matrices():
    rep = check_snf(random.Random(3), 1000)
    assert rep.ok, rep.failures


@given(matrices())
@settings(max_examples=200, deadline=None)
def test_kernel_basis(M):
    K = kernel_basis(M)
    for v in K:
        assert not any(M.apply(v))
    assert len(K) == M.cols - rational_rank(M.tolist(), M.cols)


@given(matrices())
@settings(max_examples=200, deadline=None)
def test_hnf_transform(M):
    form = hnf(M, transform=True)
    V = IntMatrix.from_columns(form.V, M.cols)
    if M.cols:
        assert abs(determinant(V)) == 1
        H = M @ V
        assert H.columns()[:len(form.pivots)] == [tuple(c) for c in form.basis()]


@given(matrices(), st.lists(st.integers(-3, 3), min_size=5, max_size=5))
@settings(max_examples=200, deadline=None)
def test_solve_and_membership(M, x):
    x = x[:M.cols]
    b = M.apply(x) if M.rows else ()
    y = solve(M, b)
    assert y is not None and M.apply(y) == b
    L = Lattice.from_matrix(M)
    assert membership(L, b)


def test_lattice_operations():
    L = Lattice(2, [[2, 0], [0, 3]])
    assert [4, 3] in L and [1, 0] not in L
    assert L == Lattice(2, [[2, 3], [0, 3], [2, 0]])
    assert (L + Lattice(2, [[1, 0]])) == Lattice(2, [[1, 0], [0, 3]])
    assert Lattice.full(2).contains_lattice(L)
    assert L.rank == 2


def test_invariant_factors_examples():
    assert invariant_factors(FpAbGroup.from_orders([2, 3])) == InvariantFactors(0, (6,))
    assert invariant_factors(FpAbGroup.from_orders([4, 6])) == InvariantFactors(0, (2, 12))
    assert invariant_factors(FpAbGroup.from_orders([0, 4])) == InvariantFactors(1, (4,))
    assert str(invariant_factors(FpAbGroup.from_orders([0, 4]))) == "Z/4+Z"
    assert str(invariant_factors(FpAbGroup(0))) == "0"
    assert str(invariant_factors(FpAbGroup.free(2))) == "Z^2"
    assert invariant_factors(FpAbGroup.from_orders([1])).is_zero()
    with pytest.raises(ValueError):
        InvariantFactors(0, (4, 2))


def test_isomorphism_and_sums():
    assert is_isomorphic(direct_sum(FpAbGroup.cyclic(2), FpAbGroup.cyclic(3)), FpAbGroup.cyclic(6))
    assert not is_isomorphic(direct_sum(FpAbGroup.cyclic(2), FpAbGroup.cyclic(2)),
                             FpAbGroup.cyclic(4))
    Q = quotient(FpAbGroup.free(2), IntMatrix.from_columns([[2, 4]], 2))
    assert invariant_factors(Q) == InvariantFactors(1, (2,))


def test_homomorphisms():
    Z4 = FpAbGroup.cyclic(4)
    two = GroupHom(Z4, Z4, IntMatrix(1, 1, [[2]]))
    assert well_defined(two)
    assert kernel_lattice(two) == Lattice(1, [[2]])
    assert image_lattice(two) == Lattice(1, [[2]])
    assert not is_injective(two) and not is_surjective(two)
    assert two.compose(two).is_zero()
    assert GroupHom.identity(Z4).equals(GroupHom(Z4, Z4, IntMatrix(1, 1, [[5]])))
    bad = GroupHom(FpAbGroup.cyclic(2), FpAbGroup.free(1), IntMatrix(1, 1, [[1]]))
    assert not well_defined(bad)
    with pytest.raises(DimensionError):
        GroupHom(Z4, Z4, IntMatrix(2, 1))


def test_subgroup_presentation():
    G = FpAbGroup.from_orders([0, 6])
    H = subgroup(G, IntMatrix.from_columns([[0, 2], [2, 0]], 2))
    assert invariant_factors(H) == InvariantFactors(1, (3,))


@given(st.integers(0, 10_000))
@settings(max_examples=100, deadline=None)
def test_invariant_factors_of_random_presentations(seed):
    M = random_matrix(random.Random(seed), max_size=4, bound=5)
    f = invariant_factors(FpAbGroup(M.rows, M))
    nz = invariant_factors_by_minors(M.tolist(), M.cols) if M.rows and M.cols else []
    assert f.free_rank == M.rows - len(nz)
    assert list(f.torsion) == [d for d in nz if d > 1]
