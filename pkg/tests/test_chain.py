import random

import pytest
from hypothesis import given, settings, strategies as st

from cubhom.abgrp import FpAbGroup, IntMatrix, InvariantFactors
from cubhom.chain import (
    ChainComplexFP,
    ChainError,
    ChainMap,
    ExactnessError,
    check_levelwise_exact,
    face_sign,
    free_complex,
    homology_at,
    identity_map,
    induced_on_homology,
    plus_complex,
    snake_sequence,
    unimodular_inverse,
)

from oracles import free_homology


def M(rows, cols=None):
    return IntMatrix.from_rows(rows, cols)


def test_face_sign():
    assert face_sign(1, 0) == -1 and face_sign(1, 1) == 1
    assert face_sign(2, 0) == 1 and face_sign(2, 1) == -1


def test_circle_and_multiplication():
    C = free_complex([1, 1, 0], [M([[0]]), IntMatrix(1, 0)])
    assert C.homology(0).group == InvariantFactors(1)
    assert C.homology(1).group == InvariantFactors(1)
    D = free_complex([1, 1, 0], [M([[2]]), IntMatrix(1, 0)])
    assert D.homology(0).group == InvariantFactors(0, (2,))
    assert D.homology(1).group.is_zero()


def test_d_squared_checked():
    with pytest.raises(ChainError):
        free_complex([1, 1, 1], [M([[1]]), M([[1]])])


def test_homology_needs_next_term():
    C = free_complex([1], [])
    with pytest.raises(ChainError):
        homology_at(C, 0)


def test_torsion_terms():
    # Z/4 --2--> Z/4: both groups carry relations
    Z4 = FpAbGroup.cyclic(4)
    C = ChainComplexFP([Z4, Z4, FpAbGroup(0)], [M([[2]]), IntMatrix(1, 0)])
    assert C.homology(0).group == InvariantFactors(0, (2,))
    assert C.homology(1).group == InvariantFactors(0, (2,))


def random_free_complex(rng):
    """d2 is built as a product so d1 d2 = 0 by construction."""
    r0, r1, r2 = rng.randint(0, 3), rng.randint(0, 4), rng.randint(0, 3)
    A = [[rng.randint(-3, 3) for _ in range(r1)] for _ in range(r0)]
    # kernel vectors of A generate the image of d2
    from cubhom.abgrp import kernel_basis
    K = kernel_basis(IntMatrix(r0, r1, A)) if r1 else []
    cols = []
    for _ in range(r2):
        v = [0] * r1
        for k in K:
            c = rng.randint(-2, 2)
            v = [a + c * b for a, b in zip(v, k)]
        cols.append(v)
    d2 = IntMatrix.from_columns(cols, r1)
    return [r0, r1, r2, 0], [None, A, d2.tolist(), []], free_complex(
        [r0, r1, r2, 0], [IntMatrix(r0, r1, A), d2, IntMatrix(r2, 0)])


@given(st.integers(0, 10_000))
@settings(max_examples=150, deadline=None)
def test_free_homology_against_oracle(seed):
    ranks, mats, C = random_free_complex(random.Random(seed))
    for n in range(3):
        free, tors = free_homology(mats, ranks, n)
        g = C.homology(n).group
        assert (g.free_rank, list(g.torsion)) == (free, tors)


def test_witnesses_are_cycles_with_right_order():
    C = free_complex([2, 2, 0], [M([[2, 0], [0, 0]]), IntMatrix(2, 0)])
    H = C.homology(0)
    assert H.orders == (2, 0)
    assert H.coordinates((1, 0)) == (1, 0)
    assert H.coordinates((2, 0)) == (0, 0)
    assert H.is_zero_class((4, 0))
    assert not H.is_zero_class((0, 1))


def test_induced_maps():
    C = free_complex([1, 1, 0], [M([[0]]), IntMatrix(1, 0)])
    ident = induced_on_homology(identity_map(C), 1)
    assert ident.matrix == IntMatrix.identity(1)
    twice = ChainMap(C, C, [M([[2]]), M([[2]]), IntMatrix(0, 0)])
    assert induced_on_homology(twice, 0).matrix == M([[2]])
    with pytest.raises(ChainError):
        ChainMap(C, free_complex([1, 1, 0], [M([[1]]), IntMatrix(1, 0)]),
                 [M([[1]]), M([[2]]), IntMatrix(0, 0)])


def test_unimodular_inverse():
    U = M([[2, 1], [1, 1]])
    assert U @ unimodular_inverse(U) == IntMatrix.identity(2)
    with pytest.raises(ChainError):
        unimodular_inverse(M([[2, 0], [0, 1]]))


def concentrated(G, cap=3):
    terms = [G] + [FpAbGroup(0)] * cap
    diffs = [IntMatrix(0 if n > 1 else G.gens, 0) for n in range(1, cap + 1)]
    return ChainComplexFP(terms, diffs)


def test_snake_on_multiplication_by_two():
    # 0 -> Z --2--> Z -> Z/2 -> 0 in degree 0
    A, B = concentrated(FpAbGroup.free(1)), concentrated(FpAbGroup.free(1))
    C = concentrated(FpAbGroup.cyclic(2))
    zero = [IntMatrix(0, 0)] * 3
    incl = ChainMap(A, B, [M([[2]])] + zero)
    proj = ChainMap(B, C, [M([[1]])] + zero)
    seq = snake_sequence(incl, proj, 1)
    assert seq.is_exact()
    assert seq.H_C[0].group == InvariantFactors(0, (2,))


def test_snake_connecting_map_for_interval():
    # A = two points, B = interval, C = B/A: H1(C) = Z maps onto the kernel of H0(A) -> H0(B)
    A = ChainComplexFP([FpAbGroup.free(2), FpAbGroup(0), FpAbGroup(0), FpAbGroup(0)],
                       [IntMatrix(2, 0), IntMatrix(0, 0), IntMatrix(0, 0)])
    B = ChainComplexFP([FpAbGroup.free(2), FpAbGroup.free(1), FpAbGroup(0), FpAbGroup(0)],
                       [M([[1], [-1]]), IntMatrix(1, 0), IntMatrix(0, 0)])
    C = ChainComplexFP([FpAbGroup(0), FpAbGroup.free(1), FpAbGroup(0), FpAbGroup(0)],
                       [IntMatrix(0, 1), IntMatrix(1, 0), IntMatrix(0, 0)])
    incl = ChainMap(A, B, [IntMatrix.identity(2), IntMatrix(1, 0), IntMatrix(0, 0), IntMatrix(0, 0)])
    proj = ChainMap(B, C, [IntMatrix(0, 2), IntMatrix.identity(1), IntMatrix(0, 0), IntMatrix(0, 0)])
    seq = snake_sequence(incl, proj, 1)
    assert seq.is_exact()
    assert seq.H_C[1].group == InvariantFactors(1)
    delta = seq.connecting[1]
    assert not delta.is_zero()


def test_levelwise_exactness_failure():
    A = concentrated(FpAbGroup.free(1))
    zero = [IntMatrix(0, 0)] * 3
    incl = ChainMap(A, A, [M([[0]])] + zero)
    proj = ChainMap(A, A, [M([[1]])] + zero)
    with pytest.raises(ExactnessError):
        check_levelwise_exact(incl, proj, 3)


@pytest.mark.parametrize("n", range(4))
def test_plus_complex_small(n):
    C = plus_complex(n)
    assert C.homology(0).group == InvariantFactors(1)
    for q in range(1, n + 1):
        assert C.homology(q).group.is_zero()
