import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from schur_forge.azumaya import is_schur_azu, quaternion_algebra
from schur_forge.descent import (Cocycle, cocycle_scalar, descend_representation,
                                 effective_hilbert90, galois_translate, make_cocycle,
                                 prepare_twist, semilinear_fixed_algebra, solve_norm_equation,
                                 twist_representation)
from schur_forge.errors import (NormMismatch, NotACocycle, NotFixed, NotGaloisStable, NotSchur)
from schur_forge.exactfield import QQ, QuadField, quad_norm
from schur_forge.linalg import Matrix, rank_of
from schur_forge.matrep import are_isomorphic, free_rep, is_schur
from schur_forge.ncpoly import check_relations

from helpers import QI, random_invertible, random_matrix

L = QI
i = L.sqrt
ROT = Matrix([[0, 1], [-1, 0]], L)
SWAP = Matrix([[0, 1], [1, 0]], L)


def quaternionic_pair():
    return free_rep(L, Matrix.diag([i, -i], L), ROT)


def test_cocycle_scalar_examples():
    assert cocycle_scalar(Matrix.identity(3, L)) == 1
    assert cocycle_scalar(ROT) == -1
    assert cocycle_scalar(Matrix.diag([i, i], L)) == 1
    assert cocycle_scalar(Matrix.diag([1, i], L)) == 1
    with pytest.raises(NotACocycle):
        # S sigma(S) = diag(i, -i)
        cocycle_scalar(Matrix([[0, i], [1, 0]], L))
    with pytest.raises(NotACocycle):
        cocycle_scalar(Matrix([[1, 1], [1, 1]], L))


def test_galois_translate_examples():
    rho = free_rep(L, [[1, 2], [3, 4]])
    assert galois_translate(rho) == rho
    assert galois_translate(free_rep(L, Matrix.diag([i, -i], L))).images["t1"] == \
        Matrix.diag([-i, i], L)


def test_fixed_algebra_examples():
    plain = semilinear_fixed_algebra(Matrix.identity(2, L))
    assert plain.algebra.dim == 4
    assert all(x.is_rational() for m in plain.basis for x in m.flat())
    H = semilinear_fixed_algebra(ROT)
    assert H.algebra.same_table(quaternion_algebra(-1, -1))
    assert H.embed(H.algebra.one()) == Matrix.identity(2, L)


@pytest.mark.parametrize("d", [-1, 2, 5, -3])
def test_fixed_algebra_is_a_form(d):
    K = QuadField(d)
    rng = random.Random(d)
    for _ in range(4):
        A = random_invertible(rng, 2, K)
        # S = A sigma(A)^-1 is a cocycle with lambda = 1; scaling by sqrt(d) gives lambda = -d
        for S in (A * A.conj().inverse(), K.sqrt * (A * A.conj().inverse())):
            emb = semilinear_fixed_algebra(S)
            assert emb.algebra.dim == 4
            assert rank_of([b.flat() for b in emb.basis], K) == 4
            Si = S.inverse()
            for b in emb.basis:
                assert S * b.conj() * Si == b


def test_twist_quaternionic_pair():
    rho = quaternionic_pair()
    tw = twist_representation(rho, ROT)
    H = quaternion_algebra(-1, -1)
    assert tw.algebra.same_table(H)
    assert tw.azu_rep.images["t1"].coords == (0, 1, 0, 0)
    assert tw.azu_rep.images["t2"].coords == (0, 0, 1, 0)
    assert tw.reembed() == rho.images
    assert is_schur_azu(tw.azu_rep) == is_schur(rho) is True


def test_twist_rational_and_not_fixed():
    rho = free_rep(L, [[1, 2], [0, 3]])
    tw = twist_representation(rho, Matrix.identity(2, L))
    assert tw.reembed() == rho.images
    with pytest.raises(NotFixed, match="t1"):
        twist_representation(free_rep(L, Matrix.diag([i, -i], L)), Matrix.identity(2, L))


def test_prepare_twist_examples():
    cocycle, _ = prepare_twist(quaternionic_pair())
    assert cocycle.lam == -1
    assert (cocycle.S * ROT.inverse()).scalar_value() is not None
    rational = free_rep(QQ, [[1, 2], [3, 4]], [[0, 1], [1, 1]]).base_change(L)
    cocycle, _ = prepare_twist(rational)
    assert cocycle.S.scalar_value() is not None
    assert cocycle.lam > 0
    with pytest.raises(NotGaloisStable):
        prepare_twist(free_rep(L, Matrix.diag([i, 2 * i], L)))
    with pytest.raises(NotSchur):
        prepare_twist(free_rep(L, Matrix.diag([i, -i], L)))


def test_hilbert90_examples():
    assert effective_hilbert90(Matrix.identity(2, L)) == 2 * Matrix.identity(2, L)
    S1 = Matrix.diag([i, i], L)
    P = effective_hilbert90(S1)
    assert P == Matrix.diag([1 + i, 1 + i], L)
    assert P.conj() == S1.inverse() * P
    with pytest.raises(NotACocycle):
        effective_hilbert90(ROT)


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 10**6), st.sampled_from([-1, 2, -7]), st.integers(2, 3))
def test_hilbert90_contract(seed, d, n):
    K = QuadField(d)
    rng = random.Random(seed)
    A = random_invertible(rng, n, K)
    S1 = A * A.conj().inverse()
    P = effective_hilbert90(S1, seed)
    assert P.is_invertible()
    assert P.conj() == S1.inverse() * P


def test_descend_examples():
    rho = free_rep(L, [[1, 2], [3, 4]])
    assert descend_representation(rho, Matrix.identity(2, L), 1).images == \
        {"t1": Matrix([[1, 2], [3, 4]])}
    rho = free_rep(L, Matrix.diag([i, -i], L))
    rho0 = descend_representation(rho, SWAP, 1)
    t = rho0.images["t1"]
    assert t.field == QQ and t * t == -Matrix.identity(2)
    assert are_isomorphic(rho0.base_change(L), rho)
    with pytest.raises(NormMismatch):
        descend_representation(quaternionic_pair(), ROT, 1)
    with pytest.raises(NormMismatch):
        solve_norm_equation(-1, L)


@pytest.mark.parametrize("lam,d", [(1, -1), (2, -1), (5, -1), (Fraction(25, 4), -1), (-1, 2),
                                   (7, 2), (-4, 5), (3, -3), (1009, -1), (-11, 5)])
def test_norm_equation(lam, d):
    K = QuadField(d)
    c = solve_norm_equation(lam, K)
    assert quad_norm(c) == lam


def test_norm_equation_fallback_beyond_search_bound():
    # 10009 = 100^2 + 3^2 needs |x| = 100 > bound 10
    c = solve_norm_equation(10009, L, bound=10)
    assert quad_norm(c) == 10009


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 10**6))
def test_descend_round_trip(seed):
    rng = random.Random(seed)
    n = rng.randint(2, 3)
    rho = free_rep(QQ, random_matrix(rng, n, QQ), random_matrix(rng, n, QQ))
    if not is_schur(rho):
        return
    rhoL = rho.base_change(L).conjugate_by(random_invertible(rng, n, L))
    cocycle, _ = prepare_twist(rhoL, seed)
    c = solve_norm_equation(cocycle.lam, L)
    rho0 = descend_representation(rhoL, cocycle, c, seed)
    assert rho0.field == QQ
    assert check_relations(rho0.presentation, rho0.images)
    assert are_isomorphic(rho0.base_change(L), rhoL)
    assert are_isomorphic(rho0, rho)


def test_rescaling_cocycle_changes_lambda_by_norm():
    rho = quaternionic_pair()
    for c in (L(1, 1), L(2, -1), L(3)):
        cocycle = make_cocycle(c * ROT)
        assert cocycle.lam == -quad_norm(c)
        tw = twist_representation(rho, cocycle)
        # the generator images still give i^2 = j^2 = -1, so the table is unchanged
        assert tw.algebra.same_table(quaternion_algebra(-1, -1))
        assert tw.reembed() == rho.images


def test_cocycle_dataclass():
    c = Cocycle(ROT, Fraction(-1))
    assert c.n == 2 and c.field == L
