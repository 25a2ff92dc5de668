import random
from fractions import Fraction
from itertools import product

import pytest

from schur_forge.azumaya import quaternion_algebra, reduced_norm
from schur_forge.brauer import (INF, QuaternionClass, geometric_origin_report, hilbert_symbol,
                                is_split, quadratic_origin_demo, ramified_places, relevant_places)
from schur_forge.errors import (DegenerateDiscriminant, FactorizationTooLarge, InvalidPrime,
                                NotSchur, ZeroInput)
from schur_forge.exactfield import QQ
from schur_forge.linalg import Matrix
from schur_forge.matrep import are_isomorphic, free_rep
from schur_forge.ncpoly import check_relations

from helpers import QI, local_isotropic, random_invertible, random_matrix, squarefree_ints, \
    zero_divisor_search

i = QI.sqrt
SMALL = squarefree_ints(10)


def test_symbol_examples():
    assert hilbert_symbol(-1, -1, INF) == -1
    assert hilbert_symbol(-1, -1, 2) == -1
    assert hilbert_symbol(2, 3, 3) == -1
    assert hilbert_symbol("-1", "-1", "inf") == -1


def test_symbol_errors():
    with pytest.raises(ZeroInput):
        hilbert_symbol(0, 1, 3)
    with pytest.raises(InvalidPrime):
        hilbert_symbol(1, 1, 9)


def test_ramified_examples():
    assert ramified_places(-1, -1) == [2, INF]
    for b in (-7, 3, Fraction(5, 2)):
        assert ramified_places(1, b) == []
    # fixed by the local isotropy oracle below
    assert ramified_places(-1, 3) == [2, 3]
    assert is_split(1, 1) and not is_split(-1, -1)


@pytest.mark.parametrize("a,b", [(-1, 3), (2, 7), (-1, -1), (3, 5), (-2, -5), (7, -3), (6, 10)])
def test_symbols_match_local_isotropy_oracle(a, b):
    for v in relevant_places(a, b):
        assert (hilbert_symbol(a, b, v) == 1) == local_isotropic(a, b, v), v


def test_split_2_7_cross_checked():
    found = zero_divisor_search(2, 7)
    assert is_split(2, 7) == (found is not None)


def test_symmetry_and_bilinearity():
    places = [INF, 2, 3, 5, 7]
    for a, b, c in product([-6, -3, -1, 2, 3, 5, 7, 10], repeat=3):
        for v in places:
            assert hilbert_symbol(a, b, v) == hilbert_symbol(b, a, v)
            assert hilbert_symbol(a, b * c, v) == hilbert_symbol(a, b, v) * hilbert_symbol(a, c, v)


def test_steinberg_relations():
    for a in range(-12, 13):
        if a in (0, 1):
            continue
        for v in [INF, 2, 3, 5, 7, 11]:
            assert hilbert_symbol(a, -a, v) == 1
            assert hilbert_symbol(a, 1 - a, v) == 1
    for a in (Fraction(1, 3), Fraction(-5, 7), Fraction(9, 2)):
        for v in [INF, 2, 3, 5, 7]:
            assert hilbert_symbol(a, 1 - a, v) == 1


def test_symbols_only_see_square_classes():
    for v in [INF, 2, 3, 5]:
        assert hilbert_symbol(Fraction(3, 4), 5, v) == hilbert_symbol(3, 5, v)
        assert hilbert_symbol(12, Fraction(-5, 9), v) == hilbert_symbol(3, -5, v)


def test_split_agrees_with_zero_divisors():
    for a, b in product([x for x in SMALL if abs(x) <= 7], repeat=2):
        found = zero_divisor_search(a, b)
        assert is_split(a, b) == (found is not None), (a, b)
        if found:
            z, x, y = found
            H = quaternion_algebra(a, b)
            u = H.element((z, x, y, 0))
            assert reduced_norm(u) == 0 and (u * H.conjugate(u)).is_zero()


def test_quaternion_class():
    qc = QuaternionClass.from_rationals(Fraction(-4, 9), Fraction(-50, 2))
    assert (qc.a, qc.b) == (-1, -1)
    assert qc.ramified == [2, INF] and not qc.split


def test_factor_bound_is_reported():
    with pytest.raises(FactorizationTooLarge):
        ramified_places(1000003 * 1000033, 3, bound=100)


def test_quadratic_demo():
    assert quadratic_origin_demo(3)
    assert not quadratic_origin_demo(1)
    assert quadratic_origin_demo(Fraction(5, 2), "rational-square")
    assert not quadratic_origin_demo(3, "rational-square")
    with pytest.raises(DegenerateDiscriminant):
        quadratic_origin_demo(-2)


def test_origin_report_quaternionic_pair():
    rho = free_rep(QI, Matrix.diag([i, -i], QI), [[0, 1], [-1, 0]])
    rep = geometric_origin_report(rho)
    assert not rep.origin
    assert (rep.quaternion_class.a, rep.quaternion_class.b) == (-1, -1)
    assert rep.twisted_algebra.algebra.same_table(quaternion_algebra(-1, -1))
    assert rep.witness.azu_rep.images["t1"].coords == (0, 1, 0, 0)
    assert rep.witness.azu_rep.images["t2"].coords == (0, 0, 1, 0)


def test_origin_report_rejects_non_schur():
    with pytest.raises(NotSchur):
        geometric_origin_report(free_rep(QI, Matrix.diag([i, -i], QI)))


def test_origin_report_rational_family():
    rng = random.Random(17)
    done = 0
    while done < 8:
        n = rng.randint(2, 3)
        rho = free_rep(QQ, random_matrix(rng, n, QQ), random_matrix(rng, n, QQ))
        rhoL = rho.base_change(QI)
        try:
            rep = geometric_origin_report(rhoL.conjugate_by(random_invertible(rng, n, QI)),
                                          seed=done)
        except NotSchur:
            continue
        done += 1
        assert rep.origin and rep.quaternion_class.split
        w = rep.witness
        assert w.field == QQ and check_relations(w.presentation, w.images)
        assert are_isomorphic(w, rho)
