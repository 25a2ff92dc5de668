"""Shared generators and independent oracles for the test suite."""
from __future__ import annotations

import random
from fractions import Fraction
from itertools import product
from math import isqrt

from schur_forge.exactfield import QQ, PrimeField, QuadField, square_class
from schur_forge.linalg import Matrix
from schur_forge.matrep import MatrixRep, free_rep
from schur_forge.ncpoly import Quiver
from schur_forge.quiverkit import QuiverRep

QI = QuadField(-1)
F5 = PrimeField(5)


def random_scalar(rng: random.Random, field, lo=-3, hi=3):
    if isinstance(field, QuadField):
        return field(rng.randint(lo, hi), rng.randint(lo, hi))
    if isinstance(field, PrimeField):
        return field(rng.randrange(field.p))
    return Fraction(rng.randint(lo, hi), rng.choice([1, 1, 1, 2, 3]))


def random_matrix(rng, n, field, m=None, lo=-3, hi=3) -> Matrix:
    m = n if m is None else m
    return Matrix([[random_scalar(rng, field, lo, hi) for _ in range(m)] for _ in range(n)], field)


def random_invertible(rng, n, field) -> Matrix:
    while True:
        C = random_matrix(rng, n, field)
        if C.is_invertible():
            return C


def sparse_matrix(rng, n, field, density=0.4) -> Matrix:
    """Random matrix with many zeros, so that non-Schur reps show up often."""
    return Matrix([[random_scalar(rng, field) if rng.random() < density else 0 for _ in range(n)]
                   for _ in range(n)], field)


def random_rep(rng, field, n, gens) -> MatrixRep:
    maker = rng.choice([random_matrix, sparse_matrix])
    return free_rep(field, *[maker(rng, n, field) for _ in range(gens)])


def mixed_family(seed: int, count: int) -> list[MatrixRep]:
    """Reps over QQ, QQ(i) and F_5 with n <= 3 and 1-3 generators."""
    rng = random.Random(seed)
    fields = [QQ, QI, F5]
    out = []
    for k in range(count):
        field = fields[k % 3]
        n = rng.randint(1, 3)
        out.append(random_rep(rng, field, n, rng.randint(1, 3)))
    return out


def random_quiver_rep(rng, field=QQ, max_vertices=4, max_arrows=5, max_n=6) -> QuiverRep:
    nv = rng.randint(1, max_vertices)
    na = rng.randint(0, max_arrows)
    arrows = tuple((rng.randrange(nv), rng.randrange(nv)) for _ in range(na))
    while True:
        dims = [rng.randint(0, 2) for _ in range(nv)]
        if 1 <= sum(dims) <= max_n:
            break
    maps = []
    for s, t in arrows:
        if dims[s] and dims[t]:
            maps.append(random_matrix(rng, dims[t], field, dims[s]))
        else:
            maps.append(None)
    return QuiverRep(Quiver(nv, arrows), tuple(dims), maps, field)


# ---------------------------------------------------------------------------
# oracles

def fp_commuting_matrices(A, p):
    """All 2x2 matrices over F_p commuting with A, by exhaustive enumeration (plain ints)."""
    (a, b), (c, d) = A
    out = []
    for x, y, z, w in product(range(p), repeat=4):
        # [[x,y],[z,w]] * A  vs  A * [[x,y],[z,w]]
        if ((x * a + y * c - a * x - b * z) % p == 0 and (x * b + y * d - a * y - b * w) % p == 0
                and (z * a + w * c - c * x - d * z) % p == 0
                and (z * b + w * d - c * y - d * w) % p == 0):
            out.append((x, y, z, w))
    return out


def squarefree_ints(bound: int) -> list[int]:
    out = []
    for k in range(1, bound + 1):
        if all(k % (q * q) for q in range(2, isqrt(k) + 1)):
            out += [k, -k]
    return sorted(out)


def zero_divisor_search(a: int, b: int, height: int = 50):
    """A nonzero ``(z, x, y)`` with ``z^2 = a x^2 + b y^2``, found by bounded search.

    Then ``z + x i + y j`` has reduced norm 0 in ``H(a, b)``, i.e. is a zero divisor.
    """
    for x in range(height + 1):
        for y in range(-height, height + 1):
            if x == 0 and y == 0:
                continue
            t = a * x * x + b * y * y
            if t >= 0:
                z = isqrt(t)
                if z * z == t:
                    return z, x, y
    return None


def local_isotropic(a, b, place) -> bool:
    """Does ``z^2 = a x^2 + b y^2`` have a nonzero solution over QQ_p (or RR)?

    Square classes are reduced to squarefree integers; then a primitive solution
    modulo p^3 (odd p) or 2^5 lifts by Hensel's lemma, and conversely.
    """
    a, b = square_class(Fraction(a))[0], square_class(Fraction(b))[0]
    if place == "inf":
        return not (a < 0 and b < 0)
    p = place
    k = 5 if p == 2 else 3
    m = p ** k
    squares = {}
    for z in range(m):
        squares.setdefault(z * z % m, []).append(z)
    for x in range(m):
        for y in range(m):
            zs = squares.get((a * x * x + b * y * y) % m)
            if not zs:
                continue
            if x % p or y % p:
                return True
            if any(z % p for z in zs):
                return True
    return False
