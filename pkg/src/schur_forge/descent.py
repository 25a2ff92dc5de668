"""Quadratic Galois descent and twisting for matrix representations.

Everything happens over ``L = QQ(sqrt d)`` with ``sigma`` the nontrivial
automorphism. A cocycle is an invertible ``S`` over ``L`` with
``S * sigma(S) = lam * I`` for a rational ``lam``; it defines the semilinear
involution ``x -> S sigma(x) S^-1`` of ``Mat_n(L)`` whose fixed points form a
QQ-form of ``Mat_n``.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

from .azumaya import AzuRep, EmbeddedAlgebra, algebra_from_matrices, azu_rep_construct, quaternion_basis
from .errors import (BudgetExhausted, DimensionMismatch, NormMismatch, NotACocycle, NotFixed,
                     NotGaloisStable, NotSchur)
from .exactfield import QQ, QuadElem, QuadField, quad_norm, square_class
from .linalg import Matrix, nullspace, rank_of
from .matrep import MatrixRep, is_schur, search_intertwiner

HILBERT90_BUDGET = 64
NORM_SEARCH_BOUND = 200


@dataclass(frozen=True)
class Cocycle:
    S: Matrix
    lam: Fraction

    @property
    def field(self) -> QuadField:
        return self.S.field

    @property
    def n(self) -> int:
        return self.S.nrows


def _require_quadratic(field):
    if not isinstance(field, QuadField):
        raise DimensionMismatch(f"expected a matrix over a quadratic field, got {field!r}")


def cocycle_scalar(S: Matrix) -> Fraction:
    """``lam`` with ``S * sigma(S) == lam * I``; raises :class:`NotACocycle` otherwise."""
    _require_quadratic(S.field)
    if not S.is_square() or not S.is_invertible():
        raise NotACocycle("S must be an invertible square matrix")
    c = (S * S.conj()).scalar_value()
    if c is None:
        raise NotACocycle("S * sigma(S) is not a scalar matrix")
    if not c.is_rational():
        raise NotACocycle(f"S * sigma(S) = {c} * I with {c} outside QQ")
    lam = c.a
    if (S * S.conj()) != lam * Matrix.identity(S.nrows, S.field):
        raise NotACocycle("S * sigma(S) is not scalar")
    return lam


def make_cocycle(S: Matrix) -> Cocycle:
    return Cocycle(S, cocycle_scalar(S))


def galois_translate(rho: MatrixRep) -> MatrixRep:
    """``sigma rho``: apply the Galois automorphism to every matrix entry."""
    return MatrixRep(rho.presentation, rho.field, rho.n,
                     {g: m.conj() for g, m in rho.images.items()})


# ---------------------------------------------------------------------------
# the twisted form

def _qq_coords(M: Matrix) -> list[Fraction]:
    """Coordinates of ``M`` in the QQ-basis ``E_ij, sqrt(d) E_ij`` of ``Mat_n(L)``."""
    flat = M.flat()
    return [x.a for x in flat] + [x.b for x in flat]


def semilinear_fixed_algebra(cocycle: Cocycle | Matrix, n: int | None = None,
                             prefer=()) -> EmbeddedAlgebra:
    """The QQ-algebra ``{x in Mat_n(L) : S sigma(x) S^-1 = x}``.

    It is computed as the kernel of a QQ-linear operator on the
    ``2 n^2``-dimensional QQ-space ``Mat_n(L)``. For ``n = 2`` the basis is
    normalised to ``1, i, j, ij`` when possible (see
    :func:`schur_forge.azumaya.quaternion_basis`), trying the matrices in
    ``prefer`` first.
    """
    if isinstance(cocycle, Matrix):
        cocycle = make_cocycle(cocycle)
    else:
        cocycle_scalar(cocycle.S)
    S = cocycle.S
    L = S.field
    n = S.nrows if n is None else n
    if n != S.nrows:
        raise DimensionMismatch(f"cocycle has size {S.nrows}, not {n}")
    Si = S.inverse()
    units = []
    for scale in (L.one, L.sqrt):
        for i in range(n):
            for j in range(n):
                E = Matrix.zeros(n, n, L).tolist()
                E[i][j] = scale
                units.append(Matrix._make(E, L))
    cols = [_qq_coords(S * E.conj() * Si - E) for E in units]
    rows = [list(r) for r in zip(*cols)]
    kernel = nullspace(rows, 2 * n * n, QQ)
    basis = [sum((c * E for c, E in zip(v, units) if c), Matrix.zeros(n, n, L)) for v in kernel]
    if len(basis) != n * n or rank_of([b.flat() for b in basis], L) != n * n:
        raise NotACocycle("fixed points do not form a QQ-form of Mat_n(L)")
    emb = algebra_from_matrices(basis, QQ)
    if n == 2:
        found = quaternion_basis(emb, prefer)
        if found is not None:
            emb = found[0]
    return emb


@dataclass
class TwistedRepresentation:
    """``rho`` re-expressed inside the twisted algebra ``A~``."""

    azu_rep: AzuRep
    fixed_algebra: EmbeddedAlgebra
    cocycle: Cocycle

    @property
    def algebra(self):
        return self.azu_rep.algebra

    def reembed(self) -> dict[str, Matrix]:
        """Generator images mapped back into ``Mat_n(L)``."""
        return {g: self.fixed_algebra.embed(x) for g, x in self.azu_rep.images.items()}


def _check_fixed(rho: MatrixRep, cocycle: Cocycle):
    S = cocycle.S
    Si = S.inverse()
    for g, m in rho.images.items():
        if S * m.conj() * Si != m:
            raise NotFixed(f"generator {g!r} is not fixed by x -> S sigma(x) S^-1")


def twist_representation(rho: MatrixRep, cocycle: Cocycle | Matrix) -> TwistedRepresentation:
    if isinstance(cocycle, Matrix):
        cocycle = make_cocycle(cocycle)
    if cocycle.S.field != rho.field or cocycle.n != rho.n:
        raise DimensionMismatch("cocycle and representation disagree on field or degree")
    _check_fixed(rho, cocycle)
    fixed = semilinear_fixed_algebra(cocycle, rho.n, prefer=rho.matrices())
    images = {}
    for g, m in rho.images.items():
        coords = fixed.coordinates(m)
        if coords is None:  # pragma: no cover - excluded by _check_fixed
            raise NotFixed(f"generator {g!r} is not in the twisted algebra")
        images[g] = coords
    rep = azu_rep_construct(rho.presentation, fixed.algebra, images)
    return TwistedRepresentation(rep, fixed, cocycle)


def prepare_twist(rho: MatrixRep, seed: int = 0) -> tuple[Cocycle, MatrixRep]:
    """Cocycle ``S`` with ``S sigma(rho(g)) S^-1 = rho(g)`` for a Galois-stable Schur ``rho``."""
    _require_quadratic(rho.field)
    res = search_intertwiner(rho, galois_translate(rho), seed)
    if res.status == "none":
        raise NotGaloisStable("sigma(rho) is not isomorphic to rho")
    if not is_schur(rho):
        raise NotSchur("representation has endomorphisms beyond the scalars")
    if res.S is None:
        # Hom(sigma rho, rho) is at most a line for Schur rho; a singular line means no iso
        raise NotGaloisStable("sigma(rho) is not isomorphic to rho")
    return make_cocycle(res.S), rho


# ---------------------------------------------------------------------------
# effective descent

def _small_quad(rng: random.Random, L: QuadField) -> QuadElem:
    return L(rng.randint(-3, 3), rng.randint(-3, 3))


def effective_hilbert90(S1: Matrix, seed: int = 0, budget: int = HILBERT90_BUDGET) -> Matrix:
    """Invertible ``P`` with ``sigma(P) = S1^-1 P``, given ``S1 sigma(S1) = I``.

    ``P = M + S1 sigma(M)`` satisfies ``S1 sigma(P) = P`` for every ``M``;
    ``M = I`` is tried first, then seeded random small matrices.
    """
    _require_quadratic(S1.field)
    L, n = S1.field, S1.nrows
    I = Matrix.identity(n, L)
    if S1 * S1.conj() != I:
        raise NotACocycle("S' * sigma(S') must equal the identity")
    rng = random.Random(seed)
    M = I
    for _ in range(budget):
        P = M + S1 * M.conj()
        if P.is_invertible():
            assert S1 * P.conj() == P
            return P
        M = Matrix([[_small_quad(rng, L) for _ in range(n)] for _ in range(n)], L)
    raise BudgetExhausted(f"no invertible M + S' sigma(M) in {budget} tries")


def solve_norm_equation(lam, L: QuadField, bound: int = NORM_SEARCH_BOUND) -> QuadElem:
    """Some ``c`` in ``L`` with ``N(c) = lam``.

    Writes ``lam = s * r^2`` with ``s`` squarefree, searches
    ``c0 = (x + y sqrt d) / q`` with ``|x|, |y|, q <= bound`` for ``N(c0) = s``
    and falls back to Legendre's method for ``x^2 - d y^2 = s z^2``. Raises
    :class:`NormMismatch` when ``lam`` is not a norm.
    """
    lam = Fraction(lam)
    if lam == 0:
        raise NormMismatch("0 is only the norm of 0")
    s, r = square_class(lam)
    d = L.d
    for q in range(1, bound + 1):
        for y in range(0, bound + 1):
            t = s * q * q + d * y * y
            if t >= 0:
                x = isqrt(t)
                if x * x == t and x <= bound:
                    c = L(Fraction(x, q), Fraction(y, q)) * r
                    assert quad_norm(c) == lam
                    return c
    sol = _legendre_solution(d, s)
    if sol is None:
        raise NormMismatch(f"{lam} is not a norm from {L}")
    x, y, z = sol
    c = L(Fraction(x, z), Fraction(y, z)) * r
    if quad_norm(c) != lam:  # pragma: no cover - guards the external solver
        raise BudgetExhausted("norm equation solver returned a wrong solution")
    return c


def _legendre_solution(d: int, s: int):
    from sympy.abc import x, y, z
    from sympy.solvers.diophantine.diophantine import diop_ternary_quadratic_normal

    sol = diop_ternary_quadratic_normal(x**2 - d * y**2 - s * z**2)
    if sol is None or sol[0] is None or sol[2] == 0:
        return None
    return tuple(int(v) for v in sol)


def descend_representation(rho: MatrixRep, cocycle: Cocycle | Matrix, c,
                           seed: int = 0) -> MatrixRep:
    """A representation over QQ isomorphic to ``rho`` over ``L``.

    Needs ``S sigma(rho) S^-1 = rho`` and ``N(c) = lam``. With ``S' = S / c`` and
    ``P`` from :func:`effective_hilbert90`, ``P^-1 rho P`` has rational entries.
    """
    if isinstance(cocycle, Matrix):
        cocycle = make_cocycle(cocycle)
    L = rho.field
    _require_quadratic(L)
    c = L(c)
    if quad_norm(c) != cocycle.lam:
        raise NormMismatch(f"N({c}) = {quad_norm(c)} differs from lambda = {cocycle.lam}")
    _check_fixed(rho, cocycle)
    S1 = cocycle.S / c
    P = effective_hilbert90(S1, seed)
    Pi = P.inverse()
    images = {}
    for g, m in rho.images.items():
        m0 = Pi * m * P
        if any(not x.is_rational() for x in m0.flat()):  # pragma: no cover - algebraic identity
            raise NotFixed(f"descended image of {g!r} is not rational")
        images[g] = m0.map(lambda x: x.a, QQ)
    return MatrixRep(rho.presentation, QQ, rho.n, images)
