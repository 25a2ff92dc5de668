"""Representations of presented algebras in ``Mat_n(K)``: commutants, the
Schur test, absolute simplicity (Burnside), intertwiners and isomorphism."""
from __future__ import annotations

import random
import warnings
from dataclasses import dataclass
from typing import Mapping

from .azumaya import StructureConstantAlgebra, algebra_from_matrices
from .errors import DimensionMismatch, RelationViolated
from .linalg import Matrix, commutator_system, nullspace, rank_of, span_closure
from .ncpoly import FreePresentation, first_violated_relation

#: random combinations tried by :func:`find_intertwiner` after the basis vectors
INTERTWINER_BUDGET = 32


class MatrixRep:
    """A representation ``presentation -> Mat_n(field)``, validated on construction."""

    def __init__(self, presentation: FreePresentation, field, n: int,
                 images: Mapping[str, Matrix | list]):
        if n < 1:
            raise DimensionMismatch("degree must be positive")
        self.presentation = presentation
        self.field = field
        self.n = n
        imgs = {}
        for g in presentation.generators:
            if g not in images:
                raise RelationViolated(f"generator {g!r} has no image")
            m = images[g]
            m = m if isinstance(m, Matrix) else Matrix(m, field)
            if m.field != field:
                m = m.change_field(field)
            if m.shape != (n, n):
                raise DimensionMismatch(f"image of {g!r} has shape {m.shape}, expected {(n, n)}")
            imgs[g] = m
        extra = set(images) - set(presentation.generators)
        if extra:
            raise RelationViolated(f"images given for unknown generators {sorted(extra)}")
        self.images = imgs
        bad = first_violated_relation(presentation, imgs) if imgs else None
        if bad is not None:
            raise RelationViolated(f"relation {presentation.format_relation(bad)} does not hold")

    def matrices(self) -> list[Matrix]:
        return [self.images[g] for g in self.presentation.generators]

    def conjugate_by(self, C: Matrix) -> MatrixRep:
        """The representation ``g -> C * rho(g) * C^-1``."""
        Ci = C.inverse()
        return MatrixRep(self.presentation, self.field, self.n,
                         {g: C * m * Ci for g, m in self.images.items()})

    def base_change(self, field) -> MatrixRep:
        return MatrixRep(self.presentation, field, self.n,
                         {g: m.change_field(field) for g, m in self.images.items()})

    def __eq__(self, other):
        if not isinstance(other, MatrixRep):
            return NotImplemented
        return (self.presentation == other.presentation and self.field == other.field
                and self.images == other.images)

    def __repr__(self):
        return f"MatrixRep(n={self.n}, field={self.field!r}, generators={list(self.images)})"


def free_rep(field, *mats, names=None) -> MatrixRep:
    """Representation of the free algebra on ``len(mats)`` generators ``t1, t2, ...``."""
    names = names or [f"t{i + 1}" for i in range(len(mats))]
    mats = [m if isinstance(m, Matrix) else Matrix(m, field) for m in mats]
    n = mats[0].nrows
    return MatrixRep(FreePresentation(tuple(names)), field, n, dict(zip(names, mats)))


@dataclass
class CommutantBasis:
    n: int
    basis: list[Matrix]
    psi_rank: int

    @property
    def dim(self) -> int:
        return len(self.basis)


def psi_rank(rho: MatrixRep) -> int:
    """Rank of ``f -> (f rho(g) - rho(g) f)_g`` on ``Mat_n``."""
    rows = commutator_system(rho.matrices(), rho.n, rho.field)
    return rank_of(rows, rho.field)


def commutant_basis(rho: MatrixRep) -> CommutantBasis:
    rows = commutator_system(rho.matrices(), rho.n, rho.field)
    n = rho.n
    vecs = nullspace(rows, n * n, rho.field)
    basis = [Matrix._make([v[i * n:(i + 1) * n] for i in range(n)], rho.field) for v in vecs]
    return CommutantBasis(n, basis, rank_of(rows, rho.field))


def is_schur(rho: MatrixRep) -> bool:
    return commutant_basis(rho).dim == 1


def endomorphism_structure_constants(rho: MatrixRep) -> StructureConstantAlgebra:
    """Multiplication table of ``End(rho)`` in the basis of :func:`commutant_basis`."""
    return algebra_from_matrices(commutant_basis(rho).basis, rho.field).algebra


def image_span_dim(rho: MatrixRep) -> int:
    return len(span_closure(rho.matrices(), rho.n, rho.field))


def is_absolutely_simple(rho: MatrixRep) -> bool:
    """Burnside: the generator images span all of ``Mat_n``."""
    return image_span_dim(rho) == rho.n ** 2


def intertwiner_space(rho: MatrixRep, rho2: MatrixRep) -> list[Matrix]:
    """Basis of ``{S : S rho2(g) = rho(g) S for all g}``."""
    if rho.presentation.generators != rho2.presentation.generators:
        raise DimensionMismatch("representations of different presentations")
    if rho.n != rho2.n or rho.field != rho2.field:
        raise DimensionMismatch("representations of different degree or field")
    n, field = rho.n, rho.field
    zero = field.zero
    rows = []
    for g in rho.presentation.generators:
        A, B = rho.images[g].rows, rho2.images[g].rows
        for i in range(n):
            for j in range(n):
                row = [zero] * (n * n)
                # (S B)_ij - (A S)_ij
                for q in range(n):
                    if B[q][j]:
                        row[i * n + q] = row[i * n + q] + B[q][j]
                for p in range(n):
                    if A[i][p]:
                        row[p * n + j] = row[p * n + j] - A[i][p]
                rows.append(row)
    return [Matrix._make([v[i * n:(i + 1) * n] for i in range(n)], field)
            for v in nullspace(rows, n * n, field)]


@dataclass
class IntertwinerSearch:
    S: Matrix | None
    status: str  # "found" | "none" | "budget-exhausted"
    space_dim: int


def search_intertwiner(rho: MatrixRep, rho2: MatrixRep, seed: int = 0,
                       budget: int = INTERTWINER_BUDGET) -> IntertwinerSearch:
    space = intertwiner_space(rho, rho2)
    if not space:
        return IntertwinerSearch(None, "none", 0)
    for S in space:
        if S.is_invertible():
            return IntertwinerSearch(S, "found", len(space))
    if len(space) == 1:
        # every solution is a multiple of one singular matrix
        return IntertwinerSearch(None, "none", 1)
    rng = random.Random(seed)
    for _ in range(budget):
        coeffs = [rng.randint(-3, 3) for _ in space]
        if not any(coeffs):
            continue
        S = sum((c * B for c, B in zip(coeffs, space) if c), Matrix.zeros(rho.n, rho.n, rho.field))
        if S.is_invertible():
            return IntertwinerSearch(S, "found", len(space))
    return IntertwinerSearch(None, "budget-exhausted", len(space))


def find_intertwiner(rho: MatrixRep, rho2: MatrixRep, seed: int = 0) -> Matrix | None:
    """An invertible ``S`` with ``S rho2(g) S^-1 = rho(g)``, or ``None``.

    ``None`` after an exhausted random search (nonzero but apparently singular
    solution space) also emits a :class:`RuntimeWarning`.
    """
    res = search_intertwiner(rho, rho2, seed)
    if res.status == "budget-exhausted":
        warnings.warn(f"no invertible intertwiner found in a {res.space_dim}-dimensional "
                      "solution space within the search budget", RuntimeWarning, stacklevel=2)
    return res.S


def are_isomorphic(rho: MatrixRep, rho2: MatrixRep, seed: int = 0) -> bool:
    return find_intertwiner(rho, rho2, seed) is not None
