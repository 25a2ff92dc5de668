"""Quiver representations and their dictionary with path-algebra representations.

A representation ``(V_i | f_alpha)`` becomes a representation of the path
algebra in ``Mat_n``, ``n = sum dim V_i``: ``e_i`` goes to the projection onto
the i-th diagonal block and ``f_alpha`` to its matrix placed in block
(target, source). Going back, the blocks are read off from the column spaces
of the idempotents.
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Sequence

from .azumaya import StructureConstantAlgebra, idempotent_right_ideals, matrix_algebra
from .errors import (DimensionMismatch, InvalidInput, NotPathAlgebraRep, RelationViolated,
                     ZeroTotalDimension)
from .exactfield import QQ
from .linalg import Matrix, nullspace, rref
from .matrep import MatrixRep, is_schur
from .ncpoly import Quiver, path_algebra

__all__ = ["Quiver", "QuiverRep", "quiver_to_matrep", "matrep_to_quiver", "is_schur_quiver",
           "right_ideal_dims", "quiver_endomorphism_dim"]


@dataclass
class QuiverRep:
    quiver: Quiver
    dims: tuple[int, ...]
    maps: list[Matrix]
    field: object = dc_field(default=QQ)

    def __post_init__(self):
        self.dims = tuple(int(v) for v in self.dims)
        if len(self.dims) != self.quiver.vertices:
            raise InvalidInput("one dimension per vertex is required")
        if any(v < 0 for v in self.dims):
            raise InvalidInput("dimensions must be nonnegative")
        if len(self.maps) != len(self.quiver.arrows):
            raise InvalidInput("one matrix per arrow is required")
        maps = []
        for k, ((s, t), m) in enumerate(zip(self.quiver.arrows, self.maps)):
            shape = (self.dims[t], self.dims[s])
            if 0 in shape:
                # Matrix cannot tell 0 x k from 0 x 0; normalise empty blocks
                m = _empty(shape, self.field)
            else:
                if not isinstance(m, Matrix):
                    m = Matrix(m, self.field)
                if m.shape != shape:
                    raise DimensionMismatch(
                        f"arrow {k} needs a {shape[0]}x{shape[1]} matrix, got {m.shape}")
            maps.append(m)
        self.maps = maps

    @property
    def n(self) -> int:
        return sum(self.dims)

    def __eq__(self, other):
        if not isinstance(other, QuiverRep):
            return NotImplemented
        return (self.quiver == other.quiver and self.dims == other.dims
                and all(a.rows == b.rows for a, b in zip(self.maps, other.maps)))


def _empty(shape, field) -> Matrix:
    m = Matrix._make([[field.zero] * shape[1] for _ in range(shape[0])], field)
    m.nrows, m.ncols = shape
    return m


def _offsets(dims: Sequence[int]) -> list[int]:
    out, acc = [], 0
    for v in dims:
        out.append(acc)
        acc += v
    return out


def quiver_to_matrep(qr: QuiverRep) -> MatrixRep:
    n = qr.n
    if n == 0:
        raise ZeroTotalDimension("total dimension is zero")
    F = qr.field
    off = _offsets(qr.dims)
    pres = path_algebra(qr.quiver)
    images = {}
    for i, v in enumerate(qr.dims):
        images[f"e{i}"] = Matrix.diag(
            [1 if off[i] <= r < off[i] + v else 0 for r in range(n)], F)
    for k, ((s, t), f) in enumerate(zip(qr.quiver.arrows, qr.maps)):
        block = Matrix.zeros(n, n, F).tolist()
        for r in range(qr.dims[t]):
            for c in range(qr.dims[s]):
                block[off[t] + r][off[s] + c] = f[r, c]
        images[f"f{k}"] = Matrix(block, F)
    return MatrixRep(pres, F, n, images)


def _column_basis(E: Matrix) -> list[list]:
    """Pivot columns of ``E`` (a basis of its column space)."""
    _, pivots = rref(E.tolist(), E.field)
    return [[E[r, c] for r in range(E.nrows)] for c in pivots]


def matrep_to_quiver(rho: MatrixRep, quiver: Quiver | None = None) -> tuple[QuiverRep, Matrix]:
    """Recover ``(V_i | f_alpha)`` and the change of basis ``C``.

    ``C`` has the adapted basis as columns, so ``C^-1 rho(g) C`` is the block
    matrix produced by :func:`quiver_to_matrep` on the returned representation.
    """
    q = quiver if quiver is not None else rho.presentation.quiver
    if q is None:
        raise NotPathAlgebraRep("no quiver attached to the presentation")
    if rho.presentation.generators != path_algebra(q).generators or \
            rho.presentation.relations != path_algebra(q).relations:
        raise NotPathAlgebraRep("representation is not of this quiver's path algebra")
    F, n = rho.field, rho.n
    cols, dims = [], []
    for i in range(q.vertices):
        basis = _column_basis(rho.images[f"e{i}"])
        dims.append(len(basis))
        cols.extend(basis)
    if len(cols) != n:  # pragma: no cover - excluded by the path-algebra relations
        raise NotPathAlgebraRep("idempotent images do not decompose the space")
    C = Matrix([[cols[c][r] for c in range(n)] for r in range(n)], F)
    Ci = C.inverse()
    off = _offsets(dims)
    maps = []
    for k, (s, t) in enumerate(q.arrows):
        B = Ci * rho.images[f"f{k}"] * C
        if dims[t] == 0 or dims[s] == 0:
            maps.append(_empty((dims[t], dims[s]), F))
            continue
        maps.append(Matrix([[B[off[t] + r, off[s] + c] for c in range(dims[s])]
                            for r in range(dims[t])], F))
    return QuiverRep(q, tuple(dims), maps, F), C


def is_schur_quiver(qr: QuiverRep) -> bool:
    return is_schur(quiver_to_matrep(qr))


def quiver_endomorphism_dim(qr: QuiverRep) -> int:
    """Dimension of ``{(c_i) : c_t f_alpha = f_alpha c_s}`` solved directly on the blocks.

    Independent of the path-algebra route; used to cross-check the Schur test.
    """
    F = qr.field
    dims = qr.dims
    # unknowns: entries of each c_i (dims[i] x dims[i]), row-major, concatenated
    off, acc = [], 0
    for v in dims:
        off.append(acc)
        acc += v * v
    nvars = acc
    rows = []
    for (s, t), f in zip(qr.quiver.arrows, qr.maps):
        for r in range(dims[t]):
            for c in range(dims[s]):
                row = [F.zero] * nvars
                # (c_t f)_{rc} = sum_m c_t[r, m] f[m, c]
                for m in range(dims[t]):
                    row[off[t] + r * dims[t] + m] = row[off[t] + r * dims[t] + m] + f[m, c]
                # (f c_s)_{rc} = sum_m f[r, m] c_s[m, c]
                for m in range(dims[s]):
                    row[off[s] + m * dims[s] + c] = row[off[s] + m * dims[s] + c] - f[r, m]
                rows.append(row)
    return len(nullspace(rows, nvars, F))


def _vertex_generators(rho) -> list[str]:
    q = rho.presentation.quiver
    if q is None:
        raise NotPathAlgebraRep("no quiver attached to the presentation")
    return [f"e{i}" for i in range(q.vertices)]


def right_ideal_dims(rho, algebra: StructureConstantAlgebra | None = None,
                     dims: Sequence[int] | None = None) -> list[int]:
    """Dimensions ``m_i`` of the right ideals ``rho(e_i) * A``.

    ``rho`` is either a :class:`MatrixRep` of a path algebra (``A = Mat_n``)
    or an :class:`~schur_forge.azumaya.AzuRep` into ``algebra``. When the
    dimension vector ``dims`` is known and ``A = Mat_n``, ``m_i = n * v_i`` is
    asserted.
    """
    if isinstance(rho, MatrixRep):
        n = rho.n
        A = algebra or matrix_algebra(n, rho.field)
        if A.dim != n * n:
            raise DimensionMismatch("algebra does not match the representation degree")
        idems = [rho.images[g].flat() for g in _vertex_generators(rho)]
    else:
        A = rho.algebra
        n = None
        idems = [rho.images[g] for g in _vertex_generators(rho)]
    ms = [m for m, _ in idempotent_right_ideals(A, idems)]
    if dims is not None and n is not None:
        for m, v in zip(ms, dims):
            if m != n * v:
                raise RelationViolated(f"right ideal dimension {m} differs from n * v = {n * v}")
    return ms
