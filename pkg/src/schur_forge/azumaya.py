"""Finite-dimensional algebras by structure constants, quaternion algebras and
commutant/bicommutant computations inside full matrix algebras."""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from fractions import Fraction
from itertools import product
from math import isqrt
from typing import Mapping, Sequence

from .errors import (DimensionMismatch, NotAssociative, NotOrthogonalIdempotents,
                     RelationViolated, SquareParameter, ZeroParameter)
from .exactfield import QQ, QuadField, is_square_rational, parse_rational, square_class
from .linalg import Matrix, Span, centralizer, coordinates, nullspace, rank_of, span_closure
from .ncpoly import FreePresentation, eval_poly


class StructureConstantAlgebra:
    """Associative unital algebra with basis ``b_0..b_{m-1}`` and
    ``b_i * b_j = sum_k constants[i][j][k] * b_k``.

    Associativity and the unit axioms are verified for every basis triple on
    construction.
    """

    def __init__(self, constants, unit, field=QQ, names: Sequence[str] | None = None,
                 check: bool = True):
        m = len(constants)
        self.field = field
        self.dim = m
        self.names = tuple(names) if names is not None else tuple(f"b{i}" for i in range(m))
        if len(self.names) != m:
            raise DimensionMismatch("one basis name per basis element is required")
        try:
            self.constants = tuple(tuple(tuple(field(x) for x in constants[i][j])
                                         for j in range(m)) for i in range(m))
        except IndexError:
            raise DimensionMismatch("structure constants must be an m x m x m array") from None
        if any(len(v) != m for row in self.constants for v in row) or any(
                len(row) != m for row in self.constants):
            raise DimensionMismatch("structure constants must be an m x m x m array")
        self.unit = tuple(field(x) for x in unit)
        if len(self.unit) != m:
            raise DimensionMismatch("unit must have one coordinate per basis element")
        self._sparse = [[[(k, c) for k, c in enumerate(v) if c] for v in row]
                        for row in self.constants]
        if check:
            self._verify()

    # coordinate arithmetic --------------------------------------------------

    def mul(self, x: Sequence, y: Sequence) -> tuple:
        out = [self.field.zero] * self.dim
        for i, xi in enumerate(x):
            if not xi:
                continue
            row = self._sparse[i]
            for j, yj in enumerate(y):
                if not yj:
                    continue
                c = xi * yj
                for k, ck in row[j]:
                    out[k] = out[k] + c * ck
        return tuple(out)

    def basis_vector(self, i: int) -> tuple:
        return tuple(self.field.one if k == i else self.field.zero for k in range(self.dim))

    def _verify(self):
        m = self.dim
        basis = [self.basis_vector(i) for i in range(m)]
        for i, j, k in product(range(m), repeat=3):
            lhs = self.mul(self.mul(basis[i], basis[j]), basis[k])
            rhs = self.mul(basis[i], self.mul(basis[j], basis[k]))
            if lhs != rhs:
                raise NotAssociative(
                    f"({self.names[i]}*{self.names[j]})*{self.names[k]} != "
                    f"{self.names[i]}*({self.names[j]}*{self.names[k]})")
        for i in range(m):
            if self.mul(self.unit, basis[i]) != basis[i] or self.mul(basis[i], self.unit) != basis[i]:
                raise NotAssociative(f"unit axiom fails on {self.names[i]}")

    # element interface ------------------------------------------------------

    def element(self, coords: Sequence) -> AlgebraElement:
        coords = tuple(self.field(x) for x in coords)
        if len(coords) != self.dim:
            raise DimensionMismatch(f"expected {self.dim} coordinates, got {len(coords)}")
        return AlgebraElement(self, coords)

    def one(self) -> AlgebraElement:
        return AlgebraElement(self, self.unit)

    def zero(self) -> AlgebraElement:
        return AlgebraElement(self, (self.field.zero,) * self.dim)

    def gen(self, name: str) -> AlgebraElement:
        return AlgebraElement(self, self.basis_vector(self.names.index(name)))

    def same_table(self, other: StructureConstantAlgebra) -> bool:
        return self.constants == other.constants and self.unit == other.unit

    def __repr__(self):
        return f"<{type(self).__name__} dim={self.dim} over {self.field!r}>"


class AlgebraElement:
    __slots__ = ("algebra", "coords")

    def __init__(self, algebra: StructureConstantAlgebra, coords: tuple):
        self.algebra = algebra
        self.coords = coords

    @property
    def ambient(self):
        return ("algebra", id(self.algebra))

    def _same(self, other):
        if not isinstance(other, AlgebraElement) or other.algebra is not self.algebra:
            raise DimensionMismatch("elements of different algebras")

    def __add__(self, other):
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        self._same(other)
        return AlgebraElement(self.algebra, tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other):
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        self._same(other)
        return AlgebraElement(self.algebra, tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self):
        return AlgebraElement(self.algebra, tuple(-a for a in self.coords))

    def __mul__(self, other):
        if isinstance(other, AlgebraElement):
            self._same(other)
            return AlgebraElement(self.algebra, self.algebra.mul(self.coords, other.coords))
        c = self.algebra.field(other)
        return AlgebraElement(self.algebra, tuple(c * a for a in self.coords))

    def __rmul__(self, other):
        c = self.algebra.field(other)
        return AlgebraElement(self.algebra, tuple(c * a for a in self.coords))

    def __eq__(self, other):
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return self.algebra is other.algebra and self.coords == other.coords

    def __hash__(self):
        return hash(self.coords)

    def one_like(self):
        return self.algebra.one()

    def zero_like(self):
        return self.algebra.zero()

    def is_zero(self) -> bool:
        return not any(self.coords)

    def __repr__(self):
        terms = [f"{c!r}*{n}" for c, n in zip(self.coords, self.algebra.names) if c]
        return " + ".join(terms) if terms else "0"


# ---------------------------------------------------------------------------
# concrete algebras

@lru_cache(maxsize=None)
def matrix_algebra(n: int, field=QQ) -> StructureConstantAlgebra:
    """``Mat_n`` in the basis of matrix units ``E_ij`` (row-major)."""
    m = n * n
    zero, one = field.zero, field.one
    consts = []
    for i, j in product(range(n), repeat=2):
        row = []
        for k, l in product(range(n), repeat=2):
            v = [zero] * m
            if j == k:
                v[i * n + l] = one
            row.append(v)
        consts.append(row)
    unit = [one if i == j else zero for i, j in product(range(n), repeat=2)]
    names = [f"E{i + 1}{j + 1}" for i, j in product(range(n), repeat=2)]
    return StructureConstantAlgebra(consts, unit, field, names, check=n <= 3)


class QuaternionAlgebra(StructureConstantAlgebra):
    """``H(a, b)``: basis 1, i, j, k with i^2 = a, j^2 = b, ij = k = -ji."""

    def __init__(self, a, b):
        a, b = parse_rational(a), parse_rational(b)
        if a == 0 or b == 0:
            raise ZeroParameter("quaternion parameters must be nonzero")
        self.a, self.b = a, b
        z = 0
        # rows: left factor 1,i,j,k ; columns: right factor 1,i,j,k
        table = [
            [(1, z, z, z), (z, 1, z, z), (z, z, 1, z), (z, z, z, 1)],
            [(z, 1, z, z), (a, z, z, z), (z, z, z, 1), (z, z, a, z)],
            [(z, z, 1, z), (z, z, z, -1), (b, z, z, z), (z, -b, z, z)],
            [(z, z, z, 1), (z, z, -a, z), (z, b, z, z), (-a * b, z, z, z)],
        ]
        super().__init__(table, (1, 0, 0, 0), QQ, ("1", "i", "j", "k"))

    def conjugate(self, x: AlgebraElement) -> AlgebraElement:
        x0, x1, x2, x3 = x.coords
        return self.element((x0, -x1, -x2, -x3))

    def reduced_norm(self, x: AlgebraElement) -> Fraction:
        return reduced_norm(x)

    def inverse(self, x: AlgebraElement) -> AlgebraElement:
        n = reduced_norm(x)
        if n == 0:
            raise ZeroDivisionError("element has reduced norm 0 (zero divisor)")
        return self.conjugate(x) * (1 / n)

    def __repr__(self):
        return f"QuaternionAlgebra({self.a}, {self.b})"


def quaternion_algebra(a, b) -> QuaternionAlgebra:
    return QuaternionAlgebra(a, b)


def reduced_norm(x: AlgebraElement) -> Fraction:
    """``x0^2 - a x1^2 - b x2^2 + ab x3^2`` for ``x`` in ``H(a, b)``."""
    H = x.algebra
    if not isinstance(H, QuaternionAlgebra):
        raise TypeError("reduced norm is defined here for quaternion algebras only")
    x0, x1, x2, x3 = x.coords
    return x0 * x0 - H.a * x1 * x1 - H.b * x2 * x2 + H.a * H.b * x3 * x3


@dataclass
class SplitEmbedding:
    """Algebra map ``H(a, b) -> Mat_2(field)``, an isomorphism after base change."""

    algebra: QuaternionAlgebra
    field: object
    images: tuple[Matrix, Matrix, Matrix, Matrix]
    rational: bool

    def __call__(self, x: AlgebraElement) -> Matrix:
        out = Matrix.zeros(2, 2, self.field)
        for c, m in zip(x.coords, self.images):
            if c:
                out = out + c * m
        return out


def split_embedding(H: QuaternionAlgebra, allow_rational: bool = True) -> SplitEmbedding:
    """``i -> diag(sqrt a, -sqrt a)``, ``j -> [[0, b], [1, 0]]`` over ``QQ(sqrt a)``.

    When ``a`` is already a rational square ``s^2`` the same formulas are used
    with ``s`` over QQ, unless ``allow_rational`` is false, in which case
    :class:`SquareParameter` is raised.
    """
    a, b = H.a, H.b
    if is_square_rational(a):
        if not allow_rational:
            raise SquareParameter(f"a = {a} is a square; use the rational splitting")
        num, den = a.numerator, a.denominator
        root = Fraction(isqrt(num), isqrt(den))
        field, sqrt_a, rational = QQ, root, True
    else:
        d, r = square_class(a)
        field = QuadField(d)
        sqrt_a, rational = r * field.sqrt, False
    one = Matrix.identity(2, field)
    I = Matrix([[sqrt_a, 0], [0, -sqrt_a]], field)
    J = Matrix([[0, b], [1, 0]], field)
    emb = SplitEmbedding(H, field, (one, I, J, I * J), rational)
    assert I * I == a * one and J * J == b * one and I * J == -(J * I)
    return emb


# ---------------------------------------------------------------------------
# representations into algebras

@dataclass
class AzuRep:
    presentation: FreePresentation
    algebra: StructureConstantAlgebra
    images: dict[str, AlgebraElement]


def azu_rep_construct(pres: FreePresentation, algebra: StructureConstantAlgebra,
                      images: Mapping) -> AzuRep:
    """Validate and build a representation of ``pres`` in ``algebra``.

    ``images`` maps generator names to algebra elements or coordinate vectors.
    """
    elems = {}
    for g in pres.generators:
        if g not in images:
            raise RelationViolated(f"generator {g!r} has no image")
        v = images[g]
        elems[g] = v if isinstance(v, AlgebraElement) else algebra.element(v)
        if elems[g].algebra is not algebra:
            raise DimensionMismatch(f"image of {g!r} lies in another algebra")
    one = algebra.one()
    for r in pres.relations:
        if not eval_poly(r, elems, pres.generators, one=one).is_zero():
            raise RelationViolated(f"relation {pres.format_relation(r)} does not hold")
    return AzuRep(pres, algebra, elems)


def _commutator_columns(A: StructureConstantAlgebra, ys: Sequence[AlgebraElement]) -> list[list]:
    """Matrix of ``x -> ([x, y] for y in ys)`` on coordinates of ``x``."""
    cols = []
    for i in range(A.dim):
        b = A.basis_vector(i)
        col = []
        for y in ys:
            col.extend(a - c for a, c in zip(A.mul(b, y.coords), A.mul(y.coords, b)))
        cols.append(col)
    return [list(r) for r in zip(*cols)] if cols and cols[0] else []


def centralizer_in_algebra(A: StructureConstantAlgebra, ys: Sequence[AlgebraElement]) -> list[tuple]:
    rows = _commutator_columns(A, ys)
    return nullspace(rows, A.dim, A.field)


def is_schur_azu(rho: AzuRep) -> bool:
    """True iff the centralizer of the generator images is one-dimensional."""
    return len(centralizer_in_algebra(rho.algebra, list(rho.images.values()))) == 1


def idempotent_right_ideals(A: StructureConstantAlgebra, idempotents: Sequence):
    """Dimensions and bases of the right ideals ``e_i * A``.

    The ``e_i`` must be orthogonal idempotents summing to 1 (exact check).
    """
    es = [e.coords if isinstance(e, AlgebraElement) else tuple(A.field(x) for x in e)
          for e in idempotents]
    if not es:
        raise NotOrthogonalIdempotents("no idempotents given")
    zero = (A.field.zero,) * A.dim
    for i, ei in enumerate(es):
        for j, ej in enumerate(es):
            want = ei if i == j else zero
            if A.mul(ei, ej) != want:
                raise NotOrthogonalIdempotents(f"e{i} * e{j} violates e_i e_j = delta_ij e_i")
    total = tuple(sum(col, A.field.zero) for col in zip(*es))
    if total != A.unit:
        raise NotOrthogonalIdempotents("idempotents do not sum to 1")
    out = []
    for e in es:
        span = Span(A.dim, A.field)
        basis = []
        for k in range(A.dim):
            v = A.mul(e, A.basis_vector(k))
            if span.add(v):
                basis.append(v)
        out.append((len(basis), basis))
    return out


@dataclass
class RegularRepresentation:
    algebra: StructureConstantAlgebra
    matrices: list[Matrix]

    def __call__(self, x) -> Matrix:
        coords = x.coords if isinstance(x, AlgebraElement) else x
        out = Matrix.zeros(self.algebra.dim, self.algebra.dim, self.algebra.field)
        for c, m in zip(coords, self.matrices):
            if c:
                out = out + c * m
        return out


def regular_representation(A: StructureConstantAlgebra) -> RegularRepresentation:
    """``x -> L_x``, the matrix of left multiplication; column k is ``x * b_k``."""
    mats = []
    for i in range(A.dim):
        cols = [A.constants[i][k] for k in range(A.dim)]
        mats.append(Matrix._make([list(r) for r in zip(*cols)], A.field))
    return RegularRepresentation(A, mats)


# ---------------------------------------------------------------------------
# algebras spanned by matrices

@dataclass
class EmbeddedAlgebra:
    """A structure-constant algebra together with the matrices its basis stands for.

    The matrices may live over a larger field than the algebra (a twisted form
    of ``Mat_n(L)`` has a QQ-basis of matrices over ``L``).
    """

    algebra: StructureConstantAlgebra
    basis: list[Matrix]

    @property
    def n(self) -> int:
        return self.basis[0].nrows

    def embed(self, x) -> Matrix:
        coords = x.coords if isinstance(x, AlgebraElement) else x
        mf = self.basis[0].field
        out = Matrix.zeros(self.n, self.n, mf)
        for c, m in zip(coords, self.basis):
            if c:
                out = out + mf(c) * m
        return out

    def coordinates(self, M: Matrix):
        """Coordinates over the algebra's field, or ``None`` if ``M`` is not in the span."""
        coords = coordinates(self.basis, M)
        if coords is None:
            return None
        try:
            return tuple(self.algebra.field(c) for c in coords)
        except ValueError:
            return None

    def element(self, M: Matrix):
        coords = self.coordinates(M)
        return None if coords is None else self.algebra.element(coords)


def algebra_from_matrices(basis: Sequence[Matrix], base_field=None,
                          names: Sequence[str] | None = None) -> EmbeddedAlgebra:
    """Structure constants of the algebra spanned by ``basis`` (closed under products)."""
    basis = list(basis)
    base_field = basis[0].field if base_field is None else base_field
    consts = []
    for x in basis:
        row = []
        for y in basis:
            c = coordinates(basis, x * y)
            if c is None:
                raise ValueError("span of the given matrices is not closed under multiplication")
            row.append([base_field(v) for v in c])
        consts.append(row)
    n = basis[0].nrows
    unit = coordinates(basis, Matrix.identity(n, basis[0].field))
    if unit is None:
        raise ValueError("span of the given matrices does not contain the identity")
    alg = StructureConstantAlgebra(consts, [base_field(v) for v in unit], base_field, names)
    return EmbeddedAlgebra(alg, basis)


def commutant_algebra(S: Sequence[Matrix]) -> EmbeddedAlgebra:
    """Centralizer of ``S`` in ``Mat_m`` with its structure constants."""
    S = list(S)
    m, field = S[0].nrows, S[0].field
    return algebra_from_matrices(centralizer(S, m, field), field)


def bicommutant_check(S: Sequence[Matrix]) -> bool:
    """Does the commutant of the commutant equal the unital algebra generated by ``S``?"""
    S = list(S)
    m, field = S[0].nrows, S[0].field
    generated = span_closure(S, m, field)
    comm = centralizer(S, m, field)
    bicomm = centralizer(comm, m, field)
    if len(bicomm) != len(generated):
        return False
    span = Span(m * m, field)
    for b in bicomm:
        span.add(b.flat())
    return all(g.flat() in span for g in generated)


def quaternion_basis(emb: EmbeddedAlgebra, prefer: Sequence[Matrix] = ()):
    """Re-express a 4-dimensional central simple algebra of 2x2 matrices in a
    basis ``1, i, j, ij`` with ``i^2 = a``, ``j^2 = b``, ``ij = -ji``.

    Candidates for ``i`` and ``j`` are the trace-free parts of ``prefer``
    (typically generator images), then of the current basis. Returns
    ``(EmbeddedAlgebra, a, b)`` whose table equals ``quaternion_algebra(a, b)``,
    or ``None`` if no such basis is found.
    """
    if emb.algebra.dim != 4 or emb.n != 2:
        return None
    mf = emb.basis[0].field
    kf = emb.algebra.field
    one = Matrix.identity(2, mf)
    half = Fraction(1, 2)

    def pure(x):
        return x - (x.trace() * half) * one

    cands = [pure(x) for x in list(prefer) + list(emb.basis)]
    cands = [c for c in cands if not c.is_zero() and emb.coordinates(c) is not None]
    I = next((c for c in cands if c.det()), None)
    if I is None:
        return None
    a = (I * I).scalar_value()
    perp = [x - ((I * x).trace() / (2 * a)) * I for x in cands]
    perp = [x for x in perp if not x.is_zero()]
    perp += [x + y for x, y in product(perp, repeat=2)]
    J = next((x for x in perp if x.det()), None)
    if J is None:
        return None
    b = (J * J).scalar_value()
    try:
        a, b = kf(a), kf(b)
    except ValueError:
        return None
    new = algebra_from_matrices([one, I, J, I * J], kf, ("1", "i", "j", "k"))
    if not new.algebra.same_table(quaternion_algebra(a, b)):
        return None
    return new, a, b


def is_central(A: StructureConstantAlgebra) -> bool:
    return len(centralizer_in_algebra(A, [A.element(A.basis_vector(i)) for i in range(A.dim)])) == 1


def rank_over(basis: Sequence[Matrix]) -> int:
    return rank_of([b.flat() for b in basis], basis[0].field)
