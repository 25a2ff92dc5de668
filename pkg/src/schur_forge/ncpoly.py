"""Noncommutative polynomials and finitely presented associative algebras.

Relations are stored explicitly and only ever *evaluated*: a presentation is
used to answer "does this assignment of generators define an algebra
homomorphism?", never to solve a word problem.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from .errors import DimensionMismatch, EmptyQuiver, InvalidInput, UnboundGenerator
from .exactfield import format_rational, parse_rational

Word = tuple[int, ...]


class NcPoly:
    """Element of the free algebra QQ<t_0, t_1, ...> with words as index tuples.

    Terms are kept canonical: merged, zero coefficients dropped, sorted by
    (length, word).
    """

    __slots__ = ("terms",)

    def __init__(self, terms=()):
        acc: dict[Word, Fraction] = {}
        for coeff, word in terms:
            w = tuple(int(i) for i in word)
            acc[w] = acc.get(w, Fraction(0)) + parse_rational(coeff)
        self.terms: tuple[tuple[Fraction, Word], ...] = tuple(
            (c, w) for w, c in sorted(acc.items(), key=lambda kv: (len(kv[0]), kv[0])) if c)

    @classmethod
    def const(cls, c) -> NcPoly:
        return cls([(c, ())])

    @classmethod
    def gen(cls, index: int) -> NcPoly:
        return cls([(1, (index,))])

    @classmethod
    def word(cls, *indices: int) -> NcPoly:
        return cls([(1, tuple(indices))])

    def _lift(self, other):
        if isinstance(other, NcPoly):
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return NcPoly.const(other)
        return None

    def __add__(self, other):
        o = self._lift(other)
        return NotImplemented if o is None else NcPoly(self.terms + o.terms)

    __radd__ = __add__

    def __neg__(self):
        return NcPoly((-c, w) for c, w in self.terms)

    def __sub__(self, other):
        o = self._lift(other)
        return NotImplemented if o is None else self + (-o)

    def __rsub__(self, other):
        o = self._lift(other)
        return NotImplemented if o is None else o + (-self)

    def __mul__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return NcPoly((c1 * c2, w1 + w2) for c1, w1 in self.terms for c2, w2 in o.terms)

    def __rmul__(self, other):
        o = self._lift(other)
        return NotImplemented if o is None else o * self

    def __eq__(self, other):
        o = self._lift(other)
        return NotImplemented if o is None else self.terms == o.terms

    def __hash__(self):
        return hash(self.terms)

    def __bool__(self):
        return bool(self.terms)

    def generators_used(self) -> set[int]:
        return {i for _, w in self.terms for i in w}

    def format(self, names: Sequence[str] | None = None) -> str:
        if not self.terms:
            return "0"
        parts = []
        for c, w in self.terms:
            mono = "*".join(names[i] if names else f"t{i}" for i in w)
            if not mono:
                parts.append(format_rational(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{format_rational(c)}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self):
        return f"NcPoly({self.format()})"


@dataclass(frozen=True)
class Quiver:
    """Finite directed graph; loops and multiple arrows allowed."""

    vertices: int
    arrows: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "arrows", tuple((int(s), int(t)) for s, t in self.arrows))
        if self.vertices < 0:
            raise InvalidInput("negative vertex count")
        for s, t in self.arrows:
            if not (0 <= s < self.vertices and 0 <= t < self.vertices):
                raise InvalidInput(f"arrow {s}->{t} leaves the vertex range")


@dataclass(frozen=True)
class FreePresentation:
    generators: tuple[str, ...]
    relations: tuple[NcPoly, ...] = ()
    quiver: Quiver | None = field(default=None, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "generators", tuple(self.generators))
        object.__setattr__(self, "relations", tuple(self.relations))
        if len(set(self.generators)) != len(self.generators):
            raise InvalidInput("generator names must be unique")
        k = len(self.generators)
        for r in self.relations:
            bad = [i for i in r.generators_used() if not 0 <= i < k]
            if bad:
                raise InvalidInput(f"relation {r.format()} uses undeclared generator index {bad[0]}")

    def index(self, name: str) -> int:
        return self.generators.index(name)

    def format_relation(self, r: NcPoly) -> str:
        return r.format(self.generators)


def free_algebra(*names: str) -> FreePresentation:
    return FreePresentation(tuple(names))


def eval_poly(p: NcPoly, assignment: Mapping, names: Sequence[str] | None = None, one=None):
    """Evaluate ``p`` after substituting generator values.

    ``assignment`` is keyed by generator index, or by name when ``names`` is
    given. Values are square matrices or algebra elements; they must share one
    ambient algebra. The empty word evaluates to the ambient identity.
    """
    keys = [(names[i] if names is not None else i) for i in sorted(p.generators_used())]
    for key in keys:
        if key not in assignment:
            raise UnboundGenerator(f"generator {key!r} is not assigned")
    ambient = None
    for key, value in assignment.items():
        amb = getattr(value, "ambient", None)
        if amb is None:
            raise DimensionMismatch(f"value for {key!r} is not a matrix or algebra element")
        if amb[0] == "matrix" and amb[1] != amb[2]:
            raise DimensionMismatch(f"value for {key!r} is not square")
        if ambient is None:
            ambient, sample = amb, value
        elif amb != ambient:
            raise DimensionMismatch(f"value for {key!r} lives in a different ambient algebra")
    if one is None:
        if ambient is None:
            if p.generators_used() or not p.terms:
                raise UnboundGenerator("no values assigned and no identity given")
            raise UnboundGenerator("cannot evaluate a constant without an ambient identity")
        one = sample.one_like()
    total = one.zero_like()
    values = {i: assignment[names[i] if names is not None else i] for i in p.generators_used()}
    for coeff, word in p.terms:
        term = None
        for i in word:
            term = values[i] if term is None else term * values[i]
        if term is None:
            term = one
        total = total + coeff * term
    return total


def check_relations(pres: FreePresentation, assignment: Mapping) -> bool:
    """True iff every relation of ``pres`` vanishes under ``assignment`` (keyed by name)."""
    return first_violated_relation(pres, assignment) is None


def first_violated_relation(pres: FreePresentation, assignment: Mapping):
    missing = [g for g in pres.generators if g not in assignment]
    if missing:
        raise UnboundGenerator(f"generator {missing[0]!r} is not assigned")
    sample = next(iter(assignment.values()), None)
    one = sample.one_like() if sample is not None else None
    for r in pres.relations:
        if not eval_poly(r, assignment, pres.generators, one=one).is_zero():
            return r
    return None


def path_algebra(q: Quiver) -> FreePresentation:
    """Presentation of the path algebra: generators ``e<i>`` per vertex, ``f<k>`` per arrow.

    Relations, in order: ``e_i e_i - e_i``; ``e_i e_j`` for ``i != j``; for
    each arrow ``f e_src - f``, ``e_tgt f - f``, ``f e_i`` (``i != src``),
    ``e_j f`` (``j != tgt``); finally ``sum e_i - 1``.
    """
    if q.vertices == 0:
        raise EmptyQuiver("quiver has no vertices")
    nv = q.vertices
    names = [f"e{i}" for i in range(nv)] + [f"f{k}" for k in range(len(q.arrows))]
    e = [NcPoly.gen(i) for i in range(nv)]
    rels = [e[i] * e[i] - e[i] for i in range(nv)]
    rels += [e[i] * e[j] for i in range(nv) for j in range(nv) if i != j]
    for k, (src, tgt) in enumerate(q.arrows):
        f = NcPoly.gen(nv + k)
        rels += [f * e[src] - f, e[tgt] * f - f]
        rels += [f * e[i] for i in range(nv) if i != src]
        rels += [e[j] * f for j in range(nv) if j != tgt]
    rels.append(sum(e, NcPoly()) - 1)
    return FreePresentation(tuple(names), tuple(rels), quiver=q)
