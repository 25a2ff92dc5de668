"""JSON encoding of fields, matrices, presentations and representations.

Rationals travel as strings ``"p"`` or ``"p/q"`` (integers are accepted on
input). An element ``a + b sqrt(d)`` is ``{"a": ..., "b": ...}``; a plain
rational is accepted wherever a quadratic element is expected. Decoders take
the JSON-pointer ``path`` of the value so failures can be located.
"""
from __future__ import annotations

from fractions import Fraction

from .azumaya import EmbeddedAlgebra, StructureConstantAlgebra
from .errors import InvalidDocument, SchurForgeError
from .exactfield import QQ, PrimeField, PrimeFieldElem, QuadElem, QuadField, format_rational, parse_rational
from .linalg import Matrix
from .matrep import MatrixRep
from .ncpoly import FreePresentation, NcPoly, Quiver, path_algebra
from .quiverkit import QuiverRep


def _ptr(path: str, key) -> str:
    key = str(key).replace("~", "~0").replace("/", "~1")
    return f"{path}/{key}"


def _wrap(path: str, fn, *args):
    try:
        return fn(*args)
    except InvalidDocument:
        raise
    except (SchurForgeError, ValueError, TypeError, ZeroDivisionError) as exc:
        raise InvalidDocument(f"{type(exc).__name__}: {exc}", path) from exc


# ---------------------------------------------------------------------------
# scalars and fields

def encode_scalar(x):
    if isinstance(x, QuadElem):
        return {"a": format_rational(x.a), "b": format_rational(x.b)}
    if isinstance(x, PrimeFieldElem):
        return int(x)
    return format_rational(x)


def decode_rational(value, path: str = "") -> Fraction:
    return _wrap(path, parse_rational, value)


def decode_scalar(value, field, path: str = ""):
    if isinstance(field, QuadField):
        if isinstance(value, dict):
            a = decode_rational(value.get("a", 0), _ptr(path, "a"))
            b = decode_rational(value.get("b", 0), _ptr(path, "b"))
            return field(a, b)
        return field(decode_rational(value, path))
    if isinstance(value, dict):
        raise InvalidDocument(f"a scalar of {field!r} cannot have a sqrt part", path)
    q = decode_rational(value, path)
    return _wrap(path, field, q)


def encode_field(field):
    if isinstance(field, QuadField):
        return {"quad": field.d}
    if isinstance(field, PrimeField):
        return {"prime": field.p}
    return "QQ"


def decode_field(value, path: str = ""):
    if value == "QQ":
        return QQ
    if isinstance(value, dict) and set(value) == {"quad"}:
        return _wrap(_ptr(path, "quad"), QuadField, value["quad"])
    if isinstance(value, dict) and set(value) == {"prime"}:
        return _wrap(_ptr(path, "prime"), PrimeField, value["prime"])
    raise InvalidDocument('field must be "QQ", {"quad": d} or {"prime": p}', path)


# ---------------------------------------------------------------------------
# matrices

def encode_matrix(m: Matrix) -> list:
    return [[encode_scalar(x) for x in row] for row in m.rows]


def decode_matrix(value, field, path: str = "", shape=None) -> Matrix:
    if not isinstance(value, list) or not value or not all(isinstance(r, list) for r in value):
        raise InvalidDocument("matrix must be a nonempty list of rows", path)
    width = len(value[0])
    rows = []
    for i, row in enumerate(value):
        if len(row) != width or not row:
            raise InvalidDocument("matrix rows must be nonempty and of equal length", _ptr(path, i))
        rows.append([decode_scalar(x, field, _ptr(_ptr(path, i), j)) for j, x in enumerate(row)])
    m = Matrix(rows, field)
    if shape is not None and m.shape != tuple(shape):
        raise InvalidDocument(f"expected a {shape[0]}x{shape[1]} matrix, got {m.nrows}x{m.ncols}", path)
    return m


# ---------------------------------------------------------------------------
# presentations and representations

def encode_poly(p: NcPoly, generators) -> dict:
    return {"terms": [{"coeff": format_rational(c), "word": [generators[i] for i in w]}
                      for c, w in p.terms]}


def decode_poly(value, generators, path: str = "") -> NcPoly:
    terms = []
    for k, t in enumerate(value["terms"]):
        tp = _ptr(_ptr(path, "terms"), k)
        word = []
        for j, g in enumerate(t["word"]):
            if g not in generators:
                raise InvalidDocument(f"unknown generator {g!r}", _ptr(_ptr(tp, "word"), j))
            word.append(generators.index(g))
        terms.append((decode_rational(t["coeff"], _ptr(tp, "coeff")), word))
    return NcPoly(terms)


def encode_quiver(q: Quiver) -> dict:
    return {"vertices": q.vertices, "arrows": [{"src": s, "dst": t} for s, t in q.arrows]}


def decode_quiver(value, path: str = "") -> Quiver:
    arrows = [(a["src"], a["dst"]) for a in value["arrows"]]
    return _wrap(path, Quiver, value["vertices"], tuple(arrows))


def encode_presentation(pres: FreePresentation) -> dict:
    out = {"generators": list(pres.generators),
           "relations": [encode_poly(r, pres.generators) for r in pres.relations]}
    if pres.quiver is not None:
        out["quiver"] = encode_quiver(pres.quiver)
    return out


def encode_rep(rho: MatrixRep) -> dict:
    out = {"field": encode_field(rho.field), "n": rho.n,
           "images": {g: encode_matrix(rho.images[g]) for g in rho.presentation.generators}}
    if rho.presentation.quiver is not None:
        out["quiver"] = encode_quiver(rho.presentation.quiver)
    else:
        out["generators"] = list(rho.presentation.generators)
        out["relations"] = [encode_poly(r, rho.presentation.generators)
                            for r in rho.presentation.relations]
    return out


def decode_rep(value, path: str = "") -> MatrixRep:
    """Matrix representation document.

    Either ``{"field", "images", ["generators"], ["relations"]}`` for a
    finitely presented algebra, or ``{"field", "quiver", "images"}`` for the
    path algebra of a quiver (generators ``e0.., f0..``).
    """
    field = decode_field(value["field"], _ptr(path, "field"))
    images_doc = value["images"]
    if "quiver" in value:
        pres = path_algebra(decode_quiver(value["quiver"], _ptr(path, "quiver")))
    else:
        gens = value.get("generators", list(images_doc))
        rels = [decode_poly(r, gens, _ptr(_ptr(path, "relations"), k))
                for k, r in enumerate(value.get("relations", []))]
        pres = _wrap(path, FreePresentation, tuple(gens), tuple(rels))
    for g in pres.generators:
        if g not in images_doc:
            raise InvalidDocument(f"generator {g!r} has no image", _ptr(path, "images"))
    extra = sorted(set(images_doc) - set(pres.generators))
    if extra:
        raise InvalidDocument(f"image given for unknown generator {extra[0]!r}",
                              _ptr(_ptr(path, "images"), extra[0]))
    images = {g: decode_matrix(images_doc[g], field, _ptr(_ptr(path, "images"), g))
              for g in pres.generators}
    if not images:
        raise InvalidDocument("at least one generator is required", _ptr(path, "images"))
    n = images[pres.generators[0]].nrows
    if "n" in value and value["n"] != n:
        raise InvalidDocument(f"declared degree {value['n']} differs from matrix size {n}",
                              _ptr(path, "n"))
    for g, m in images.items():
        if m.shape != (n, n):
            raise InvalidDocument(f"expected a {n}x{n} matrix", _ptr(_ptr(path, "images"), g))
    return _wrap(path, MatrixRep, pres, field, n, images)


def encode_quiver_rep(qr: QuiverRep) -> dict:
    return {"field": encode_field(qr.field), "quiver": encode_quiver(qr.quiver),
            "dims": list(qr.dims), "maps": [encode_matrix(m) if 0 not in m.shape else []
                                            for m in qr.maps]}


def decode_quiver_rep(value, path: str = "") -> QuiverRep:
    field = decode_field(value.get("field", "QQ"), _ptr(path, "field"))
    q = decode_quiver(value["quiver"], _ptr(path, "quiver"))
    dims = value["dims"]
    if len(dims) != q.vertices:
        raise InvalidDocument("one dimension per vertex is required", _ptr(path, "dims"))
    if len(value["maps"]) != len(q.arrows):
        raise InvalidDocument("one matrix per arrow is required", _ptr(path, "maps"))
    maps = []
    for k, ((s, t), m) in enumerate(zip(q.arrows, value["maps"])):
        shape = (dims[t], dims[s])
        mp = _ptr(_ptr(path, "maps"), k)
        if 0 in shape:
            if m not in ([], [[]]) and not all(r == [] for r in m):
                raise InvalidDocument("an arrow touching a zero space takes an empty matrix", mp)
            maps.append(None)
        else:
            maps.append(decode_matrix(m, field, mp, shape))
    return _wrap(path, QuiverRep, q, tuple(dims), maps, field)


# ---------------------------------------------------------------------------
# algebras

def encode_algebra(A: StructureConstantAlgebra) -> dict:
    return {"dim": A.dim, "field": encode_field(A.field),
            "basis": list(A.names),
            "constants": [[[encode_scalar(c) for c in v] for v in row] for row in A.constants],
            "unit": [encode_scalar(c) for c in A.unit]}


def encode_embedded_algebra(emb: EmbeddedAlgebra) -> dict:
    out = encode_algebra(emb.algebra)
    out["matrices"] = [encode_matrix(m) for m in emb.basis]
    return out
