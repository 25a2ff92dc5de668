"""``schur-forge``: batch command-line front end.

One JSON document in (file argument or stdin), one JSON report out on stdout.
Failures are reported as JSON on stderr with the error class name and a JSON
pointer into the input. Exit codes: 0 computed, 2 invalid input or a
mathematical precondition failed, 3 a search bound was exhausted, 1 internal
error.
"""
from __future__ import annotations

import argparse
import json
import sys

import jsonschema

from . import __version__
from .azumaya import quaternion_algebra, reduced_norm
from .brauer import (INF, QuaternionClass, geometric_origin_report, hilbert_symbol,
                     quadratic_origin_demo, ramified_places)
from .descent import (NORM_SEARCH_BOUND, descend_representation, make_cocycle, prepare_twist,
                      solve_norm_equation, twist_representation)
from .errors import (BudgetExhausted, FactorizationTooLarge, InvalidDocument, InvalidPrime,
                     SchurForgeError)
from .exactfield import DEFAULT_FACTOR_BOUND, format_rational
from .jsonio import (decode_matrix, decode_quiver_rep, decode_rational, decode_rep, decode_scalar,
                     encode_embedded_algebra, encode_matrix, encode_quiver_rep, encode_rep,
                     encode_scalar)
from .matrep import (commutant_basis, endomorphism_structure_constants, image_span_dim,
                     search_intertwiner)
from .quiverkit import matrep_to_quiver, quiver_endomorphism_dim, quiver_to_matrep, right_ideal_dims

SCHEMA_ID = "schur-forge/1"

# ---------------------------------------------------------------------------
# input schemas

_RATIONAL = {"type": ["string", "integer"]}
_SCALAR = {"anyOf": [_RATIONAL, {"type": "object", "properties": {"a": _RATIONAL, "b": _RATIONAL},
                                 "additionalProperties": False}]}
_MATRIX = {"type": "array", "minItems": 1, "items": {"type": "array", "minItems": 1, "items": _SCALAR}}
_FIELD = {"anyOf": [
    {"const": "QQ"},
    {"type": "object", "properties": {"quad": {"type": "integer"}}, "required": ["quad"],
     "additionalProperties": False},
    {"type": "object", "properties": {"prime": {"type": "integer"}}, "required": ["prime"],
     "additionalProperties": False},
]}
_QUIVER = {"type": "object", "required": ["vertices", "arrows"], "additionalProperties": False,
           "properties": {
               "vertices": {"type": "integer", "minimum": 0},
               "arrows": {"type": "array", "items": {
                   "type": "object", "required": ["src", "dst"], "additionalProperties": False,
                   "properties": {"src": {"type": "integer"}, "dst": {"type": "integer"}}}}}}
_RELATION = {"type": "object", "required": ["terms"], "additionalProperties": False,
             "properties": {"terms": {"type": "array", "items": {
                 "type": "object", "required": ["coeff", "word"], "additionalProperties": False,
                 "properties": {"coeff": _RATIONAL,
                                "word": {"type": "array", "items": {"type": "string"}}}}}}}
_REP = {"type": "object", "required": ["field", "images"], "additionalProperties": False,
        "properties": {
            "field": _FIELD, "n": {"type": "integer", "minimum": 1},
            "generators": {"type": "array", "items": {"type": "string"}},
            "relations": {"type": "array", "items": _RELATION},
            "quiver": _QUIVER,
            "images": {"type": "object", "minProperties": 1, "additionalProperties": _MATRIX}}}
_QUIVER_REP = {"type": "object", "required": ["quiver", "dims", "maps"], "additionalProperties": False,
               "properties": {
                   "field": _FIELD, "quiver": _QUIVER,
                   "dims": {"type": "array", "items": {"type": "integer", "minimum": 0}},
                   "maps": {"type": "array", "items": {"type": "array", "items": {
                       "type": "array", "items": _SCALAR}}}}}
_PLACE = {"anyOf": [{"type": "integer"}, {"enum": ["inf", "infinity", "oo"]},
                    {"type": "string", "pattern": "^[0-9]+$"}]}


def _obj(required, **props):
    return {"type": "object", "required": list(required), "properties": props,
            "additionalProperties": False}


_REP_OR_QUIVER = {"type": "object", "additionalProperties": False,
                  "properties": {"rep": _REP, "quiver_rep": _QUIVER_REP},
                  "oneOf": [{"required": ["rep"]}, {"required": ["quiver_rep"]}]}

SCHEMAS = {
    "schur": _REP_OR_QUIVER,
    "endo": _obj(["rep"], rep=_REP),
    "simple": _obj(["rep"], rep=_REP),
    "intertwine": _obj(["rep", "rep2"], rep=_REP, rep2=_REP),
    "quaternion": _obj(["a", "b"], a=_RATIONAL, b=_RATIONAL,
                       elements={"type": "array", "items": {
                           "type": "array", "minItems": 4, "maxItems": 4, "items": _RATIONAL}}),
    "hilbert": _obj(["a", "b", "place"], a=_RATIONAL, b=_RATIONAL, place=_PLACE),
    "split": _obj(["a", "b"], a=_RATIONAL, b=_RATIONAL),
    "origin": _obj(["rep"], rep=_REP),
    "twist": _obj(["rep"], rep=_REP, S=_MATRIX),
    "descend": _obj(["rep"], rep=_REP, S=_MATRIX, c=_SCALAR),
    "quiver2rep": _REP_OR_QUIVER,
    "demo-quadratic": _obj(["lambda"], **{"lambda": _RATIONAL,
                                          "mode": {"enum": ["real-sign", "rational-square"]}}),
}


def _pointer(parts) -> str:
    return "".join("/" + str(p).replace("~", "~0").replace("/", "~1") for p in parts)


def validate(command: str, doc) -> None:
    validator = jsonschema.Draft202012Validator(SCHEMAS[command])
    errors = sorted(validator.iter_errors(doc), key=lambda e: (list(map(str, e.absolute_path)), e.message))
    if errors:
        err = errors[0]
        # for anyOf/oneOf failures the deepest sub-error locates the problem best
        while err.context:
            err = max(err.context, key=lambda e: len(e.absolute_path))
        raise InvalidDocument(err.message, _pointer(err.absolute_path))


# ---------------------------------------------------------------------------
# commands

def _place_json(v):
    return v if v == INF else int(v)


def _class_json(qc: QuaternionClass) -> dict:
    return {"a": qc.a, "b": qc.b}


def _rep_from(doc, key="rep"):
    return decode_rep(doc[key], "/" + key)


def _cocycle_json(cocycle) -> dict:
    return {"S": encode_matrix(cocycle.S), "lambda": format_rational(cocycle.lam)}


def _twisted_json(tw, rho) -> dict:
    return {"twisted_algebra": encode_embedded_algebra(tw.fixed_algebra),
            "twisted_rep": {g: [encode_scalar(c) for c in x.coords]
                            for g, x in tw.azu_rep.images.items()},
            "reembedding_exact": tw.reembed() == rho.images}


def cmd_schur(doc, opts):
    if "quiver_rep" in doc:
        qr = decode_quiver_rep(doc["quiver_rep"], "/quiver_rep")
        cb = commutant_basis(quiver_to_matrep(qr))
        direct = quiver_endomorphism_dim(qr)
        return {"schur": cb.dim == 1, "commutant_dim": cb.dim, "psi_rank": cb.psi_rank,
                "endomorphism_dim_blockwise": direct}
    cb = commutant_basis(_rep_from(doc))
    return {"schur": cb.dim == 1, "commutant_dim": cb.dim, "psi_rank": cb.psi_rank}


def cmd_endo(doc, opts):
    rho = _rep_from(doc)
    cb = commutant_basis(rho)
    A = endomorphism_structure_constants(rho)
    return {"dim": cb.dim, "basis": [encode_matrix(m) for m in cb.basis],
            "constants": [[[encode_scalar(c) for c in v] for v in row] for row in A.constants],
            "unit": [encode_scalar(c) for c in A.unit]}


def cmd_simple(doc, opts):
    rho = _rep_from(doc)
    k = image_span_dim(rho)
    return {"absolutely_simple": k == rho.n ** 2, "span_dim": k, "n": rho.n}


def cmd_intertwine(doc, opts):
    rho, rho2 = _rep_from(doc), _rep_from(doc, "rep2")
    if rho.presentation.generators != rho2.presentation.generators:
        raise InvalidDocument("both representations need the same generators", "/rep2/images")
    if rho.n != rho2.n or rho.field != rho2.field:
        raise InvalidDocument("both representations need the same field and degree", "/rep2")
    res = search_intertwiner(rho, rho2, opts.seed)
    if res.status == "budget-exhausted":
        raise BudgetExhausted(f"no invertible intertwiner found in a {res.space_dim}-dimensional "
                              "solution space within the search budget")
    return {"isomorphic": res.S is not None, "space_dim": res.space_dim,
            "S": None if res.S is None else encode_matrix(res.S)}


def cmd_quaternion(doc, opts):
    a = decode_rational(doc["a"], "/a")
    b = decode_rational(doc["b"], "/b")
    H = quaternion_algebra(a, b)
    out = {"a": format_rational(a), "b": format_rational(b), "basis": list(H.names),
           "constants": [[[encode_scalar(c) for c in v] for v in row] for row in H.constants],
           "norm_form": [format_rational(c) for c in (1, -a, -b, a * b)]}
    if "elements" in doc:
        norms = []
        for k, e in enumerate(doc["elements"]):
            x = H.element([decode_rational(c, f"/elements/{k}/{j}") for j, c in enumerate(e)])
            norms.append(format_rational(reduced_norm(x)))
        out["norms"] = norms
    return out


def cmd_hilbert(doc, opts):
    a = decode_rational(doc["a"], "/a")
    b = decode_rational(doc["b"], "/b")
    try:
        s = hilbert_symbol(a, b, doc["place"])
    except InvalidPrime as exc:
        exc.path = "/place"
        raise
    return {"symbol": s}


def cmd_split(doc, opts):
    a = decode_rational(doc["a"], "/a")
    b = decode_rational(doc["b"], "/b")
    ram = ramified_places(a, b, opts.bound_factor)
    return {"split": not ram, "ramified": [_place_json(v) for v in ram],
            "class": _class_json(QuaternionClass.from_rationals(a, b, opts.bound_factor))}


def cmd_origin(doc, opts):
    rho = _rep_from(doc)
    rep = geometric_origin_report(rho, opts.seed, opts.bound_norm_search, opts.bound_factor)
    out = {"origin": rep.origin, "lambda": format_rational(rep.lam), "d": rep.d,
           "class": _class_json(rep.quaternion_class),
           "ramified": [_place_json(v) for v in rep.ramified],
           "cocycle": _cocycle_json(rep.cocycle)}
    if rep.origin:
        out["norm_witness"] = encode_scalar(rep.norm_witness)
        out["descended_rep"] = encode_rep(rep.descended)
    else:
        out.update(_twisted_json(rep.twisted, rho))
    return out


def _cocycle_from(doc, rho, opts):
    if "S" in doc:
        return make_cocycle(decode_matrix(doc["S"], rho.field, "/S", (rho.n, rho.n)))
    return prepare_twist(rho, opts.seed)[0]


def cmd_twist(doc, opts):
    rho = _rep_from(doc)
    cocycle = _cocycle_from(doc, rho, opts)
    tw = twist_representation(rho, cocycle)
    out = {"lambda": format_rational(cocycle.lam), "d": rho.field.d,
           "class": _class_json(QuaternionClass.from_rationals(rho.field.d, cocycle.lam,
                                                               opts.bound_factor)),
           "cocycle": _cocycle_json(cocycle)}
    out.update(_twisted_json(tw, rho))
    return out


def cmd_descend(doc, opts):
    rho = _rep_from(doc)
    cocycle = _cocycle_from(doc, rho, opts)
    if "c" in doc:
        c = decode_scalar(doc["c"], rho.field, "/c")
    else:
        c = solve_norm_equation(cocycle.lam, rho.field, opts.bound_norm_search)
    rho0 = descend_representation(rho, cocycle, c, opts.seed)
    return {"lambda": format_rational(cocycle.lam), "c": encode_scalar(c),
            "cocycle": _cocycle_json(cocycle), "rep": encode_rep(rho0)}


def cmd_quiver2rep(doc, opts):
    if "quiver_rep" in doc:
        qr = decode_quiver_rep(doc["quiver_rep"], "/quiver_rep")
        rho = quiver_to_matrep(qr)
        return {"n": rho.n, "rep": encode_rep(rho),
                "right_ideal_dims": right_ideal_dims(rho, dims=qr.dims)}
    rho = _rep_from(doc)
    if rho.presentation.quiver is None:
        raise InvalidDocument("a path-algebra representation needs a quiver", "/rep")
    qr, C = matrep_to_quiver(rho)
    return {"n": rho.n, "quiver_rep": encode_quiver_rep(qr), "change_of_basis": encode_matrix(C)}


def cmd_demo_quadratic(doc, opts):
    lam = decode_rational(doc["lambda"], "/lambda")
    mode = doc.get("mode", "real-sign")
    return {"origin": quadratic_origin_demo(lam, mode), "mode": mode,
            "discriminant": format_rational(lam * lam - 4)}


COMMANDS = {
    "schur": cmd_schur, "endo": cmd_endo, "simple": cmd_simple, "intertwine": cmd_intertwine,
    "quaternion": cmd_quaternion, "hilbert": cmd_hilbert, "split": cmd_split,
    "origin": cmd_origin, "twist": cmd_twist, "descend": cmd_descend,
    "quiver2rep": cmd_quiver2rep, "demo-quadratic": cmd_demo_quadratic,
}


# ---------------------------------------------------------------------------
# driver

def _nonnegative(text: str) -> int:
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError("must be a nonnegative integer")
    return v


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return v


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="schur-forge", description=__doc__.splitlines()[0])
    p.add_argument("command", choices=sorted(COMMANDS))
    p.add_argument("input", nargs="?", default="-", help="JSON input file (default: stdin)")
    p.add_argument("--seed", type=_nonnegative, default=0)
    p.add_argument("--bound-norm-search", type=_positive, default=NORM_SEARCH_BOUND)
    p.add_argument("--bound-factor", type=_positive, default=DEFAULT_FACTOR_BOUND)
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    return p


def _header(opts) -> dict:
    return {"schema": SCHEMA_ID, "version": __version__, "command": opts.command,
            "seed": opts.seed,
            "bounds": {"norm_search": opts.bound_norm_search, "factor": opts.bound_factor}}


def _fail(opts, kind: str, message: str, path: str, code: int, stderr) -> int:
    doc = _header(opts)
    doc["error"] = {"type": kind, "message": message, "path": path}
    stderr.write(json.dumps(doc, indent=2) + "\n")
    return code


def run(opts, text: str, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        doc = json.loads(text)
    except (json.JSONDecodeError, RecursionError) as exc:
        return _fail(opts, "InvalidJSON", str(exc), "", 2, stderr)
    try:
        validate(opts.command, doc)
        result = COMMANDS[opts.command](doc, opts)
    except (BudgetExhausted, FactorizationTooLarge) as exc:
        return _fail(opts, type(exc).__name__, str(exc), getattr(exc, "path", ""), 3, stderr)
    except (SchurForgeError, ValueError, ZeroDivisionError) as exc:
        return _fail(opts, type(exc).__name__, str(exc), getattr(exc, "path", ""), 2, stderr)
    except Exception as exc:  # pragma: no cover - reported, never a bare traceback
        return _fail(opts, "InternalError", f"{type(exc).__name__}: {exc}", "", 1, stderr)
    out = _header(opts)
    out.update(result)
    stdout.write(json.dumps(out, indent=2) + "\n")
    return 0


def main(argv=None) -> int:
    opts = build_parser().parse_args(argv)
    if opts.input == "-":
        text = sys.stdin.read()
    else:
        try:
            with open(opts.input, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            return _fail(opts, "InputUnreadable", str(exc), "", 2, sys.stderr)
    return run(opts, text)


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
