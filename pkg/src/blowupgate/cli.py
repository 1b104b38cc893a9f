"""Command-line interface.

Subcommands: invariants, gate, flow, solve, brieskorn, euler,
mw-admissible.  All output is JSON (or a terse text rendering with
--format text) on stdout; runs with identical inputs and seed are
byte-identical.  BLOWUPGATE_THREADS caps parallel solver restarts.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from blowupgate.gate import gate as evaluate_gate
from blowupgate.gate import (Flow, FlowGraph, HomologyElement, HomologyModel,
                             LabelLengthMismatch, NonIntegerWeights,
                             SizeMismatch, homology_class, is_flow,
                             realizable_k)
from blowupgate.invariants import NotWirtinger, link_invariants
from blowupgate.links import (BraidWord, EmptySelection, InvalidLetter,
                              LinkDiagram, MalformedPD, Presentation,
                              from_braid, parse_pd)
from blowupgate.psl2r import (GenusZero, IDENTITY, PSL2, ResidualTooLarge,
                              RoundingAmbiguous, euler_number, mat_inv,
                              mat_mul, milnor_wood_admissible, psl_dist_sq)
from blowupgate.repvar import (BrieskornData, NotCoprime, UnassignedGenerator,
                               brieskorn_enumerate, brieskorn_presentation,
                               is_abelian, is_irreducible, is_metabelian,
                               solve, trace_coordinates)

SCHEMA = "1"


class InputError(ValueError):
    """Bad input file, JSON shape, or option value."""


def _load_json(path: str):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc}") from exc


def _diagram_from_json(data) -> LinkDiagram:
    if not isinstance(data, dict):
        raise InputError("link JSON must be an object")
    if "pd" in data:
        return parse_pd(data["pd"])
    if "braid" in data:
        braid = data["braid"]
        try:
            word = BraidWord(int(braid["strands"]), tuple(braid.get("word", ())))
        except (KeyError, TypeError) as exc:
            raise InputError(f"malformed braid object: {exc}") from exc
        return from_braid(word)
    raise InputError('link JSON needs a "pd" or "braid" field')


def _poly_json(p):
    coeffs, min_exp = p.coeff_list()
    return {"coeffs": coeffs, "min_exp": min_exp}


def _group_json(g):
    return {"rank": g.rank, "torsion": list(g.torsion)}


def _emit(obj, out, fmt: str):
    if fmt == "json":
        out.write(json.dumps(obj, sort_keys=True, separators=(",", ":")))
        out.write("\n")
    else:
        for line in _text_lines(obj, prefix=""):
            out.write(line + "\n")


def _text_lines(obj, prefix: str):
    if isinstance(obj, dict):
        for key in sorted(obj):
            yield from _text_lines(obj[key],
                                   f"{prefix}{key}." if prefix else f"{key}.")
    else:
        label = prefix[:-1] if prefix.endswith(".") else prefix
        yield f"{label} = {json.dumps(obj, sort_keys=True)}"


# ---------------------------------------------------------------------------
# subcommand handlers


def _cmd_invariants(args):
    d = _diagram_from_json(_load_json(args.link))
    inv = link_invariants(d)
    return {
        "schema": SCHEMA,
        "components": inv.components,
        "alexander": _poly_json(inv.alexander),
        "det": inv.det,
        "det_signed": str(inv.det_signed),
        "h1_branched": _group_json(inv.h1_branched),
        "b1_positive": inv.b1_positive,
        "h1_method": inv.h1_method,
    }


def _parse_monodromy(text, ncomp):
    flags = [f.strip() for f in text.split(",") if f.strip() != ""]
    if len(flags) != ncomp:
        raise LabelLengthMismatch(f"{len(flags)} labels for {ncomp} components")
    return [f not in ("0", "false", "False") for f in flags]


def _cmd_gate(args):
    data = _load_json(args.link)
    d = _diagram_from_json(data)
    ncomp = len(d.components)
    if args.monodromy is not None:
        labels = _parse_monodromy(args.monodromy, ncomp)
    elif "monodromy" in data:
        labels = [bool(x) for x in data["monodromy"]]
    else:
        labels = [True] * ncomp
    verdict = evaluate_gate(d, labels)
    return {
        "schema": SCHEMA,
        "status": verdict.status,
        "reasons": list(verdict.reasons),
        "certificates": verdict.certificates,
    }


def _element_from_json(obj) -> HomologyElement:
    if not isinstance(obj, dict) or "free" not in obj:
        raise InputError('homology elements need a "free" field')
    return HomologyElement(tuple(obj["free"]), tuple(obj.get("torsion", ())))


def _cmd_flow(args):
    data = _load_json(args.graph)
    try:
        edges = tuple((e["from"], e["to"]) for e in data["edges"])
        labels = None
        if data["edges"] and "label" in data["edges"][0]:
            labels = tuple(_element_from_json(e["label"]) for e in data["edges"])
        graph = FlowGraph(int(data["vertices"]), edges, labels)
        weights = [Fraction(str(w)) for w in data["weights"]]
        orientations = [int(o) for o in data["orientations"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"malformed flow graph JSON: {exc}") from exc
    flow = Flow.from_weights(weights, orientations)
    out = {"schema": SCHEMA, "is_flow": is_flow(graph, flow),
           "class": None, "realizable_k": None}
    model = None
    if "model" in data:
        model = HomologyModel(int(data["model"]["rank"]),
                              tuple(data["model"].get("torsion", ())))
    elif labels is not None:
        model = HomologyModel(len(labels[0].free), ())
    if labels is not None and model is not None and flow.is_integral:
        cls = homology_class(graph, flow, model)
        out["class"] = {"free": list(cls.free), "torsion": list(cls.torsion)}
        if "admissible" in data:
            admissible = [_element_from_json(a) for a in data["admissible"]]
            rk = realizable_k(cls, admissible, model)
            if rk.finite:
                out["realizable_k"] = {"finite": True, "values": list(rk.values)}
            else:
                out["realizable_k"] = {"finite": False,
                                       "residues": list(rk.residues),
                                       "modulus": rk.modulus}
    return out


def _presentation_from_json(data) -> Presentation:
    try:
        return Presentation(tuple(data["generators"]),
                            tuple(tuple(r) for r in data["relators"]))
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"malformed presentation JSON: {exc}") from exc


def _matrix_json(m: PSL2):
    # + 0.0 folds negative zero away
    return [[round(x, 15) + 0.0 for x in row] for row in m.matrix_rows()]


def _cmd_solve(args):
    pres = _presentation_from_json(_load_json(args.presentation))
    threads = max(1, int(os.environ.get("BLOWUPGATE_THREADS", "1")))
    sols = solve(pres, restarts=args.restarts, tol=args.tol,
                 seed=args.seed, threads=threads)
    out = []
    for rep in sols:
        out.append({
            "residual": rep.residual,
            "traces": [round(t, 9) for t in trace_coordinates(pres, rep)],
            "irreducible": is_irreducible(rep),
            "abelian": is_abelian(rep),
            "metabelian": is_metabelian(rep),
            "matrices": {g: _matrix_json(rep.matrices[g])
                         for g in pres.generators},
        })
    return {"schema": SCHEMA, "count": len(out), "solutions": out}


def _cmd_brieskorn(args):
    data = BrieskornData(args.p, args.q, args.r)
    census = brieskorn_enumerate(data, restarts=args.restarts,
                                 tol=args.tol, seed=args.seed)
    pres = brieskorn_presentation(data)
    classes = []
    for cls in census:
        classes.append({
            "angles": list(cls.angles),
            "irreducible": cls.irreducible,
            "residual": cls.residual,
            "traces": [round(t, 9) for t in cls.traces],
            "matrices": {g: _matrix_json(cls.assignment.matrices[g])
                         for g in pres.generators},
        })
    return {"schema": SCHEMA, "exponents": [args.p, args.q, args.r],
            "seifert": {"b0": data.b0, "cone": [[p, b] for p, b in data.cone]},
            "count": len(classes), "census": classes}


def _cmd_euler(args):
    data = _load_json(args.rep)
    mats = data.get("matrices", data)
    if not isinstance(mats, dict):
        raise InputError("representation JSON must map generators to matrices")
    genus = args.genus
    if genus is None:
        indices = [int(name[1:]) for name in mats
                   if len(name) > 1 and name[0] in "ab" and name[1:].isdigit()]
        if not indices:
            raise InputError("cannot infer genus; pass --genus")
        genus = max(indices)
    try:
        matrices = {name: PSL2.from_matrix(rows) for name, rows in mats.items()}
    except (TypeError, ValueError) as exc:
        raise InputError(f"malformed matrix data: {exc}") from exc
    for i in range(1, genus + 1):
        for name in (f"a{i}", f"b{i}"):
            if name not in matrices:
                raise InputError(f"missing generator {name}")
    rel = IDENTITY
    for i in range(1, genus + 1):
        ai = matrices[f"a{i}"].tuple()
        bi = matrices[f"b{i}"].tuple()
        rel = mat_mul(rel, mat_mul(mat_mul(ai, bi),
                                   mat_mul(mat_inv(ai), mat_inv(bi))))
    res = psl_dist_sq(rel, IDENTITY)
    e = euler_number(matrices, genus, tol=args.tol)
    return {"schema": SCHEMA, "euler": e, "residual": res, "genus": genus}


def _cmd_mw(args):
    genera = [int(g) for g in args.genera.split(",") if g.strip() != ""]
    vectors = milnor_wood_admissible(genera)
    return {"schema": SCHEMA, "genera": genera,
            "bounds": [2 * g - 2 for g in genera],
            "n_vectors": [list(v) for v in vectors],
            "alpha_vectors": [[2 * x for x in v] for v in vectors]}


# ---------------------------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="blowupgate",
        description="Link obstruction gate and PSL(2,R) representation explorer")
    parser.add_argument("--format", choices=("json", "text"), default="json")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("invariants", help="Alexander polynomial, determinant, "
                       "branched double cover homology")
    p.add_argument("link", help="link JSON file")
    p.set_defaults(handler=_cmd_invariants)

    p = sub.add_parser("gate", help="obstruction verdict for a labeled link")
    p.add_argument("link", help="link JSON file")
    p.add_argument("--monodromy", help="comma-separated 0/1 per component")
    p.set_defaults(handler=_cmd_gate)

    p = sub.add_parser("flow", help="conservation check and homology class "
                       "of a weighted graph")
    p.add_argument("graph", help="flow graph JSON file")
    p.set_defaults(handler=_cmd_flow)

    p = sub.add_parser("solve", help="search PSL(2,R) representations")
    p.add_argument("presentation", help="presentation JSON file")
    p.add_argument("--restarts", type=int, default=20)
    p.add_argument("--tol", type=float, default=1e-10)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(handler=_cmd_solve)

    p = sub.add_parser("brieskorn", help="representation census of a "
                       "Brieskorn homology sphere")
    p.add_argument("p", type=int)
    p.add_argument("q", type=int)
    p.add_argument("r", type=int)
    p.add_argument("--restarts", type=int, default=60)
    p.add_argument("--tol", type=float, default=1e-10)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(handler=_cmd_brieskorn)

    p = sub.add_parser("euler", help="Euler number of a surface-group "
                       "representation")
    p.add_argument("rep", help="representation JSON file")
    p.add_argument("--genus", type=int, default=None)
    p.add_argument("--tol", type=float, default=1e-8)
    p.set_defaults(handler=_cmd_euler)

    p = sub.add_parser("mw-admissible", help="integer classes allowed by the "
                       "Milnor-Wood bound")
    p.add_argument("--genera", required=True, help="comma-separated genera")
    p.set_defaults(handler=_cmd_mw)

    return parser


KNOWN_ERRORS = (
    InputError,
    MalformedPD,
    InvalidLetter,
    EmptySelection,
    LabelLengthMismatch,
    SizeMismatch,
    NonIntegerWeights,
    ResidualTooLarge,
    RoundingAmbiguous,
    GenusZero,
    NotCoprime,
    UnassignedGenerator,
    NotWirtinger,
)


def run(argv, out=None) -> int:
    """Entry point returning an exit code: 0 success, 1 input error,
    2 usage error."""
    out = out if out is not None else sys.stdout
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code else 0
    try:
        result = args.handler(args)
    except KNOWN_ERRORS as exc:
        _emit({"schema": SCHEMA,
               "error": {"code": type(exc).__name__, "message": str(exc)}},
              out, args.format)
        return 1
    _emit(result, out, args.format)
    return 0


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
