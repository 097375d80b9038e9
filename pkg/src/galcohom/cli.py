"""Command-line front end: ``galcohom <command> [datum] [options]``."""

import argparse
import hashlib
import json
import os
import re
import sys
from concurrent.futures import ThreadPoolExecutor

from . import datum as dio
from .datum import DatumError, parse_datum, serialize_datum, validate_datum
from .global_cohomology import (
    GlobalModel, GlobalError, CoverageError, sha1, sha2, sha_not_summand, h1_global,
    local_h1_nonarch, local_h2_nonarch, local_real,
)
from .groups import FiniteGroup
from .lattice import LatticeError
from .modules import ModuleError, quotient_module, submodule_kernel, ShortExactSequence
from .tate import TateError, tate_cohomology, hinich_sequence, DEFAULT_DEPTH

SCHEMA = 1
SUP = {"1": "¹", "2": "²", "3": "³", "4": "⁴", "5": "⁵", "6": "⁶", "7": "⁷", "8": "⁸", "9": "⁹", "0": "⁰"}
SUB = {str(i): chr(0x2080 + i) for i in range(10)}


class UsageError(Exception):
    pass


# ---------------------------------------------------------------- formatting

def fmt_group(factors, rank=0):
    parts = ["Z/%d" % d for d in factors]
    if rank:
        parts.append("Q/Z" if rank == 1 else "(Q/Z)^%d" % rank)
    return " ⊕ ".join(parts) if parts else "0"


def fmt_degree(n):
    return "−%d" % -n if n < 0 else str(n)


def pretty_name(name):
    """eta_8 style names -> η₈; names already in unicode pass through."""
    greek = {"eta": "η", "theta": "θ", "xi": "ξ"}
    base, _, idx = name.partition("_")
    base = greek.get(base, base)
    return base + "".join(SUB.get(c, c) for c in idx)


def group_name(G):
    n = G.order
    if n == 1:
        return "1"
    if G.is_abelian():
        inv = G.abelianization_invariants()
        if len(inv) == 1:
            return "Z/%d" % n
        return " × ".join("Z/%d" % d for d in inv)
    if n == 6:
        return "S" + SUB["3"]
    if n == 8:
        inv = sum(1 for g in range(n) if G.element_order(g) == 2)
        return ("D" + SUB["4"]) if inv == 5 else ("Q" + SUB["8"])
    return "G"


def module_name(M):
    G = M.group
    trivial = all(M.same_matrix(M.rho[g], [[int(i == j) for j in range(M.rank)] for i in range(M.rank)])
                  for g in range(G.order))
    if trivial:
        return fmt_group([d for d in M.mods if d]) if all(M.mods) else \
            " ⊕ ".join(["Z/%d" % d if d else "Z" for d in M.mods])
    return "M"


def elem_expr(e):
    if e is None:
        return None
    name, k, _ = e
    name = pretty_name(name)
    return name if k == 1 else "%d·%s" % (k, name)


# ---------------------------------------------------------------- commands

def _datum(args):
    path = args.datum_pos or args.datum
    if not path:
        raise UsageError("a datum file is required")
    if not os.path.exists(path) and not os.path.exists(os.path.join(dio.DATA_DIR, path)) \
            and not os.path.exists(os.path.join(dio.DATA_DIR, path + ".json")):
        raise UsageError("no such datum file: %s" % path)
    with open(_resolve(path), encoding="utf-8") as fh:
        text = fh.read()
    return parse_datum(text), hashlib.sha256(text.encode("utf-8")).hexdigest()


def _resolve(path):
    if os.path.exists(path):
        return path
    cand = os.path.join(dio.DATA_DIR, path)
    return cand if os.path.exists(cand) else cand + ".json"


def cmd_validate(d, args):
    rep = validate_datum(d)
    lines = ["validation: %s" % ("OK" if rep["ok"] else "FAILED")]
    for c in rep["coverage"]:
        lines.append("  class %s: %s" % (c["class"], ", ".join(c["covered_by"]) or "uncovered"))
    for a in rep["archimedean"]:
        lines.append("  real orbit %s: stabilizer order %d, mode %s" % (a["orbit"], a["stabilizer_order"], a["mode"]))
    if rep["phi"]:
        lines.append("  phi: " + "; ".join("%s -> %s (conjugator %s)" % (p["class"], p["orbit"], p["conjugator"])
                                           for p in rep["phi"]))
    for p in rep["problems"]:
        lines.append("  problem: " + p)
    return rep, lines, 0 if rep["ok"] else 1


def cmd_tate(d, args):
    if args.degree is None:
        raise UsageError("--degree is required")
    n = args.degree
    H = tate_cohomology(d.module, n, args.depth)
    res = {"degree": n, "invariants": list(H.group.invariants)}
    line = "H^{%s}(%s, %s) ≅ %s" % (fmt_degree(n), group_name(d.group), module_name(d.module),
                                    fmt_group(H.group.invariants))
    return res, [line], 0


def cmd_hinich(d, args):
    M = d.module
    v = [int(x) for x in args.vector.split(",")] if args.vector else [1] + [0] * (M.rank - 1)
    if len(v) != M.rank:
        raise UsageError("--vector needs %d entries" % M.rank)
    A3, p = quotient_module(M, [v])
    A1, i = submodule_kernel(p)
    hs = hinich_sequence(ShortExactSequence(i, p), args.depth)
    res = {"nodes": [{"name": nd.name, "value": nd.describe()} for nd in hs.nodes],
           "exact": [{"node": n, "ok": ok} for n, ok in hs.report], "all_exact": hs.is_exact()}
    lines = [hs.describe(), "exactness: " + ", ".join("%s %s" % (n, "OK" if ok else "FAIL") for n, ok in hs.report)]
    return res, lines, 0


def _sha1_block(d, m):
    r = sha1(d, m)
    gens = []
    for g in r.generators:
        gens.append({"canonical": [int(x) for x in g["canon"]], "expression": elem_expr(g["expr"])})
    return r, {"kernel": list(r.kernel_value.invariants), "cokernel": list(r.cokernel_value.invariants),
               "cross_check": r.agree, "generators": gens}


def _sha1_line(b):
    s = "Sha¹ ≅ %s" % fmt_group(b["kernel"])
    if b["generators"]:
        s += ", generator" + ("s " if len(b["generators"]) > 1 else " ") + ", ".join(
            g["expression"] or str(tuple(g["canonical"])) for g in b["generators"])
    s += ", cross-check: %s" % ("OK" if b["cross_check"] else "MISMATCH (cokernel %s)" % fmt_group(b["cokernel"]))
    return s


def _sha2_block(d, m):
    r = sha2(d, m)
    b = {"kernel": list(r.kernel_value.invariants), "cokernel": list(r.cokernel_value.invariants),
         "cross_check": r.agree, "generators": [[str(q) for q in g["vector"]] for g in r.generators]}
    pred = d.metadata.get("predicted_sha2_order")
    if pred is not None:
        b["predicted_order"] = pred
        b["prediction_match"] = (r.group.order() == pred and len(r.group.invariants) <= 1)
    return r, b


def _sha2_line(b):
    s = "Sha² ≅ %s" % fmt_group(b["kernel"])
    if "predicted_order" in b:
        s += " (predicted n/l = %d): %s" % (b["predicted_order"], "match" if b["prediction_match"] else "MISMATCH")
    s += ", cross-check: %s" % ("OK" if b["cross_check"] else "MISMATCH (cokernel %s)" % fmt_group(b["cokernel"]))
    return s


def _summand_block(d, m, degree):
    try:
        v = sha_not_summand(d, degree, m)
    except GlobalError as e:
        return {"verdict": "vacuous", "reason": str(e)}
    out = {"verdict": v["verdict"]}
    c = v.get("certificate")
    if c:
        if degree == 1:
            out["certificate"] = {"p": c["p"], "a_e": list(c["a_e"].canon()), "b": list(c["b"].canon()),
                                  "b_expression": elem_expr(c["b_expr"])}
        else:
            out["certificate"] = {"p": c["p"], "a_e": [str(q) for q in c["a_e"]], "b": [str(q) for q in c["b"]]}
    return out


def _summand_line(degree, b):
    if b["verdict"] == "vacuous":
        return "Sha%s direct-summand test: vacuous" % SUP[str(degree)]
    s = "Sha%s %s a direct summand" % (SUP[str(degree)], "is" if b["verdict"] == "summand" else "is not")
    c = b.get("certificate")
    if c:
        bexpr = c.get("b_expression") or "(%s)" % ", ".join(str(x) for x in c["b"])
        s += " (certificate: p = %d, b = %s)" % (c["p"], bexpr)
    return s


def cmd_sha1(d, args, m=None):
    m = m or GlobalModel(d, args.depth)
    _, b = _sha1_block(d, m)
    s = _summand_block(d, m, 1)
    lines = [_sha1_line(b), _summand_line(1, s)]
    return {"sha1": b, "summand": s}, lines, 0 if b["cross_check"] else 1


def cmd_sha2(d, args, m=None):
    m = m or GlobalModel(d, args.depth)
    _, b = _sha2_block(d, m)
    s = _summand_block(d, m, 2)
    ok = b["cross_check"] and b.get("prediction_match", True)
    return {"sha2": b, "summand": s}, [_sha2_line(b), _summand_line(2, s)], 0 if ok else 1


def _residual(model, degree):
    out = []
    if degree == 1:
        for C, A in model.residual_h1():
            out.append({"class": C.label(), "group": list(A.invariants)})
    else:
        for C, A in model.residual_h2():
            out.append({"class": C.label(), "qz_rank": A.rank})
    return out


def cmd_h1(d, args, m=None):
    m = m or GlobalModel(d, args.depth)
    h = h1_global(d, model=m)
    res = {"core_size": len(h.core), "core_is_group": h.core.is_group,
           "residual": _residual(m, 1)}
    if h.core.is_group:
        F, _, _ = m.f1()
        res["core_group"] = list(F.invariants)
    lines = ["H¹ core: %d elements%s" % (len(h.core), (" ≅ " + fmt_group(res["core_group"])) if h.core.is_group else
                                         " (pointed set)")]
    lines += _residual_lines(res["residual"], 1)
    return res, lines, 0


def _residual_lines(rs, degree):
    out = []
    for r in rs:
        val = fmt_group(r["group"]) if degree == 1 else fmt_group([], r["qz_rank"])
        out.append("  residual class %s: %s per place outside S" % (r["class"], val))
    return out


def cmd_h1ab(d, args):
    m = GlobalModel(d, args.depth)
    m.require_coverage()
    F, _, _ = m.f1()
    res = {"core": list(F.invariants), "residual": _residual(m, 1)}
    return res, ["H¹_ab core F¹_S ≅ %s" % fmt_group(res["core"])] + _residual_lines(res["residual"], 1), 0


def cmd_h2ab(d, args):
    m = GlobalModel(d, args.depth)
    m.require_coverage()
    F = m.f2()
    res = {"core_divisible_rank": F.rank, "core_finite": list(F.invariants), "residual": _residual(m, 2)}
    return res, ["H²_ab core F²_S ≅ %s" % fmt_group(res["core_finite"], res["core_divisible_rank"])] + \
        _residual_lines(res["residual"], 2), 0


def cmd_local(d, args):
    out = []
    lines = []
    for o, orb in enumerate(d.places.orbits):
        Mv = d.module.restrict(orb.stabilizer)
        if orb.kind == "finite":
            h1 = local_h1_nonarch(Mv)
            h2 = local_h2_nonarch(Mv)
            e = {"orbit": orb.label, "kind": orb.kind, "stabilizer": orb.stabilizer.label(),
                 "h1": list(h1.invariants), "h2_qz_rank": h2.rank}
            lines.append("%s (finite, %s): H¹ ≅ %s, H²_ab ≅ %s" % (orb.label, e["stabilizer"], fmt_group(e["h1"]),
                                                                 fmt_group([], h2.rank)))
        else:
            h1 = local_real(d.module, orb.stabilizer, 1, args.depth)
            h2 = local_real(d.module, orb.stabilizer, 2, args.depth)
            e = {"orbit": orb.label, "kind": orb.kind, "stabilizer": orb.stabilizer.label(),
                 "h1": list(h1.group.invariants), "h2": list(h2.group.invariants)}
            lines.append("%s (%s, %s): H¹_ab ≅ %s, H²_ab ≅ %s" % (orb.label, orb.kind, e["stabilizer"],
                                                                 fmt_group(e["h1"]), fmt_group(e["h2"])))
        out.append(e)
    return {"places": out}, lines, 0


def cmd_pipeline(d, args, run="all"):
    m = GlobalModel(d, args.depth)
    res, lines = {}, []
    rep = validate_datum(d)
    res["valid"] = rep["ok"]
    if not rep["ok"]:
        raise CoverageError(rep["uncovered"]) if rep["uncovered"] else GlobalError("; ".join(rep["problems"]))
    code = 0
    if run in ("all", "sha1"):
        r, c, _ = cmd_sha1(d, args, m)
        res.update(r)
        lines += c
        code = max(code, _)
    if run in ("all", "sha2"):
        r, c, _ = cmd_sha2(d, args, m)
        res.update(r)
        lines += c
        code = max(code, _)
    if run in ("all", "h1"):
        r, c, _ = cmd_h1(d, args, m)
        res["h1"] = r
        lines += c
    return res, lines, code


def _example_datum(args):
    if args.datum_pos == "paper-8.6":
        return dio.builder_paper_example()
    if args.datum_pos == "sansuc":
        groups = {"klein": FiniteGroup.klein, "c4": lambda: FiniteGroup.cyclic(4),
                  "c6": lambda: FiniteGroup.cyclic(6), "q8": FiniteGroup.quaternion,
                  "c2xc4": lambda: FiniteGroup.direct_product(FiniteGroup.cyclic(2), FiniteGroup.cyclic(4))}
        if args.group not in groups:
            raise UsageError("--group must be one of %s" % ", ".join(sorted(groups)))
        G = groups[args.group]()
        if not args.classes:
            raise UsageError("--classes is required")
        classes = []
        # labels such as "(1,0)" contain commas, so split only outside parentheses
        for c in re.split(r",(?![^()]*\))", args.classes):
            try:
                classes.append(dio.subgroup_by_labels(G, c.split("+")))
            except DatumError as e:
                raise UsageError(str(e))
        return dio.builder_sansuc_torus(G, classes, "sansuc-%s" % args.group)
    raise UsageError("unknown example %r (paper-8.6 or sansuc)" % args.datum_pos)


COMMANDS = {
    "validate": cmd_validate, "tate": cmd_tate, "hinich": cmd_hinich, "sha1": cmd_sha1, "sha2": cmd_sha2,
    "h1": cmd_h1, "h1ab": cmd_h1ab, "h2ab": cmd_h2ab, "local": cmd_local,
}


def build_parser():
    p = argparse.ArgumentParser(prog="galcohom", description="Tate cohomology and Sha groups of Galois modules.")
    p.add_argument("command", choices=sorted(list(COMMANDS) + ["example"]))
    p.add_argument("datum_pos", nargs="?", metavar="DATUM", help="datum file (or example name)")
    p.add_argument("--datum", help="datum file")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--depth", type=int, default=DEFAULT_DEPTH, help="resolution window")
    p.add_argument("--check", action="store_true", default=True, help="dual-formula cross-check (always on)")
    p.add_argument("--degree", type=int, help="degree for the tate command")
    p.add_argument("--vector", help="comma-separated generator of the submodule for hinich")
    p.add_argument("--run", choices=("all", "sha1", "sha2", "h1"), default="all", help="pipeline part for example")
    p.add_argument("--group", default="klein", help="group for the sansuc example")
    p.add_argument("--classes", help="comma-separated decomposition classes for the sansuc example")
    p.add_argument("--all", metavar="DIR", help="run the command on every .json datum in DIR")
    return p


def _run_one(command, d, args):
    if command == "example":
        return cmd_pipeline(d, args, args.run)
    return COMMANDS[command](d, args)


def _report(command, argv, digest, result, code, name=None):
    rep = {"schema": SCHEMA, "command": command, "argv": list(argv), "input_digest": digest, "exit_code": code,
           "result": result}
    if name is not None:
        rep["datum"] = name
    return rep


def _safe_run(command, d, args):
    try:
        return _run_one(command, d, args)
    except CoverageError as e:
        return {"error": str(e), "uncovered": e.classes}, ["error: " + str(e)], 1
    except (GlobalError, DatumError, ModuleError, TateError, LatticeError) as e:
        return {"error": str(e)}, ["error: " + str(e)], 1


def run(argv, out=None):
    """Run the CLI; returns (exit code, report dict)."""
    out = out if out is not None else sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0), None
    try:
        if args.all:
            return _batch(args, argv, out)
        if args.command == "example":
            if not args.datum_pos:
                raise UsageError("example needs a name")
            d = _example_datum(args)
            digest = hashlib.sha256(serialize_datum(d).encode("utf-8")).hexdigest()
        else:
            d, digest = _datum(args)
    except UsageError as e:
        print("usage error: %s" % e, file=sys.stderr)
        return 2, None
    except DatumError as e:
        rep = _report(args.command, argv, None, {"error": str(e)}, 1)
        _emit(args, rep, ["error: " + str(e)], out)
        return 1, rep
    try:
        result, lines, code = _safe_run(args.command, d, args)
    except UsageError as e:
        print("usage error: %s" % e, file=sys.stderr)
        return 2, None
    rep = _report(args.command, argv, digest, result, code, d.name)
    _emit(args, rep, lines, out)
    return code, rep


def _emit(args, rep, lines, out):
    if args.format == "json":
        out.write(json.dumps(rep, indent=2, sort_keys=True, ensure_ascii=False) + "\n")
    else:
        for line in lines:
            out.write(line + "\n")


def _batch(args, argv, out):
    folder = args.all
    if not os.path.isdir(folder):
        raise UsageError("not a directory: %s" % folder)
    files = sorted(f for f in os.listdir(folder) if f.endswith(".json"))

    def job(f):
        path = os.path.join(folder, f)
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
        digest = hashlib.sha256(text.encode("utf-8")).hexdigest()
        try:
            d = parse_datum(text)
        except DatumError as e:
            return f, digest, {"error": str(e)}, ["error: " + str(e)], 1
        command = "example" if args.command == "example" else args.command
        try:
            res, lines, code = _safe_run(command, d, args)
        except UsageError as e:
            return f, digest, {"error": str(e)}, ["usage error: " + str(e)], 2
        return f, digest, res, lines, code

    with ThreadPoolExecutor(max_workers=4) as ex:
        results = list(ex.map(job, files))
    code = max([r[4] for r in results] + [0])
    rep = {"schema": SCHEMA, "command": args.command, "argv": list(argv), "exit_code": code,
           "files": [{"file": f, "input_digest": dg, "exit_code": c, "result": res}
                     for f, dg, res, _, c in results]}
    if args.format == "json":
        out.write(json.dumps(rep, indent=2, sort_keys=True, ensure_ascii=False) + "\n")
    else:
        width = max([len(r[0]) for r in results] + [4])
        out.write("%-*s  %-4s  %s\n" % (width, "file", "exit", "summary"))
        for f, _, _, lines, c in results:
            out.write("%-*s  %-4d  %s\n" % (width, f, c, lines[0] if lines else ""))
    return code, rep


def main(argv=None):
    code, _ = run(sys.argv[1:] if argv is None else argv)
    return code


if __name__ == "__main__":
    sys.exit(main())
