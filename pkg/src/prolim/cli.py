"""Command-line surface: JSON documents in, canonical JSON reports out.

Exit codes: 0 success, 2 malformed input, 3 violated mathematical
precondition (including enumeration caps).  Reports are serialized with
sorted keys and no whitespace so golden files are byte-stable.
"""

from __future__ import annotations

import argparse
import json
import sys

from prolim import classify as _classify
from prolim import fgab, homalg, invsys, prospace, topgrp
from prolim.errors import InputError, PreconditionError


def canonical_json(obj):
    return json.dumps(obj, sort_keys=True, separators=(",", ":")) + "\n"


def load_document(path):
    try:
        with open(path, "rb") as fh:
            raw = fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    try:
        doc = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise InputError(
            f"{path}: invalid JSON at byte offset {exc.pos}: {exc.msg}"
        ) from exc
    if not isinstance(doc, dict):
        raise InputError(f"{path}: document must be a JSON object")
    if "system" not in doc:
        raise InputError(f"{path}: missing field 'system'")
    return doc


def parse_system(doc, key="system"):
    try:
        return invsys.InverseSystem.from_json(doc[key])
    except KeyError as exc:
        raise InputError(f"missing field {key!r}") from exc


def _report(command, doc, verdict):
    return {
        "command": command,
        "name": doc.get("name", ""),
        "verdict": verdict,
    }


def cmd_classify(args):
    doc = load_document(args.file)
    s = parse_system(doc)
    cls, cert = _classify.classify_limit(s)
    verdict = {"class": cls.to_json(), "certificate": cert.to_json()}
    if not args.trace:
        verdict["certificate"].pop("trace")
    return _report("classify", doc, verdict)


def cmd_kk_classify(args):
    doc = load_document(args.file)
    if "second_system" not in doc:
        raise InputError("kk-classify needs a 'second_system' field")
    s_b = parse_system(doc)
    s_sb = parse_system(doc, "second_system")
    kk = _classify.classify_kk(s_b, s_sb)
    return _report("kk-classify", doc, kk.to_json())


def cmd_ml(args):
    doc = load_document(args.file)
    cert = invsys.is_mittag_leffler(parse_system(doc))
    return _report("ml", doc, cert.to_json())


def cmd_surjectivize(args):
    doc = load_document(args.file)
    out = invsys.surjectivize(parse_system(doc))
    return _report("surjectivize", doc, out.to_json())


def cmd_kernels(args):
    doc = load_document(args.file)
    s = parse_system(doc)
    seq = invsys.kernel_sequence(s)
    verdict = [
        {"level": lvl, "group": g.to_json(), "finite": fin} for lvl, g, fin in seq
    ]
    return _report("kernels", doc, verdict)


def cmd_sample(args):
    doc = load_document(args.file)
    s = parse_system(doc)
    tuples = prospace.enumerate_tuples(s, args.level, cap=args.cap)
    return _report("sample", doc, [t.to_json() for t in tuples])


def cmd_metric(args):
    doc = load_document(args.file)
    s = parse_system(doc)
    try:
        x = prospace.CoherentTuple.from_json(s, json.loads(args.x))
        y = prospace.CoherentTuple.from_json(s, json.loads(args.y))
    except json.JSONDecodeError as exc:
        raise InputError(f"tuple argument is not valid JSON: {exc.msg}") from exc
    d = prospace.metric(x, y)
    return _report("metric", doc, {"distance": str(d), **d.to_json()})


def cmd_dense(args):
    doc = load_document(args.file)
    s = parse_system(doc)
    fam = prospace.dense_family(s, args.budget, cap=args.cap)
    return _report("dense", doc, [t.to_json() for t in fam])


_SPLIT_DEMOS = {
    "mixed": "Z/2 discrete x Z/3 indiscrete (product topology)",
    "discrete-z4": "Z/4 with the discrete topology",
    "indiscrete-z2": "Z/2 with the indiscrete topology",
}


def _split_demo_space(name):
    if name == "mixed":
        a = topgrp.FiniteTopAbGroup.discrete(fgab.Zmod(2))
        b = topgrp.FiniteTopAbGroup.indiscrete(fgab.Zmod(3))
        return topgrp.FiniteTopAbGroup.product(a, b)
    if name == "discrete-z4":
        return topgrp.FiniteTopAbGroup.discrete(fgab.Zmod(4))
    if name == "indiscrete-z2":
        return topgrp.FiniteTopAbGroup.indiscrete(fgab.Zmod(2))
    raise InputError(
        f"unknown demo {name!r}; available: {', '.join(sorted(_SPLIT_DEMOS))}"
    )


def cmd_split_demo(args):
    top = _split_demo_space(args.name)
    _cl, cl_elems = topgrp.closure_of_zero(top)
    ctx = topgrp.SplittingContext(top)
    reports = []
    for sec in ctx.sections():
        rep = topgrp.splitting_check(top, sec, ctx)
        reports.append(rep.to_json())
        if not rep.ok:
            break
    zero_i = top.index[top.group.zero()]
    basis = [m for m in top.basis_masks() if m >> zero_i & 1]
    verdict = {
        "space": _SPLIT_DEMOS[args.name],
        "closure_of_zero": [list(e) for e in cl_elems],
        "sections_checked": len(reports),
        "all_sections_pass": all(r["bijective"] for r in reports)
        and all(
            r["forward_continuous"] and r["inverse_continuous"] and r["sandwich_ok"]
            for r in reports
        ),
        "translated_basis_ok": topgrp.translated_basis_check(top, basis),
        "reports": reports,
    }
    return {"command": "split-demo", "name": args.name, "verdict": verdict}


def build_parser():
    ap = argparse.ArgumentParser(
        prog="prolim",
        description=(
            "Exact engine for inverse limits of finitely generated abelian "
            "groups: classification, Mittag-Leffler certificates, "
            "surjectivization, and the limit-space toolbox."
        ),
    )
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", help="five-class topology verdict")
    p.add_argument("file")
    p.add_argument("--trace", action="store_true", help="include the derivation trace")
    p.set_defaults(fn=cmd_classify)

    p = sub.add_parser("kk-classify", help="ten-class composite verdict")
    p.add_argument("file")
    p.set_defaults(fn=cmd_kk_classify)

    p = sub.add_parser("ml", help="Mittag-Leffler certificate")
    p.add_argument("file")
    p.set_defaults(fn=cmd_ml)

    p = sub.add_parser("surjectivize", help="restrict to the stable images")
    p.add_argument("file")
    p.set_defaults(fn=cmd_surjectivize)

    p = sub.add_parser("kernels", help="kernel sequence of a surjective system")
    p.add_argument("file")
    p.set_defaults(fn=cmd_kernels)

    p = sub.add_parser("sample", help="enumerate coherent tuples at a level")
    p.add_argument("file")
    p.add_argument("--level", type=int, required=True)
    p.add_argument("--cap", type=int, default=None)
    p.set_defaults(fn=cmd_sample)

    p = sub.add_parser("metric", help="distance between two truncated tuples")
    p.add_argument("file")
    p.add_argument("--x", required=True, help="tuple as JSON")
    p.add_argument("--y", required=True, help="tuple as JSON")
    p.set_defaults(fn=cmd_metric)

    p = sub.add_parser("dense", help="dense family up to a budget level")
    p.add_argument("file")
    p.add_argument("--budget", type=int, required=True)
    p.add_argument("--cap", type=int, default=None)
    p.set_defaults(fn=cmd_dense)

    p = sub.add_parser("split-demo", help="splitting verification for a named space")
    p.add_argument("name")
    p.set_defaults(fn=cmd_split_demo)

    return ap


def main(argv=None):
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        report = args.fn(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except PreconditionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    sys.stdout.write(canonical_json(report))
    return 0


if __name__ == "__main__":
    sys.exit(main())
