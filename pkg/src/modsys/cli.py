"""Command-line driver: ``modsys SUBCOMMAND FILE [options]``.

Exit codes: 0 success, 1 a semantic check failed (``equiv``, ``selftest``),
2 the input could not be parsed or validated.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from .algebra import check_wellformed, full_vocab, raw_signature, render, signature_of
from .errors import IllFormedSystem, ModsysError, ParseError
from .inference import Conflict, ent_inferences, propagate
from .mt import expand, mt_models
from .op import OperationalSemantics
from .selftest import bundled, run_selftest
from .structures import Vocabulary

EXIT_OK, EXIT_FAIL, EXIT_INVALID = 0, 1, 2


def _load(path: str):
    from .frontend import parse_spec

    p = Path(path)
    if p.exists():
        text = p.read_text(encoding="utf-8")
    else:
        try:
            text = bundled(p.name)
        except (FileNotFoundError, OSError):
            raise ParseError(f"no such file: {path}") from None
    return parse_spec(text)


def _models_json(structures) -> list:
    return sorted(sorted(str(a) for a in s.true_atoms) for s in structures)


class _Out:
    def __init__(self, as_json: bool):
        self.as_json = as_json
        self.lines: list = []
        self.data: dict = {}

    def line(self, text: str = ""):
        self.lines.append(text)

    def flush(self):
        if self.as_json:
            print(json.dumps(self.data, indent=2, sort_keys=True, ensure_ascii=False))
        else:
            for l in self.lines:
                print(l)


def cmd_check(args, out):
    doc = _load(args.file)
    names = [args.system] if args.system else list(doc.systems) + list(doc.logics)
    results = []
    bad = False
    for name in names:
        try:
            e = doc.expression(name)
        except ModsysError as exc:
            bad = True
            out.line(f"{name}: {exc}")
            results.append({"name": name, "ok": False, "violations": [str(exc)]})
            continue
        report = check_wellformed(e)
        sig = raw_signature(e)
        entry = {
            "name": name,
            "expression": render(e),
            "ok": report.ok,
            "sigma": sorted(str(s) for s in sig.sigma),
            "epsilon": sorted(str(s) for s in sig.epsilon),
            "violations": [str(v) for v in report.violations],
        }
        results.append(entry)
        if report.ok:
            out.line(f"{name}: well-formed  sigma={sig.sigma}  epsilon={sig.epsilon}")
        else:
            bad = True
            out.line(f"{name}: ill-formed")
            for v in report.violations:
                out.line(f"  {v}")
    out.data = {"systems": results}
    return EXIT_INVALID if bad else EXIT_OK


def _system(args):
    doc = _load(args.file)
    return doc, doc.expression(args.system)


def cmd_models(args, out):
    doc, e = _system(args)
    ms = mt_models(e, doc.domain)
    for l in ms.lines():
        out.line(l)
    out.data = {"system": args.system, "models": ms.to_json()}
    return EXIT_OK


def cmd_expand(args, out):
    doc, e = _system(args)
    inst = doc.instance(args.instance, signature_of(e).sigma)
    found = expand(e, inst)
    if found:
        for s in found:
            out.line(str(s))
    else:
        out.line("none exists")
    out.data = {"system": args.system, "instance": args.instance, "solutions": _models_json(found)}
    return EXIT_OK


def _tau(doc, e, extra: str | None) -> Vocabulary:
    tau = full_vocab(e)
    if extra:
        from .frontend.parser import Parser

        p = Parser("{" + extra + "}", doc)
        tau = tau | p.symbol_set()
    return tau


def cmd_op_models(args, out):
    doc, e = _system(args)
    ms = OperationalSemantics(e, doc.domain, _tau(doc, e, args.tau)).models()
    for l in ms.lines():
        out.line(l)
    out.data = {"system": args.system, "models": ms.to_json()}
    return EXIT_OK


def cmd_equiv(args, out):
    doc, e = _system(args)
    mt = mt_models(e, doc.domain)
    op = OperationalSemantics(e, doc.domain, _tau(doc, e, args.tau)).models()
    only_mt = sorted(set(mt.lines()) - set(op.lines()))
    only_op = sorted(set(op.lines()) - set(mt.lines()))
    same = not only_mt and not only_op
    if same:
        out.line(f"equivalent: {len(mt)} models")
    else:
        out.line("NOT equivalent")
        for l in only_mt:
            out.line(f"- mt only {l}")
        for l in only_op:
            out.line(f"+ op only {l}")
    out.data = {"system": args.system, "equivalent": same, "mt_only": only_mt, "op_only": only_op}
    return EXIT_OK if same else EXIT_FAIL


def cmd_trace(args, out):
    from .frontend import parse_structure

    doc, e = _system(args)
    sem = OperationalSemantics(e, doc.domain, _tau(doc, e, args.tau))
    b1 = parse_structure(args.source, sem.tau, doc.domain)
    b2 = parse_structure(args.target, sem.tau, doc.domain)
    tree = sem.derive(b1, b2)
    if tree is None:
        out.line("not derivable")
        out.data = {"derivable": False}
    else:
        out.line(sem.render_tree(tree))
        out.data = {"derivable": True, "trace": sem.render_tree(tree).splitlines()}
    return EXIT_OK


def _inferences(doc, e, k):
    sig = signature_of(e)
    return ent_inferences(mt_models(e, doc.domain), sig.vocab, doc.domain, k)


def cmd_infer(args, out):
    doc, e = _system(args)
    I = _inferences(doc, e, args.max_premise)
    for l in I.lines():
        out.line(l)
    out.data = {"system": args.system, "inferences": I.lines()}
    return EXIT_OK


def cmd_propagate(args, out):
    from .frontend import parse_literals

    doc, e = _system(args)
    I = _inferences(doc, e, args.max_premise)
    start = parse_literals(args.assume or "", I.vocab, doc.domain)
    result = propagate(I, start)
    if isinstance(result, Conflict):
        out.line(str(result))
        out.data = {"conflict": True, "atom": str(result.atom)}
    else:
        out.line(str(result))
        out.data = {"conflict": False, "literals": [str(l) for l in result]}
    return EXIT_OK


def cmd_selftest(args, out):
    checks = run_selftest()
    for c in checks:
        out.line(f"{'PASS' if c.ok else 'FAIL'}  {c.name}: {c.actual}")
        if not c.ok:
            out.line(f"      expected: {c.expected}")
    ok = all(c.ok for c in checks)
    out.line(f"{sum(c.ok for c in checks)}/{len(checks)} checks passed")
    out.data = {
        "ok": ok,
        "checks": [{"name": c.name, "ok": c.ok, "expected": c.expected, "actual": c.actual} for c in checks],
    }
    return EXIT_OK if ok else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="modsys", description="Modular systems: algebra, semantics and model expansion.")
    sub = ap.add_subparsers(dest="command", required=True)

    def add(name, fn, help_, system=True, system_required=True):
        p = sub.add_parser(name, help=help_)
        p.add_argument("file", help=".msl document (bundled examples may be named directly)")
        if system:
            p.add_argument("--system", required=system_required, help="system, logic formula or module name")
        p.add_argument("--json", action="store_true", help="machine-readable output")
        p.set_defaults(fn=fn)
        return p

    add("check", cmd_check, "well-formedness and signatures", system_required=False)
    add("models", cmd_models, "model-theoretic model set")
    p = add("expand", cmd_expand, "solutions for an instance")
    p.add_argument("--instance", required=True)
    for name, fn, help_ in (
        ("op-models", cmd_op_models, "operational model set"),
        ("equiv", cmd_equiv, "compare model-theoretic and operational model sets"),
    ):
        p = add(name, fn, help_)
        p.add_argument("--tau", help="extra symbols added to the state vocabulary, e.g. 'x, y/1'")
    p = add("trace", cmd_trace, "derivation tree for one transition")
    p.add_argument("--from", dest="source", required=True, help="source state, e.g. '{i,a}'")
    p.add_argument("--to", dest="target", required=True, help="target state")
    p.add_argument("--tau", help="extra symbols added to the state vocabulary")
    p = add("infer", cmd_infer, "entailed inferences of the system's model set")
    p.add_argument("--max-premise", type=int, default=3)
    p = add("propagate", cmd_propagate, "closure of assumptions under the entailed inferences")
    p.add_argument("--assume", default="", help="literals, e.g. 'a, ~b'")
    p.add_argument("--max-premise", type=int, default=3)
    p = sub.add_parser("selftest", help="golden checks for the bundled feedback example")
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=cmd_selftest)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    out = _Out(getattr(args, "json", False))
    try:
        code = args.fn(args, out)
    except IllFormedSystem as exc:
        out.lines = ["ill-formed system:"] + [f"  {l}" for l in str(exc.report).splitlines()]
        out.data = {"error": "ill-formed", "violations": str(exc.report).splitlines()}
        code = EXIT_INVALID
    except ModsysError as exc:
        out.lines = [f"error: {exc}"]
        out.data = {"error": type(exc).__name__, "message": str(exc)}
        code = EXIT_INVALID
    out.flush()
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
