"""Command-line interface.

Exit codes: 0 when every check passes, 1 when a check fails (witnesses are
printed), 2 for malformed input or bad arguments.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import io
from .commutativity import Method, commutativity_matrix, measure_report
from .core import System, check_axiom_system, direct_product
from .deduction import DSFilter, enumerate_ds, generated_ds, measure_kernel, members, quotient
from .errors import FormatError, NotNormal, PsBCKError
from .hoops import HoopAlgebra, Level, check_hoop
from .laws import CheckReport
from .morphisms import is_state_morphism
from .search import DEFAULT_NODE_BUDGET, SearchConfig, enumerate_models
from .states import StateKind, classify_map, enumerate_states

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class _Out:
    def __init__(self, as_json: bool, stream):
        self.as_json = as_json
        self.stream = stream

    def text(self, *lines):
        if not self.as_json:
            for line in lines:
                print(line, file=self.stream)

    def data(self, obj):
        if self.as_json:
            json.dump(obj, self.stream, indent=2, sort_keys=True)
            print(file=self.stream)


def _subset(A, mask):
    return [A.labels[i] for i in members(mask)]


def _show_set(A, mask):
    return "{" + ", ".join(_subset(A, mask)) + "}"


def _report(out: _Out, A, rep: CheckReport):
    out.text(*rep.lines())
    out.data(rep.to_dict(A.labels))
    return EXIT_OK if rep.passed else EXIT_FAIL


def _names_list(A, raw: str):
    toks = [t for t in raw.replace(",", " ").split() if t]
    try:
        return [A.index(t) for t in toks]
    except KeyError as exc:
        raise FormatError(str(exc.args[0])) from None


# -- commands --------------------------------------------------------------


def cmd_check(args, out):
    A = io.load_algebra(args.file)
    return _report(out, A, check_axiom_system(A, System(args.system)))


def cmd_classify(args, out):
    A = io.load_algebra(args.file)
    matrix = commutativity_matrix(A)
    verdicts = {m.value: rep.passed for m, rep in matrix.items()}
    for m, rep in matrix.items():
        out.text(f"{m.value}: {'commutative' if rep.passed else 'not commutative'}")
        for line in rep.lines():
            if not line.endswith(": ok"):
                out.text(f"  {line}")
    skipped = [m.value for m in Method if m not in matrix]
    if skipped:
        out.text(f"skipped (not a pseudo BCK-algebra): {', '.join(skipped)}")
    agree = len(set(verdicts.values())) <= 1
    out.data({
        "methods": {m.value: rep.to_dict(A.labels) for m, rep in matrix.items()},
        "verdicts": verdicts,
        "skipped": skipped,
        "agree": agree,
    })
    return EXIT_OK if agree else EXIT_FAIL


def cmd_ds(args, out):
    A = io.load_algebra(args.file)
    if args.generated is not None:
        mask = generated_ds(A, _names_list(A, args.generated))
        out.text(_show_set(A, mask))
        out.data({"generated": _subset(A, mask)})
        return EXIT_OK
    filt = DSFilter.NORMAL if args.normal else DSFilter.COMMUTATIVE if args.commutative else DSFilter.ALL
    systems = enumerate_ds(A, filt)
    out.text(*(_show_set(A, m) for m in systems))
    out.data({"filter": filt.value, "systems": [_subset(A, m) for m in systems]})
    return EXIT_OK


def cmd_quotient(args, out):
    A = io.load_algebra(args.file)
    H = _names_list(A, args.ds)
    try:
        res = quotient(A, H)
    except NotNormal as exc:
        out.text(f"error: {exc}")
        out.data({"error": "not-normal", "message": str(exc),
                  "witness": [A.labels[i] for i in exc.witness]})
        return EXIT_FAIL
    Q = res.quotient
    out.text(io.dumps(Q, comment="blocks: " + " ".join(Q.labels)).rstrip("\n"))
    out.data({
        "blocks": [_subset(A, b) for b in res.blocks],
        "projection": {A.labels[i]: Q.labels[int(p)] for i, p in enumerate(res.projection)},
        "top": Q.labels[Q.top],
        "arrow": [[Q.labels[v] for v in row] for row in Q.arrow],
        "squiggle": [[Q.labels[v] for v in row] for row in Q.squiggle],
    })
    return EXIT_OK


def _map_summary(A, img):
    cls = classify_map(A, img)
    sm = is_state_morphism(A, img)
    return cls, sm, {
        "map": [A.labels[v] for v in img],
        "type1": cls.is_type1,
        "type2": cls.is_type2,
        "normal_type1": cls.is_normal1,
        "normal_type2": cls.is_normal2,
        "is4": cls.satisfies_is4,
        "state_morphism": sm.is_state_morphism,
        "kernel": _subset(A, cls.kernel),
        "image": _subset(A, cls.image),
    }


def cmd_states(args, out):
    A = io.load_algebra(args.file)
    kind = StateKind(args.kind)
    if args.map:
        text = Path(args.map).read_text(encoding="utf-8")
        img = io.parse_map(text, A, args.map)
        cls, sm, summary = _map_summary(A, img)
        for key in ("type1", "type2", "normal_type1", "normal_type2", "is4", "state_morphism"):
            val = summary[key]
            out.text(f"{key}: {'n/a' if val is None else 'yes' if val else 'no'}")
        out.text(f"kernel: {_show_set(A, cls.kernel)}", f"image: {_show_set(A, cls.image)}")
        for rep in (cls.type1, cls.type2, sm.report):
            for c in rep.failures():
                out.text(f"  {rep.suite} {c.name}: {c.detail}")
        out.data(summary)
        ok = {StateKind.TYPE1: cls.is_type1, StateKind.TYPE2: cls.is_type2,
              StateKind.MORPHISM: sm.is_state_morphism}[kind]
        return EXIT_OK if ok else EXIT_FAIL
    maps = enumerate_states(A, kind)
    rows = []
    for img in maps:
        _, _, summary = _map_summary(A, img)
        rows.append(summary)
        flags = [k for k in ("normal_type1", "normal_type2", "state_morphism") if summary[k]]
        out.text(" ".join(summary["map"]) + (f"  [{', '.join(flags)}]" if flags else ""))
    out.data({"kind": kind.value, "count": len(rows), "maps": rows})
    return EXIT_OK


def cmd_measure(args, out):
    A = io.load_algebra(args.file)
    m = io.parse_measure(Path(args.measure).read_text(encoding="utf-8"), A, args.measure)
    rep = measure_report(A, m)
    out.text(*rep.lines())
    payload = rep.to_dict(A.labels)
    if rep.passed:
        ker = measure_kernel(A, m)
        out.text(f"kernel: {_show_set(A, ker)}")
        payload["kernel"] = _subset(A, ker)
    out.data(payload)
    return EXIT_OK if rep.passed else EXIT_FAIL


def cmd_hoop(args, out):
    parsed = io.read_file(args.file)
    if parsed.prod is None:
        raise FormatError("hoop input needs a 'prod' section", path=args.file)
    H = HoopAlgebra(parsed.algebra(), parsed.prod)
    return _report(out, H.base, check_hoop(H, Level(args.level)))


def cmd_product(args, out):
    P = direct_product(io.load_algebra(args.first), io.load_algebra(args.second))
    text = io.dumps(P, comment=f"product of {Path(args.first).name} and {Path(args.second).name}")
    if args.output:
        Path(args.output).write_text(text, encoding="utf-8")
        out.text(f"wrote {P.n}-element algebra to {args.output}")
    else:
        out.text(text.rstrip("\n"))
    out.data({"size": P.n, "output": args.output, "elements": list(P.labels)})
    return EXIT_OK


def cmd_enumerate(args, out):
    cfg = SearchConfig(args.size, args.commutative, args.up_to_iso, args.node_budget)
    models = list(enumerate_models(cfg))
    if args.count_only:
        out.text(str(len(models)))
        out.data({"size": cfg.size, "count": len(models)})
        return EXIT_OK
    for k, A in enumerate(models, start=1):
        out.text(io.dumps(A, comment=f"model {k} of {len(models)}"))
    out.data({
        "size": cfg.size,
        "count": len(models),
        "models": [{"arrow": np.asarray(A.arrow).tolist(), "squiggle": np.asarray(A.squiggle).tolist()}
                   for A in models],
    })
    return EXIT_OK


# -- parser ----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    p = argparse.ArgumentParser(prog="psbck", description="Finite pseudo BCK-algebra workbench.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("check", parents=[common], help="check an axiom system")
    s.add_argument("file")
    s.add_argument("--system", choices=[x.value for x in System], default=System.EQUATIONAL.value)
    s.set_defaults(func=cmd_check)

    s = sub.add_parser("classify", parents=[common], help="commutativity by every method")
    s.add_argument("file")
    s.set_defaults(func=cmd_classify)

    s = sub.add_parser("ds", parents=[common], help="deductive systems")
    s.add_argument("file")
    g = s.add_mutually_exclusive_group()
    g.add_argument("--normal", action="store_true")
    g.add_argument("--commutative", action="store_true")
    g.add_argument("--generated", metavar="X,Y,...", help="deductive system generated by these elements")
    s.set_defaults(func=cmd_ds)

    s = sub.add_parser("quotient", parents=[common], help="quotient by a normal deductive system")
    s.add_argument("file")
    s.add_argument("--ds", required=True, metavar="X,Y,...")
    s.set_defaults(func=cmd_quotient)

    s = sub.add_parser("states", parents=[common], help="state operators and state-morphisms")
    s.add_argument("file")
    s.add_argument("--enumerate", action="store_true", help="list every map of the kind (default)")
    s.add_argument("--kind", choices=[k.value for k in StateKind], default=StateKind.TYPE1.value)
    s.add_argument("--map", metavar="MFILE", help="classify a single map instead")
    s.set_defaults(func=cmd_states)

    s = sub.add_parser("measure", parents=[common], help="check a measure")
    s.add_argument("file")
    s.add_argument("measure", metavar="MFILE")
    s.set_defaults(func=cmd_measure)

    s = sub.add_parser("hoop", parents=[common], help="check pseudo-hoop axioms")
    s.add_argument("file")
    s.add_argument("--level", choices=[x.value for x in Level], default=Level.HOOP.value)
    s.set_defaults(func=cmd_hoop)

    s = sub.add_parser("product", parents=[common], help="direct product of two algebras")
    s.add_argument("first")
    s.add_argument("second")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_product)

    s = sub.add_parser("enumerate", parents=[common], help="all models of a given size")
    s.add_argument("--size", type=int, required=True)
    s.add_argument("--commutative", action="store_true")
    s.add_argument("--up-to-iso", action="store_true")
    s.add_argument("--count-only", action="store_true")
    s.add_argument("--node-budget", type=int, default=DEFAULT_NODE_BUDGET)
    s.set_defaults(func=cmd_enumerate)
    return p


def main(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    out = _Out(args.json, stdout)
    try:
        return args.func(args, out)
    except (FormatError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=stderr)
        return EXIT_INPUT
    except PsBCKError as exc:
        print(f"error: {exc}", file=stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
