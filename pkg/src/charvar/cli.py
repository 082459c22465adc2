"""``charvar`` command-line interface.

    charvar dim|scan|orbifold-sigma|generic-dim|intersect|obstruct|corpus
            [--input FILE] [--order N] [--depth K] [--format text|machine] [--cap M]

Documents are read from ``--input`` (or standard input) and follow the
``charvar-input/1`` schema in ``docs/schema.md``.  Exit codes: 0 success or
satisfied, 1 obstructed (or a failing corpus entry), 2 parse error, 3
semantic error, 4 enumeration cap exceeded.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources
from typing import Any

from .document import DocumentError, InputDocument, load_document, parse_document
from .fox import DEFAULT_SCAN_CAP, EnumerationCapExceeded, dim_h1, generic_dim, scan_torsion
from .obstructions import ObstructionReport, full_report
from .orbifold import sigma_k
from .presentation import CharvarError, PresentationError, character_order
from .torus import intersect, point_order

__all__ = ["main", "run", "CorpusOutcome", "run_corpus", "corpus_documents"]

EXIT_OK, EXIT_OBSTRUCTED, EXIT_PARSE, EXIT_SEMANTIC, EXIT_CAP = 0, 1, 2, 3, 4
OUTPUT_SCHEMA = "charvar-output/1"


def _q(x) -> str:
    return str(Fraction(x))


def _emit(payload: dict, text: str, fmt: str, out) -> None:
    if fmt == "machine":
        out.write(json.dumps(payload, indent=2, sort_keys=True) + "\n")
    else:
        out.write(text.rstrip("\n") + "\n")


def _threads() -> int:
    try:
        return max(1, int(os.environ.get("CHARVAR_THREADS", "1")))
    except ValueError:
        return 1


# -- individual computations (shared by the commands and the corpus runner) --

def compute_dim(doc: InputDocument, ident: str | None) -> dict:
    p = doc.require_presentation()
    ident, chi = doc.character(ident)
    d = dim_h1(p, chi)
    order = character_order(chi)
    return {"command": "dim", "character": ident, "values": [str(chi)],
            "order": order if isinstance(order, int) else "generic",
            "dim": d, "sigma": list(range(1, d + 1))}


def compute_scan(doc: InputDocument, order: int, depth: int, cap: int) -> dict:
    p = doc.require_presentation()
    rows = []
    for chi, d in scan_torsion(p, order, depth, cap):
        rows.append({"values": [_q(x) for x in chi.roots], "order": point_order(chi.roots), "dim": d})
    return {"command": "scan", "order_bound": order, "depth": depth, "rows": rows}


def compute_sigma(doc: InputDocument, depth: int) -> dict:
    if doc.orbifold is None:
        raise CharvarError("orbifold-sigma needs an orbifold block")
    s = sigma_k(doc.orbifold, depth)
    return {"command": "orbifold-sigma", "orbifold": str(doc.orbifold), "depth": depth,
            "contains_trivial": s.contains_trivial,
            "labels": [{"exponents": list(lab.exponents), "roots": [_q(x) for x in lab.roots],
                        "length": lab.length} for lab in s.labels]}


def compute_generic_dims(doc: InputDocument, idents: list[str]) -> dict:
    p = doc.require_presentation()
    names = idents or list(doc.components)
    out = {}
    for name in names:
        ident, c = doc.component(name)
        out[ident] = generic_dim(p, c.subtorus)
    return {"command": "generic-dim", "generic_dims": out}


def compute_intersect(doc: InputDocument, idents: list[str]) -> dict:
    names = idents or list(doc.components)[:2]
    if len(names) != 2:
        raise CharvarError("intersect needs exactly two components")
    (i1, c1), (i2, c2) = doc.component(names[0]), doc.component(names[1])
    res = intersect(c1.subtorus, c2.subtorus)
    return {"command": "intersect", "components": [i1, i2], "dim": res.dim,
            "points": [{"values": [_q(x) for x in pt], "order": point_order(pt)} for pt in res.points],
            "pieces": [{"translation": [_q(x) for x in v.translation],
                        "exponents": [list(r) for r in v.exponents.rows]} for v in res.pieces]
            if res.dim > 0 else []}


def compute_report(doc: InputDocument, scan: tuple[int, int] | None) -> ObstructionReport:
    p = doc.require_presentation()
    comps = list(doc.components.values())
    index = {name: k for k, name in enumerate(doc.components)}
    pairs = [(index[a], index[b]) for a, b in doc.xi_distinct]
    return full_report(p, comps, doc.pullbacks, scan, pairs)


# -- text renderings --

def _text_dim(r: dict) -> str:
    sig = ", ".join(f"Sigma_{k}" for k in r["sigma"]) or "no Sigma_k with k >= 1"
    return f"{r['character']} = {r['values'][0]}\norder: {r['order']}\ndim H^1 = {r['dim']}\nin: {sig}"


def _text_scan(r: dict) -> str:
    lines = [f"# characters of order dividing {r['order_bound']} with dim H^1 >= {r['depth']}"]
    for k, row in enumerate(r["rows"]):
        lines.append(f"{k}\torder {row['order']}\tdim {row['dim']}\t({', '.join(row['values'])})")
    lines.append(f"# {len(r['rows'])} row(s)")
    return "\n".join(lines)


def _text_sigma(r: dict) -> str:
    lines = [f"Sigma_{r['depth']} of {r['orbifold']}",
             f"contains trivial character: {'yes' if r['contains_trivial'] else 'no'}",
             f"component labels: {len(r['labels'])}"]
    for lab in r["labels"]:
        lines.append(f"  ({', '.join(lab['roots'])})  length {lab['length']}")
    return "\n".join(lines)


def _text_generic(r: dict) -> str:
    return "\n".join(f"{k}: generic dim H^1 = {v}" for k, v in r["generic_dims"].items())


def _text_intersect(r: dict) -> str:
    a, b = r["components"]
    if r["dim"] < 0:
        return f"{a} and {b} are disjoint"
    lines = [f"{a} n {b}: dimension {r['dim']}"]
    for pt in r["points"]:
        lines.append(f"  point ({', '.join(pt['values'])})  order {pt['order']}")
    for pc in r["pieces"]:
        lines.append(f"  piece [{', '.join(pc['translation'])}] + exponents {pc['exponents']}")
    return "\n".join(lines)


# -- corpus --

@dataclass
class CorpusOutcome:
    name: str
    passed: bool
    checks: list[tuple[str, bool, str]]


def corpus_documents() -> list[tuple[str, dict]]:
    """The bundled corpus, sorted by file name."""
    root = resources.files("charvar") / "corpus"
    out = []
    for entry in sorted(root.iterdir(), key=lambda e: e.name):
        if entry.name.endswith(".json"):
            out.append((entry.name[:-5], json.loads(entry.read_text())))
    return out


def _in_range(value: int, spec) -> bool:
    if isinstance(spec, int):
        return value == spec
    lo, hi = spec.get("min"), spec.get("max")
    return (lo is None or value >= lo) and (hi is None or value <= hi)


def _gate(doc: InputDocument, spec: dict) -> tuple[bool, str]:
    ab = doc.require_presentation().abelianization
    got = {"free_rank": ab.rank, "torsion": list(ab.invariants)}
    ok = got["free_rank"] == spec["free_rank"] and got["torsion"] == spec["torsion"]
    return ok, f"H_1 free rank {got['free_rank']}, torsion {got['torsion']}"


def evaluate_entry(name: str, raw: dict) -> CorpusOutcome:
    checks: list[tuple[str, bool, str]] = []
    try:
        doc = parse_document(raw)
        exp = doc.expect
        if "gate" in exp:
            ok, msg = _gate(doc, exp["gate"])
            checks.append(("gate", ok, msg))
            if not ok:
                return CorpusOutcome(name, False, checks + [("expectations", False, "skipped: gate failed")])
        for ident, want in exp.get("dims", {}).items():
            d = compute_dim(doc, ident)["dim"]
            checks.append((f"dim {ident}", _in_range(d, want), f"dim {d}, expected {want}"))
        for s in exp.get("scan", []):
            r = compute_scan(doc, s["order"], s["depth"], s.get("cap", DEFAULT_SCAN_CAP))
            rows = r["rows"]
            if "count" in s:
                checks.append((f"scan {s['order']}/{s['depth']} count", len(rows) == s["count"],
                               f"{len(rows)} rows, expected {s['count']}"))
            if "rows" in s:
                got = [{"values": row["values"], "dim": row["dim"]} for row in rows]
                checks.append((f"scan {s['order']}/{s['depth']} rows", got == s["rows"], json.dumps(got)))
            for o, want in s.get("by_order", {}).items():
                dims = [row["dim"] for row in rows if row["order"] == int(o)]
                ok = bool(dims) and all(_in_range(d, want) for d in dims)
                checks.append((f"scan order-{o} dims", ok, f"dims {dims}, expected {want}"))
        for s in exp.get("sigma", []):
            r = compute_sigma(doc, s["depth"])
            ok = (len(r["labels"]) == s["labels"] and r["contains_trivial"] == s["contains_trivial"])
            if ok and "length" in s:
                ok = all(lab["length"] == s["length"] for lab in r["labels"])
            checks.append((f"sigma_{s['depth']}", ok,
                           f"{len(r['labels'])} labels, trivial {r['contains_trivial']}"))
        if "generic_dims" in exp:
            got = compute_generic_dims(doc, list(exp["generic_dims"]))["generic_dims"]
            checks.append(("generic dims", got == exp["generic_dims"], json.dumps(got, sort_keys=True)))
        if "report" in exp:
            want = exp["report"]
            scan = tuple(want["scan"]) if "scan" in want else None
            rep = compute_report(doc, scan)
            checks.append(("report overall", rep.overall == want["overall"], rep.overall))
            if "unexplained" in want:
                checks.append(("unexplained candidates", len(rep.unexplained) == want["unexplained"],
                               f"{len(rep.unexplained)} listed"))
            for rule in want.get("violated", []):
                hit = any(f.rule == rule and f.verdict == "VIOLATED" for f in rep.findings)
                checks.append((f"{rule} violated", hit, "witness found" if hit else "no witness"))
            for rule in want.get("satisfied", []):
                fs = [f for f in rep.findings if f.rule == rule]
                ok = bool(fs) and all(f.verdict == "satisfied" for f in fs)
                checks.append((f"{rule} satisfied", ok, f"{len(fs)} finding(s)"))
    except CharvarError as exc:
        checks.append(("evaluation", False, f"{type(exc).__name__}: {exc}"))
    return CorpusOutcome(name, all(ok for _, ok, _ in checks) and bool(checks), checks)


def run_corpus(names: list[str] | None = None) -> list[CorpusOutcome]:
    docs = [(n, raw) for n, raw in corpus_documents() if not names or n in names]
    nthreads = _threads()
    if nthreads > 1 and len(docs) > 1:
        with ThreadPoolExecutor(nthreads) as pool:
            return list(pool.map(lambda t: evaluate_entry(*t), docs))
    return [evaluate_entry(n, raw) for n, raw in docs]


# -- dispatch --

def _read_doc(path: str | None, stdin) -> InputDocument:
    if path is None or path == "-":
        text = stdin.read()
    else:
        try:
            with open(path, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise DocumentError(f"cannot read {path}: {exc}") from exc
    return load_document(text)


def _option(args, doc: InputDocument, key: str, default=None):
    v = getattr(args, key)
    if v is not None:
        return v
    return doc.options.get(key, default)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="charvar", description="Twisted cohomology jump loci of finitely presented groups.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", "-i", help="input document (default: standard input)")
    common.add_argument("--order", type=int, help="order bound N for torsion scans")
    common.add_argument("--depth", type=int, help="depth k")
    common.add_argument("--format", choices=("text", "machine"), default=None)
    common.add_argument("--cap", type=int, help=f"enumeration cap (default {DEFAULT_SCAN_CAP})")
    sub = ap.add_subparsers(dest="command", required=True)
    p = sub.add_parser("dim", parents=[common], help="dim H^1 at a character of the document")
    p.add_argument("--character", "-c")
    sub.add_parser("scan", parents=[common], help="torsion characters of order dividing N with dim >= k")
    sub.add_parser("orbifold-sigma", parents=[common], help="closed-form Sigma_k of the orbifold block")
    p = sub.add_parser("generic-dim", parents=[common], help="generic dim H^1 on candidate components")
    p.add_argument("--component", action="append", default=[])
    p = sub.add_parser("intersect", parents=[common], help="intersection of two candidate components")
    p.add_argument("--component", action="append", default=[])
    sub.add_parser("obstruct", parents=[common], help="run the obstruction battery")
    p = sub.add_parser("corpus", parents=[common], help="run the bundled example corpus")
    p.add_argument("--entry", action="append", default=[])
    return ap


def run(argv: list[str] | None = None, stdin=None, stdout=None, stderr=None) -> int:
    stdin = stdin or sys.stdin
    out = stdout or sys.stdout
    err = stderr or sys.stderr
    args = build_parser().parse_args(argv)
    try:
        if args.command == "corpus":
            return _cmd_corpus(args, out)
        doc = _read_doc(args.input, stdin)
        fmt = _option(args, doc, "format", "text")
        if fmt not in ("text", "machine"):
            raise DocumentError(f"unknown output format {fmt!r}")
        cap = _option(args, doc, "cap", DEFAULT_SCAN_CAP)
        if args.command == "dim":
            r = compute_dim(doc, args.character)
            _emit(r, _text_dim(r), fmt, out)
        elif args.command == "scan":
            order = _option(args, doc, "order")
            if order is None:
                raise DocumentError("scan needs --order (or options.order)")
            r = compute_scan(doc, order, _option(args, doc, "depth", 1), cap)
            _emit(r, _text_scan(r), fmt, out)
        elif args.command == "orbifold-sigma":
            r = compute_sigma(doc, _option(args, doc, "depth", 1))
            _emit(r, _text_sigma(r), fmt, out)
        elif args.command == "generic-dim":
            r = compute_generic_dims(doc, args.component)
            _emit(r, _text_generic(r), fmt, out)
        elif args.command == "intersect":
            r = compute_intersect(doc, args.component)
            _emit(r, _text_intersect(r), fmt, out)
        else:
            order = _option(args, doc, "order")
            scan = (order, _option(args, doc, "depth", 1)) if order is not None else None
            if scan is not None:
                from .fox import scan_size

                size = scan_size(doc.require_presentation(), order)
                if size > cap:
                    raise EnumerationCapExceeded(size, cap)
            rep = compute_report(doc, scan)
            _emit(rep.to_dict(), rep.to_text(), fmt, out)
            return EXIT_OBSTRUCTED if rep.obstructed else EXIT_OK
        return EXIT_OK
    except (DocumentError, PresentationError) as exc:
        err.write(f"charvar: parse error: {exc}\n")
        return EXIT_PARSE
    except EnumerationCapExceeded as exc:
        err.write(f"charvar: {exc}\n")
        return EXIT_CAP
    except (CharvarError, ValueError) as exc:
        err.write(f"charvar: error: {exc}\n")
        return EXIT_SEMANTIC


def _cmd_corpus(args, out) -> int:
    outcomes = run_corpus(args.entry or None)
    fmt = args.format or "text"
    payload = {"command": "corpus", "entries": [
        {"name": o.name, "passed": o.passed,
         "checks": [{"check": c, "passed": ok, "detail": d} for c, ok, d in o.checks]} for o in outcomes]}
    lines = []
    for o in outcomes:
        lines.append(f"{'PASS' if o.passed else 'FAIL'}  {o.name}")
        for c, ok, d in o.checks:
            lines.append(f"    {'ok ' if ok else 'BAD'} {c}: {d}")
    lines.append(f"{sum(o.passed for o in outcomes)}/{len(outcomes)} entries pass")
    _emit(payload, "\n".join(lines), fmt, out)
    return EXIT_OK if all(o.passed for o in outcomes) else EXIT_OBSTRUCTED


def main(argv: list[str] | None = None) -> int:
    return run(argv)


if __name__ == "__main__":
    sys.exit(main())
