"""``plumb``: command-line access to the pipeline.

Exit status 0 on success, 1 for domain errors (definiteness, hypotheses,
failed verification), 2 for resource errors, 3 for bad input.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
import time

from . import catalog
from .dcomb import DEFAULT_STATE_CAP, build_classes
from .errors import GraphInputError, PlumbError
from .fullpath import run_full_path
from .graph import analyze, intersection_form, parse_graph, seifert_to_star
from .lattice import check_characteristic, enumerate_spinc, spinc_of
from .module import d_invariant, hf_summary
from .verify import FAIL, run_verify


def load_graph(source: str):
    """A file path, a catalog name like ``@e8``, or inline graph text."""
    if source.startswith("@"):
        name = source[1:]
        if name not in catalog.GOLDEN:
            raise GraphInputError(f"unknown catalog graph {name!r}; "
                                  f"choose from {', '.join(catalog.GOLDEN)}")
        return catalog.GOLDEN[name]()
    if os.path.isfile(source):
        with open(source, encoding="utf-8") as fh:
            return parse_graph(fh.read())
    return parse_graph(source)


def parse_vector(text: str) -> tuple[int, ...]:
    body = text.strip().strip("()[]")
    try:
        return tuple(int(x) for x in body.replace(",", " ").split())
    except ValueError:
        raise GraphInputError(f"cannot read {text!r} as an integer vector") from None


def fmt_vec(k) -> str:
    return "(" + ", ".join(str(x) for x in k) + ")"


def _select(form, args):
    classes = enumerate_spinc(form)
    if getattr(args, "spinc_vector", None):
        return [spinc_of(form, check_characteristic(form, parse_vector(args.spinc_vector)))]
    if args.spinc is None or args.spinc == "all":
        return list(classes)
    try:
        return [classes[int(args.spinc)]]
    except (ValueError, IndexError):
        raise GraphInputError(f"--spinc must be 'all' or an index below {len(classes)}") from None


def _emit(args, payload: dict, text: str) -> None:
    if args.format == "json":
        print(json.dumps(payload, indent=2, sort_keys=False))
    else:
        print(text)


def cmd_info(args) -> int:
    g = load_graph(args.graph)
    rep = analyze(g)
    payload = {
        "graph_hash": g.graph_hash(),
        "vertices": g.n,
        "weights": list(g.weights),
        "edges": [list(e) for e in g.edges],
        "negative_definite": rep.is_negative_definite,
        "bad_vertices": list(rep.bad_vertices),
        "regime": rep.validity_regime,
        "h1_order": rep.h1_order,
    }
    text = "\n".join(f"{k}: {v}" for k, v in payload.items())
    _emit(args, payload, text)
    return 0


def cmd_spinc(args) -> int:
    form = intersection_form(load_graph(args.graph))
    form.require_negative_definite()
    classes = enumerate_spinc(form)
    _emit(args, {"spinc": [c.to_json() for c in classes]},
          "\n".join(f"#{c.index}: {list(c.residue)}" for c in classes))
    return 0


def cmd_path(args) -> int:
    form = intersection_form(load_graph(args.graph))
    form.require_negative_definite()
    k0 = check_characteristic(form, parse_vector(args.start))
    res = run_full_path(form, k0)
    if res.good:
        verdict = f"good, L = {fmt_vec(res.terminal)}"
    else:
        verdict = f"bad at vertex {res.witness}: <K,v> = {res.terminal[res.witness]}"
    payload = {"start": list(k0), "steps": [{"vertex": v, "k": list(k)} for v, k in res.steps],
               "good": res.good, "terminal": list(res.terminal), "witness": res.witness}
    lines = [fmt_vec(k) for k in res.vectors] + [verdict]
    _emit(args, payload, "\n".join(lines))
    return 0


def cmd_classes(args) -> int:
    form = intersection_form(load_graph(args.graph))
    form.require_negative_definite()
    out, lines = [], []
    for t in _select(form, args):
        table = build_classes(form, t, args.max_level, args.margin, args.state_cap)
        recs = [r.to_json() for r in table.bounded_classes()]
        recs.sort(key=lambda r: (r["kill_level"], r["degree"], r["representative"]["k"]))
        out.append({"spinc": t.to_json(), "classes": recs})
        lines.append(f"Spin^c #{t.index}:")
        for r in recs:
            lines.append(f"  degree {r['degree']}, kill level {r['kill_level']}, "
                         f"U^{r['representative']['level']} {fmt_vec(r['representative']['k'])}")
    _emit(args, {"max_level": args.max_level, "margin": args.margin, "spinc": out},
          "\n".join(lines))
    return 0


def cmd_hf(args) -> int:
    g = load_graph(args.graph)
    form = intersection_form(g)
    form.require_negative_definite()
    classes = _select(form, args)
    whole = args.spinc in (None, "all") and not args.spinc_vector
    summary = hf_summary(form, None if whole else classes, max_level=args.max_level,
                         margin=args.margin, state_cap=args.state_cap)
    text = summary.to_text()
    if args.verbose:
        text += (f"\n{summary.interpretation}; HF_red rank {summary.hf_red_total_rank}"
                 f"; HF-hat rank {summary.hat_rank}")
    _emit(args, summary.to_json(), text)
    return 0


def cmd_dinv(args) -> int:
    form = intersection_form(load_graph(args.graph))
    form.require_negative_definite()
    rows, lines = [], []
    for t in _select(form, args):
        d_y, d_my = d_invariant(form, t, exhaustive=args.exhaustive)
        rows.append({"spinc": t.to_json(), "d_Y": _f(d_y), "d_minusY": _f(d_my)})
        prefix = f"Spin^c #{t.index}: " if abs(form.det) > 1 else ""
        lines.append(f"{prefix}d(Y) = {_f(d_y)}, d(-Y) = {_f(d_my)}")
    _emit(args, {"d": rows}, "\n".join(lines))
    return 0


def _f(x) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def cmd_verify(args) -> int:
    g = load_graph(args.graph)
    t0 = time.perf_counter()
    checks = run_verify(g, seed=args.seed, runs=args.runs, state_cap=args.state_cap)
    width = max(len(c.name) for c in checks)
    lines = [f"{c.name:<{width}}  {c.status.upper():<4}  {c.detail}" for c in checks]
    lines.append(f"({time.perf_counter() - t0:.1f}s)")
    _emit(args, {"graph_hash": g.graph_hash(),
                 "checks": [{"name": c.name, "status": c.status, "detail": c.detail}
                            for c in checks]}, "\n".join(lines))
    return 1 if any(c.status == FAIL for c in checks) else 0


def cmd_seifert(args) -> int:
    legs = []
    for tok in args.legs:
        try:
            p, q = tok.split("/")
            legs.append((int(p), int(q)))
        except ValueError:
            raise GraphInputError(f"cannot read Seifert invariant {tok!r}; expected p/q") from None
    g = seifert_to_star(args.e0, legs)
    if args.format == "json":
        print(g.to_json())
    else:
        print(g.to_compact())
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="plumb", description=(
        "Heegaard Floer homology of negative-definite plumbings. GRAPH is a "
        "file, inline text such as '1; -2;', 'seifert -1 2/1 3/1 7/1', or a "
        "catalog name (@e8, @sigma237, @sigma357, @y12, @y_minus1)."))
    p.add_argument("--seed", type=int, default=0, help="seed for randomized checks")
    p.add_argument("--state-cap", type=int, default=None,
                   help=f"max explored states (default {DEFAULT_STATE_CAP}, or $PLUMB_STATE_CAP)")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, help_, spinc=False, levels=False):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("graph")
        # accepted after the subcommand as well
        sp.add_argument("--seed", type=int, default=argparse.SUPPRESS)
        sp.add_argument("--state-cap", type=int, default=argparse.SUPPRESS)
        sp.add_argument("--format", choices=("text", "json"), default="text")
        if spinc:
            sp.add_argument("--spinc", default=None, help="class index or 'all'")
            sp.add_argument("--spinc-vector", default=None,
                            help="select the class of this characteristic vector")
        if levels:
            sp.add_argument("--max-level", type=int, default=None)
            sp.add_argument("--margin", type=int, default=1)
        sp.set_defaults(func=fn)
        return sp

    add("info", cmd_info, "graph report: definiteness, bad vertices, regime, |H_1|")
    add("spinc", cmd_spinc, "list Spin^c classes")
    add("path", cmd_path, "print a full path").add_argument("--start", required=True)
    cl = add("classes", cmd_classes, "DComb+ classes with kill levels", spinc=True, levels=True)
    cl.set_defaults(max_level=1)
    hf = add("hf", cmd_hf, "HF+(-Y(G)) as a graded module", spinc=True, levels=True)
    hf.add_argument("-v", "--verbose", action="store_true")
    dv = add("dinv", cmd_dinv, "d-invariants", spinc=True)
    dv.add_argument("--exhaustive", action="store_true", help="search the whole box")
    vf = add("verify", cmd_verify, "run the self-checks and print a pass/fail table")
    vf.add_argument("--runs", type=int, default=100, help="random path policies per start")
    sf = sub.add_parser("seifert", help="expand Seifert invariants into a star plumbing")
    sf.add_argument("e0", type=int)
    sf.add_argument("legs", nargs="*", help="p/q pairs")
    sf.add_argument("--format", choices=("text", "json"), default="text")
    sf.set_defaults(func=cmd_seifert)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except PlumbError as exc:
        print(f"plumb: error: {exc}", file=sys.stderr)
        return exc.exit_status


if __name__ == "__main__":
    sys.exit(main())
