"""Batch command-line front end.

Subcommands: s, kh, lee, ssr-s, stab, verify, bench.  Inputs come from
--builtin names, PD codes, braid words, or SSr JSON files (a literal string
is accepted wherever a path is; "-" reads stdin).  Output is JSON by
default, deterministic up to the timestamp (suppress it with --no-meta).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time

from .corpus import BUILTIN_S3_NAMES, BUILTIN_SSR_NAMES, builtin_diagram, builtin_ssr
from .cube import build_cube
from .diagrams import BraidWord, from_braid
from .errors import KhleeError, ParseError
from .lee import s_all_orientations, s_invariant
from .pdcode import parse_pd
from .reduction import scan_reduce
from .smith import homology_qt
from .ssr import SsrDiagram, s_ssr, stabilization_check
from .tlscan import scan_complex
from .verify import run_suite


def _read_source(value: str) -> str:
    if value == "-":
        return sys.stdin.read()
    if os.path.exists(value):
        with open(value) as fh:
            return fh.read()
    return value


def parse_braid_text(text: str) -> BraidWord:
    """`braid <n> [updown]: w1 w2 ...` with integer or e<i> letters."""
    text = text.strip()
    if not text.startswith("braid"):
        raise ParseError("braid input must start with 'braid <n> [pattern]:'")
    head, _, tail = text.partition(":")
    parts = head.split()
    if len(parts) < 2:
        raise ParseError("missing strand count in braid input")
    n = int(parts[1])
    orientation = ()
    if len(parts) >= 3:
        pat = parts[2]
        if set(pat) - set("ud"):
            raise ParseError(f"orientation pattern {pat!r} must use 'u'/'d'")
        orientation = tuple(ch == "u" for ch in pat)
    letters = []
    for tok in tail.split():
        if tok[0] in "eE":
            letters.append(("e", int(tok[1:])))
        else:
            letters.append(int(tok))
    return BraidWord(n, tuple(letters), orientation)


def parse_ssr_json(text: str) -> SsrDiagram:
    data = json.loads(text)
    orientation = tuple(ch == "u" for ch in data.get("orient", ""))
    letters = []
    for x in data.get("braid", []):
        if isinstance(x, str):
            letters.append(("e", int(x[1:])))
        else:
            letters.append(int(x))
    base = BraidWord(int(data["strands"]), tuple(letters), orientation)
    handles = tuple(tuple(h) for h in data.get("handles", []))
    return SsrDiagram(base, handles)


def load_diagram(args):
    sources = [x for x in (args.builtin, args.pd, args.braid, args.ssr) if x]
    if len(sources) != 1:
        raise ParseError("give exactly one of --builtin/--pd/--braid/--ssr")
    if args.builtin:
        return builtin_diagram(args.builtin)
    if args.pd:
        return parse_pd(_read_source(args.pd))
    if args.braid:
        return from_braid(parse_braid_text(_read_source(args.braid)))
    raise ParseError("this command needs a diagram in S^3, not an SSr diagram")


def load_ssr(args) -> SsrDiagram:
    if args.builtin:
        return builtin_ssr(args.builtin)
    if args.ssr:
        return parse_ssr_json(_read_source(args.ssr))
    raise ParseError("give --builtin NAME or --ssr FILE for an SSr diagram")


def _emit(args, payload: dict, command: str) -> None:
    if not args.no_meta:
        payload = dict(payload)
        payload["meta"] = {"command": command, "timestamp": time.strftime("%Y-%m-%dT%H:%M:%S")}
    if args.table:
        _print_table(payload)
    else:
        print(json.dumps(payload, sort_keys=True, default=str))


def _print_table(payload, indent=0):
    pad = "  " * indent
    for key in sorted(payload):
        val = payload[key]
        if isinstance(val, dict):
            print(f"{pad}{key}:")
            _print_table(val, indent + 1)
        else:
            print(f"{pad}{key}: {val}")


def _parse_orientation(text, components):
    if not text:
        return None
    if set(text) - set("+-"):
        raise ParseError("orientation must be a +- string, one sign per component")
    if len(text) != components:
        raise ParseError(f"orientation needs {components} signs")
    return tuple(1 if ch == "+" else -1 for ch in text)


def cmd_s(args):
    d = load_diagram(args)
    orientation = _parse_orientation(args.orientation, d.n_components)
    if args.all_orientations:
        reports = s_all_orientations(d, engine=args.engine, limit=args.limit)
        _emit(args, {"reports": [r.to_dict() for r in reports]}, "s")
        return 0
    rep = s_invariant(d, orientation, engine=args.engine, limit=args.limit)
    _emit(args, rep.to_dict(), "s")
    return 0


def _complex_for(d, engine, limit):
    if engine == "both":
        cube = build_cube(d, limit=limit).complex
        if d.braid is not None:
            sc = scan_complex(d, limit=limit)
            if sc.dims_at_t0() != cube.dims_at_t0() or sc.dims_at_t(1) != cube.dims_at_t(1):
                raise KhleeError("brute and scan homologies disagree")
        return cube
    if engine == "scan" and d.braid is not None:
        return scan_complex(d, limit=limit)
    if engine in ("scan", "reduced"):
        return scan_reduce(build_cube(d, limit=limit).complex)
    if engine in ("auto", "brute"):
        if engine == "auto" and d.braid is not None:
            return scan_complex(d, limit=limit)
        return build_cube(d, limit=limit).complex
    raise KhleeError(f"unknown engine {engine!r}")


def cmd_kh(args):
    d = load_diagram(args)
    cx = _complex_for(d, args.engine, args.limit)
    summary = homology_qt(cx)
    dims0 = {f"{h},{q}": v for (h, q), v in sorted(cx.dims_at_t0().items())}
    _emit(args, {"module": summary.to_dict(), "kh_dims_t0": dims0}, "kh")
    return 0


def cmd_lee(args):
    d = load_diagram(args)
    cx = _complex_for(d, args.engine, args.limit)
    dims1 = {str(h): v for h, v in sorted(cx.dims_at_t(1).items())}
    reports = s_all_orientations(d, engine=args.engine if args.engine != "both" else "auto",
                                 limit=args.limit)
    levels = [{"orientation": list(r.orientation), "s_min": r.s_min, "s_max": r.s_max}
              for r in reports]
    _emit(args, {"lee_dims_t1": dims1, "generator_filtration_levels": levels}, "lee")
    return 0


def cmd_ssr_s(args):
    s = load_ssr(args)
    rep = s_ssr(s, engine=args.engine if args.engine != "both" else "auto",
                limit=args.limit, check_stabilized=args.check_stabilized)
    _emit(args, rep.to_dict(), "ssr-s")
    return 0


def cmd_stab(args):
    s = load_ssr(args)
    table, stabilized = stabilization_check(
        s, args.kmax, engine=args.engine if args.engine != "both" else "auto",
        limit=args.limit, shift_per_k=args.shift)
    _emit(args, {
        "sweep": [{"k": k, "s": v, "shifted": sh} for k, v, sh in table],
        "stabilized": stabilized,
    }, "stab")
    return 0


def cmd_verify(args):
    results = run_suite(args.suite, quick=args.quick)
    ok = all(r[1] for r in results)
    payload = {
        "suite": args.suite,
        "passed": ok,
        "checks": [{"name": n, "ok": o, "detail": det} for n, o, det in results],
    }
    _emit(args, payload, "verify")
    return 0 if ok else 1


def cmd_bench(args):
    import time as _t

    from .corpus import torus_word

    rows = []
    for p in range(2, args.max_p + 1):
        d = from_braid(BraidWord(p, torus_word(p, p)))
        t0 = _t.perf_counter()
        cx = _complex_for(d, args.engine, args.limit)
        t1 = _t.perf_counter()
        rep = s_invariant(d, engine="scan" if args.engine in ("auto", "scan", "both") else "brute",
                          limit=args.limit, with_module=False, _compute_plus=False)
        t2 = _t.perf_counter()
        rows.append({"link": f"T({p},{p})", "crossings": d.n_crossings,
                     "reduce_seconds": round(t1 - t0, 3),
                     "s_seconds": round(t2 - t1, 3), "s": rep.s,
                     "generators": cx.n_gens})
    _emit(args, {"bench": rows}, "bench")
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="khlee",
        description="Deformed Khovanov-Lee homology over Q[t] and s-invariants "
                    "for links in S^3 and #^r(S^1 x S^2)")
    sub = ap.add_subparsers(dest="command", required=True)

    def add_common(p, ssr_input=False):
        p.add_argument("--builtin", help="built-in diagram name, e.g. " +
                       ", ".join(BUILTIN_S3_NAMES if not ssr_input else BUILTIN_SSR_NAMES))
        if not ssr_input:
            p.add_argument("--pd", help="PD code: file path, literal, or '-'")
            p.add_argument("--braid", help="braid word: file path, literal, or '-'")
        p.add_argument("--ssr", help="SSr diagram JSON: file path, literal, or '-'")
        p.add_argument("--engine", default="auto",
                       choices=["auto", "brute", "scan", "reduced", "both"])
        p.add_argument("--limit", type=int, default=None,
                       help="generator budget (default KHLEE_LIMIT or 2^22)")
        p.add_argument("--json", action="store_true", help="JSON output (default)")
        p.add_argument("--table", action="store_true", help="plain table output")
        p.add_argument("--no-meta", action="store_true",
                       help="omit the timestamp metadata")

    p = sub.add_parser("s", help="Rasmussen s-invariant report")
    add_common(p)
    p.add_argument("--orientation", help="component orientation signs, e.g. +-+")
    p.add_argument("--all-orientations", action="store_true")
    p.set_defaults(func=cmd_s)

    p = sub.add_parser("kh", help="homology as a graded Q[t]-module + t=0 dims")
    add_common(p)
    p.set_defaults(func=cmd_kh)

    p = sub.add_parser("lee", help="t=1 dimensions and Lee filtration levels")
    add_common(p)
    p.set_defaults(func=cmd_lee)

    p = sub.add_parser("ssr-s", help="stabilized s_-, s_+ of a link in #^r(S^1xS^2)")
    add_common(p, ssr_input=True)
    p.add_argument("--check-stabilized", action="store_true")
    p.set_defaults(func=cmd_ssr_s)

    p = sub.add_parser("stab", help="k-sweep of s(D(k,...,k))")
    add_common(p, ssr_input=True)
    p.add_argument("--kmax", type=int, required=True)
    p.add_argument("--shift", type=int, default=0,
                   help="subtract shift*k from each value before comparing")
    p.set_defaults(func=cmd_stab)

    p = sub.add_parser("verify", help="run an invariant suite")
    add_common(p)
    p.add_argument("--suite", default="all",
                   choices=["all", "oracle", "s3-properties", "ssr-properties"])
    p.add_argument("--quick", action="store_true", help="smaller corpus")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("bench", help="time build/reduce on T(p,p)")
    add_common(p)
    p.add_argument("--max-p", type=int, default=4)
    p.set_defaults(func=cmd_bench)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.func(args)
    except KhleeError as e:
        print(json.dumps({"error": type(e).__name__, "message": str(e)}),
              file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
