"""Command-line front end.

Exit codes: 0 success, 1 assertion or corpus failure, 2 usage, parse or
evaluation error.  The default group and field come from CHEV_FIELD, e.g.
``CHEV_FIELD=F4(t)`` (F4 over F_4(t)) or ``CHEV_FIELD=G2/F3(t)``.
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def parse_field_spec(spec):
    """'F4(t)' -> ('F4', 4, True); 'G2/F3(t)' -> ('G2', 3, True); 'F4/F16' -> ('F4', 16, False)."""
    spec = spec.strip()
    m = re.fullmatch(r"(?:([A-Ga-g]_?\d+)\s*/\s*)?(?:F|GF)\(?(\d+)\)?(\(t\))?", spec)
    if not m:
        raise UsageError(f"cannot read field {spec!r}; expected e.g. F4(t) or B3/F3(t)")
    return (m.group(1) or "F4"), int(m.group(2)), bool(m.group(3))


def make_group(args):
    from .fields import FieldError
    from .rootsys import RootSystemError
    from .words import ChevalleyGroup

    spec = args.field or os.environ.get("CHEV_FIELD") or "F4(t)"
    typ, q, rational = parse_field_spec(spec)
    if args.type:
        typ = args.type
    try:
        return ChevalleyGroup(typ, q, rational)
    except (FieldError, RootSystemError, ValueError) as exc:
        raise UsageError(str(exc)) from None


def emit(args, data, text):
    if args.json:
        print(json.dumps(data, sort_keys=True, indent=2))
    else:
        print(text)


def _eval_word(group, src):
    from .dsl import Evaluator, parse_expr

    return Evaluator(group).eval(parse_expr(src))


def _cochar(group, src):
    from .parabolic import Cocharacter

    try:
        coeffs = tuple(int(c) for c in re.split(r"[,\s]+", src.strip().strip("()")) if c)
    except ValueError:
        v = _eval_word(group, src)
        if isinstance(v, Cocharacter):
            return v
        raise UsageError(f"not a cocharacter: {src!r}") from None
    if len(coeffs) != group.rs.rank:
        raise UsageError(f"cocharacter needs {group.rs.rank} coefficients")
    return Cocharacter(coeffs)


# ---------------------------------------------------------------------------
# subcommands

def cmd_rootsys(args):
    from .lie import compute_structure_constants
    from .rootsys import build_root_system

    try:
        rs = build_root_system(args.label)
    except Exception as exc:
        raise UsageError(str(exc)) from None
    data = rs.to_json()
    if args.constants:
        data["structure_constants"] = compute_structure_constants(rs).to_json()
    lines = [f"type {rs.type_label}, rank {rs.rank}, {rs.N} positive roots"]
    for r in rs.positive:
        lines.append(f"{r.index:4}  {''.join(str(c) for c in r.coeffs)}  {'long' if r.long else 'short'}")
    emit(args, data, "\n".join(lines))
    return EXIT_OK


def cmd_collect(args):
    from .dsl import to_jsonable
    from .words import CollectionError, collect

    G = make_group(args)
    w = _word_arg(G, args.word)
    lam = _cochar(G, args.cochar) if args.cochar else None
    try:
        cw = collect(w, cochar=lam).as_word()
    except CollectionError as exc:
        raise UsageError(str(exc)) from None
    emit(args, to_jsonable(cw), str(cw))
    return EXIT_OK


def cmd_conjugate(args):
    from .dsl import to_jsonable
    from .words import CollectionError, collect

    G = make_group(args)
    u, w = _word_arg(G, args.u), _word_arg(G, args.word)
    lam = _cochar(G, args.cochar) if args.cochar else None
    try:
        cw = collect(u * w * u.inverse(), cochar=lam).as_word()
    except CollectionError as exc:
        raise UsageError(str(exc)) from None
    emit(args, to_jsonable(cw), str(cw))
    return EXIT_OK


def cmd_limit(args):
    from .parabolic import take_limit

    G = make_group(args)
    lam = _cochar(G, args.cochar)
    lim = take_limit(lam, _word_arg(G, args.word))
    emit(args, {"limit": None if lim is None else str(lim)}, "none" if lim is None else str(lim))
    return EXIT_OK


def cmd_classify(args):
    from .parabolic import classify

    G = make_group(args)
    c = classify(G.rs, _cochar(G, args.cochar))
    text = "\n".join(f"{k}: {' '.join(str(i) for i in v)}" for k, v in c.items())
    emit(args, c, text)
    return EXIT_OK


def cmd_obstruct(args):
    from .crcheck import UnsupportedSystem, first_obstruction, sigma_obstruction

    G = make_group(args)
    try:
        if args.sigma or args.sigma_unrestricted:
            s, meta = sigma_obstruction(G, squared=not args.sigma_unrestricted)
        else:
            a = _eval_word(G, args.a) if args.a else None
            s, meta = first_obstruction(G, a=a), {}
    except UnsupportedSystem as exc:
        emit(args, {"error": str(exc), "equations": exc.equations},
             f"{exc}\n" + "\n".join(exc.equations))
        return EXIT_FAIL
    except (ValueError, ArithmeticError) as exc:
        raise UsageError(str(exc)) from None
    data = s.to_json()
    data.update(meta)
    lines = ["equations:"] + [f"  {e}" for e in s.equation_strings()]
    lines.append(f"solvable over K: {s.solvable_K}  ({s.justification_K})")
    lines.append(f"solvable over k: {s.solvable_k}  ({s.justification_k})")
    emit(args, data, "\n".join(lines))
    return EXIT_OK


def cmd_weilres(args):
    from .weilres import WeilError, WeilRestriction, demo

    try:
        if args.demo:
            data = demo(args.p, args.s)
        else:
            W = WeilRestriction(args.p, args.s)
            c = W.theta() if W.n > 1 else W.basis(0)
            data = {"theta_matrix": [[str(x) for x in row] for row in W.weil_matrix(c)]}
    except WeilError as exc:
        raise UsageError(str(exc)) from None
    text = "\n".join(f"{k}: {v}" for k, v in data.items())
    emit(args, data, text)
    return EXIT_OK


def cmd_verify(args):
    from .crcheck import corpus_ok, report_json, report_text, run_corpus

    results = run_corpus()
    if args.json:
        print(report_json(results))
    else:
        print(report_text(results))
    return EXIT_OK if corpus_ok(results) else EXIT_FAIL


def _word_arg(G, src):
    from .dsl import DSLEvalError, DSLSyntaxError
    from .words import GroupWord, TorusElem

    try:
        v = _eval_word(G, src)
    except (DSLSyntaxError, DSLEvalError) as exc:
        raise UsageError(str(exc)) from None
    if isinstance(v, TorusElem):
        v = G.torus_word(v)
    if not isinstance(v, GroupWord):
        raise UsageError(f"not a word: {src!r}")
    return v


def run_source(args, source):
    from .dsl import DSLSyntaxError, parse, run, to_text

    G = make_group(args)
    try:
        script = parse(source)
    except DSLSyntaxError as exc:
        if args.json:
            print(json.dumps({"error": "syntax", "line": exc.line, "column": exc.col,
                              "message": exc.message}, sort_keys=True))
        else:
            print(f"syntax error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    results = run(script, G)
    if args.json:
        print(json.dumps([r.to_json() for r in results], sort_keys=True, indent=2))
    else:
        for r in results:
            if r.kind == "error":
                print(f"error in statement {r.index + 1} (line {r.line}) `{r.source}`: {r.error}", file=sys.stderr)
            elif r.kind == "assert":
                print(f"{'ok' if r.ok else 'FAILED'}: {r.source}")
            elif r.kind == "value":
                print(to_text(r.value))
    if any(r.kind == "error" for r in results):
        return EXIT_USAGE
    if any(not r.ok for r in results):
        return EXIT_FAIL
    return EXIT_OK


def cmd_run(args):
    if args.script in (None, "-"):
        source = sys.stdin.read()
    else:
        try:
            with open(args.script, encoding="utf-8") as fh:
                source = fh.read()
        except OSError as exc:
            raise UsageError(str(exc)) from None
    return run_source(args, source)


def cmd_repl(args):
    from .dsl import DSLSyntaxError, Evaluator, parse, run, to_text

    G = make_group(args)
    ev = Evaluator(G)
    status = EXIT_OK
    interactive = sys.stdin.isatty()
    while True:
        if interactive:
            print("chevcr> ", end="", flush=True)
        line = sys.stdin.readline()
        if not line:
            break
        if line.strip() in ("quit", "exit"):
            break
        try:
            script = parse(line)
        except DSLSyntaxError as exc:
            print(f"syntax error: {exc}")
            status = EXIT_USAGE
            continue
        for r in run(script, G, evaluator=ev):
            if r.kind == "error":
                print(f"error: {r.error}")
                status = EXIT_USAGE
            elif r.kind == "assert":
                print("ok" if r.ok else "FAILED")
                if not r.ok and status == EXIT_OK:
                    status = EXIT_FAIL
            elif r.kind in ("value", "let"):
                print(to_text(r.value))
    return status


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--field", help="group and field, e.g. F4(t) or B3/F3(t) (default: $CHEV_FIELD or F4(t))")
    common.add_argument("--type", help="override the Cartan type of the group")

    p = argparse.ArgumentParser(prog="chevcr", parents=[common],
                                description="Chevalley groups over F_q(t): collection, parabolics, rationality checks")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("rootsys", parents=[common], help="enumerate a root system")
    s.add_argument("label", nargs="?", default="F4")
    s.add_argument("--constants", action="store_true", help="include structure constants")
    s.set_defaults(func=cmd_rootsys)

    s = sub.add_parser("collect", parents=[common], help="collect a word into normal form")
    s.add_argument("word")
    s.add_argument("--cochar", help="sort by weight of this cocharacter, e.g. 2,4,3,2")
    s.set_defaults(func=cmd_collect)

    s = sub.add_parser("conjugate", parents=[common], help="collect u w u^-1")
    s.add_argument("u")
    s.add_argument("word")
    s.add_argument("--cochar")
    s.set_defaults(func=cmd_conjugate)

    s = sub.add_parser("limit", parents=[common], help="limit of lambda(a) w lambda(a)^-1 as a -> 0")
    s.add_argument("cochar")
    s.add_argument("word")
    s.set_defaults(func=cmd_limit)

    s = sub.add_parser("classify", parents=[common], help="roots of P, L and U for a cocharacter")
    s.add_argument("cochar")
    s.set_defaults(func=cmd_classify)

    s = sub.add_parser("obstruct", parents=[common], help="the rational conjugacy equations for H")
    s.add_argument("--a", help="the element a (default t^2)")
    s.add_argument("--sigma", action="store_true", help="sigma-twisted run with sigma(u) as conjugator")
    s.add_argument("--sigma-unrestricted", action="store_true",
                   help="sigma-twisted run with unrestricted unknowns at the sigma-image roots")
    s.set_defaults(func=cmd_obstruct)

    s = sub.add_parser("weilres", parents=[common], help="Weil restriction of G_m as matrices")
    s.add_argument("--p", type=int, default=2)
    s.add_argument("--s", type=int, default=1)
    s.add_argument("--demo", action="store_true")
    s.set_defaults(func=cmd_weilres)

    s = sub.add_parser("verify-paper", parents=[common], help="run the full scenario corpus")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("run", parents=[common], help="run a script file (or stdin with '-')")
    s.add_argument("script", nargs="?")
    s.set_defaults(func=cmd_run)

    s = sub.add_parser("repl", parents=[common], help="interactive evaluation")
    s.set_defaults(func=cmd_repl)
    return p


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
