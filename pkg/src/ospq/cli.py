"""Command-line front end: ``ospq <verb> ...``.

Verbs: rep, cgc, corep, normal-form, verify, table, fock, eval.  Output is
deterministic; the exit status is 0 iff every requested check passes.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from fractions import Fraction

import mpmath

from . import afun, cgc, covariant, realize, suites, urep
from .config import ENV_VAR, load_config, probes
from .expr import (
    ParseError, format_element, format_scalar, format_scalar_kulish, latex_scalar, parse,
    parse_scalar, scalar_to_struct,
)
from .scalar import eval_numeric

FORMATS = ("text", "json", "csv", "latex")


class UsageError(Exception):
    pass


# ---------------------------------------------------------------------------
# exporters

def _dump_json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _csv(rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    for row in rows:
        w.writerow(row)
    return buf.getvalue()


def _latex_matrix(cells: list[list[str]]) -> str:
    body = " \\\\\n".join("  " + " & ".join(row) for row in cells)
    return "\\begin{pmatrix}\n" + body + "\n\\end{pmatrix}\n"


def export_graded_matrix(M: urep.GradedMatrix, fmt: str) -> str:
    if fmt in ("text", "json"):
        if fmt == "json":
            return _dump_json(M.to_struct())
        return "\n".join("  ".join(format_scalar(a) for a in row) for row in M.entries) + "\n"
    if fmt == "csv":
        n, m = M.shape
        return _csv([["row", "col", "value"]] + [[i, j, format_scalar(M[i, j])]
                                                  for i in range(n) for j in range(m)])
    return _latex_matrix([[latex_scalar(a) if not a.is_zero() else "0" for a in row] for row in M.entries])


def _poly_text(p) -> str:
    if isinstance(p, afun.NCPoly):
        names = dict(enumerate(afun.NAMES))
        return format_element(p.terms, names, scalar_format=format_scalar_kulish)
    if isinstance(p, realize.OscPoly):
        words = {tuple(m.word()): c for m, c in p.terms.items()}
        return format_element(words, scalar_format=format_scalar_kulish, order=_osc_order(p))
    return format_element(p.terms, scalar_format=format_scalar_kulish)


def _osc_order(p):
    rank = {tuple(m.word()): (m.i + m.j + m.eps, m) for m in p.terms}
    return lambda w: rank[w]


def export_corep(T: afun.CorepMatrix, fmt: str) -> str:
    idx = T.indices()
    if fmt == "json":
        data = {"ell": T.ell, "lambda": T.lam,
                "entries": {f"{mp},{m}": {"value": _poly_text(T[(mp, m)]), "parity": T.parity(mp, m)}
                            for mp in idx for m in idx}}
        return _dump_json(data)
    if fmt == "csv":
        return _csv([["m_prime", "m", "parity", "value"]]
                    + [[mp, m, T.parity(mp, m), _poly_text(T[(mp, m)])] for mp in idx for m in idx])
    if fmt == "latex":
        from .expr import latex_text
        return _latex_matrix([[latex_text(_poly_text(T[(mp, m)])) for m in idx] for mp in idx])
    return "".join(f"T({mp},{m}) [{T.parity(mp, m)}] = {_poly_text(T[(mp, m)])}\n" for mp in idx for m in idx)


def export_report(results: list[suites.SuiteResult], fmt: str, verbose: bool = False) -> str:
    if fmt == "json":
        return _dump_json([{"suite": r.name, "ok": r.ok, "checks": [c.as_dict() for c in r.checks]}
                           for r in results])
    if fmt == "csv":
        rows = [["suite", "id", "ok", "detail"]]
        for r in results:
            rows += [[r.name, c.id, "true" if c.ok else "false", c.detail] for c in r.checks]
        return _csv(rows)
    if fmt == "latex":
        raise UsageError("reports have no latex export")
    lines = []
    for r in results:
        passed = sum(c.ok for c in r.checks)
        lines.append(f"{'PASS' if r.ok else 'FAIL'} {r.name}: {passed}/{len(r.checks)} checks")
        for c in r.checks:
            if verbose or not c.ok:
                tail = f"  ({c.detail})" if c.detail else ""
                lines.append(f"  {'ok  ' if c.ok else 'FAIL'} {c.id}{tail}")
    failed = [r for r in results if not r.ok]
    if failed:
        first = failed[0].first_failure()
        lines.append(f"first failure: {failed[0].name} / {first.id}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# presentations known to ``table``

PRESENTATIONS = {
    "superspace0": lambda: covariant.superspace0(),
    "superspace0-odd-xi": lambda: covariant.superspace0(xi="xi_odd"),
    "superspace1": lambda: covariant.superspace1("L2_only"),
    "superspace1-radius": lambda: covariant.superspace1("with_radius"),
    "supersphere": lambda: covariant.supersphere(),
    "sphere-raw": lambda: covariant.sphere_raw_presentation((2, 3)),
}


def _presentation(name: str) -> covariant.Presentation:
    if name in PRESENTATIONS:
        return PRESENTATIONS[name]()
    if os.path.exists(name):
        with open(name, encoding="utf-8") as fh:
            return covariant.load_presentation(fh.read())
    raise UsageError(f"unknown presentation {name!r}; known: {', '.join(PRESENTATIONS)}")


def export_presentation(pres: covariant.Presentation, fmt: str) -> str:
    if fmt == "text":
        return covariant.export_presentation(pres)
    if fmt == "latex":
        return covariant.presentation_latex(pres)
    if fmt == "json":
        return _dump_json({
            "name": pres.name,
            "generators": [{"name": g, "parity": p} for g, p in pres.generators],
            "parameters": dict(sorted(pres.params.items())),
            "relations": [{"label": r.label, "kind": r.kind, "poly": str(r.poly)} for r in pres.relations],
            "rules": pres.rule_lines(),
        })
    return _csv([["kind", "label", "poly"]] + [[r.kind, r.label, str(r.poly)] for r in pres.relations])


# ---------------------------------------------------------------------------
# verbs

def cmd_rep(args) -> tuple[str, bool]:
    if args.gen == "casimir":
        M = urep.casimir(args.ell, args.lam)
    else:
        M = urep.rep_generator(urep.canonical_generator(args.gen), args.ell, args.lam)
    return export_graded_matrix(M, args.format), True


def cmd_cgc(args) -> tuple[str, bool]:
    if args.m1 is not None or args.m2 is not None:
        if args.l is None or args.m1 is None or args.m2 is None:
            raise UsageError("a single coefficient needs --l, --m1 and --m2")
        if not cgc.in_domain(args.l1, args.l2, args.l, args.m1, args.m2):
            raise UsageError("indices outside the coupling domain")
        c = cgc.cgc_closed(args.l1, args.l2, args.l, args.m1, args.m2, args.lam)
        if args.format == "json":
            return _dump_json({"value": format_scalar(c), "struct": scalar_to_struct(c)}), True
        if args.format == "latex":
            return latex_scalar(c) + "\n", True
        return format_scalar_kulish(c) + "\n", True
    fmt = "json" if args.format == "text" else args.format
    try:
        return cgc.emit_table(args.l1, args.l2, args.lam, fmt, ell=args.l), True
    except ValueError as e:
        raise UsageError(str(e)) from e


def cmd_corep(args) -> tuple[str, bool]:
    T = afun.corep_matrix(args.ell, args.lam, bound=int(load_config()["ell_bound"]))
    return export_corep(T, args.format), True


def cmd_normal_form(args) -> tuple[str, bool]:
    if args.dialect == "covariant":
        pres = _presentation(args.presentation)
        p = pres.normal_form(pres.parse(args.expr))
    elif args.dialect in ("afun", "osc"):
        p = parse(args.expr, args.dialect)
    else:
        raise UsageError(f"normal-form does not apply to dialect {args.dialect!r}")
    if args.format == "json":
        return _dump_json({"input": args.expr, "normal_form": _poly_text(p),
                           "terms": [{"word": str(w), "coefficient": scalar_to_struct(c)}
                                     for w, c in sorted(p.terms.items(), key=lambda t: str(t[0]))]}), True
    if args.format == "latex":
        from .expr import latex_text
        return latex_text(_poly_text(p)) + "\n", True
    return _poly_text(p) + "\n", True


def cmd_verify(args) -> tuple[str, bool]:
    names = list(suites.SUITES) if "all" in args.suites else args.suites
    unknown = [n for n in names if n not in suites.suite_names()]
    if unknown:
        raise UsageError(f"unknown suite(s) {unknown}; known: all, {', '.join(suites.suite_names())}")
    results = [suites.run_suite(n) for n in names]
    return export_report(results, args.format, args.verbose), all(r.ok for r in results)


def cmd_table(args) -> tuple[str, bool]:
    pres = _presentation(args.name)
    if args.consistency:
        rep = covariant.consistency_check(pres)
        if args.format == "csv":
            return rep.to_csv(), True
        if args.format == "json":
            return _dump_json(rep.as_dict()), True
        if args.format == "latex":
            raise UsageError("consistency reports have no latex export")
        bad = rep.failing_diamonds()
        text = (f"{pres.name}: condition (a) {'ok' if rep.a_ok else 'fails'}, "
                f"condition (b) {len(rep.condition_b) - len(bad)}/{len(rep.condition_b)} diamonds resolve, "
                f"{len(rep.degenerate)} degenerate relations\n")
        return text + "".join(f"  unresolved {' '.join(t)}\n" for t, *_ in bad), True
    return export_presentation(pres, args.format), True


def cmd_fock(args) -> tuple[str, bool]:
    q = Fraction(args.q)
    model = realize.fock_representation(args.cutoff, q, args.precision)
    tol = mpmath.mpf(args.tol)
    res = dict(model.residuals)
    res.update({f"sphere:{k}": v for k, v in realize.fock_sphere_residuals(model).items()})
    lo, hi, off = realize.fock_radius(model)
    exact = model.number(realize.oscillator_r())
    res["radius"] = max(abs(lo - exact), abs(hi - exact), off)
    ok = all(v < tol for v in res.values())
    meta = {"q": str(q), "cutoff": args.cutoff, "precision": args.precision,
            "residuals": {k: mpmath.nstr(v, 5) for k, v in sorted(res.items())}, "ok": ok}
    if args.dump:
        with mpmath.workdps(args.precision):
            meta["matrices"] = {name: {f"{i},{j}": mpmath.nstr(v, args.precision)
                                       for (i, j), v in sorted(op.entries.items())}
                                for name, op in sorted(model.ops().items())}
    if args.format == "json":
        return _dump_json(meta), ok
    if args.format == "csv":
        return _csv([["relation", "residual"]] + [[k, v] for k, v in meta["residuals"].items()]), ok
    if args.format == "latex":
        raise UsageError("fock has no latex export")
    lines = [f"Fock model q={q} cutoff={args.cutoff} precision={args.precision}"]
    lines += [f"  {k}: {v}" for k, v in meta["residuals"].items()]
    lines.append("PASS" if ok else "FAIL")
    return "\n".join(lines) + "\n", ok


def cmd_eval(args) -> tuple[str, bool]:
    x = parse_scalar(args.expr)
    bindings = {}
    for item in args.bind or []:
        k, sep, v = item.partition("=")
        if not sep:
            raise UsageError(f"--bind expects name=value, got {item!r}")
        bindings[k] = Fraction(v)
    qs = [Fraction(args.q)] if args.q else probes(load_config())
    out = {}
    for q in qs:
        v = eval_numeric(x, q, bindings, args.precision)
        out[str(q)] = mpmath.nstr(v, args.precision)
    if args.format == "json":
        return _dump_json({"expr": format_scalar(x), "values": out}), True
    return "".join(f"q={q}: {v}\n" for q, v in out.items()), True


# ---------------------------------------------------------------------------
# argument parsing

def _lam(text: str) -> int:
    v = int(text)
    if v not in (0, 1):
        raise argparse.ArgumentTypeError("lambda must be 0 or 1")
    return v


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="ospq", description="Exact U_q[osp(1/2)] algebra kernel and verifier.")
    p.add_argument("--config", help=f"JSON config file (default: ${ENV_VAR})")
    sub = p.add_subparsers(dest="verb", required=True)

    def fmt(sp, default="text"):
        sp.add_argument("--format", choices=FORMATS, default=default)

    sp = sub.add_parser("rep", help="representation matrix of a generator or the Casimir")
    sp.add_argument("--ell", type=int, required=True)
    sp.add_argument("--lambda", dest="lam", type=_lam, default=0)
    sp.add_argument("--gen", default="K", choices=list(urep.GENERATORS) + ["casimir"])
    fmt(sp)
    sp.set_defaults(fn=cmd_rep)

    sp = sub.add_parser("cgc", help="a Clebsch-Gordan coefficient or table")
    sp.add_argument("--l1", type=int, required=True)
    sp.add_argument("--l2", type=int, required=True)
    sp.add_argument("--l", type=int)
    sp.add_argument("--m1", type=int)
    sp.add_argument("--m2", type=int)
    sp.add_argument("--lambda", dest="lam", type=_lam, default=0)
    fmt(sp)
    sp.set_defaults(fn=cmd_cgc)

    sp = sub.add_parser("corep", help="corepresentation block T^ell(lambda)")
    sp.add_argument("--ell", type=int, required=True)
    sp.add_argument("--lambda", dest="lam", type=_lam, default=0)
    fmt(sp)
    sp.set_defaults(fn=cmd_corep)

    sp = sub.add_parser("normal-form", help="normal form of an algebra element")
    sp.add_argument("expr")
    sp.add_argument("--dialect", choices=("afun", "osc", "covariant"), default="afun")
    sp.add_argument("--presentation", default="supersphere")
    fmt(sp)
    sp.set_defaults(fn=cmd_normal_form)

    sp = sub.add_parser("verify", help="run verification suites")
    sp.add_argument("suites", nargs="+", metavar="SUITE")
    sp.add_argument("--verbose", action="store_true")
    fmt(sp)
    sp.set_defaults(fn=cmd_verify)

    sp = sub.add_parser("table", help="print a covariant presentation or its consistency report")
    sp.add_argument("name", help=f"one of {', '.join(PRESENTATIONS)} or a presentation file")
    sp.add_argument("--consistency", action="store_true")
    fmt(sp)
    sp.set_defaults(fn=cmd_table)

    sp = sub.add_parser("fock", help="numeric Fock-space model of the oscillator")
    sp.add_argument("--cutoff", type=int, default=40)
    sp.add_argument("--q", default="1/2")
    sp.add_argument("--precision", type=int)
    sp.add_argument("--tol", default="1e-25")
    sp.add_argument("--dump", action="store_true", help="include matrix entries")
    fmt(sp)
    sp.set_defaults(fn=cmd_fock)

    sp = sub.add_parser("eval", help="evaluate a scalar numerically")
    sp.add_argument("expr")
    sp.add_argument("--q")
    sp.add_argument("--precision", type=int)
    sp.add_argument("--bind", action="append", metavar="NAME=VALUE")
    fmt(sp)
    sp.set_defaults(fn=cmd_eval)
    return p


def run(argv: list[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.config:
        os.environ[ENV_VAR] = args.config
    try:
        cfg = load_config()
    except (OSError, ValueError) as e:
        print(f"ospq: config error: {e}", file=sys.stderr)
        return 2
    if getattr(args, "precision", "absent") is None:
        args.precision = int(cfg["precision"])
    try:
        text, ok = args.fn(args)
    except (UsageError, ParseError, KeyError, ValueError) as e:
        print(f"ospq: error: {e}", file=sys.stderr)
        return 2
    out.write(text)
    return 0 if ok else 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
