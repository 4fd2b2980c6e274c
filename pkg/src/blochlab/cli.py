"""``blochlab`` command line.

Every command prints one JSON document (schema ``v1``, sorted keys, no
timestamps) on stdout.  Exit codes: 0 success, 2 bad input, 3 domain error,
4 a verdict other than PASS.
"""
from __future__ import annotations

import argparse
import math
import sys
from pathlib import Path

from . import lab
from .disc import DiscPoint
from .errors import BlochLabError, DomainError, ParseError
from .io import SCHEMA_VERSION, dumps, write_trace_csv
from .logscale import NEG_INF
from .parse import load_expr, parse_expr, read_points
from .seminorms import KINDS, LOG_SAFE, N_SCAN, seminorm_est
from .zoo import log_evaluate

EXIT_OK, EXIT_INPUT, EXIT_DOMAIN, EXIT_FAIL = 0, 2, 3, 4


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise _UsageError(f"{self.prog}: error: {message}")


class _UsageError(Exception):
    pass


# ---------------------------------------------------------------------------
# argument helpers

def _complex(text: str) -> complex:
    try:
        return complex(text.replace(" ", ""))
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a complex number: {text!r}") from None


def _positive_int(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {v}")
    return v


def _add_expr(p, default=None):
    g = p.add_mutually_exclusive_group(required=default is None)
    g.add_argument("--expr", default=default, help="expression in the mini-language, e.g. 'product(inner(1), log1m())'")
    g.add_argument("--expr-file", type=Path, help="JSON expression tree")


def _expr(args):
    if getattr(args, "expr_file", None) is not None:
        return load_expr(args.expr_file)
    return parse_expr(args.expr, base_dir=Path.cwd())


def _jobs(p):
    p.add_argument("--jobs", type=_positive_int, default=1,
                   help="worker threads for circle scans (results do not depend on it)")


def _emit(payload, out_json=None):
    text = dumps(payload)
    if out_json is not None:
        Path(out_json).write_text(text)
    sys.stdout.write(text)


def _lc_json(v):
    c = v.to_complex()
    return {"value": [c.real, c.imag], "log_modulus": v.log_abs,
            "log_scale": v.log_abs != NEG_INF and abs(v.log_abs) > LOG_SAFE}


def _verdict_code(status: str) -> int:
    return EXIT_OK if status == lab.PASS else EXIT_FAIL


# ---------------------------------------------------------------------------
# commands

def cmd_eval(args) -> int:
    f = _expr(args)
    if args.gap is not None:
        z = DiscPoint.from_gap(args.gap, args.theta)
    else:
        z = DiscPoint.from_complex(args.z)
    val = log_evaluate(f, z)
    der = log_evaluate(f.deriv(), z)
    out = {"schema": SCHEMA_VERSION, "command": "eval", "expr": f.to_json(), "point": z.to_json()}
    out.update(_lc_json(val))
    out["derivative"] = _lc_json(der)
    _emit(out)
    return EXIT_OK


def cmd_seminorm(args) -> int:
    f = _expr(args)
    est = seminorm_est(f, args.kind, args.levels, n_scan=args.n_scan, jobs=args.jobs)
    out = {"command": "seminorm", "expr": f.to_json()}
    out.update(est.to_json())
    _emit(out, args.out_json)
    if args.out_csv:
        rows = []
        for row in est.trace:
            lv = row["log_value"]
            flag = lv != NEG_INF and abs(lv) > LOG_SAFE
            q = lv if flag else (0.0 if lv == NEG_INF else math.exp(lv))
            rows.append({"level": row["level"], "r_gap_log": row["r_gap_log"], "theta": row["theta"],
                         "quantity": q, "log_scale_flag": int(flag)})
        write_trace_csv(args.out_csv, rows)
    return EXIT_OK


def cmd_theorem2(args) -> int:
    f = _expr(args)
    rep = lab.verify_theorem2(f, args.c, args.a, args.depth)
    out = {"command": "theorem2"}
    out.update(rep.to_json())
    _emit(out, args.out_json)
    if args.out_csv:
        write_trace_csv(args.out_csv, rep.trace_rows(),
                        ("path", "level", "r_gap_log", "theta", "series", "quantity", "log_scale_flag"))
    return _verdict_code(rep.verdict.status)


def cmd_theorem4(args) -> int:
    f = _expr(args)
    rep = lab.build_counterexample(f, args.n, args.r1_gap, levels=args.levels, jobs=args.jobs)
    th = lab.NonBlochThresholds(window_start=args.window_start, growth_ratio=args.growth_ratio,
                                dominance=args.dominance, bound_slack=args.bound_slack)
    verdict = lab.verify_nonbloch(rep, th)
    out = {"command": "theorem4"}
    out.update(rep.to_json(verdict))
    _emit(out, args.out_json)
    return _verdict_code(verdict.status)


def cmd_interp(args) -> int:
    zeros = read_points(args.zeros)
    if not zeros:
        raise ParseError(f"{args.zeros}: no points")
    logs = lab.separation_logs(zeros)
    out = {
        "schema": SCHEMA_VERSION,
        "command": "interp",
        "n_zeros": len(zeros),
        "delta": lab.uniform_separation(zeros),
        "log_products": logs,
        "identity_deviation": lab.interpolation_derivative_identity(zeros),
    }
    if args.sigma is not None:
        out["stolz_sigma"] = args.sigma
        out["in_stolz_angle"] = lab.stolz_contains(args.sigma, zeros)
    _emit(out, args.out_json)
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser

def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="blochlab", description=__doc__.split("\n")[0])
    p.add_argument("--config", type=Path, help="key=value file; command-line flags take precedence")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    e = sub.add_parser("eval", help="value, log-modulus and derivative at a point")
    _add_expr(e)
    e.add_argument("--z", type=_complex, default=0j)
    e.add_argument("--gap", type=float, help="give the point as gap_log (with --theta) instead of --z")
    e.add_argument("--theta", type=float, default=0.0)
    e.set_defaults(func=cmd_eval)

    s = sub.add_parser("seminorm", help="lower-bound estimate of a Bloch-type seminorm")
    _add_expr(s)
    s.add_argument("--kind", choices=KINDS, default="bloch")
    s.add_argument("--levels", type=_positive_int, default=12)
    s.add_argument("--n-scan", type=_positive_int, default=N_SCAN)
    s.add_argument("--out-json", type=Path)
    s.add_argument("--out-csv", type=Path)
    _jobs(s)
    s.set_defaults(func=cmd_seminorm)

    t2 = sub.add_parser("theorem2", help="horocycle and radial traces of S*f")
    _add_expr(t2, default="log1m()")
    t2.add_argument("--a", type=float, default=0.5, help="horocycle parameter in (0, 1)")
    t2.add_argument("--c", type=float, default=1.0, help="mass of the singular inner factor")
    t2.add_argument("--depth", type=_positive_int, default=6)
    t2.add_argument("--out-json", type=Path)
    t2.add_argument("--out-csv", type=Path)
    _jobs(t2)
    t2.set_defaults(func=cmd_theorem2)

    t4 = sub.add_parser("theorem4", help="build g in B^1 with g*f not Bloch and certify it")
    _add_expr(t4, default="log1m()")
    t4.add_argument("--n", type=int, default=8)
    t4.add_argument("--r1-gap", type=float, default=1.0)
    t4.add_argument("--levels", type=_positive_int, default=12)
    t4.add_argument("--window-start", type=_positive_int)
    t4.add_argument("--growth-ratio", type=float, default=4.0)
    t4.add_argument("--dominance", type=float, default=0.5)
    t4.add_argument("--bound-slack", type=float, default=1.01)
    t4.add_argument("--out-json", type=Path)
    _jobs(t4)
    t4.set_defaults(func=cmd_theorem4)

    i = sub.add_parser("interp", help="separation constant and derivative identity of a zero set")
    i.add_argument("--zeros", type=Path, required=True)
    i.add_argument("--sigma", type=float, help="also test each point against the Stolz angle of this aperture")
    i.add_argument("--out-json", type=Path)
    i.set_defaults(func=cmd_interp)
    return p


def _config_argv(path: Path, sub: argparse.ArgumentParser) -> list[str]:
    """Translate ``key=value`` lines into flags placed before the real ones."""
    try:
        text = path.read_text()
    except OSError as exc:
        raise ParseError(f"cannot read config {path}: {exc.strerror}") from None
    flags = {}
    for action in sub._actions:
        for opt in action.option_strings:
            if opt.startswith("--"):
                flags[opt[2:].replace("-", "_")] = (opt, action)
    argv = []
    for no, line in enumerate(text.splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ParseError(f"{path}:{no}: expected key=value")
        key, value = (x.strip() for x in line.split("=", 1))
        key = key.replace("-", "_")
        if key not in flags or key in ("help",):
            raise ParseError(f"{path}:{no}: unknown key {key!r} for this command")
        opt, action = flags[key]
        if action.nargs == 0:
            if value.lower() in ("1", "true", "yes", "on"):
                argv.append(opt)
        else:
            argv += [opt, value]
    return argv


def _merge_config(parser, argv: list[str]) -> list[str]:
    """Splice ``--config`` entries in right after the command name."""
    sub_action = next(a for a in parser._actions if isinstance(a, argparse._SubParsersAction))
    pos = next((i for i, tok in enumerate(argv) if tok in sub_action.choices), None)
    if pos is None:
        return argv
    # --config is global, so only the tokens before the command are looked at
    pre = _Parser(add_help=False, allow_abbrev=False)
    pre.add_argument("--config", type=Path)
    known, _ = pre.parse_known_args(argv[:pos])
    if known.config is None:
        return argv
    extra = _config_argv(known.config, sub_action.choices[argv[pos]])
    rest = argv[pos + 1:]
    # a config-supplied expression must not clash with one given on the command line
    if "--expr" in extra and ({"--expr", "--expr-file"} & set(rest) or any(t.startswith("--expr=") for t in rest)):
        k = extra.index("--expr")
        extra = extra[:k] + extra[k + 2:]
    return argv[:pos + 1] + extra + rest


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        argv = _merge_config(parser, argv)
        args = parser.parse_args(argv)
        return args.func(args)
    except _UsageError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_INPUT
    except ParseError as exc:
        print(f"blochlab: input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (DomainError, BlochLabError) as exc:
        print(f"blochlab: domain error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
