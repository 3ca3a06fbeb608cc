"""
Command-line entry point ``appell-vertex``.

Subcommands: ``eval-f4``, ``triangle``, ``oracle``, ``ydelta`` and ``check``.
Every command prints JSON (default) or CSV.  JSON floats use Python's
shortest round-trip repr; CSV floats use 17 significant digits.  Both are
lossless.

Exit codes: 0 success, 1 bad input or failed check, 2 domain error,
3 convergence failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from typing import Iterable, List, Optional

from . import checks
from .errors import ConvergenceError, DomainError
from .oracle import triangle_feynman_param
from .resistors import DeltaNetwork, YNetwork, delta_to_y, y_to_delta
from .special_functions import F4Params, Point2, SeriesControl, f4_continue, f4_series
from .vertex import FORMS, Kinematics

EXIT_BAD_INPUT = 1
EXIT_DOMAIN = 2
EXIT_CONVERGENCE = 3


class UsageError(Exception):
    """Raised instead of argparse's own exit so that bad flags map to exit 1."""


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


# -- output helpers -------------------------------------------------------------

def _num(v):
    """JSON-safe number: complex becomes {"re", "im"}, non-finite becomes a string."""
    if isinstance(v, complex):
        if v.imag == 0.0:
            return _num(v.real)
        return {"re": _num(v.real), "im": _num(v.imag)}
    if isinstance(v, float) or hasattr(v, "dtype"):
        v = float(v)
        return v if math.isfinite(v) else repr(v)
    return v


def _fmt(v) -> str:
    if isinstance(v, bool) or v is None:
        return str(v)
    if isinstance(v, complex):
        return f"{v.real:.17g}{v.imag:+.17g}j"
    if isinstance(v, (int, float)) or hasattr(v, "dtype"):
        return format(float(v), ".17g") if not isinstance(v, int) else str(v)
    return str(v)


def _emit(records: List[dict], fmt: str, columns: Optional[List[str]] = None, out=None):
    out = out or sys.stdout
    if fmt == "json":
        for rec in records:
            out.write(json.dumps(rec, sort_keys=False) + "\n")
        return
    columns = columns or list(records[0])
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for rec in records:
        writer.writerow([_fmt(_flat(rec, c)) for c in columns])
    out.write(buf.getvalue())


def _flat(rec: dict, key: str):
    val = rec.get(key)
    if isinstance(val, dict) and set(val) == {"re", "im"}:
        return complex(val["re"], val["im"])
    return val


# -- kinematics -----------------------------------------------------------------

def _kinematics(obj: dict) -> Kinematics:
    """Accept {p2, q2, r2} or {x, y} with optional p2 (default 1)."""
    obj = {k: v for k, v in obj.items() if v is not None}
    keys = set(obj)
    if {"q2", "r2"} <= keys:
        if keys & {"x", "y"}:
            raise ValueError("give either p2/q2/r2 or x/y(/p2), not both")
        return Kinematics(float(obj.get("p2", 1.0)), float(obj["q2"]), float(obj["r2"]))
    if {"x", "y"} <= keys:
        return Kinematics.from_ratios(float(obj["x"]), float(obj["y"]), float(obj.get("p2", 1.0)))
    raise ValueError("kinematics need q2 and r2 (with p2), or x and y (with optional p2)")


def _kin_list(args) -> List[Kinematics]:
    if args.kin_file:
        kins = []
        with open(args.kin_file, encoding="utf-8") as fh:
            for n, line in enumerate(fh, 1):
                if line.strip():
                    try:
                        kins.append(_kinematics(json.loads(line)))
                    except (json.JSONDecodeError, TypeError) as exc:
                        raise ValueError(f"{args.kin_file}:{n}: {exc}") from exc
        if not kins:
            raise ValueError(f"{args.kin_file} holds no kinematics")
        return kins
    return [_kinematics({"p2": args.p2, "q2": args.q2, "r2": args.r2, "x": args.x, "y": args.y})]


def _kin_record(kin: Kinematics) -> dict:
    return {"p2": kin.p2, "q2": kin.q2, "r2": kin.r2, "x": kin.x, "y": kin.y, "z": kin.z}


# -- commands -------------------------------------------------------------------

def cmd_eval_f4(args) -> List[dict]:
    p = F4Params(args.a, args.b, args.c1, args.c2)
    pt = Point2(args.x, args.y)
    ctrl = SeriesControl(args.tol, args.max_terms)
    if args.mode == "series":
        res = f4_series(p, pt, ctrl)
        evaluated_at = pt
    else:
        res = f4_continue(p, pt, ctrl, branch=args.branch)
        evaluated_at = Point2(pt.x / pt.y, 1.0 / pt.y)
    return [{
        "value": _num(res.value),
        "err": _num(res.err),
        "terms_used": res.terms_used,
        "domain": {
            "mode": args.mode,
            "series_point": [evaluated_at.x, evaluated_at.y],
            "radius": evaluated_at.radius,
            "inside": evaluated_at.radius < 1,
        },
    }]


def cmd_triangle(args) -> List[dict]:
    ctrl = SeriesControl(args.tol, args.max_terms)
    fn = FORMS[args.form]
    records = []
    for kin in _kin_list(args):
        val = fn(kin, args.omega, ctrl, include_pi=not args.no_pi)
        terms = [{
            "label": t.label,
            "coeff": _num(complex(t.coeff)),
            "prefactor": t.prefactor,
            "params": list(t.params.as_tuple()),
            "point": [t.point.x, t.point.y],
            "f4": _num(complex(t.f4)),
            "f4_err": t.f4_err,
            "method": t.method,
            "conjugate_pair": t.conjugate_pair,
            "contribution": val.normalization * t.contribution,
        } for t in val.terms]
        records.append({
            "form": val.form,
            "omega": val.omega,
            **_kin_record(kin),
            "value": val.value,
            "err": val.err,
            "include_pi": val.include_pi,
            "n_terms": len(terms),
            "terms": terms,
        })
    return records


def cmd_oracle(args) -> List[dict]:
    out = []
    for kin in _kin_list(args):
        value, err = triangle_feynman_param(kin, args.quad_tol)
        out.append({**_kin_record(kin), "value": value, "err": err, "quad_tol": args.quad_tol})
    return out


def cmd_ydelta(args) -> List[dict]:
    r = args.resistances
    if args.to == "delta":
        d = y_to_delta(YNetwork(*r))
        return [{"ra": d.ra, "rb": d.rb, "rc": d.rc}]
    y = delta_to_y(DeltaNetwork(*r))
    return [{"r1": y.r1, "r2": y.r2, "r3": y.r3}]


def cmd_check(args) -> List[dict]:
    return [row.as_dict() for row in checks.run_suite(args.suite)]


# -- parser ---------------------------------------------------------------------

def _add_common(p):
    p.add_argument("--format", choices=("json", "csv"), default="json")


def _add_ctrl(p):
    p.add_argument("--tol", type=float, default=1e-15, help="series relative tolerance")
    p.add_argument("--max-terms", type=int, default=4000, help="anti-diagonal budget")


def _add_kin(p):
    p.add_argument("--p2", type=float)
    p.add_argument("--q2", type=float)
    p.add_argument("--r2", type=float)
    p.add_argument("--x", type=float, help="r2/p2")
    p.add_argument("--y", type=float, help="q2/p2")
    p.add_argument("--kin-file", help="file with one JSON kinematics object per line")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="appell-vertex", description=__doc__.strip().splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("eval-f4", help="evaluate Appell F4")
    for name in ("a", "b", "c1", "c2", "x", "y"):
        p.add_argument(f"--{name}", type=float, required=True)
    p.add_argument("--mode", choices=("series", "continued"), default="series")
    p.add_argument("--branch", type=int, choices=(-1, 1),
                   help="side of the cut for y > 0 in continued mode")
    _add_ctrl(p)
    _add_common(p)
    p.set_defaults(func=cmd_eval_f4, columns=["value", "err", "terms_used"])

    p = sub.add_parser("triangle", help="closed-form massless triangle")
    _add_kin(p)
    p.add_argument("--omega", type=float, required=True, help="D = 2*omega")
    p.add_argument("--form", choices=tuple(FORMS), default="four")
    p.add_argument("--no-pi", action="store_true", help="drop the pi^omega factor")
    _add_ctrl(p)
    _add_common(p)
    p.set_defaults(func=cmd_triangle,
                   columns=["form", "omega", "p2", "q2", "r2", "value", "err", "n_terms"])

    p = sub.add_parser("oracle", help="D=4 Feynman-parameter cubature")
    _add_kin(p)
    p.add_argument("--quad-tol", type=float, default=1e-10)
    _add_common(p)
    p.set_defaults(func=cmd_oracle, columns=["p2", "q2", "r2", "value", "err"])

    p = sub.add_parser("ydelta", help="Y <-> Delta resistor transform")
    p.add_argument("--to", choices=("delta", "y"), required=True)
    p.add_argument("resistances", type=float, nargs=3)
    _add_common(p)
    p.set_defaults(func=cmd_ydelta, columns=None)

    p = sub.add_parser("check", help="run the self-verification suite")
    p.add_argument("--suite", choices=sorted(checks.SUITES), default="all")
    _add_common(p)
    p.set_defaults(func=cmd_check,
                   columns=["criterion", "name", "passed", "measured", "tolerance", "detail"])
    return parser


def main(argv: Optional[Iterable[str]] = None, out=None) -> int:
    out = out or sys.stdout
    try:
        args = build_parser().parse_args(None if argv is None else list(argv))
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_BAD_INPUT
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    try:
        records = args.func(args)
    except DomainError as exc:
        print(f"domain error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except ConvergenceError as exc:
        print(f"convergence failure: {exc}", file=sys.stderr)
        return EXIT_CONVERGENCE
    except (ValueError, OSError) as exc:
        print(f"bad input: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT
    _emit(records, args.format, args.columns, out)
    if args.command == "check" and not all(r["passed"] for r in records):
        return EXIT_BAD_INPUT
    return 0


def main_exit() -> None:
    """Console-script wrapper."""
    sys.exit(main())


if __name__ == "__main__":
    main_exit()
