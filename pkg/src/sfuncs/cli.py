"""Command-line front end.

Verbs: verify, frame, frame-multi, dwork, gen-abelian, gen-crt, from-log,
polylog-table, jk-check.  Reports and generated series go to stdout as JSON
unless --out is given.  Exit codes: 0 success or verification passed,
1 verification found violations (the report is still emitted), 2 usage or
input error with a one-line diagnostic.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from .catalog import (
    CyclotomicSpec,
    abelian_generator,
    cyclotomic_field,
    from_log_poly,
    jk_check,
    polylog_frame_table,
)
from .errors import SfuncError
from .framing import Kappa, frame_f, frame_multi
from .mseries import MSeries
from .numfield import FieldElem, denominator_support
from .serialize import (
    dump_obj,
    elem_from_obj,
    load_field,
    load_series,
    mseries_to_obj,
    series_to_obj,
)
from .sfunc import check_sfunction, dwork_factor, generate_crt


def _parse_range(text: str) -> list[int]:
    """'2..5' is the closed range, '1,3,7' a list, '4' a singleton."""
    text = text.strip()
    if ".." in text:
        lo, hi = text.split("..", 1)
        return list(range(int(lo), int(hi) + 1))
    return [int(p) for p in text.split(",")]


def _emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w") as fh:
            fh.write(text)


def _emit_series(v, out: str | None) -> None:
    obj = mseries_to_obj(v) if isinstance(v, MSeries) else series_to_obj(v)
    _emit(dump_obj(obj), out)


def _load_json(path: str):
    with open(path) as fh:
        return json.load(fh)


def _cmd_verify(args) -> int:
    v = load_series(args.series)
    extra = tuple(_parse_range(args.primes_extra)) if args.primes_extra else ()
    report = check_sfunction(v, args.s, jobs=args.jobs, extra_primes=extra)
    _emit(dump_obj(report.to_obj()), args.out)
    return 0 if report.passed else 1


def _cmd_frame(args) -> int:
    v = load_series(args.series)
    if isinstance(v, MSeries):
        raise SfuncError("frame expects a one-variable series; use frame-multi")
    _emit_series(frame_f(v, args.f), args.out)
    return 0


def _cmd_frame_multi(args) -> int:
    v = load_series(args.series)
    if not isinstance(v, MSeries):
        raise SfuncError("frame-multi expects a multivariate series file")
    _emit_series(frame_multi(v, Kappa.parse(args.kappa)), args.out)
    return 0


def _cmd_dwork(args) -> int:
    v = load_series(args.series)
    if isinstance(v, MSeries):
        raise SfuncError("dwork expects a one-variable series")
    b = dwork_factor(v)
    field = v.field
    bad_cells = []
    for d, bd in enumerate(b, 1):
        for q in sorted(denominator_support(bd)):
            if field.discriminant % q != 0:
                bad_cells.append([d, q])
    obj = {
        "field": {"minpoly": [str(c) for c in field.minpoly]},
        "order": v.order,
        "b": [[[str(c.numerator), str(c.denominator)] for c in bd.coords] for bd in b],
        "integral_at_good_primes": not bad_cells,
        "nonintegral": bad_cells,
    }
    _emit(dump_obj(obj), args.out)
    return 0 if not bad_cells else 1


def _rational_entries(obj) -> list[Fraction]:
    if not isinstance(obj, list):
        raise SfuncError("expected a JSON array of rationals")
    out = []
    for x in obj:
        if isinstance(x, list) and len(x) == 2 and not isinstance(x[0], list):
            out.append(Fraction(int(x[0]), int(x[1])))
        elif isinstance(x, (str, int)):
            out.append(Fraction(x))
        else:
            raise SfuncError(f"cannot read {x!r} as a rational")
    return out


def _cmd_gen_abelian(args) -> int:
    raw = _load_json(args.coeffs)
    if not isinstance(raw, dict):
        raise SfuncError("--coeffs file must map index to rational")
    coeffs = {int(i): Fraction(c) for i, c in raw.items()}
    spec = CyclotomicSpec(args.conductor, tuple(sorted(coeffs.items())), args.s)
    subfield = x_expr = None
    if args.field or args.x:
        if not (args.field and args.x):
            raise SfuncError("descent needs both --field and --x")
        subfield = load_field(args.field)
        x_expr = elem_from_obj(cyclotomic_field(args.conductor), _load_json(args.x))
    _emit_series(abelian_generator(spec, args.order, subfield, x_expr), args.out)
    return 0


def _cmd_gen_crt(args) -> int:
    field = load_field(args.field)
    x = elem_from_obj(field, _load_json(args.x))
    _emit_series(generate_crt(field, x, args.s, args.order), args.out)
    return 0


def _cmd_from_log(args) -> int:
    field = load_field(args.field)
    raw = _load_json(args.coeffs)
    if not isinstance(raw, list):
        raise SfuncError("--coeffs file must be an array of polynomial coefficients")
    q: list[FieldElem] = []
    for x in raw:
        if isinstance(x, list) and x and isinstance(x[0], list):
            q.append(elem_from_obj(field, x))
        elif isinstance(x, list) and len(x) == 2:
            q.append(field.elem(Fraction(int(x[0]), int(x[1]))))
        elif isinstance(x, (str, int)):
            q.append(field.elem(Fraction(x)))
        else:
            raise SfuncError(f"cannot read {x!r} as a polynomial coefficient")
    _emit_series(from_log_poly(field, q, args.s, args.order), args.out)
    return 0


def _cmd_polylog_table(args) -> int:
    table = polylog_frame_table(_parse_range(args.f), _parse_range(args.d))
    if table.nonintegral:
        sys.stderr.write(
            f"note: 6*N/f fails integrality at cells {list(table.nonintegral)}\n"
        )
    if args.format == "csv":
        _emit(table.to_csv(), args.out)
    else:
        _emit(dump_obj(table.to_obj()), args.out)
    return 0


def _cmd_jk_check(args) -> int:
    report = jk_check(args.p, args.kmax, args.fmax)
    _emit(dump_obj(report.to_obj()), args.out)
    return 0 if report.passed else 1


def build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="sfuncs",
        description="Exact verification and transformation of s-function series.",
    )
    sub = top.add_subparsers(dest="verb", required=True)

    def add(name, fn, help_text):
        p = sub.add_parser(name, help=help_text)
        p.set_defaults(fn=fn)
        p.add_argument("--out", help="write output here instead of stdout")
        return p

    p = add("verify", _cmd_verify, "check the congruences of a series file")
    p.add_argument("--series", required=True, help="series JSON file")
    p.add_argument("--s", required=True, type=int, help="congruence strength")
    p.add_argument("--jobs", type=int, default=os.cpu_count(),
                   help="parallel congruence checks (default: all cores)")
    p.add_argument("--primes-extra", default="",
                   help="also report (never fail) these primes, e.g. '7' or '2,7'")

    p = add("frame", _cmd_frame, "apply the integer framing z -> z(-Y)**f")
    p.add_argument("--series", required=True)
    p.add_argument("--f", required=True, type=int)

    p = add("frame-multi", _cmd_frame_multi, "apply a matrix framing")
    p.add_argument("--series", required=True)
    p.add_argument("--kappa", required=True,
                   help="symmetric integer matrix, rows ';'-separated: '1,0;0,1'")

    p = add("dwork", _cmd_dwork, "product factorization V = -sum log(1 - b_d z^d)")
    p.add_argument("--series", required=True)

    p = add("gen-abelian", _cmd_gen_abelian, "root-of-unity combination generator")
    p.add_argument("--conductor", required=True, type=int)
    p.add_argument("--coeffs", required=True,
                   help="JSON map: index i to rational c_i")
    p.add_argument("--s", required=True, type=int)
    p.add_argument("--order", required=True, type=int)
    p.add_argument("--field", help="subfield minpoly JSON for descent")
    p.add_argument("--x", help="generator coordinates in the cyclotomic field")

    p = add("gen-crt", _cmd_gen_crt, "congruence-tower generator from a_1 = x")
    p.add_argument("--field", required=True)
    p.add_argument("--x", required=True, help="element coordinates JSON")
    p.add_argument("--s", required=True, type=int)
    p.add_argument("--order", required=True, type=int)

    p = add("from-log", _cmd_from_log, "series with delta^(s-1) V = -log Q(z)")
    p.add_argument("--field", required=True)
    p.add_argument("--coeffs", required=True, help="JSON array: Q low degree to high")
    p.add_argument("--s", required=True, type=int)
    p.add_argument("--order", required=True, type=int)

    p = add("polylog-table", _cmd_polylog_table, "framed-polylog multiplicity table")
    p.add_argument("--d", required=True, help="row range, e.g. 1..7")
    p.add_argument("--f", required=True, help="column range, e.g. 2..5")
    p.add_argument("--format", choices=("json", "csv"), default="json")

    p = add("jk-check", _cmd_jk_check, "binomial congruence sweep at a prime")
    p.add_argument("--p", required=True, type=int)
    p.add_argument("--kmax", required=True, type=int)
    p.add_argument("--fmax", required=True, type=int)

    return top


def run(argv) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except SfuncError as e:
        sys.stderr.write(f"error: {type(e).__name__}: {e}\n")
        return 2
    except (OSError, ValueError, json.JSONDecodeError) as e:
        sys.stderr.write(f"error: {type(e).__name__}: {e}\n")
        return 2


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
