"""Command-line front end: `permpoly <command> ...`.

Coefficients are ascending everywhere ("0,1,2" is 2x^2 + x).  Exit status
is 0 on success, 1 on a domain error, 2 on a usage error.
"""

from __future__ import annotations

import argparse
import os
import sys

from . import census, hierarchy, nullpoly, permtest
from .errors import PermPolyError
from .modmath import factorize, prime_power_parts
from .poly import TABLE_BUDGET, FuncTable, IntPoly, equivalent, parse_coeffs
from .recover import SampleSet, recover, recover_composite

BUDGET_ENV = "PERMPOLY_BUDGET"


class UsageError(Exception):
    pass


def _emit(out, fmt: str, plain: str, record: list[tuple[str, object]]) -> None:
    if fmt == "machine":
        out.write("\t".join(f"{k}={v}" for k, v in record) + "\n")
    else:
        out.write(plain + "\n")


def _bool(b: bool) -> str:
    return "true" if b else "false"


def _poly(text: str, m: int) -> IntPoly:
    return IntPoly(m, parse_coeffs(text))


def _data_lines(path: str) -> list[str]:
    with open(path) as fh:
        lines = [ln.split("#", 1)[0].strip() for ln in fh]
    return [ln for ln in lines if ln]


def read_table(path: str, m: int) -> FuncTable:
    """One value per line; line k holds f(k)."""
    try:
        vals = [int(ln) for ln in _data_lines(path)]
    except ValueError:
        raise ValueError(f"{path}: table lines must be single integers") from None
    return FuncTable(m, vals)


def read_samples(path: str, m: int) -> SampleSet:
    """Lines "x y"."""
    pairs = []
    for ln in _data_lines(path):
        parts = ln.split()
        if len(parts) != 2:
            raise ValueError(f"{path}: sample lines must be 'x y', got {ln!r}")
        pairs.append((int(parts[0]), int(parts[1])))
    return SampleSet(m, tuple(pairs))


def _budget(args, default: int) -> int:
    if args.budget is not None:
        return args.budget
    env = os.environ.get(BUDGET_ENV)
    if env:
        try:
            return int(env)
        except ValueError:
            raise UsageError(f"{BUDGET_ENV} must be an integer, got {env!r}") from None
    return default


def cmd_check(args, out) -> None:
    f = _poly(args.f, args.m)
    v = permtest.check_any(f, _budget(args, TABLE_BUDGET))
    method = v.method.value
    if v.is_permutation:
        _emit(out, args.format, f"PERMUTATION (method={method})",
              [("verdict", "permutation"), ("method", method)])
        return
    w = v.witness
    if isinstance(w, permtest.Collision):
        _emit(out, args.format, f"NOT A PERMUTATION witness {w.x1} {w.x2} (method={method})",
              [("verdict", "not-permutation"), ("method", method), ("x1", w.x1), ("x2", w.x2)])
    else:
        at = " ".join(map(str, w.at))
        _emit(out, args.format,
              f"NOT A PERMUTATION condition {w.group} fails at {at} mod {w.modulus} (method={method})",
              [("verdict", "not-permutation"), ("method", method), ("group", w.group),
               ("at", ",".join(map(str, w.at))), ("modulus", w.modulus)])


def cmd_count(args, out) -> None:
    r = census.census(args.p, args.d, args.n, include_constant=not args.no_constant,
                      exhaustive=args.exhaustive, budget=_budget(args, census.COUNT_BUDGET))
    fields = [("modulus", r.modulus), ("n", r.n), ("include_constant", _bool(r.include_constant)),
              ("N_pp", r.n_pp), ("N_p", r.n_p), ("ratio", f"{r.ratio.numerator}/{r.ratio.denominator}"),
              ("method", r.method.value)]
    if args.format == "machine":
        _emit(out, "machine", "", fields)
    else:
        for k, v in fields:
            out.write(f"{k} = {v}\n")


def cmd_recover(args, out) -> None:
    if args.m is not None:
        if args.p is not None or args.d is not None:
            raise UsageError("give either -m or -p/-d, not both")
        m = args.m
    else:
        if args.p is None or args.d is None:
            raise UsageError("recover needs -m or both -p and -d")
        m = args.p**args.d
    data = read_table(args.table, m) if args.table else read_samples(args.samples, m)
    fm = factorize(m) if m >= 2 else None
    if fm is not None and len(fm.factors) == 1:
        p, d = fm.factors[0]
        res = recover(data, p, d)
        seed, size = res.seed, res.equivalence_class_size
    else:
        if not isinstance(data, FuncTable):
            raise UsageError("a composite modulus needs a full --table")
        seed, size = recover_composite(data, _budget(args, TABLE_BUDGET)), None
    size_text = "unknown" if size is None else str(size)
    _emit(out, args.format, f"seed {seed.text()} ({seed.pretty()})\nclass_size {size_text}",
          [("modulus", m), ("seed", seed.text()), ("class_size", size_text)])


def _null_budget(args) -> nullpoly.NullSearchBudget:
    return nullpoly.NullSearchBudget(max_tuples=_budget(args, nullpoly.DEFAULT_BUDGET.max_tuples))


def cmd_null(args, out) -> None:
    for f in nullpoly.enumerate_null(args.m, args.n, _null_budget(args)):
        _emit(out, args.format, f.text(), [("coeffs", f.text())])


def cmd_omega(args, out) -> None:
    n = nullpoly.omega(args.m, monic=args.monic, budget=_null_budget(args))
    _emit(out, args.format, str(n), [("modulus", args.m), ("monic", _bool(args.monic)), ("omega", n)])


def cmd_equiv(args, out) -> None:
    e = equivalent(_poly(args.f, args.m), _poly(args.g, args.m), _budget(args, TABLE_BUDGET))
    _emit(out, args.format, _bool(e), [("equivalent", _bool(e))])


def cmd_decompose(args, out) -> None:
    m = args.p**args.d
    rep = hierarchy.decompose(_poly(args.f, m), args.p, args.d, _budget(args, TABLE_BUDGET))
    if args.format != "machine":
        out.write(rep.render() + "\n")
        return
    for b in range(rep.p):
        fixed = all(ok for (blk, _), ok in rep.resolution_fixed.items() if blk == b)
        _emit(out, "machine", "", [("block", b), ("offset", rep.offsets.get(b, 0)),
                                   ("derived", rep.sub_perm_polys[b].text()),
                                   ("classes_fixed", _bool(fixed))])
    for (i, j), v in sorted(rep.condition_values[1].items()):
        _emit(out, "machine", "", [("group", 1), ("i", i), ("j", j), ("value", v)])
    for i, v in sorted(rep.condition_values[2].items()):
        _emit(out, "machine", "", [("group", 2), ("i", i), ("value", v)])


def _part(text: str) -> IntPoly:
    mod, sep, coeffs = text.partition(":")
    if not sep:
        raise UsageError(f"part must look like M:coeffs, got {text!r}")
    try:
        m = int(mod)
    except ValueError:
        raise UsageError(f"bad modulus in part {text!r}") from None
    prime_power_parts(m)
    return _poly(coeffs, m)


def cmd_crt(args, out) -> None:
    f = permtest.crt_build_poly([_part(t) for t in args.part])
    _emit(out, args.format, f.pretty(), [("modulus", f.modulus), ("coeffs", f.text())])


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["plain", "machine"], default="plain")
    common.add_argument("--budget", type=int, default=None,
                        help=f"work budget; overrides ${BUDGET_ENV}")

    parser = argparse.ArgumentParser(prog="permpoly", description="Permutation polynomials modulo m.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", parents=[common], help="decide whether f permutes Z/m")
    p.add_argument("-m", type=int, required=True)
    p.add_argument("-f", required=True, help="ascending coefficients, e.g. 0,1,2")
    p.set_defaults(run=cmd_check)

    p = sub.add_parser("count", parents=[common], help="count permutation polynomials mod p^d")
    p.add_argument("-p", type=int, required=True)
    p.add_argument("-d", type=int, required=True)
    p.add_argument("-n", type=int, required=True, help="degree bound")
    p.add_argument("--exhaustive", action="store_true")
    p.add_argument("--no-constant", action="store_true", help="leave a_0 out of the tuple count")
    p.set_defaults(run=cmd_count)

    p = sub.add_parser("recover", parents=[common], help="recover a polynomial from its values")
    p.add_argument("-p", type=int)
    p.add_argument("-d", type=int)
    p.add_argument("-m", type=int)
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--table", help="file with f(k) on line k")
    src.add_argument("--samples", help="file of 'x y' lines")
    p.set_defaults(run=cmd_recover)

    p = sub.add_parser("null", parents=[common], help="list null polynomials of degree <= n")
    p.add_argument("-m", type=int, required=True)
    p.add_argument("-n", type=int, required=True)
    p.set_defaults(run=cmd_null)

    p = sub.add_parser("omega", parents=[common], help="least degree of a null polynomial")
    p.add_argument("-m", type=int, required=True)
    p.add_argument("--monic", action="store_true")
    p.set_defaults(run=cmd_omega)

    p = sub.add_parser("equiv", parents=[common], help="do f and g induce the same function")
    p.add_argument("-m", type=int, required=True)
    p.add_argument("-f", required=True)
    p.add_argument("-g", required=True)
    p.set_defaults(run=cmd_equiv)

    p = sub.add_parser("decompose", parents=[common], help="block structure of a permutation mod p^d")
    p.add_argument("-p", type=int, required=True)
    p.add_argument("-d", type=int, required=True)
    p.add_argument("-f", required=True)
    p.set_defaults(run=cmd_decompose)

    p = sub.add_parser("crt", parents=[common], help="combine prime-power parts coefficientwise")
    p.add_argument("--part", action="append", required=True, help="M:coeffs, repeatable")
    p.set_defaults(run=cmd_crt)
    return parser


def run(argv=None, out=None, err=None) -> int:
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        args.run(args, out)
    except UsageError as e:
        err.write(f"usage error: {e}\n")
        return 2
    except (PermPolyError, ValueError, OSError) as e:
        err.write(f"error: {type(e).__name__}: {e}\n")
        return 1
    return 0


def main() -> None:
    sys.exit(run())
