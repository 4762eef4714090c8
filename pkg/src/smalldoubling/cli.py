"""Command-line front end.

Exit status: 0 clean, 1 violations (or a hit minimum unmet), 2 usage or parse error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction

from . import addcomb, fourier, rectify
from .classify import Constants, find_witness
from .core import CyclicSet, SetLiteralError
from .harness import SCHEMA_VERSION, SUITES, SWEEP_BOUND, extremal_scan, lemma_suite, sweep_theorem
from .verdict import jsonable


class UsageError(Exception):
    pass


def _fraction(text: str) -> Fraction:
    try:
        v = Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a number: {text!r}")
    if v <= 0:
        raise argparse.ArgumentTypeError(f"must be positive: {text!r}")
    return v


def _unit_interval(text: str) -> float:
    try:
        v = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}")
    if not 0 < v <= 1:
        raise argparse.ArgumentTypeError(f"must lie in (0, 1]: {text!r}")
    return v


def _positive_int(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if v < 1:
        raise argparse.ArgumentTypeError(f"must be positive: {text!r}")
    return v


def _nonneg_int(text: str) -> int:
    v = int(text) if text.lstrip("-").isdigit() else None
    if v is None or v < 0:
        raise argparse.ArgumentTypeError(f"must be a nonnegative integer: {text!r}")
    return v


def read_set(args) -> CyclicSet:
    literal = getattr(args, "literal", None) or args.set
    if literal is None:
        raise UsageError("no set given (use a literal `n:e1,...` or --set)")
    if ":" not in literal and args.group is not None:
        literal = f"{args.group}:{literal}"
    A = CyclicSet.parse(literal)
    if args.group is not None and args.group != A.modulus:
        raise UsageError(f"--group {args.group} disagrees with the literal's modulus {A.modulus}")
    return A


def _constants(args) -> Constants:
    try:
        return Constants.make(args.const_c, args.const_c0)
    except ValueError as e:
        raise UsageError(str(e))


# --- subcommands ---------------------------------------------------------------

def cmd_analyze(args):
    A = read_set(args)
    if not A.elements:
        raise UsageError("the set is empty")
    search = find_witness(A, _constants(args), args.mode)
    out = {
        "schema_version": SCHEMA_VERSION,
        "set": str(A),
        "doubling": search.doubling.to_dict(),
        "vsds": addcomb.is_vsds(A).to_dict(),
        "witness": search.to_dict(A),
    }
    if len(A) <= rectify.DEFAULT_MAX_SIZE:
        out["rectify"] = rectify.is_rectifiable(A).to_dict()
    else:
        out["rectify"] = {"skipped": f"|A| > {rectify.DEFAULT_MAX_SIZE}"}
    iv = rectify.interval_rectify(A)
    out["interval_rectify"] = list(iv) if iv else None
    if A.dense:
        w = fourier.bias_detect(A, args.min_index, args.coeff, args.coverage)
        out["bias"] = w.to_dict() if w else None
    else:
        out["bias"] = {"skipped": "modulus above the dense bound"}
    return out, 0


def cmd_rectify(args):
    A = read_set(args)
    if not A.elements:
        raise UsageError("the set is empty")
    try:
        v = rectify.is_rectifiable(A, max_size=None if args.unbounded else rectify.DEFAULT_MAX_SIZE)
    except ValueError as e:
        raise UsageError(str(e))
    iv = rectify.interval_rectify(A)
    out = {"schema_version": SCHEMA_VERSION, "set": str(A), **v.to_dict(),
           "interval_rectify": list(iv) if iv else None}
    return out, 0


def cmd_bias(args):
    A = read_set(args)
    if not A.dense:
        raise UsageError("bias detection needs a modulus within the dense bound")
    w = fourier.bias_detect(A, args.min_index, args.coeff, args.coverage)
    return {"schema_version": SCHEMA_VERSION, "set": str(A),
            "config": {"min_index": args.min_index, "coeff": args.coeff, "coverage": args.coverage},
            "witness": w.to_dict() if w else None}, 0


def cmd_sweep(args):
    n_max = args.n_max or SWEEP_BOUND
    if n_max > args.bound:
        raise UsageError(f"--n-max {n_max} exceeds the sweep bound {args.bound}; raise --bound to go further")
    rep = sweep_theorem(n_max, args.mode, _constants(args), workers=args.workers, bound=args.bound)
    return rep.to_dict(timing=not args.no_timing), 0 if rep.ok else 1


def cmd_lemmas(args):
    names = sorted(SUITES) if args.suite == "all" else [args.suite]
    reports = []
    for name in names:
        try:
            rep = lemma_suite(name, args.n_max, args.trials, args.seed, workers=args.workers)
        except ValueError as e:
            raise UsageError(str(e))
        reports.append(rep)
    docs = [r.to_dict(timing=not args.no_timing) for r in reports]
    code = 0 if all(r.ok for r in reports) else 1
    if len(docs) == 1:
        return docs[0], code
    return {"schema_version": SCHEMA_VERSION, "suites": docs, "ok": code == 0}, code


def cmd_phi_scan(args):
    lo, hi = args.lo, args.hi
    if hi < lo:
        raise UsageError("--to must not be below --from")
    if args.format == "csv":
        rows = [("n", "phi_num", "phi_den", "ok")]
        bad = 0
        for n, num, den, ok in fourier.phi_rows(lo, hi):
            rows.append((n, num, den, "true" if ok else "false"))
            bad += not ok
        return rows, 0 if bad == 0 else 1
    rep = fourier.phi_scan(lo, hi)
    return {"schema_version": SCHEMA_VERSION, **rep.to_dict(), "ok": rep.ok}, 0 if rep.ok else 1


def cmd_extremal(args):
    n = args.group
    if n is None:
        raise UsageError("extremal needs --group/-n")
    if n > args.bound:
        raise UsageError(f"n = {n} exceeds the sweep bound {args.bound}")
    try:
        rows = extremal_scan(n, args.k, bound=args.bound)
    except ValueError as e:
        raise UsageError(str(e))
    if args.format == "csv":
        return [("n", "k", "min_doubling", "example")] + [(r["n"], r["k"], r["min_doubling"], r["example"])
                                                           for r in rows], 0
    return {"schema_version": SCHEMA_VERSION, "rows": rows}, 0


# --- output --------------------------------------------------------------------

def _render(payload, fmt: str) -> str:
    if isinstance(payload, list):
        if fmt == "json":
            head, *rows = payload
            return json.dumps([dict(zip(head, r)) for r in rows], indent=2) + "\n"
        buf = io.StringIO()
        csv.writer(buf, lineterminator="\n").writerows(payload)
        return buf.getvalue()
    payload = jsonable(payload)
    if fmt == "text":
        return "".join(_text_lines(payload)) or "\n"
    if fmt == "csv":
        raise UsageError("csv output is available for phi-scan and extremal only")
    return json.dumps(payload, sort_keys=True, indent=2) + "\n"


def _text_lines(obj, indent: int = 0):
    pad = "  " * indent
    if isinstance(obj, dict):
        for k in sorted(obj):
            v = obj[k]
            if isinstance(v, (dict, list)) and v:
                yield f"{pad}{k}:\n"
                yield from _text_lines(v, indent + 1)
            else:
                yield f"{pad}{k}: {v}\n"
    elif isinstance(obj, list):
        for v in obj:
            if isinstance(v, (dict, list)):
                yield f"{pad}-\n"
                yield from _text_lines(v, indent + 1)
            else:
                yield f"{pad}- {v}\n"
    else:
        yield f"{pad}{obj}\n"


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--group", "-n", type=_positive_int, help="modulus n")
    common.add_argument("--set", help="set literal `n:e1,e2,...` (or just elements with --group)")
    common.add_argument("--mode", choices=("main", "aux"), default="main")
    common.add_argument("--const-c", type=_fraction, help="dense-coset constant C (default 30000)")
    common.add_argument("--const-c0", type=_fraction, help="aux constant C0 (default 24000)")
    common.add_argument("--min-index", type=_positive_int, default=37)
    common.add_argument("--coeff", type=_unit_interval, default=0.8)
    common.add_argument("--coverage", type=_unit_interval, default=0.9)
    common.add_argument("--n-max", type=_positive_int)
    common.add_argument("--trials", type=_nonneg_int)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--workers", type=_positive_int, default=1)
    common.add_argument("--bound", type=_positive_int, default=SWEEP_BOUND, help="exhaustive sweep bound")
    common.add_argument("--format", choices=("json", "csv", "text"), default="json")
    common.add_argument("--out", help="write the report here instead of stdout")
    common.add_argument("--no-timing", action="store_true", help="omit runtime so reports are byte-identical")

    p = argparse.ArgumentParser(prog="smalldoubling", description="Small-doubling structure in Z_n.")
    sub = p.add_subparsers(dest="command", required=True)
    for name, fn, helptext in [
        ("analyze", cmd_analyze, "doubling, witnesses, rectifiability and bias for one set"),
        ("rectify", cmd_rectify, "decide Freiman rectifiability"),
        ("bias", cmd_bias, "look for a large nontrivial Fourier coefficient and its progression"),
    ]:
        sp = sub.add_parser(name, parents=[common], help=helptext)
        sp.add_argument("literal", nargs="?")
        if name == "rectify":
            sp.add_argument("--unbounded", action="store_true", help="lift the size bound of 12")
        sp.set_defaults(func=fn)
    sp = sub.add_parser("sweep", parents=[common], help="exhaustive theorem sweep over canonical classes")
    sp.set_defaults(func=cmd_sweep)
    sp = sub.add_parser("lemmas", parents=[common], help="run a lemma suite")
    sp.add_argument("--suite", required=True, choices=sorted(SUITES) + ["all"])
    sp.set_defaults(func=cmd_lemmas)
    sp = sub.add_parser("phi-scan", parents=[common], help="check Phi(n) < 4/2025 on a range")
    sp.add_argument("--from", dest="lo", type=int, default=92400)
    sp.add_argument("--to", dest="hi", type=int, default=200475)
    sp.set_defaults(func=cmd_phi_scan)
    sp = sub.add_parser("extremal", parents=[common], help="minimal |2A| per set size")
    sp.add_argument("--k", type=_positive_int)
    sp.set_defaults(func=cmd_extremal)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        payload, code = args.func(args)
        text = _render(payload, args.format)
    except SetLiteralError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except UsageError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
