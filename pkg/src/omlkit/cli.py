"""``omlkit`` command line.  Exit status: 0 ok/HOLDS/pass, 1 FAILS/mismatch, 2 bad input."""
from __future__ import annotations

import argparse
import logging
import os
import sys

from .expr import ParseError, parse, parse_conditions, parse_relation, to_text, variables
from .models import ModelError, check_condition, eval_model, load_model

log = logging.getLogger("omlkit")


class InputError(Exception):
    pass


def _septuple(text):
    from .freeoml import Septuple
    try:
        return Septuple.parse(text)
    except ValueError as err:
        raise InputError(str(err)) from None


def _assignment(text: str) -> dict[str, str]:
    out = {}
    for item in filter(None, (p.strip() for p in text.split(","))):
        var, sep, val = item.partition("=")
        if not sep or not var or not val:
            raise InputError(f"bad assignment {item!r}; expected var=element")
        out[var.strip()] = val.strip()
    return out


def _indices(text: str) -> list[int]:
    try:
        vals = [int(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise InputError(f"bad index list {text!r}") from None
    if not vals or any(not 0 <= v <= 5 for v in vals):
        raise InputError(f"indices must lie in 0..5: {text!r}")
    return vals


# ---------- subcommands ----------

def cmd_classify(args, out):
    from .freeoml import classify
    e = parse(args.expr)
    print(classify(e), file=out)
    return 0


def cmd_eval(args, out):
    e = parse(args.expr)
    m = load_model(args.model)
    env = _assignment(args.assign)
    missing = variables(e) - set(env)
    if missing:
        raise InputError(f"no value given for {', '.join(sorted(missing))}")
    print(eval_model(e, m, env, args.interp), file=out)
    return 0


def cmd_check(args, out):
    try:
        with open(args.file) as fh:
            conds = parse_conditions(fh.read())
    except OSError as err:
        raise InputError(f"cannot read {args.file}: {err.strerror}") from None
    models = [load_model(m) for m in args.model]
    status = 0
    for c in conds:
        for m in models:
            rep = check_condition(c, m, args.interp)
            print(rep.tsv(), file=out)
            if not rep.holds:
                status = 1
    return status


def cmd_check_all_oml(args, out):
    from .freeoml import failing_interpretations
    r = parse_relation(args.identity)
    if r.kind != "=":
        raise InputError("check-all-oml takes an identity 'LHS = RHS'")
    iset = _indices(args.interp_set)
    try:
        bad = failing_interpretations(r.lhs, r.rhs, iset)
    except ValueError as err:
        raise InputError(str(err)) from None
    if bad:
        print("FAILS\tinterpretations " + ",".join(map(str, bad)), file=out)
        return 1
    print("HOLDS", file=out)
    return 0


def cmd_search(args, out):
    from .search import enumerate_classes, export_atlas, write_histogram
    t = enumerate_classes(args.max_cost, workers=args.workers)
    if args.out:
        export_atlas(t, args.out)
    if args.histogram or not args.out:
        write_histogram(t, out)
    if not t.complete:
        print(f"incomplete: {int((t.cost < 0).sum())} classes above cost {args.max_cost}",
              file=sys.stderr)
        return 1 if args.out else 0
    return 0


ATLAS_SAMPLE = 200  # rows re-classified when an atlas is loaded


def _atlas(path):
    from .search import AtlasError, import_atlas
    try:
        return import_atlas(path, sample=ATLAS_SAMPLE)
    except (OSError, AtlasError) as err:
        raise InputError(str(err)) from None


def cmd_representative(args, out):
    s = _septuple(args.septuple)
    t = _atlas(args.atlas)
    if s.class_id not in t:
        print(f"class {s} is not in the atlas", file=sys.stderr)
        return 1
    print(f"{t.cost[s.class_id]}\t{t.entry_text(s.class_id)}", file=out)
    return 0


def cmd_extract(args, out):
    from .search import extract_subalgebra
    t = _atlas(args.atlas)
    try:
        rows = extract_subalgebra(t, args.pattern)
    except ValueError as err:
        raise InputError(str(err)) from None
    except LookupError as err:
        print(err, file=sys.stderr)
        return 1
    for s, e, cost in rows:
        print(f"{s}\t{cost}\t{to_text(e)}", file=out)
    return 0


def cmd_construct(args, out):
    from .construct import construct_representative, dump_seeds
    if args.dump_seeds:
        out.write(dump_seeds())
        if args.septuple is None:
            return 0
    if args.septuple is None:
        raise InputError("construct needs a septuple (or --dump-seeds)")
    print(to_text(construct_representative(_septuple(args.septuple))), file=out)
    return 0


def cmd_verify(args, out):
    from .battery import run_battery
    items = run_battery(full=args.full, workers=args.workers)
    for it in items:
        print(it.tsv(), file=out)
    failed = sum(not it.passed for it in items)
    print(f"summary\t{len(items) - failed} passed\t{failed} failed", file=out)
    return 1 if failed else 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="omlkit", description=__doc__.split(".")[0])
    p.add_argument("-v", "--verbose", action="store_true", help="progress on stderr")
    sub = p.add_subparsers(dest="command", required=True, metavar="COMMAND")
    workers = dict(type=int, default=os.cpu_count() or 1, help="worker threads")

    s = sub.add_parser("classify", help="septuple of a two-variable merged expression")
    s.add_argument("expr")
    s.set_defaults(func=cmd_classify)

    s = sub.add_parser("eval", help="evaluate an expression in a finite model")
    s.add_argument("expr")
    s.add_argument("--model", required=True, help="builtin:NAME, NAME or file:PATH")
    s.add_argument("--assign", default="", help="a=x,b=y")
    s.add_argument("--interp", type=int, choices=range(6), help="reading of merged ops")
    s.set_defaults(func=cmd_eval)

    s = sub.add_parser("check", help="check conditions (one per line) in models")
    s.add_argument("file")
    s.add_argument("--model", action="append", required=True)
    s.add_argument("--interp", type=int, choices=range(6))
    s.set_defaults(func=cmd_check)

    s = sub.add_parser("check-all-oml", help="decide a two-variable identity in every OML")
    s.add_argument("identity", help="'LHS = RHS'")
    s.add_argument("--interp-set", default="0,1,2,3,4,5")
    s.set_defaults(func=cmd_check_all_oml)

    s = sub.add_parser("search", help="enumerate classes by cost")
    s.add_argument("--max-cost", type=int, default=14)
    s.add_argument("--out", help="atlas TSV path")
    s.add_argument("--histogram", action="store_true", help="print cost<TAB>count")
    s.add_argument("--workers", **workers)
    s.set_defaults(func=cmd_search)

    s = sub.add_parser("representative", help="shortest representative from an atlas")
    s.add_argument("septuple")
    s.add_argument("--atlas", required=True)
    s.set_defaults(func=cmd_representative)

    s = sub.add_parser("extract", help="cheapest classes matching a pattern like 11,.,5,.,.,.,.")
    s.add_argument("pattern")
    s.add_argument("--atlas", required=True)
    s.set_defaults(func=cmd_extract)

    s = sub.add_parser("construct", help="explicit (long) representative from the seed tables")
    s.add_argument("septuple", nargs="?")
    s.add_argument("--dump-seeds", action="store_true")
    s.set_defaults(func=cmd_construct)

    s = sub.add_parser("verify-paper", help="run the verification battery")
    mode = s.add_mutually_exclusive_group()
    mode.add_argument("--fast", dest="full", action="store_false", default=False)
    mode.add_argument("--full", dest="full", action="store_true")
    s.add_argument("--workers", **workers)
    s.set_defaults(func=cmd_verify)
    return p


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    if args.verbose:
        logging.basicConfig(level=logging.INFO, format="%(name)s: %(message)s")
    try:
        return args.func(args, out)
    except ParseError as err:
        print(f"parse error: {err}", file=sys.stderr)
    except (InputError, ModelError, ValueError) as err:
        print(f"error: {err}", file=sys.stderr)
    return 2


if __name__ == "__main__":
    sys.exit(main())
