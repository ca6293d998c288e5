"""Command line entry point: ``modcoh <command> ...``.

Exit codes: 0 equal/commutes/ok, 1 not equal or does not commute,
2 coherence could not decide (``--mode coherence`` only), 3 bad input.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import residue as R
from .harness import RankOutOfRange, iter_identities, timing_run, write_jsonl
from .lifter import (Diagram, DiagramError, LiftError, coherence_equal, infer_typing,
                     verify_diagram)
from .terms import ParseError, evaluate, parse, to_text

OK, DIFFERENT, UNDECIDED, BAD_INPUT = 0, 1, 2, 3


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), ensure_ascii=False)


def cmd_eval(args) -> int:
    f = evaluate(parse(args.term))
    if args.json:
        out = {"term": to_text(parse(args.term)), "bijection": R.to_json(f)}
        if args.table:
            out["values"] = [R.apply(f, n) for n in range(args.table)]
        print(_dump(out))
        return OK
    print(R.pretty(f))
    if args.table:
        print("n\tf(n)")
        for n in range(args.table):
            print(f"{n}\t{R.apply(f, n)}")
    return OK


def cmd_apply(args) -> int:
    if args.n < 0:
        raise ValueError("n must be a natural number")
    print(R.apply(evaluate(parse(args.term)), args.n))
    return OK


def cmd_equal(args) -> int:
    t1, t2 = parse(args.lhs), parse(args.rhs)
    result = {"lhs": to_text(t1), "rhs": to_text(t2), "mode": args.mode}
    code = OK
    if args.mode in ("coherence", "both"):
        res = coherence_equal(t1, t2)
        if res:
            result.update(equal=True, method="coherence")
        elif args.mode == "coherence":
            result.update(equal=None, method="coherence", reason=res.reason)
            code = UNDECIDED
        else:
            result["coherence"] = res.reason
    if "equal" not in result:
        eq = R.equal(evaluate(t1), evaluate(t2))
        result.update(equal=eq.equal, method="oracle")
        if not eq:
            result["witness"] = eq.witness
            code = DIFFERENT
    if args.json:
        print(_dump(result))
    elif result["equal"] is None:
        print(f"unknown: {result['reason']}")
    elif result["equal"]:
        print(f"equal ({result['method']})")
    else:
        print(f"not equal: least witness n = {result['witness']}")
    return code


def cmd_lift(args) -> int:
    ty = infer_typing(parse(args.term))
    if args.json:
        print(_dump({"source": str(ty.source), "target": str(ty.target)}))
    else:
        print(ty)
    return OK


def cmd_gen(args) -> int:
    idents = iter_identities(args.rank, args.limit)
    if args.out:
        with open(args.out, "w") as fh:
            n = write_jsonl(idents, fh)
        print(f"wrote {n} verified identities of rank {args.rank} to {args.out}",
              file=sys.stderr)
    else:
        write_jsonl(idents, sys.stdout)
    return OK


def cmd_verify_diagram(args) -> int:
    with open(args.path) as fh:
        d = Diagram.from_json(json.load(fh))
    report = verify_diagram(d, args.path_bound)
    if args.json:
        print(_dump(report.to_json()))
    else:
        for p in report.pairs:
            line = f"{p.source} -> {p.target}  {list(p.path1)} vs {list(p.path2)}: {p.status.value}"
            if p.witness is not None:
                line += f" (n = {p.witness})"
            print(line)
        for a, b in report.truncated:
            print(f"{a} -> {b}: longer paths exist beyond bound {report.path_bound}")
        print("commutes" if report.commutes else "does not commute")
    return OK if report.commutes else DIFFERENT


def cmd_report(args) -> int:
    from .report import plot_timings, write_csv

    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    rows = timing_run(range(args.min_rank, args.max_rank + 1), args.trials, args.seed)
    write_csv(rows, out / "timings.csv")
    plot_timings(rows, out / "timings.png")
    print(f"{len(rows)} rows -> {out / 'timings.csv'}, {out / 'timings.png'}")
    return OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="modcoh", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("eval", help="print the piecewise table of a term")
    s.add_argument("term")
    s.add_argument("--json", action="store_true")
    s.add_argument("--table", type=int, default=0, metavar="N",
                   help="also list f(n) for n < N")
    s.set_defaults(func=cmd_eval)

    s = sub.add_parser("apply", help="evaluate a term at n")
    s.add_argument("term")
    s.add_argument("n", type=int)
    s.set_defaults(func=cmd_apply)

    s = sub.add_parser("equal", help="decide whether two terms denote the same bijection")
    s.add_argument("lhs")
    s.add_argument("rhs")
    s.add_argument("--mode", choices=("oracle", "coherence", "both"), default="both")
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_equal)

    s = sub.add_parser("lift", help="principal typing of a sigma-free term")
    s.add_argument("term")
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_lift)

    s = sub.add_parser("gen", help="emit verified identities for all tree pairs of a rank")
    s.add_argument("--rank", type=int, required=True)
    s.add_argument("--limit", type=int)
    s.add_argument("--out")
    s.set_defaults(func=cmd_gen)

    s = sub.add_parser("verify-diagram", help="check every parallel path pair of a diagram")
    s.add_argument("path")
    s.add_argument("--path-bound", type=int)
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_verify_diagram)

    s = sub.add_parser("report", help="time lifting against the oracle; CSV and figure")
    s.add_argument("--min-rank", type=int, default=3)
    s.add_argument("--max-rank", type=int, default=8)
    s.add_argument("--trials", type=int, default=20)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--out-dir", default="report")
    s.set_defaults(func=cmd_report)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ParseError, LiftError, DiagramError, RankOutOfRange, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return BAD_INPUT


if __name__ == "__main__":
    sys.exit(main())
