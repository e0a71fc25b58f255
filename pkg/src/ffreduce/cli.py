"""Command-line front end.

Exit codes: 0 success, 1 domain error, 2 usage error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import random
import sys
import time
from typing import Sequence

from . import bounds, cayley, fileio, reduce
from .elemword import canonicalize, eval_word, is_canonical
from .field import FieldError, field_new
from .matrix import Matrix, SingularMatrixError, random_invertible

BENCH_COLUMNS = ["n", "q", "algo", "stripe_width", "mean_ops", "max_ops",
                 "n2", "n2_over_logq_n", "wall_time"]
BALL_COLUMNS = ["k", "ball_size", "bound_log_q", "bound", "pass"]


class DomainError(Exception):
    pass


def _csv_text(columns, rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([_cell(row[c]) for c in columns])
    return buf.getvalue()


def _cell(x):
    if isinstance(x, bool):
        return "yes" if x else "no"
    if x is None:
        return ""
    return repr(x) if isinstance(x, float) else x


def _emit(text: str, path) -> None:
    if path:
        with open(path, "w", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _json_text(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def _field(args):
    return field_new(args.p, args.m)


def cmd_reduce(args) -> int:
    A = fileio.read_matrix(args.input)
    try:
        if args.algo == "gj":
            res = reduce.gauss_jordan(A)
        else:
            res = reduce.striped_eliminate(A, args.width)
    except SingularMatrixError as exc:
        raise DomainError(str(exc)) from None
    report = reduce.verify_reduction(A, res)
    record = {"algorithm": res.algorithm, "n": A.n, "q": A.field.q,
              "stripe_width": res.stripe_width, "op_count": res.op_count,
              "verified": report.ok}
    if args.emit_word:
        fileio.write_word(args.emit_word, res.word, A.n, A.field)
    if args.emit_inverse and report.ok:
        fileio.write_matrix(args.emit_inverse, reduce.invert_via_word(A, res))
    if args.format == "json":
        _emit(_json_text(record), None)
    else:
        _emit(_csv_text(list(record), [record]), None)
    if not report.ok:
        print(report.message, file=sys.stderr)
        return 1
    return 0


def bench_rows(ns, field, trials: int, seed: int, algos, width=None, timing=False) -> list[dict]:
    """Mean and max op counts per (n, algo) over seeded random matrices."""
    q = field.q
    rows = []
    if trials <= 0:
        return rows
    for n in ns:
        mats = [random_invertible(n, field, random.Random(f"{seed}:{n}:{t}"))
                for t in range(trials)]
        for algo in algos:
            counts = []
            w = None
            t0 = time.perf_counter()
            for A in mats:
                if algo == "gj":
                    res = reduce.gauss_jordan(A)
                else:
                    res = reduce.striped_eliminate(A, width)
                    w = res.stripe_width
                counts.append(res.op_count)
            elapsed = time.perf_counter() - t0
            ln = bounds.log_q(n, q) if n > 1 else 0.0
            rows.append({
                "n": n, "q": q, "algo": algo, "stripe_width": w,
                "mean_ops": sum(counts) / len(counts), "max_ops": max(counts),
                "n2": n * n, "n2_over_logq_n": n * n / ln if ln else float("inf"),
                "wall_time": elapsed / trials if timing else None,
            })
    return rows


def cmd_bench(args) -> int:
    field = _field(args)
    rows = bench_rows(args.n, field, args.trials, args.seed, args.algos,
                      args.width, args.timing)
    if args.format == "json":
        _emit(_json_text(rows), args.out)
    else:
        _emit(_csv_text(BENCH_COLUMNS, rows), args.out)
    if args.figure and rows:
        from .report import bench_figure
        bench_figure(rows, args.figure)
    return 0


def cmd_bfs(args) -> int:
    field = _field(args)
    cap = args.state_cap if args.state_cap is not None else cayley.state_cap_from_env()
    try:
        hist = cayley.bfs_histogram(args.n[0], field, cap)
    except cayley.StateCapExceeded as exc:
        raise DomainError(str(exc)) from None
    _emit(hist.dumps(), args.out)
    if args.figure:
        from .report import histogram_figure
        histogram_figure(hist, args.figure)
    return 0


def ball_rows(hist) -> list[dict]:
    q = hist.q
    rows = []
    for k, ball in enumerate(hist.ball_sizes):
        b = bounds.counting_bound_log(hist.n, q, k)
        rows.append({"k": k, "ball_size": ball, "bound_log_q": b,
                     "bound": q ** b, "pass": bounds.ball_within_bound(ball, hist.n, q, k)})
    return rows


def cmd_bounds(args) -> int:
    field = _field(args)
    if not 0 < args.alpha < 1:
        raise DomainError("alpha must lie in (0, 1)")
    table = bounds.asymptote_table(args.n, field.q, args.alpha)
    ok = True
    if args.format == "json":
        out = {"q": field.q, "alpha": args.alpha,
               "columns": bounds.ASYMPTOTE_COLUMNS,
               "rows": [r.as_dict() for r in table],
               "notes": {"approx_gl_lower_log": "approximation: "
                         "e^(-1/(q-1)) estimate of prod(1-q^-r); not a valid lower bound"}}
        if args.hist:
            hist = cayley.load_histogram(args.hist)
            balls = ball_rows(hist)
            ok = all(r["pass"] for r in balls)
            out["ball_check"] = {"n": hist.n, "q": hist.q, "rows": balls}
        text = _json_text(out)
    else:
        text = _csv_text(bounds.ASYMPTOTE_COLUMNS, [r.as_dict() for r in table])
        if args.hist:
            hist = cayley.load_histogram(args.hist)
            balls = ball_rows(hist)
            ok = all(r["pass"] for r in balls)
            text += "\n" + _csv_text(BALL_COLUMNS, balls)
    _emit(text, args.out)
    if args.figure:
        from .report import bounds_figure
        bounds_figure(table, field.q, args.figure)
    return 0 if ok else 1


def cmd_canon(args) -> int:
    word, n, field = fileio.read_word(args.input)
    cw = canonicalize(word, field)
    out_word = cw.to_word()
    I = Matrix.identity(n, field)
    same = eval_word(word, I) == eval_word(out_word, I)
    _emit(fileio.format_word(out_word, n, field), args.out)
    line = (f"products equal: {'yes' if same else 'no'}; "
            f"lengths {len(word)} -> {len(out_word)}; "
            f"blocks {list(cw.block_lengths)}; canonical: {'yes' if is_canonical(cw) else 'no'}")
    print(line, file=sys.stdout if args.out else sys.stderr)
    return 0 if same else 1


def cmd_sample(args) -> int:
    field = _field(args)
    A = random_invertible(args.n[0], field, args.seed)
    _emit(fileio.format_matrix(A), args.out)
    return 0


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {v}")
    return v


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ffreduce",
                                     description="Row-operation complexity over finite fields.")
    sub = parser.add_subparsers(dest="command", required=True)

    def field_args(p, multi_n=False):
        p.add_argument("--n", type=_positive, nargs="+" if multi_n else 1, required=True)
        p.add_argument("--p", type=int, required=True)
        p.add_argument("--m", type=int, default=1)

    p = sub.add_parser("reduce", help="reduce a matrix file to the identity")
    p.add_argument("--algo", choices=["gj", "striped"], default="gj")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--width", type=_positive)
    p.add_argument("--emit-word")
    p.add_argument("--emit-inverse")
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("bench", help="op counts of both algorithms on random matrices")
    field_args(p, multi_n=True)
    p.add_argument("--trials", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--algos", nargs="+", choices=["gj", "striped"], default=["gj", "striped"])
    p.add_argument("--width", type=_positive)
    p.add_argument("--timing", action="store_true",
                   help="fill wall_time (seconds per matrix); output is then not reproducible")
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.add_argument("--out")
    p.add_argument("--figure")
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("bfs", help="exact distance histogram of GL(n, q)")
    field_args(p)
    p.add_argument("--state-cap", type=int)
    p.add_argument("--out")
    p.add_argument("--figure")
    p.set_defaults(func=cmd_bfs)

    p = sub.add_parser("bounds", help="counting-bound and threshold tables")
    field_args(p, multi_n=True)
    p.add_argument("--alpha", type=float, default=0.5)
    p.add_argument("--hist", help="histogram JSON to check against the counting bound")
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.add_argument("--out")
    p.add_argument("--figure")
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("canon", help="canonicalize a word file")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_canon)

    p = sub.add_parser("sample", help="write a uniform random invertible matrix")
    field_args(p)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_sample)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (DomainError, FieldError, fileio.FormatError, OSError, ValueError) as exc:
        print(f"ffreduce: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
