"""Command-line harness: dataset generation, benchmark runs, sweeps, charts.

Subcommands:
  generate  write a dataset CSV
  run       run one algorithm on a dataset CSV, JSON report on stdout
  sweep     run both algorithms across the adversarial chain family
  plot      render a sweep CSV as an SVG chart with a .dat sidecar

Algorithmic non-convergence is data (reported with exit code 0); usage and
I/O errors exit nonzero with a message on stderr.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import sys
from dataclasses import dataclass
from pathlib import Path

from optsep.datagen import DatasetSpec, generate, read_csv, write_csv
from optsep.optimistic import RunConfig, RunResult, RunTrace, run
from optsep.perceptron import pass_bound, perceptron_run
from optsep.plotting import format_dat, render_series_svg
from optsep.regret import (
    LAMBDA,
    annotate_trace,
    brute_force_margin,
    entropy_ceiling,
    round_bound,
)

FALLBACK_BUDGET = 1000
"""Round/pass budget used when the data shows no positive margin."""

SWEEP_COLUMNS = (
    "n",
    "gamma",
    "perceptron_ops",
    "perceptron_mistakes",
    "perceptron_converged",
    "optsep_ops",
    "optsep_rounds",
    "optsep_converged",
)


@dataclass(frozen=True)
class SweepRow:
    """One benchmark comparison at a single problem size."""

    n: int
    gamma: float
    perceptron_ops: int
    perceptron_mistakes: int
    perceptron_converged: bool
    optsep_ops: int
    optsep_rounds: int
    optsep_converged: bool


def sweep_eq2(n_min: int, n_max: int) -> list[SweepRow]:
    """Run both algorithms on the chain family for each n in [n_min, n_max].

    Budgets come from the theory: the optimistic solver gets four times its
    sufficient round count, the perceptron its mistake-bound pass count, so
    a budget-exhausted row signals a broken guarantee rather than a small
    default.
    """
    if n_min < 1:
        raise ValueError("n-min must be at least 1")
    if n_min > n_max:
        raise ValueError(f"empty sweep range [{n_min}, {n_max}]")
    rows = []
    for n in range(n_min, n_max + 1):
        dataset = generate(DatasetSpec(kind="eq2", n=n))
        gamma = brute_force_margin(dataset)
        opt = run(dataset, max_rounds=4 * round_bound(n, dataset.radius**2, gamma))
        perc = perceptron_run(dataset, max_passes=pass_bound(dataset.radius, gamma))
        rows.append(
            SweepRow(
                n=n,
                gamma=gamma,
                perceptron_ops=perc.total_ops,
                perceptron_mistakes=perc.mistakes or 0,
                perceptron_converged=perc.converged,
                optsep_ops=opt.total_ops,
                optsep_rounds=opt.rounds,
                optsep_converged=opt.converged,
            )
        )
    return rows


def sweep_csv(rows: list[SweepRow]) -> str:
    lines = [",".join(SWEEP_COLUMNS)]
    for r in rows:
        lines.append(
            ",".join(
                [
                    str(r.n),
                    repr(r.gamma),
                    str(r.perceptron_ops),
                    str(r.perceptron_mistakes),
                    str(int(r.perceptron_converged)),
                    str(r.optsep_ops),
                    str(r.optsep_rounds),
                    str(int(r.optsep_converged)),
                ]
            )
        )
    return "\n".join(lines) + "\n"


def _default_budget(dataset, algo: str) -> int:
    gamma = brute_force_margin(dataset)
    if gamma <= 0.0:
        return FALLBACK_BUDGET
    if algo == "optsep":
        return 4 * round_bound(dataset.n, dataset.radius**2, gamma)
    return pass_bound(dataset.radius, gamma)


def _report(algo: str, result: RunResult) -> dict:
    return {
        "algo": algo,
        "converged": result.converged,
        "rounds": result.rounds,
        "mistakes": result.mistakes,
        "total_ops": result.total_ops,
        "final_margin": result.final_margin,
    }


def _trace_payload(trace: RunTrace, dataset, result: RunResult) -> dict:
    gamma = brute_force_margin(dataset)
    report = annotate_trace(trace, dataset, gamma=gamma)
    records = []
    for rec in trace.records:
        records.append(
            {
                "t": rec.t,
                "w": [float(v) for v in rec.w],
                "probs": [float(v) for v in rec.probs],
                "margins": [float(v) for v in rec.margins],
                "p_change_l1": rec.p_change_l1,
                "min_avg_margin": rec.min_avg_margin,
                "inner_products": rec.inner_products,
                "additions": rec.additions,
                "learner_lhs": rec.learner_lhs,
                "learner_rhs": rec.learner_rhs,
                "data_lhs": rec.data_lhs,
                "data_rhs": rec.data_rhs,
                "gap_lhs": rec.gap_lhs,
                "gap_rhs": rec.gap_rhs,
            }
        )
    return {
        "n": dataset.n,
        "d": dataset.d,
        "radius": dataset.radius,
        "eta": report.eta,
        "lam": LAMBDA,
        "entropy_bound": entropy_ceiling(dataset.n),
        "gamma": gamma,
        "converged": result.converged,
        "rounds": result.rounds,
        "records": records,
    }


def cmd_generate(args) -> int:
    if args.kind == "eq2":
        spec = DatasetSpec(kind="eq2", n=args.n)
    else:
        spec = DatasetSpec(
            kind="random_separable",
            n=args.n,
            d=args.d,
            margin_target=args.margin,
            seed=args.seed,
        )
    write_csv(generate(spec), args.out)
    return 0


def cmd_run(args) -> int:
    dataset = read_csv(args.data, expect_header=args.header)
    if args.algo == "perceptron" and args.trace:
        raise ValueError("trace export is only available for --algo optsep")
    budget = args.max_rounds or _default_budget(dataset, args.algo)
    if args.algo == "optsep":
        result = run(dataset, budget, RunConfig(record_trace=bool(args.trace)))
        if args.trace:
            payload = _trace_payload(result.trace, dataset, result)
            Path(args.trace).write_text(
                json.dumps(payload, indent=1) + "\n", encoding="utf-8"
            )
    else:
        result = perceptron_run(dataset, budget)
    print(json.dumps(_report(args.algo, result)))
    return 0


def cmd_sweep(args) -> int:
    rows = sweep_eq2(args.n_min, args.n_max)
    with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(sweep_csv(rows))
    return 0


def cmd_plot(args) -> int:
    xs: list[float] = []
    perc: list[float] = []
    opts: list[float] = []
    with open(args.infile, encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        for row in reader:
            try:
                xs.append(float(row["n"]))
                perc.append(float(row["perceptron_ops"]))
                opts.append(float(row["optsep_ops"]))
            except (KeyError, TypeError) as exc:
                raise ValueError(f"{args.infile}: not a sweep CSV ({exc})") from None
    if not xs:
        raise ValueError(f"{args.infile}: no data rows")
    if args.log:
        perc = [math.log(v) for v in perc]
        opts = [math.log(v) for v in opts]
        y_label = "ln(total operation units)"
    else:
        y_label = "total operation units"
    series = [("perceptron", perc), ("optsep", opts)]
    svg = render_series_svg(xs, series, "operation units until convergence", "n", y_label)
    out = Path(args.out)
    out.write_text(svg + "\n", encoding="utf-8")
    out.with_suffix(".dat").write_text(format_dat(xs, series), encoding="utf-8")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="optsep",
        description="Benchmark harness for optimistic linear separation.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="write a dataset CSV")
    p.add_argument("--kind", choices=("eq2", "random"), required=True)
    p.add_argument("--n", type=int, required=True, help="number of examples")
    p.add_argument("--d", type=int, default=0, help="dimension (random only)")
    p.add_argument("--margin", type=float, default=0.0, help="margin floor (random only)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)
    p.set_defaults(handler=cmd_generate)

    p = sub.add_parser("run", help="run one algorithm on a dataset CSV")
    p.add_argument("--data", required=True)
    p.add_argument("--algo", choices=("optsep", "perceptron"), default="optsep")
    p.add_argument(
        "--max-rounds",
        type=int,
        default=0,
        help="round/pass budget; 0 derives it from the margin oracle",
    )
    p.add_argument("--trace", default="", help="write the full run trace as JSON")
    p.add_argument("--header", action="store_true", help="skip a header line")
    p.set_defaults(handler=cmd_run)

    p = sub.add_parser("sweep", help="compare both algorithms across n")
    p.add_argument("--kind", choices=("eq2",), default="eq2")
    p.add_argument("--n-min", type=int, default=1)
    p.add_argument("--n-max", type=int, default=15)
    p.add_argument("--out", required=True)
    p.set_defaults(handler=cmd_sweep)

    p = sub.add_parser("plot", help="render a sweep CSV as SVG")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--log", action="store_true", help="plot natural log of the counts")
    p.set_defaults(handler=cmd_plot)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.handler(args)
    except (ValueError, RuntimeError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def console_entry() -> None:
    raise SystemExit(main())


if __name__ == "__main__":
    console_entry()
