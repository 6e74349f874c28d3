"""Command line front end: ``sparse-moments {sample,learn,eval,bench}``.

Exit codes: 0 success, 2 usage or input error, 3 solver failure.
"""

from __future__ import annotations

import argparse
import json
import sys

from .bench import compare_models, run_bench, write_bench_csv
from .errors import InvalidInput, SparseMomentsError
from .model import MixtureModel, load_histogram, load_model, sample_histogram, save_histogram, wasserstein
from .prony import LearnConfig, learn_coin_mixture

EXIT_OK, EXIT_USAGE, EXIT_SOLVER = 0, 2, 3


class UsageError(Exception):
    pass


def _load(loader, path, what):
    try:
        return loader(path)
    except (OSError, ValueError, TypeError) as exc:
        raise UsageError(f"cannot read {what} {path!r}: {exc}") from None


def _load_learned(path):
    """A model file, or a learn report whose "model" entry is used."""
    def loader(p):
        with open(p) as fh:
            obj = json.load(fh)
        if isinstance(obj, dict) and "model" in obj:
            if obj["model"] is None:
                raise ValueError(f"report has no model (status {obj.get('status')!r})")
            obj = obj["model"]
        return MixtureModel.from_dict(obj)

    return _load(loader, path, "learned model")


def _write_json(obj, path):
    text = json.dumps(obj, indent=2) + "\n"
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(path, "w") as fh:
            fh.write(text)


def cmd_sample(args):
    model = _load(load_model, args.model, "model")
    m = 2 * model.k if args.m is None else args.m
    if m != 2 * model.k:
        raise UsageError(f"m must equal 2k = {2 * model.k} for a {model.k}-coin model, got m={m}")
    if args.s < 1:
        raise UsageError("s must be >= 1")
    hist = sample_histogram(model, m, args.s, args.seed)
    if args.out in (None, "-"):
        _write_json(hist.to_dict(), None)
    else:
        save_histogram(hist, args.out)
    return EXIT_OK


def cmd_learn(args):
    hist = _load(load_histogram, args.histogram, "histogram")
    if hist.m != 2 * args.k:
        raise UsageError(
            f"histogram has {hist.m + 1} bins; k={args.k} needs 2k+1 = {2 * args.k + 1}"
        )
    try:
        cfg = LearnConfig(args.k, args.zeta, args.wmin, gamma=args.gamma, delta=args.delta)
    except InvalidInput as exc:
        raise UsageError(str(exc)) from None
    try:
        report = learn_coin_mixture(cfg, hist)
    except SparseMomentsError as exc:
        _write_json(
            {
                "status": exc.status,
                "stage": exc.stage,
                "message": str(exc),
                "model": None,
                "diagnostics": {key: float(val) for key, val in exc.diagnostics.items()},
            },
            args.out,
        )
        print(f"solver failure: {exc}", file=sys.stderr)
        return EXIT_SOLVER
    _write_json(report.to_dict(), args.out)
    return EXIT_OK


def cmd_eval(args):
    truth = _load(load_model, args.true_model, "model")
    learned = _load_learned(args.learned_model)
    if args.wasserstein_only:
        print(repr(wasserstein(truth, learned)))
        return EXIT_OK
    if truth.k != learned.k:
        raise UsageError(
            f"matching needs equal k (got {truth.k} and {learned.k}); use --wasserstein-only"
        )
    print(",".join(f"{x:.17g}" for x in compare_models(truth, learned)))
    return EXIT_OK


def _int_list(text):
    try:
        values = [int(float(x)) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")
    if not values or any(v < 1 for v in values):
        raise argparse.ArgumentTypeError(f"values must be positive integers, got {text!r}")
    return values


def cmd_bench(args):
    if args.trials < 0:
        raise UsageError("trials must be >= 0")
    try:
        rows = run_bench(
            args.k_list, args.zeta, args.wmin, args.s_list, args.trials, args.seed,
            gamma=args.gamma, timing=args.timing, jobs=args.jobs,
        )
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if args.out in (None, "-"):
        write_bench_csv(rows, sys.stdout)
    else:
        with open(args.out, "w", newline="") as fh:
            write_bench_csv(rows, fh)
    return EXIT_OK


def build_parser():
    parser = argparse.ArgumentParser(
        prog="sparse-moments",
        description="Identify k-coin mixtures from histograms of 2k-snapshots.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sample", help="draw a histogram of m-snapshots from a model file")
    p.add_argument("model", help="model JSON {k, alpha, w}")
    p.add_argument("--m", type=int, default=None, help="snapshot length (default 2k; must equal 2k)")
    p.add_argument("--s", type=int, required=True, help="number of snapshots")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("-o", "--out", default=None, help="output histogram JSON (default stdout)")
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("learn", help="learn a model from a histogram file")
    p.add_argument("histogram", help="histogram JSON {m, s, counts}")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--zeta", type=float, required=True, help="separation lower bound")
    p.add_argument("--wmin", type=float, required=True, help="weight lower bound")
    p.add_argument("--gamma", type=float, default=20.0, help="target accuracy 2**-gamma")
    p.add_argument("--delta", type=float, default=0.01, help="failure probability")
    p.add_argument("-o", "--out", default=None, help="output report JSON (default stdout)")
    p.set_defaults(func=cmd_learn)

    p = sub.add_parser("eval", help="compare a learned model against the truth")
    p.add_argument("true_model")
    p.add_argument("learned_model", help="model JSON or learn report JSON")
    p.add_argument("--wasserstein-only", action="store_true",
                   help="print only the Wasserstein distance (allows different k)")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("bench", help="seeded sweep over k and sample sizes, CSV output")
    p.add_argument("--k-list", type=_int_list, required=True, help="e.g. 2,3,4")
    p.add_argument("--zeta", type=float, required=True)
    p.add_argument("--wmin", type=float, required=True)
    p.add_argument("--s-list", type=_int_list, required=True, help="e.g. 10000,100000")
    p.add_argument("--trials", type=int, default=10)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--gamma", type=float, default=10.0)
    p.add_argument("--jobs", type=int, default=1, help="worker processes")
    p.add_argument("--no-timing", dest="timing", action="store_false",
                   help="write learn_time_ns as 0 so output is byte-reproducible")
    p.add_argument("-o", "--out", default=None, help="output CSV (default stdout)")
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"{parser.prog} {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
