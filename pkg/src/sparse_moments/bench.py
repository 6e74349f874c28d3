"""Seeded benchmark sweeps: random model -> sample -> learn -> evaluate."""

from __future__ import annotations

import csv
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import astuple, dataclass, fields

import numpy as np

from .errors import SparseMomentsError
from .model import make_rng, optimal_matching, random_model, sample_histogram, wasserstein
from .prony import LearnConfig, learn_coin_mixture

__all__ = ["BenchRow", "compare_models", "trial_seed", "run_trial", "run_bench", "write_bench_csv"]

SCHEMA_LINE = "# sparse-moments bench schema v1"
STATUSES = ("ok", "degree_deficient", "degenerate_nodes", "convergence_failure")


@dataclass(frozen=True)
class BenchRow:
    k: int
    zeta: float
    w_min: float
    s: int
    seed: int
    alpha_err_inf: float
    w_err_inf: float
    wasserstein: float
    learn_time_ns: int
    status: str


def compare_models(truth, learned):
    """``(alpha_err_inf, w_err_inf, wasserstein)`` of two same-k models.

    Biases are compared under the optimal bottleneck matching and weights
    under that same permutation.
    """
    if truth.k != learned.k:
        raise ValueError(f"models have different k ({truth.k} vs {learned.k})")
    d, perm = optimal_matching(truth.alpha, learned.alpha)
    w_err = float(np.max(np.abs(truth.w - learned.w[perm])))
    return d, w_err, wasserstein(truth, learned)


def trial_seed(master, k, s, trial):
    """32-bit seed of one trial's independent substream."""
    ss = np.random.SeedSequence(master, spawn_key=(k, s, trial))
    return int(ss.generate_state(1)[0])


def run_trial(k, zeta, w_min, s, seed, gamma=10.0, timing=True):
    rng = make_rng(seed)
    truth = random_model(k, zeta, w_min, rng)
    hist = sample_histogram(truth, 2 * k, s, rng)
    cfg = LearnConfig(k, zeta, w_min, gamma=gamma)
    start = time.perf_counter_ns()
    try:
        report = learn_coin_mixture(cfg, hist)
    except SparseMomentsError as exc:
        elapsed = time.perf_counter_ns() - start
        status = exc.status if exc.status in STATUSES else "convergence_failure"
        return BenchRow(k, zeta, w_min, s, seed, math.nan, math.nan, math.nan,
                        elapsed if timing else 0, status)
    elapsed = time.perf_counter_ns() - start
    a_err, w_err, wass = compare_models(truth, report.model)
    return BenchRow(k, zeta, w_min, s, seed, a_err, w_err, wass, elapsed if timing else 0, "ok")


def _run_task(task):
    return run_trial(*task)


def run_bench(k_list, zeta, w_min, s_list, trials, seed, gamma=10.0, timing=True, jobs=1):
    """All (k, s, trial) rows in that nested order, whatever ``jobs`` is."""
    for k in k_list:
        if k < 1 or (k > 1 and (k - 1) * zeta > 1) or not zeta > 0:
            raise ValueError(f"zeta={zeta} infeasible for k={k} (need 0 < zeta <= 1/(k-1))")
        if not 0 < w_min <= 1 / k:
            raise ValueError(f"w_min={w_min} infeasible for k={k} (need 0 < w_min <= 1/k)")
    tasks = [
        (k, zeta, w_min, s, trial_seed(seed, k, s, t), gamma, timing)
        for k in k_list
        for s in s_list
        for t in range(trials)
    ]
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(_run_task, tasks))
    return [run_trial(*task) for task in tasks]


def _fmt(x):
    if isinstance(x, float):
        return repr(x)
    return str(x)


def write_bench_csv(rows, fh):
    fh.write(SCHEMA_LINE + "\n")
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow([f.name for f in fields(BenchRow)])
    for row in rows:
        writer.writerow([_fmt(x) for x in astuple(row)])
