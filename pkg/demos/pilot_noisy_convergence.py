"""Pilot run that calibrates the noisy-convergence acceptance threshold.

Three coins at 0.2, 0.5, 0.8 with equal weights, 6-snapshots, 50 seeded
trials at each sample size. The median matching distance between true and
learned biases is written to tests/data/pilot_noisy_convergence.json.

The seeds here (substream key 7) are disjoint from the ones the acceptance
test uses, so the test is not graded on its own calibration data.

    python demos/pilot_noisy_convergence.py
"""

import json
from pathlib import Path

import numpy as np

from sparse_moments import (
    LearnConfig,
    MixtureModel,
    SparseMomentsError,
    learn_coin_mixture,
    make_rng,
    matching_distance,
    sample_histogram,
)

SIZES = (10**4, 10**5, 10**6)
TRIALS = 50
OUT = Path(__file__).resolve().parent.parent / "tests" / "data" / "pilot_noisy_convergence.json"


def main():
    truth = MixtureModel([0.2, 0.5, 0.8], [1 / 3, 1 / 3, 1 / 3])
    cfg = LearnConfig(3, 0.3, 1 / 3, gamma=10)
    medians, quartiles, failures = [], [], []
    for s in SIZES:
        dists, failed = [], 0
        for trial in range(TRIALS):
            hist = sample_histogram(truth, 6, s, make_rng(7, s, trial))
            try:
                learned = learn_coin_mixture(cfg, hist).model
                dists.append(matching_distance(truth.alpha, learned.alpha))
            except SparseMomentsError:
                failed += 1
                dists.append(np.inf)
        medians.append(float(np.median(dists)))
        quartiles.append([float(q) for q in np.percentile(dists, [25, 75])])
        failures.append(failed)
        print(f"s={s:>8d}  median {medians[-1]:.5f}  IQR {quartiles[-1][0]:.5f}-{quartiles[-1][1]:.5f}"
              f"  failures {failed}")

    record = {
        "model": truth.to_dict(),
        "learn": {"k": 3, "zeta": 0.3, "w_min": 1 / 3, "gamma": 10},
        "seed_key": 7,
        "trials": TRIALS,
        "s": list(SIZES),
        "median": medians,
        "iqr": quartiles,
        "failures": failures,
        "threshold_at_1e6": 0.05,
    }
    OUT.parent.mkdir(parents=True, exist_ok=True)
    OUT.write_text(json.dumps(record, indent=2) + "\n")
    print(f"wrote {OUT}")


if __name__ == "__main__":
    main()
