"""
Learning from sampled snapshots
===============================

With finitely many snapshots the moments are noisy and so are the learned
parameters. The error shrinks roughly like one over the square root of the
number of snapshots.
"""

import numpy as np

from sparse_moments import (
    InfeasibleSampleSize,
    LearnConfig,
    MixtureModel,
    SparseMomentsError,
    learn_coin_mixture,
    make_rng,
    matching_distance,
    sample_histogram,
    wasserstein,
)

truth = MixtureModel([0.2, 0.5, 0.8], [1 / 3, 1 / 3, 1 / 3])
cfg = LearnConfig(k=3, zeta=0.3, w_min=1 / 3, gamma=10)

print(f"{'s':>9s} {'median bias err':>16s} {'median W1':>10s}")
for s in (10**3, 10**4, 10**5, 10**6):
    bias_err, w1 = [], []
    for trial in range(20):
        # Each (s, trial) pair gets its own reproducible random stream.
        hist = sample_histogram(truth, m=6, s=s, seed=make_rng(1, s, trial))
        try:
            model = learn_coin_mixture(cfg, hist).model
        except SparseMomentsError as exc:  # a tiny sample can make the Hankel rank-deficient
            print(f"  s={s} trial {trial}: {type(exc).__name__}")
            continue
        bias_err.append(matching_distance(truth.alpha, model.alpha))
        w1.append(wasserstein(truth, model))
    print(f"{s:9d} {np.median(bias_err):16.5f} {np.median(w1):10.5f}")

# The worst-case sample bound grows like (16/zeta)**(8k); it is far above
# what the learner needs in practice, and beyond a cap it is refused.
print("planned sample size, one coin:", f"{LearnConfig(k=1, zeta=1, w_min=1, gamma=1).planned_sample_size():.3g}")
try:
    LearnConfig(k=2, zeta=0.5, w_min=0.5, gamma=1).planned_sample_size()
except InfeasibleSampleSize as exc:
    print("two coins:", exc)
