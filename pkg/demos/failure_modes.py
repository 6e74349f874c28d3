"""
When identification fails
=========================

The learner never invents a model. Misspecified k, or a sample too small to
separate the coins, raises an error naming the stage that failed, with the
diagnostics gathered up to that point.
"""

from sparse_moments import (
    LearnConfig,
    MixtureModel,
    SparseMomentsError,
    exact_moments,
    learn_from_exact_moments,
)

# A single fair coin, but the learner is told there are two.
mu = exact_moments(MixtureModel([0.5], [1.0]), 4)
try:
    learn_from_exact_moments(LearnConfig(k=2, zeta=0.5, w_min=0.5), mu)
except SparseMomentsError as exc:
    print("status:", exc.status)
    print("stage: ", exc.stage)
    print("message:", exc)
    print("lambda_min:", exc.diagnostics.get("lambda_min"))

# With many coins packed close together the Hankel eigenvalues fall below
# double precision, and the two smallest can no longer be told apart.
k = 16
crowded = MixtureModel([i / 15 for i in range(k)], [1 / k] * k)
try:
    learn_from_exact_moments(LearnConfig(k=k, zeta=1 / 15, w_min=1 / k), exact_moments(crowded, 2 * k))
except SparseMomentsError as exc:
    print(f"k={k}:", exc.status, "at stage", exc.stage)

# The theoretical tolerances underflow for such k. They are clamped to a
# floor (64 machine epsilons, or SPARSE_MOMENTS_FP_FLOOR) and the clamp is
# reported as a diagnostic.
cfg = LearnConfig(k=k, zeta=1 / 15, w_min=1 / k)
print("eps1 in theory:", cfg.eps1_theory, "used:", cfg.eps1, "clamped:", cfg.clamped)
