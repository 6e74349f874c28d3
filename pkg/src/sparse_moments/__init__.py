"""Identify sparse mixtures on [0, 1] from their first 2k moments.

A k-coin model draws one of k coins (bias ``alpha_j``, probability ``w_j``)
and tosses it 2k times; the histogram of head counts determines the model.
"""

from .errors import (
    ConvergenceFailure,
    DegenerateNodes,
    DegreeDeficient,
    InfeasibleSampleSize,
    InvalidInput,
    SparseMomentsError,
)
from .linalg import (
    EigenPair,
    min_eigenpair,
    smallest_eigenvalues,
    solve_vandermonde,
    vandermonde_inverse_inf_norm,
)
from .model import (
    Histogram,
    MixtureModel,
    exact_histogram,
    exact_moments,
    load_histogram,
    load_model,
    make_rng,
    matching_distance,
    optimal_matching,
    random_model,
    sample_histogram,
    save_histogram,
    save_model,
    separation,
    wasserstein,
)
from .moments import build_hankel, histogram_to_moments, pascal_matrix, plan_sample_size
from .prony import (
    LearnConfig,
    LearnReport,
    learn_coin_mixture,
    learn_from_exact_moments,
    rectify_weights,
)
from .roots import RootSet, find_roots, project_roots

__version__ = "0.1.0"
