"""
The identification pipeline one stage at a time
===============================================

Histogram -> moments -> Hankel matrix -> kernel vector -> polynomial roots
-> weights. Each stage is a public function, so the intermediate objects
can be inspected.
"""

import numpy as np

from sparse_moments import (
    MixtureModel,
    build_hankel,
    exact_histogram,
    find_roots,
    histogram_to_moments,
    min_eigenpair,
    pascal_matrix,
    project_roots,
    rectify_weights,
    solve_vandermonde,
)

truth = MixtureModel([0.25, 0.75], [0.5, 0.5])
k = truth.k

# The Pascal matrix maps a histogram of 2k-snapshots to the moments
# mu_i = sum_j w_j alpha_j**i.
print("Pascal matrix for k=2:\n", pascal_matrix(k))
mu = histogram_to_moments(exact_histogram(truth, 2 * k))
print("moments:", mu)

# The (k+1)x(k+1) Hankel matrix of a k-coin model is singular. Its kernel
# holds the coefficients of (z - alpha_1)...(z - alpha_k).
H = build_hankel(mu)
pair = min_eigenpair(H, eps1=1e-12)
print("smallest eigenvalue:", pair.lam)
print("kernel vector / leading entry:", pair.v / pair.v[-1])  # 0.1875, -1, 1

# Roots of that polynomial are the biases; projection onto [0, 1] removes
# any small imaginary part or overshoot left by noise.
roots = find_roots(pair.v, eps2=1e-12)
alpha = project_roots(roots)
print("biases:", alpha)

# The first k moment equations are a Vandermonde system in the weights.
w = rectify_weights(solve_vandermonde(alpha, mu[:k]))
print("weights:", w)
