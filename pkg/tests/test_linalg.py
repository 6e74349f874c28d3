import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sparse_moments import (
    ConvergenceFailure,
    DegenerateNodes,
    InvalidInput,
    MixtureModel,
    build_hankel,
    exact_moments,
    make_rng,
    min_eigenpair,
    smallest_eigenvalues,
    solve_vandermonde,
    vandermonde_inverse_inf_norm,
)
from sparse_moments.linalg import (
    bisect_eigenvalue,
    canonical_sign,
    solve_vandermonde_transposed,
    sturm_count,
    tridiagonalize,
    vandermonde_residual,
)

from conftest import angle, kernel_vector, models


def vander(x):
    x = np.asarray(x, dtype=float)
    return x[None, :] ** np.arange(x.size)[:, None]


def separated_nodes(k, gap, gen):
    """Sorted nodes in [0, 1] with pairwise gap >= ``gap``."""
    u = np.sort(gen.uniform(0, 1 - (k - 1) * gap, k))
    return u + gap * np.arange(k)


def random_symmetric(n, gen):
    A = gen.standard_normal((n, n))
    return A + A.T


# -- tridiagonalization and bisection ---------------------------------------


def test_tridiagonalize_preserves_spectrum():
    gen = make_rng(1)
    for n in range(1, 9):
        A = random_symmetric(n, gen)
        d, e = tridiagonalize(A)
        T = np.diag(d) + np.diag(e, 1) + np.diag(e, -1)
        np.testing.assert_allclose(np.linalg.eigvalsh(T), np.linalg.eigvalsh(A), atol=1e-12)


def test_sturm_count_and_bisection_against_lapack():
    gen = make_rng(2)
    for n in range(2, 9):
        A = random_symmetric(n, gen)
        d, e = tridiagonalize(A)
        lam = np.linalg.eigvalsh(A)
        for i in range(n):
            lo, hi = bisect_eigenvalue(d, e, i + 1, abs_tol=1e-14)
            assert lo <= lam[i] + 1e-12 and lam[i] - 1e-12 <= hi
        assert sturm_count(d, e, lam[-1] + 1) == n
        assert sturm_count(d, e, lam[0] - 1) == 0


def test_smallest_eigenvalues_hankel():
    for k in (2, 3, 4):
        for model in models(k, 0.2, 0.2, 10, seed=k):
            H = build_hankel(exact_moments(model, 2 * k))
            np.testing.assert_allclose(smallest_eigenvalues(H, 2), np.linalg.eigvalsh(H)[:2],
                                       atol=1e-14)


# -- min_eigenpair ---------------------------------------------------------


def test_min_eigenpair_diagonal():
    pair = min_eigenpair(np.diag([2.0, 1.0]), 1e-10)
    assert pair.lam == pytest.approx(1.0, abs=1e-14)
    np.testing.assert_allclose(pair.v, [0, 1], atol=1e-12)


def test_min_eigenpair_rank_one_hankel():
    pair = min_eigenpair([[1, 0.5], [0.5, 0.25]], 1e-10)
    assert pair.lam == pytest.approx(0, abs=1e-14)
    # first non-negligible entry positive
    np.testing.assert_allclose(pair.v, [0.4472135954999579, -0.8944271909999159], atol=1e-12)
    assert angle(pair.v, [-0.5, 1]) < 1e-12


def test_min_eigenpair_two_coin_hankel():
    H = build_hankel(exact_moments(MixtureModel([0.25, 0.75], [0.5, 0.5]), 4))
    pair = min_eigenpair(H, 1e-10)
    assert pair.lam == pytest.approx(0, abs=1e-14)
    q = np.array([0.1875, -1.0, 1.0])
    np.testing.assert_allclose(pair.v, q / np.linalg.norm(q), atol=1e-12)
    np.testing.assert_allclose(H @ pair.v, 0, atol=1e-14)


@pytest.mark.parametrize("k", [1, 2, 3, 4, 5])
def test_min_eigenpair_exact_hankel_oracle(k):
    for i, model in enumerate(models(k, 0.1, 0.1, 30, seed=50 + k)):
        H = build_hankel(exact_moments(model, 2 * k))
        pair = min_eigenpair(H, 1e-12, seed=i)
        assert abs(pair.lam) < 1e-9
        assert abs(np.linalg.norm(pair.v) - 1) < 1e-12
        assert angle(pair.v, kernel_vector(model.alpha)) < 1e-7


def test_min_eigenpair_matches_lapack_on_random_matrices():
    gen = make_rng(3)
    for n in range(2, 10):
        for _ in range(10):
            A = random_symmetric(n, gen)
            lam, vecs = np.linalg.eigh(A)
            if lam[1] - lam[0] < 1e-3:
                continue
            pair = min_eigenpair(A, 1e-10, seed=n)
            assert pair.lam == pytest.approx(lam[0], abs=1e-10 * max(1, abs(lam[0])))
            assert angle(pair.v, vecs[:, 0]) < 1e-9
            assert pair.residual < 1e-9 * np.linalg.norm(A)


def test_min_eigenpair_canonical_sign_and_determinism():
    H = build_hankel(exact_moments(MixtureModel([0.2, 0.5, 0.8], [0.3, 0.3, 0.4]), 6))
    a = min_eigenpair(H, 1e-12, seed=1)
    b = min_eigenpair(H, 1e-12, seed=2)
    first = a.v[np.flatnonzero(np.abs(a.v) > 1e-12)[0]]
    assert first > 0
    np.testing.assert_allclose(a.v, b.v, atol=1e-12)
    np.testing.assert_array_equal(a.v, min_eigenpair(H, 1e-12, seed=1).v)


def test_canonical_sign():
    np.testing.assert_array_equal(canonical_sign([0.0, -1.0, 2.0]), [-0.0, 1.0, -2.0])
    np.testing.assert_array_equal(canonical_sign([0.5, -1.0]), [0.5, -1.0])


def test_min_eigenpair_rejects_asymmetric():
    with pytest.raises(InvalidInput):
        min_eigenpair([[1.0, 0.0], [1e-6, 1.0]], 1e-8)
    with pytest.raises(InvalidInput):
        min_eigenpair(np.ones((2, 3)), 1e-8)
    # tiny asymmetry is symmetrized, not rejected
    min_eigenpair([[2.0, 1e-12], [0.0, 1.0]], 1e-8)


def test_min_eigenpair_iteration_cap():
    H = build_hankel(exact_moments(MixtureModel([0.1, 0.45, 0.8], [0.3, 0.3, 0.4]), 6))
    H = H + np.diag([0.0, 0.0, 0.0, 1e-3])
    with pytest.raises(ConvergenceFailure) as info:
        min_eigenpair(H, 1e-20, max_iter=1, restarts=0)
    best = info.value.best
    assert best is not None and best.v.shape == (4,)
    assert np.isfinite(best.residual)


# -- Vandermonde -----------------------------------------------------------


def test_solve_vandermonde_examples():
    np.testing.assert_array_equal(solve_vandermonde([0.3], [1.0]), [1.0])
    np.testing.assert_allclose(solve_vandermonde([0.25, 0.75], [1, 0.5]), [0.5, 0.5], atol=1e-15)
    np.testing.assert_allclose(solve_vandermonde([0, 1], [1, 0.7]), [0.3, 0.7], atol=1e-15)


def test_solve_vandermonde_degenerate():
    with pytest.raises(DegenerateNodes):
        solve_vandermonde([0.3, 0.3 + 1e-13], [1, 0.3])
    with pytest.raises(DegenerateNodes):
        solve_vandermonde([0.3, 0.30001], [1, 0.3], threshold=1e-3)
    solve_vandermonde([0.3, 0.30001], [1, 0.3])


def _mp_solve(nodes, rhs):
    mpmath.mp.dps = 50
    V = mpmath.matrix([[mpmath.mpf(float(x)) ** i for x in nodes] for i in range(len(nodes))])
    return np.array([float(y) for y in mpmath.lu_solve(V, mpmath.matrix([mpmath.mpf(float(b)) for b in rhs]))])


@pytest.mark.parametrize("k", [2, 4, 6, 8, 10])
def test_solve_vandermonde_against_mpmath(k):
    gen = make_rng(10, k)
    for _ in range(5):
        x = gen.permutation(separated_nodes(k, 0.05, gen))
        rhs = gen.uniform(-1, 1, k)
        w = solve_vandermonde(x, rhs)
        oracle = _mp_solve(x, rhs)
        cond = vandermonde_inverse_inf_norm(x) * np.max(np.sum(np.abs(vander(x)), axis=1))
        np.testing.assert_allclose(w, oracle, atol=1e-14 * cond * np.max(np.abs(oracle)))
        assert vandermonde_residual(x, w, rhs) <= 1e-10 * cond


@pytest.mark.parametrize("k", [1, 2, 5, 9])
def test_solve_vandermonde_transposed(k):
    gen = make_rng(11, k)
    x = separated_nodes(k, 0.05, gen)
    coeffs = gen.uniform(-1, 1, k)
    values = np.polynomial.polynomial.polyval(x, coeffs)
    np.testing.assert_allclose(solve_vandermonde_transposed(x, values), coeffs, atol=1e-9)


def test_vandermonde_inverse_norm_examples():
    assert vandermonde_inverse_inf_norm([0.0]) == 1.0
    assert vandermonde_inverse_inf_norm([0.0, 1.0]) == 2.0
    assert np.linalg.norm(np.linalg.inv(vander([0.0, 1.0])), np.inf) == 2.0


@pytest.mark.parametrize("k", range(1, 9))
def test_vandermonde_inverse_norm_closed_form(k):
    gen = make_rng(12, k)
    for _ in range(10):
        zeta = 0.8 / max(k - 1, 1)
        x = separated_nodes(k, zeta, gen)
        value = vandermonde_inverse_inf_norm(x)
        oracle = np.linalg.norm(np.linalg.inv(vander(x)), np.inf)
        assert value == pytest.approx(oracle, rel=1e-9)
        assert value <= 2**k / zeta ** (k - 1) * (1 + 1e-12)


def test_vandermonde_inverse_norm_errors():
    with pytest.raises(DegenerateNodes):
        vandermonde_inverse_inf_norm([0.5, 0.5])
    with pytest.raises(InvalidInput):
        vandermonde_inverse_inf_norm([-0.5, 0.5])


@given(st.integers(2, 6), st.integers(0, 2**32 - 1))
@settings(max_examples=60, deadline=None)
def test_vandermonde_condition_bound(k, seed):
    # finite-difference sensitivity to node and moment perturbations of size h
    gen = make_rng(seed)
    zeta = 0.9 / (k - 1)
    alpha = separated_nodes(k, zeta, gen)
    zeta_true = float(np.min(np.diff(alpha)))
    w = gen.dirichlet(np.ones(k))
    mu = vander(alpha) @ w
    h = 1e-7
    worst = 0.0
    for _ in range(20):
        da = gen.choice([-h, h], k)
        db = gen.choice([-h, h], k)
        w2 = solve_vandermonde(alpha + da, mu + db)
        worst = max(worst, np.max(np.abs(w2 - w)) / h)
    bound = (k + 1) * 2**k / zeta_true ** (k - 1)
    assert worst <= bound


def test_weight_reconstruction_chain():
    gen = make_rng(13)
    for k in (2, 3, 4, 5):
        for _ in range(40):
            zeta = 0.2
            alpha = separated_nodes(k, zeta, gen)
            zeta_true = float(np.min(np.diff(alpha)))
            w = gen.dirichlet(np.ones(k))
            mu = vander(alpha) @ w
            size = 10.0 ** gen.uniform(-9, -5)
            da = gen.uniform(-size, size, k)
            dm = gen.uniform(-size, size, k)
            w2 = solve_vandermonde(alpha + da, mu + dm)
            bound = (k + 1) * 2**k / zeta_true ** (k - 1) * max(np.max(np.abs(da)), np.max(np.abs(dm)))
            assert np.max(np.abs(w2 - w)) <= bound
