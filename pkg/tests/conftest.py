import numpy as np
import pytest


def random_orthogonal(rng, n):
    q, r = np.linalg.qr(rng.standard_normal((n, n)))
    return q * np.sign(np.diag(r))


def brute_force_miniball(p):
    """Smallest ball over all subsets of <= dim+1 points whose circumsphere (center in
    their affine hull) contains every point. Independent of the library solver."""
    from itertools import combinations

    m, n = p.shape
    best = (None, np.inf)
    for size in range(1, min(m, n + 1) + 1):
        for sub in combinations(range(m), size):
            s = p[list(sub)]
            if size == 1:
                c = s[0]
            else:
                # center = s0 + D^T mu, with |c - s_i| = |c - s0|  <=>  2 D c = |s_i|^2 - |s0|^2
                d = s[1:] - s[0]
                if np.linalg.matrix_rank(d, tol=1e-10) < size - 1:
                    continue
                a = 2.0 * d @ d.T
                b = np.sum(s[1:] ** 2, axis=1) - s[0] @ s[0] - 2.0 * d @ s[0]
                mu = np.linalg.solve(a, b)
                c = s[0] + d.T @ mu
            r = np.max(np.linalg.norm(s - c, axis=1))
            if np.all(np.linalg.norm(p - c, axis=1) <= r + 1e-12) and r < best[1]:
                best = (c, r)
    return best


@pytest.fixture
def rng():
    return np.random.default_rng(20261015)


SQUARE = np.array([[1.0, 0.0], [-1.0, 0.0], [0.0, 1.0], [0.0, -1.0]])
