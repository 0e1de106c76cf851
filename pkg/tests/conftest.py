"""Shared test helpers: random matrix generators and independent oracles.

The oracles here deliberately avoid the library's own code paths (entrywise
summation for partial traces, power series for the exponential, closed forms
for small games) so they can serve as independent references.
"""

import numpy as np
import pytest


def random_hermitian(rng, dim, scale=1.0):
    G = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    return scale * (G + G.conj().T) / 2


def random_psd(rng, dim):
    G = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    return G @ G.conj().T


def random_density(rng, dim):
    W = random_psd(rng, dim)
    return W / np.trace(W).real


def random_unit_interval(rng, dim):
    """Random P with 0 <= P <= 1 (top eigenvalue rescaled to at most 1)."""
    W = random_psd(rng, dim)
    return W * (rng.uniform(0.2, 1.0) / np.linalg.eigvalsh(W)[-1])


def matrix_unit(i, j, dim):
    E = np.zeros((dim, dim), dtype=complex)
    E[i, j] = 1.0
    return E


def series_expm(A, terms=30):
    """Truncated power series for exp(A); independent of eigendecompositions."""
    A = np.asarray(A, dtype=complex)
    out = np.eye(A.shape[0], dtype=complex)
    term = np.eye(A.shape[0], dtype=complex)
    for k in range(1, terms):
        term = term @ A / k
        out = out + term
    return out


def trace_out_b_sum(M, n, m):
    """Partial trace over the second factor by explicit entrywise summation."""
    out = np.zeros((n, n), dtype=complex)
    for i in range(n):
        for k in range(n):
            for j in range(m):
                out[i, k] += M[i * m + j, k * m + j]
    return out


def trace_out_a_sum(M, n, m):
    """Partial trace over the first factor by explicit entrywise summation."""
    out = np.zeros((m, m), dtype=complex)
    for j in range(m):
        for l in range(m):
            for i in range(n):
                out[j, l] += M[i * m + j, i * m + l]
    return out


def epr_projector():
    """Projector onto (|00> + |11>)/sqrt(2) on the 2x2 product space."""
    psi = np.zeros(4, dtype=complex)
    psi[0] = psi[3] = 2**-0.5
    return np.outer(psi, psi.conj())


def identity_map_choi(m):
    """Choi matrix of the identity map: sum_ij E_ij (x) E_ij."""
    choi = np.zeros((m * m, m * m), dtype=complex)
    for i in range(m):
        for j in range(m):
            E = matrix_unit(i, j, m)
            choi += np.kron(E, E)
    return choi


@pytest.fixture
def rng():
    return np.random.default_rng(20260809)
