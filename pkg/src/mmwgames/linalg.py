"""Dense Hermitian linear algebra used throughout the package.

All matrices are square complex numpy arrays. The constructor :func:`hermitian`
is the single entry point for Hermitian data: it symmetrizes input whose
asymmetry is below tolerance and rejects anything worse, so repeated
arithmetic cannot silently drift away from hermiticity.

Eigenvalue work is delegated to ``numpy.linalg.eigh``; everything downstream
(norms, the matrix exponential) is expressed through the spectral
decomposition, which is exact for Hermitian matrices up to eigensolver
accuracy.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionError, InvalidDensity, NotHermitian, NumericalError

__all__ = [
    "Tolerances",
    "TOLERANCES",
    "Spectrum",
    "hermitian",
    "check_density",
    "hs_inner",
    "eig",
    "spectral_norm",
    "trace_norm",
    "mat_exp",
    "kron",
    "partial_trace_A",
    "partial_trace_B",
]


@dataclass
class Tolerances:
    """Shared numerical tolerances.

    Values sit about two orders of magnitude above double-precision round-off
    for the dimensions this package targets (up to a few dozen). Mutate the
    module-level ``TOLERANCES`` instance once at startup if different slack is
    needed; functions read it at call time.
    """

    hermiticity: float = 1e-12  # entrywise |M - M*| allowed before rejection
    psd: float = 1e-10          # eigenvalue floor / unit-trace slack for densities


TOLERANCES = Tolerances()


@dataclass
class Spectrum:
    """Full spectral decomposition of a Hermitian matrix.

    ``eigenvalues`` are real and sorted descending (multiplicity included);
    ``eigenvectors`` holds the matching orthonormal eigenvectors as columns.
    Ties keep the eigensolver's original order, which makes the decomposition
    deterministic for identical inputs.
    """

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    @property
    def largest(self) -> float:
        return float(self.eigenvalues[0])

    @property
    def smallest(self) -> float:
        return float(self.eigenvalues[-1])


def hermitian(entries, tol: float | None = None) -> np.ndarray:
    """Validate and canonicalize a Hermitian matrix.

    Returns ``(M + M*)/2`` when the entrywise asymmetry is within ``tol``
    (default ``TOLERANCES.hermiticity``); raises :class:`NotHermitian`
    otherwise and :class:`DimensionError` for non-square input.
    """
    M = np.asarray(entries, dtype=complex)
    if M.ndim != 2 or M.shape[0] != M.shape[1] or M.shape[0] < 1:
        raise DimensionError(f"expected a square matrix, got shape {M.shape}")
    limit = TOLERANCES.hermiticity if tol is None else tol
    asymmetry = float(np.abs(M - M.conj().T).max())
    if asymmetry > limit:
        raise NotHermitian(
            f"entrywise asymmetry {asymmetry:.3e} exceeds tolerance {limit:.3e}"
        )
    return (M + M.conj().T) / 2


def check_density(rho) -> np.ndarray:
    """Validate a density matrix: Hermitian, PSD, unit trace.

    Returns the symmetrized matrix. Raises :class:`InvalidDensity` when the
    smallest eigenvalue falls below ``-TOLERANCES.psd`` or the trace is not 1
    within the same tolerance.
    """
    try:
        M = hermitian(rho)
    except NotHermitian as exc:
        raise InvalidDensity(f"not Hermitian: {exc}") from exc
    tr = float(np.trace(M).real)
    if abs(tr - 1.0) > TOLERANCES.psd:
        raise InvalidDensity(f"trace {tr!r} is not 1 within {TOLERANCES.psd:.1e}")
    smallest = float(_eigvalsh(M)[0])
    if smallest < -TOLERANCES.psd:
        raise InvalidDensity(
            f"smallest eigenvalue {smallest:.3e} is below -{TOLERANCES.psd:.1e}"
        )
    return M


def hs_inner(A, B) -> float:
    """Hilbert-Schmidt inner product Tr(A* B), real for Hermitian arguments."""
    A = np.asarray(A)
    B = np.asarray(B)
    if A.shape != B.shape:
        raise DimensionError(f"shape mismatch {A.shape} vs {B.shape}")
    return float(np.vdot(A, B).real)


def _eigvalsh(A: np.ndarray) -> np.ndarray:
    """Ascending eigenvalues with eigensolver failures mapped to NumericalError."""
    try:
        return np.linalg.eigvalsh(A)
    except np.linalg.LinAlgError as exc:
        raise NumericalError(f"eigvalsh failed on {A.shape[0]}x{A.shape[0]} matrix: {exc}") from exc


def eig(A) -> Spectrum:
    """Spectral decomposition of a Hermitian matrix, eigenvalues descending."""
    M = np.asarray(A, dtype=complex)
    try:
        w, V = np.linalg.eigh(M)
    except np.linalg.LinAlgError as exc:
        raise NumericalError(f"eigh failed on {M.shape[0]}x{M.shape[0]} matrix: {exc}") from exc
    order = np.argsort(-w, kind="stable")
    return Spectrum(eigenvalues=w[order], eigenvectors=V[:, order])


def spectral_norm(A) -> float:
    """Largest absolute eigenvalue. Input must be Hermitian."""
    return float(np.abs(_eigvalsh(np.asarray(A, dtype=complex))).max())


def trace_norm(A) -> float:
    """Sum of absolute eigenvalues. Input must be Hermitian."""
    return float(np.abs(_eigvalsh(np.asarray(A, dtype=complex))).sum())


def mat_exp(A) -> np.ndarray:
    """Matrix exponential of a Hermitian matrix via eigendecomposition.

    exp(A) = sum_k e^{w_k} v_k v_k*, positive definite for Hermitian A.
    """
    s = eig(A)
    E = (s.eigenvectors * np.exp(s.eigenvalues)) @ s.eigenvectors.conj().T
    return (E + E.conj().T) / 2


def kron(A, B) -> np.ndarray:
    """Tensor (Kronecker) product, block form A_ij * B."""
    return np.kron(np.asarray(A, dtype=complex), np.asarray(B, dtype=complex))


def _factored(M, n: int, m: int) -> np.ndarray:
    M = np.asarray(M, dtype=complex)
    if M.shape != (n * m, n * m):
        raise DimensionError(
            f"matrix of shape {M.shape} does not act on a {n}x{m} product space"
        )
    return M.reshape(n, m, n, m)


def partial_trace_B(M, n: int, m: int) -> np.ndarray:
    """Trace out the second tensor factor of a matrix on C^n (x) C^m."""
    return np.einsum("ijkj->ik", _factored(M, n, m))


def partial_trace_A(M, n: int, m: int) -> np.ndarray:
    """Trace out the first tensor factor of a matrix on C^n (x) C^m."""
    return np.einsum("ijil->jl", _factored(M, n, m))
