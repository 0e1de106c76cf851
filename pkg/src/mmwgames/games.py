"""Game representations: payoff observables, referee measurements, and the
super-operator picture.

A one-round zero-sum game is defined by a Hermitian payoff observable R on
the product space C^n (x) C^m: Alice sends an n-dimensional density rho, Bob
an m-dimensional density sigma, and Alice's expected payoff is
<R, rho (x) sigma>.

The same game can be handled through the super-operator Phi associated with R
by the Choi correspondence

    Phi(B) = Tr_B( R (1 (x) B^T) ),        R = sum_ij Phi(E_ij) (x) E_ij,

where the transpose is taken in the fixed computational basis. We represent a
super-operator solely by its Choi matrix; :func:`apply` and
:func:`apply_adjoint` evaluate it through partial traces.

Transpose convention: because of the B^T in the correspondence, the Bob state
that pairs with Phi internally is the transpose of the state reported to
users. All public surfaces (solver results, best responses, files) carry the
already-transposed Bob state, so <R, rho (x) sigma> can be evaluated directly
on reported pairs.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

import numpy as np

from .errors import DegenerateGame, DimensionError, InvalidMeasurement
from .linalg import (
    TOLERANCES,
    _eigvalsh,
    hermitian,
    hs_inner,
    kron,
    partial_trace_A,
    partial_trace_B,
    spectral_norm,
)

__all__ = [
    "PayoffObservable",
    "Measurement",
    "GameSuperOp",
    "RescaledGame",
    "observable_from_measurement",
    "superop_from_observable",
    "observable_from_superop",
    "apply",
    "apply_adjoint",
    "expected_payoff",
    "rescale",
    "is_unit_range",
]


@dataclass
class PayoffObservable:
    """Hermitian payoff observable R on C^n (x) C^m."""

    n: int
    m: int
    R: np.ndarray

    def __post_init__(self):
        if self.n < 1 or self.m < 1:
            raise DimensionError(f"dimensions must be positive, got n={self.n}, m={self.m}")
        self.R = hermitian(self.R)
        if self.R.shape != (self.n * self.m, self.n * self.m):
            raise DimensionError(
                f"R has shape {self.R.shape}, expected {(self.n * self.m,) * 2}"
            )


@dataclass
class Measurement:
    """Referee measurement with a real payoff per outcome.

    ``operators`` maps each outcome label to a PSD matrix on the product
    space; the operators must sum to the identity. ``payoffs`` maps the same
    labels to Alice's payoff for that outcome.
    """

    n: int
    m: int
    operators: Mapping[str, np.ndarray]
    payoffs: Mapping[str, float]

    def validate(self) -> None:
        if not self.operators:
            raise InvalidMeasurement("measurement has no outcomes")
        if set(self.operators) != set(self.payoffs):
            raise InvalidMeasurement("outcome labels of operators and payoffs differ")
        d = self.n * self.m
        total = np.zeros((d, d), dtype=complex)
        for label, op in self.operators.items():
            M = hermitian(op)
            if M.shape != (d, d):
                raise InvalidMeasurement(
                    f"operator {label!r} has shape {M.shape}, expected {(d, d)}"
                )
            smallest = float(_eigvalsh(M)[0])
            if smallest < -TOLERANCES.psd:
                raise InvalidMeasurement(
                    f"operator {label!r} has negative eigenvalue {smallest:.3e}"
                )
            total += M
        residual = spectral_norm(total - np.eye(d))
        if residual > 1e-10:
            raise InvalidMeasurement(
                f"operators sum deviates from the identity by {residual:.3e}"
            )


@dataclass
class GameSuperOp:
    """Super-operator Phi: m x m matrices -> n x n matrices, held as its Choi matrix."""

    n: int
    m: int
    choi: np.ndarray

    def __post_init__(self):
        if self.n < 1 or self.m < 1:
            raise DimensionError(f"dimensions must be positive, got n={self.n}, m={self.m}")
        self.choi = hermitian(self.choi)
        if self.choi.shape != (self.n * self.m, self.n * self.m):
            raise DimensionError(
                f"Choi matrix has shape {self.choi.shape}, expected {(self.n * self.m,) * 2}"
            )


@dataclass
class RescaledGame:
    """Affine renormalization of an observable into the interval [0, 1].

    ``observable`` holds P = (R - shift I)/scale with shift the smallest and
    shift + scale the largest eigenvalue of R. An epsilon-approximate
    equilibrium of P is a (delta_factor * epsilon)-approximate equilibrium of
    R, with delta_factor = scale / ||R|| at most 2.
    """

    observable: PayoffObservable
    shift: float
    scale: float
    delta_factor: float


def observable_from_measurement(meas: Measurement) -> PayoffObservable:
    """Collapse a measurement and payoff function into one observable.

    R = sum_a v(a) R_a, so that <R, rho (x) sigma> is the expected payoff.
    """
    meas.validate()
    d = meas.n * meas.m
    R = np.zeros((d, d), dtype=complex)
    for label, op in meas.operators.items():
        R += float(meas.payoffs[label]) * hermitian(op)
    return PayoffObservable(meas.n, meas.m, R)


def superop_from_observable(obs: PayoffObservable) -> GameSuperOp:
    """Super-operator induced by a payoff observable (Choi correspondence)."""
    return GameSuperOp(obs.n, obs.m, obs.R)


def observable_from_superop(phi: GameSuperOp) -> PayoffObservable:
    """Payoff observable whose induced super-operator is ``phi`` (inverse map)."""
    return PayoffObservable(phi.n, phi.m, phi.choi)


def apply(phi: GameSuperOp, B) -> np.ndarray:
    """Evaluate Phi(B) = Tr_B( choi (1 (x) B^T) ).

    Defined for any m x m matrix by linearity; for Hermitian B and a Hermitian
    Choi matrix the result is Hermitian (up to round-off, which is left to the
    caller by design so that non-Hermitian probes such as matrix units can be
    evaluated exactly).
    """
    B = np.asarray(B, dtype=complex)
    if B.shape != (phi.m, phi.m):
        raise DimensionError(f"input has shape {B.shape}, expected {(phi.m, phi.m)}")
    prod = phi.choi @ kron(np.eye(phi.n), B.T)
    return partial_trace_B(prod, phi.n, phi.m)


def apply_adjoint(phi: GameSuperOp, A) -> np.ndarray:
    """Evaluate the adjoint map, characterized by <A, Phi(B)> = <Phi*(A), B>.

    Concretely Phi*(A) = ( Tr_A( choi (A (x) 1) ) )^T, which satisfies the
    defining identity for all A and Hermitian-pairs it with :func:`apply`.
    """
    A = np.asarray(A, dtype=complex)
    if A.shape != (phi.n, phi.n):
        raise DimensionError(f"input has shape {A.shape}, expected {(phi.n, phi.n)}")
    prod = phi.choi @ kron(A, np.eye(phi.m))
    return partial_trace_A(prod, phi.n, phi.m).T


def expected_payoff(obs: PayoffObservable, rho, sigma) -> float:
    """Alice's expected payoff <R, rho (x) sigma> for a reported state pair.

    ``sigma`` is the Bob state in the reported convention, so this is a plain
    tensor-product pairing with no hidden transpose.
    """
    rho = np.asarray(rho, dtype=complex)
    sigma = np.asarray(sigma, dtype=complex)
    if rho.shape != (obs.n, obs.n):
        raise DimensionError(f"rho has shape {rho.shape}, expected {(obs.n, obs.n)}")
    if sigma.shape != (obs.m, obs.m):
        raise DimensionError(f"sigma has shape {sigma.shape}, expected {(obs.m, obs.m)}")
    return hs_inner(obs.R, kron(rho, sigma))


def is_unit_range(obs: PayoffObservable) -> bool:
    """True when 0 <= R <= 1 within the PSD tolerance."""
    w = _eigvalsh(obs.R)
    return bool(w[0] >= -TOLERANCES.psd and w[-1] <= 1.0 + TOLERANCES.psd)


def rescale(obs: PayoffObservable) -> RescaledGame:
    """Translate and scale an observable so its spectrum spans exactly [0, 1].

    P = (R - lam_min I) / (lam_max - lam_min). Raises :class:`DegenerateGame`
    when R is a scalar multiple of the identity (the spectrum has no spread),
    in which case every state pair is an exact equilibrium.
    """
    w = _eigvalsh(obs.R)
    lam_min, lam_max = float(w[0]), float(w[-1])
    norm = max(abs(lam_min), abs(lam_max))
    spread = lam_max - lam_min
    if spread <= TOLERANCES.hermiticity * max(1.0, norm):
        raise DegenerateGame(
            f"observable is {lam_max:.6g} times the identity; every pair is an equilibrium"
        )
    d = obs.n * obs.m
    P = (obs.R - lam_min * np.eye(d)) / spread
    return RescaledGame(
        observable=PayoffObservable(obs.n, obs.m, P),
        shift=lam_min,
        scale=spread,
        delta_factor=spread / norm,
    )
