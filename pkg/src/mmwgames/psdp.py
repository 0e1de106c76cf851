"""Approximation of strictly positive semidefinite programs in super-operator
form by reduction to the game solver.

An instance is given by PSD matrices A (n x n), B (m x m) and a positive
super-operator Psi with Choi matrix on the product space:

    primal:  maximize <B, Y>  s.t.  Psi(Y) <= A,  Y >= 0,
    dual:    minimize <A, X>  s.t.  Psi*(X) >= B,  X >= 0.

For strictly positive instances (A, B positive definite, Psi(1) positive
definite) the congruence

    Phi(Y) = A^{-1/2} Psi( B^{-1/2} Y B^{-1/2} ) A^{-1/2}

produces an equivalent normal form with identity right-hand sides, whose
optimum is the reciprocal of the value of the game induced by Phi. Solving
that game yields a certified value bracket, hence a bracket on the optimum,
together with exactly feasible primal and dual points obtained by scaling the
equilibrium states and undoing the congruence.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionError, NotStrictlyPositive, ValueTooSmall
from .games import GameSuperOp, PayoffObservable, apply
from .linalg import TOLERANCES, eig, hermitian, kron, spectral_norm
from .solver import SolverParams, solve

__all__ = ["SuperOpSDP", "PsdpResult", "to_normal_form", "solve_psdp"]


@dataclass
class SuperOpSDP:
    """A positive SDP instance in super-operator form.

    ``strict`` asserts that A, B and Psi(1) are all positive definite. The
    assertion is verified (and enforced) when the instance is transformed to
    normal form.
    """

    A: np.ndarray
    B: np.ndarray
    psi_choi: np.ndarray
    strict: bool = True

    def __post_init__(self):
        self.A = hermitian(self.A)
        self.B = hermitian(self.B)
        self.psi_choi = hermitian(self.psi_choi)
        d = self.n * self.m
        if self.psi_choi.shape != (d, d):
            raise DimensionError(
                f"Choi matrix has shape {self.psi_choi.shape}, expected {(d, d)}"
            )

    @property
    def n(self) -> int:
        return self.A.shape[0]

    @property
    def m(self) -> int:
        return self.B.shape[0]

    def superop(self) -> GameSuperOp:
        return GameSuperOp(self.n, self.m, self.psi_choi)


@dataclass
class PsdpResult:
    """Certified bracket on the optimum with exactly feasible points.

    primal_Y and dual_X are feasible for the original instance, with
    <B, primal_Y> = opt_lo and <A, dual_X> = opt_hi, so the bracket follows
    from weak duality alone. ``alpha`` is the measured value of the
    associated game (the reciprocal of ``opt_estimate``).
    """

    opt_estimate: float
    opt_lo: float
    opt_hi: float
    primal_Y: np.ndarray
    dual_X: np.ndarray
    alpha: float


def _inv_sqrt(M: np.ndarray, name: str) -> np.ndarray:
    """M^{-1/2} via spectral decomposition, rejecting near-singular input."""
    s = eig(M)
    floor = TOLERANCES.psd * max(1.0, s.largest)
    if s.smallest <= floor:
        raise NotStrictlyPositive(
            f"{name} is not positive definite: smallest eigenvalue "
            f"{s.smallest:.3e} (floor {floor:.3e})"
        )
    root = (s.eigenvectors * s.eigenvalues**-0.5) @ s.eigenvectors.conj().T
    return (root + root.conj().T) / 2


def _normal_form(sdp: SuperOpSDP) -> tuple[GameSuperOp, np.ndarray, np.ndarray]:
    if not sdp.strict:
        raise NotStrictlyPositive("instance is not marked strict")
    a_inv_sqrt = _inv_sqrt(sdp.A, "A")
    b_inv_sqrt = _inv_sqrt(sdp.B, "B")
    psi_of_identity = apply(sdp.superop(), np.eye(sdp.m))
    s = eig((psi_of_identity + psi_of_identity.conj().T) / 2)
    if s.smallest <= TOLERANCES.psd * max(1.0, s.largest):
        raise NotStrictlyPositive(
            f"Psi(identity) is not positive definite: smallest eigenvalue {s.smallest:.3e}"
        )
    congruence = kron(a_inv_sqrt, b_inv_sqrt.T)
    choi = congruence @ sdp.psi_choi @ congruence
    phi = GameSuperOp(sdp.n, sdp.m, (choi + choi.conj().T) / 2)
    return phi, a_inv_sqrt, b_inv_sqrt


def to_normal_form(sdp: SuperOpSDP) -> GameSuperOp:
    """Transform a strictly positive instance to identity right-hand sides.

    Returns the super-operator Phi of the equivalent program
    max Tr(Y) s.t. Phi(Y) <= 1, Y >= 0. The Choi matrix of Phi is the
    congruence of Psi's by A^{-1/2} (x) (B^{-1/2})^T. Raises
    :class:`NotStrictlyPositive` naming whichever of A, B, Psi(identity)
    fails the positive definiteness check.
    """
    phi, _, _ = _normal_form(sdp)
    return phi


def solve_psdp(sdp: SuperOpSDP, epsilon: float) -> PsdpResult:
    """Approximate the optimum of a strictly positive instance.

    Solves the game induced by the normal form (renormalized to unit spectral
    norm), converts the certified value bracket [lo, hi] of the game into the
    bracket [1/hi, 1/lo] on the optimum, and builds exactly feasible points:
    the equilibrium states scaled by their own best-response eigenvalues are
    feasible for the normal form, and the congruence maps them back to the
    original instance. Raises :class:`ValueTooSmall` when the certified lower
    value is not positive, since then no finite upper bound on the optimum
    can be certified; a smaller epsilon tightens the bracket.
    """
    phi, a_inv_sqrt, b_inv_sqrt = _normal_form(sdp)
    norm = spectral_norm(phi.choi)
    game = PayoffObservable(sdp.n, sdp.m, phi.choi / norm)
    result = solve(game, SolverParams(epsilon=epsilon))
    alpha_lo = result.value_lo * norm
    alpha_mid = result.value_mid * norm
    alpha_hi = result.value_hi * norm
    if alpha_lo <= 0.0:
        raise ValueTooSmall(
            f"certified lower game value {alpha_lo:.3e} is not positive; "
            f"the optimum cannot be bounded from above at epsilon={epsilon}"
        )
    sigma_internal = result.sigma.T
    primal_normal = sigma_internal / alpha_hi   # Phi(.) <= 1 holds with equality at the top
    dual_normal = result.rho / alpha_lo         # Phi*(.) >= 1 holds with equality at the bottom
    primal_Y = b_inv_sqrt @ primal_normal @ b_inv_sqrt
    dual_X = a_inv_sqrt @ dual_normal @ a_inv_sqrt
    return PsdpResult(
        opt_estimate=1.0 / alpha_mid,
        opt_lo=1.0 / alpha_hi,
        opt_hi=1.0 / alpha_lo,
        primal_Y=(primal_Y + primal_Y.conj().T) / 2,
        dual_X=(dual_X + dual_X.conj().T) / 2,
        alpha=alpha_mid,
    )
