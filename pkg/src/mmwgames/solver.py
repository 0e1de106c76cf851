"""Matrix multiplicative weights solver for one-round zero-sum quantum games.

The iteration maintains, for each player, a state proportional to the matrix
exponential of the accumulated payoff operators seen so far:

    A_j = exp( mu * sum_{i<j} Phi(sigma_i) ),    rho_j   = A_j / Tr(A_j),
    B_j = exp( -mu * sum_{i<j} Phi*(rho_i) ),    sigma_j = B_j / Tr(B_j),

starting from the maximally mixed pair and returning the averages of the
first N iterates. With mu = epsilon/8 and N = ceil(64 ln(nm) / epsilon^2),
the averaged pair of a game with 0 <= R <= 1 is an epsilon-approximate
equilibrium; the a-priori analysis bounds the equilibrium gap by
2 sinh(mu) + ln(nm)/(mu N) <= epsilon/2.

Independently of how a pair was produced, :func:`equilibrium_gap` certifies
its quality exactly (up to eigensolver accuracy) through the spectral
characterization of best responses: the gap is

    lambda_max(Phi(sigma)) - lambda_min(Phi*(rho)),

whose endpoints always bracket the game value. All results are certified this
way a posteriori, so floating-point drift during the iteration can degrade
the certificate but never invalidate it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateGame, DimensionError, NumericalError
from .games import (
    GameSuperOp,
    PayoffObservable,
    apply,
    apply_adjoint,
    expected_payoff,
    is_unit_range,
    rescale,
    superop_from_observable,
)
from .linalg import _eigvalsh, check_density, eig, hs_inner, spectral_norm

__all__ = [
    "SolverParams",
    "EquilibriumResult",
    "default_mu",
    "default_iterations",
    "solve",
    "equilibrium_gap",
    "best_response_alice",
    "best_response_bob",
    "classical_minimax_oracle",
]


def default_mu(epsilon: float) -> float:
    """Step size used when no override is given: epsilon / 8."""
    return epsilon / 8.0


def default_iterations(epsilon: float, n: int, m: int) -> int:
    """Iteration count used when no override is given: ceil(64 ln(nm) / epsilon^2)."""
    return max(1, math.ceil(64.0 * math.log(n * m) / epsilon**2))


@dataclass
class SolverParams:
    """Solve parameters.

    epsilon: target accuracy, relative to the spectral norm of the payoff
        observable; must lie in (0, 1].
    mu_override / iter_override: replace the default step size and iteration
        count. Useful for cheap exploratory runs; the certificate in the
        result remains valid either way, the a-priori accuracy claim does not.
    record_trace: store the per-iteration payoffs <rho_j, Phi(sigma_j)> and
        verify the averaged iterates against the regret bounds after the run.
    guarantee_on_original: when the observable needs renormalization, solve
        the renormalized game to epsilon / delta_factor so the certified
        accuracy on the original observable is epsilon. With False the
        renormalized game is solved at epsilon, which guarantees at most
        2 * epsilon on the original.
    """

    epsilon: float
    mu_override: float | None = None
    iter_override: int | None = None
    record_trace: bool = False
    guarantee_on_original: bool = True

    def validate(self) -> None:
        if not (0.0 < self.epsilon <= 1.0):
            raise ValueError(f"epsilon must be in (0, 1], got {self.epsilon}")
        if self.mu_override is not None and self.mu_override <= 0.0:
            raise ValueError(f"mu_override must be positive, got {self.mu_override}")
        if self.iter_override is not None and self.iter_override < 1:
            raise ValueError(f"iter_override must be >= 1, got {self.iter_override}")


@dataclass
class EquilibriumResult:
    """Certified approximate equilibrium.

    ``sigma`` is Bob's state in the reported convention (already transposed),
    so ``expected_payoff(obs, rho, sigma)`` reproduces ``value_mid``. The
    bracket [value_lo, value_hi] always contains the game value, and
    ``certified_epsilon = gap / ||R||`` certifies the pair as a
    certified_epsilon-approximate equilibrium of the original observable.
    ``trace`` holds the per-iteration payoffs when recording was requested.
    """

    rho: np.ndarray
    sigma: np.ndarray
    value_lo: float
    value_mid: float
    value_hi: float
    gap: float
    certified_epsilon: float
    iterations: int
    trace: np.ndarray | None = None


def _gibbs(exponent: np.ndarray) -> np.ndarray:
    """exp(X)/Tr(exp(X)), computed with the spectrum shifted by its maximum.

    The shift cancels in the normalization and keeps exp() in range even when
    the accumulated exponent norm grows to mu * N.
    """
    X = (exponent + exponent.conj().T) / 2
    s = eig(X)
    weights = np.exp(s.eigenvalues - s.eigenvalues[0])
    state = (s.eigenvectors * weights) @ s.eigenvectors.conj().T
    state /= weights.sum()
    return (state + state.conj().T) / 2


def _iterate(phi: GameSuperOp, mu: float, n_iter: int, record: bool):
    """Run the multiplicative weights loop; return averaged iterates and payoffs."""
    n, m = phi.n, phi.m
    rho = np.eye(n, dtype=complex) / n
    sigma = np.eye(m, dtype=complex) / m
    rho_acc = np.zeros((n, n), dtype=complex)
    sigma_acc = np.zeros((m, m), dtype=complex)
    sum_phi_sigma = np.zeros((n, n), dtype=complex)
    sum_phi_adj_rho = np.zeros((m, m), dtype=complex)
    payoffs = np.empty(n_iter) if record else None
    for j in range(n_iter):
        rho_acc += rho
        sigma_acc += sigma
        phi_sigma = apply(phi, sigma)
        phi_adj_rho = apply_adjoint(phi, rho)
        if record:
            payoffs[j] = hs_inner(rho, phi_sigma)
        sum_phi_sigma += phi_sigma
        sum_phi_adj_rho += phi_adj_rho
        if j + 1 < n_iter:
            try:
                rho = _gibbs(mu * sum_phi_sigma)
                sigma = _gibbs(-mu * sum_phi_adj_rho)
            except NumericalError as exc:
                raise NumericalError(f"iteration {j + 1}: {exc}") from exc
    return rho_acc / n_iter, sigma_acc / n_iter, payoffs


def _check_regret_bounds(
    phi: GameSuperOp,
    rho_bar: np.ndarray,
    sigma_bar: np.ndarray,
    payoffs: np.ndarray,
    mu: float,
    n_iter: int,
    slack: float = 1e-6,
) -> None:
    """Verify the averaged iterates against the per-run regret inequalities.

    For a game with 0 <= R <= 1 the analysis guarantees

        lambda_max(Phi(sigma_bar)) <= e^mu * mean(payoffs) + ln(n)/(mu N),
        lambda_min(Phi*(rho_bar))  >= e^-mu * mean(payoffs) - ln(m)/(mu N).

    Violations beyond ``slack`` indicate a numerical breakdown.
    """
    mean_payoff = float(payoffs.sum()) / n_iter
    top = float(_eigvalsh(apply(phi, sigma_bar))[-1])
    bottom = float(_eigvalsh(apply_adjoint(phi, rho_bar))[0])
    upper = math.exp(mu) * mean_payoff + math.log(phi.n) / (mu * n_iter)
    lower = math.exp(-mu) * mean_payoff - math.log(phi.m) / (mu * n_iter)
    if top > upper + slack:
        raise NumericalError(
            f"regret bound violated: lambda_max(Phi(sigma)) = {top!r} exceeds {upper!r}"
        )
    if bottom < lower - slack:
        raise NumericalError(
            f"regret bound violated: lambda_min(Phi*(rho)) = {bottom!r} is below {lower!r}"
        )


def solve(obs: PayoffObservable, params: SolverParams) -> EquilibriumResult:
    """Compute a certified approximate equilibrium of a payoff observable.

    Observables already satisfying 0 <= R <= 1 are iterated directly; others
    are translated and scaled into that range first (see
    :func:`mmwgames.games.rescale` and ``params.guarantee_on_original`` for
    the accuracy bookkeeping). A scalar multiple of the identity short
    circuits to the maximally mixed pair, which is an exact equilibrium.

    The returned certificate is always computed on the original observable.
    """
    params.validate()
    bounds = _eigvalsh(obs.R)
    lam_min, lam_max = float(bounds[0]), float(bounds[-1])
    from .linalg import TOLERANCES

    if lam_max - lam_min <= TOLERANCES.hermiticity * max(1.0, abs(lam_min), abs(lam_max)):
        # constant game: the maximally mixed pair is an exact equilibrium
        rho = np.eye(obs.n, dtype=complex) / obs.n
        sigma = np.eye(obs.m, dtype=complex) / obs.m
        lo, hi, gap, certified = equilibrium_gap(obs, rho, sigma)
        mid = expected_payoff(obs, rho, sigma)
        trace = np.zeros(0) if params.record_trace else None
        return EquilibriumResult(rho, sigma, lo, mid, hi, gap, certified, 0, trace)
    if lam_min >= -TOLERANCES.psd and lam_max <= 1.0 + TOLERANCES.psd:
        target, eps_solve = obs, params.epsilon
    else:
        scaled = rescale(obs)
        target = scaled.observable
        if params.guarantee_on_original:
            eps_solve = min(1.0, params.epsilon / scaled.delta_factor)
        else:
            eps_solve = params.epsilon

    mu = params.mu_override if params.mu_override is not None else default_mu(eps_solve)
    n_iter = (
        params.iter_override
        if params.iter_override is not None
        else default_iterations(eps_solve, obs.n, obs.m)
    )
    phi = superop_from_observable(target)
    rho_bar, sigma_bar, payoffs = _iterate(phi, mu, n_iter, params.record_trace)
    if params.record_trace:
        _check_regret_bounds(phi, rho_bar, sigma_bar, payoffs, mu, n_iter)
    sigma_reported = sigma_bar.T.copy()
    lo, hi, gap, certified = equilibrium_gap(obs, rho_bar, sigma_reported)
    mid = expected_payoff(obs, rho_bar, sigma_reported)
    return EquilibriumResult(
        rho=rho_bar,
        sigma=sigma_reported,
        value_lo=lo,
        value_mid=mid,
        value_hi=hi,
        gap=gap,
        certified_epsilon=certified,
        iterations=n_iter,
        trace=payoffs,
    )


def equilibrium_gap(obs: PayoffObservable, rho, sigma) -> tuple[float, float, float, float]:
    """Certify a candidate pair; returns (value_lo, value_hi, gap, certified_epsilon).

    ``sigma`` is the Bob state in the reported convention. The certificate is
    independent of how the pair was produced: value_hi is Alice's best
    response payoff against sigma, value_lo is Bob's against rho, both by the
    spectral characterization, so value_lo <= game value <= value_hi and the
    pair is a (gap / ||R||)-approximate equilibrium.
    """
    rho = check_density(rho)
    sigma = check_density(sigma)
    if rho.shape != (obs.n, obs.n) or sigma.shape != (obs.m, obs.m):
        raise DimensionError(
            f"states of shape {rho.shape}, {sigma.shape} do not match game dims "
            f"({obs.n}, {obs.m})"
        )
    phi = superop_from_observable(obs)
    hi = float(_eigvalsh(apply(phi, sigma.T))[-1])
    lo = float(_eigvalsh(apply_adjoint(phi, rho))[0])
    gap = hi - lo
    norm = spectral_norm(obs.R)
    certified = gap / norm if norm > 0.0 else 0.0
    return lo, hi, gap, certified


def best_response_alice(obs: PayoffObservable, sigma) -> np.ndarray:
    """Alice's payoff-maximizing state against a reported Bob state.

    The projector onto the top eigenvector of Phi(sigma^T); it attains
    lambda_max, the best possible payoff against sigma. Ties are resolved by
    the deterministic eigenvalue ordering.
    """
    sigma = check_density(sigma)
    if sigma.shape != (obs.m, obs.m):
        raise DimensionError(f"sigma has shape {sigma.shape}, expected {(obs.m, obs.m)}")
    phi = superop_from_observable(obs)
    response = apply(phi, sigma.T)
    s = eig((response + response.conj().T) / 2)
    v = s.eigenvectors[:, 0]
    return np.outer(v, v.conj())


def best_response_bob(obs: PayoffObservable, rho) -> np.ndarray:
    """Bob's payoff-minimizing state against rho, in the reported convention.

    Internally the projector onto the bottom eigenvector of Phi*(rho), which
    attains lambda_min; the returned matrix is its transpose so it can be
    paired directly with rho in :func:`mmwgames.games.expected_payoff`.
    """
    rho = check_density(rho)
    if rho.shape != (obs.n, obs.n):
        raise DimensionError(f"rho has shape {rho.shape}, expected {(obs.n, obs.n)}")
    phi = superop_from_observable(obs)
    response = apply_adjoint(phi, rho)
    s = eig((response + response.conj().T) / 2)
    v = s.eigenvectors[:, -1]
    return np.outer(v, v.conj()).T.copy()


def classical_minimax_oracle(payoff) -> tuple[float, np.ndarray, np.ndarray]:
    """Exact minimax value and optimal mixed strategies of a 2x2 matrix game.

    The row player maximizes. Checks for a pure saddle point first; otherwise
    both players mix, and with payoff [[a, b], [c, d]] the closed forms are

        v = (a d - b c) / (a + d - b - c),
        row = ((d - c), (a - b)) / (a + d - b - c),
        col = ((d - b), (a - c)) / (a + d - b - c).
    """
    A = np.asarray(payoff, dtype=float)
    if A.shape != (2, 2):
        raise DimensionError(f"expected a 2x2 payoff matrix, got shape {A.shape}")
    row_minima = A.min(axis=1)
    col_maxima = A.max(axis=0)
    maximin = float(row_minima.max())
    minimax = float(col_maxima.min())
    if maximin == minimax:
        i = int(row_minima.argmax())
        j = int(col_maxima.argmin())
        row = np.zeros(2)
        col = np.zeros(2)
        row[i] = 1.0
        col[j] = 1.0
        return maximin, row, col
    (a, b), (c, d) = A
    denom = a + d - b - c
    value = (a * d - b * c) / denom
    row = np.array([d - c, a - b]) / denom
    col = np.array([d - b, a - c]) / denom
    return float(value), row, col
