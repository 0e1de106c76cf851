"""Hermitian core: constructors, spectra, exponentials, tensor structure."""

import numpy as np
import pytest

from mmwgames import (
    DimensionError,
    InvalidDensity,
    NotHermitian,
    TOLERANCES,
    check_density,
    eig,
    hermitian,
    hs_inner,
    kron,
    mat_exp,
    partial_trace_A,
    partial_trace_B,
    spectral_norm,
    trace_norm,
)
from conftest import (
    epr_projector,
    random_density,
    random_hermitian,
    random_psd,
    random_unit_interval,
    series_expm,
    trace_out_a_sum,
    trace_out_b_sum,
)


class TestHermitian:
    def test_symmetrizes_small_asymmetry(self):
        M = np.array([[1.0, 1.0 + 1e-14j], [1.0 - 0.5e-14j, 2.0]])
        H = hermitian(M)
        np.testing.assert_allclose(H, H.conj().T)

    def test_rejects_large_asymmetry(self):
        with pytest.raises(NotHermitian):
            hermitian([[0.0, 1.0], [0.0, 0.0]])

    def test_rejects_non_square(self):
        with pytest.raises(DimensionError):
            hermitian(np.zeros((2, 3)))


class TestDensity:
    def test_accepts_maximally_mixed(self):
        check_density(np.eye(3) / 3)

    def test_rejects_wrong_trace(self):
        with pytest.raises(InvalidDensity):
            check_density(np.eye(2))

    def test_rejects_negative_eigenvalue(self):
        with pytest.raises(InvalidDensity):
            check_density(np.diag([1.5, -0.5]))


class TestInnerProduct:
    def test_identity_with_density_is_one(self, rng):
        rho = random_density(rng, 4)
        assert hs_inner(np.eye(4), rho) == pytest.approx(1.0, abs=1e-12)

    def test_self_inner_is_frobenius_squared(self, rng):
        A = random_hermitian(rng, 3)
        assert hs_inner(A, A) == pytest.approx(np.linalg.norm(A, "fro") ** 2, rel=1e-12)

    def test_diagonal_case(self):
        # entrywise sum oracle: 1*3 + 2*4 = 11
        assert hs_inner(np.diag([1.0, 2.0]), np.diag([3.0, 4.0])) == pytest.approx(11.0)

    def test_symmetric_and_real(self, rng):
        A, B = random_hermitian(rng, 3), random_hermitian(rng, 3)
        assert hs_inner(A, B) == pytest.approx(hs_inner(B, A), abs=1e-12)

    def test_nonnegative_for_psd(self, rng):
        for _ in range(20):
            assert hs_inner(random_psd(rng, 3), random_psd(rng, 3)) >= 0.0

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionError):
            hs_inner(np.eye(2), np.eye(3))


class TestEig:
    def test_diagonal_case(self):
        s = eig(np.diag([3.0, 1.0, 2.0]))
        np.testing.assert_allclose(s.eigenvalues, [3.0, 2.0, 1.0])

    def test_exchange_matrix(self):
        s = eig(np.array([[0.0, 1.0], [1.0, 0.0]]))
        np.testing.assert_allclose(s.eigenvalues, [1.0, -1.0], atol=1e-14)

    def test_product_state_eigenvalues(self, rng):
        # brute-force oracle: spectrum of a tensor product is all pairwise products
        for _ in range(5):
            rho, sigma = random_density(rng, 2), random_density(rng, 2)
            products = np.sort(np.outer(eig(rho).eigenvalues, eig(sigma).eigenvalues).ravel())
            np.testing.assert_allclose(
                np.sort(eig(kron(rho, sigma)).eigenvalues), products, atol=1e-12
            )

    def test_reconstruction_and_orthonormality(self, rng):
        for dim in (2, 3, 4, 5, 6):
            A = random_hermitian(rng, dim)
            s = eig(A)
            rebuilt = (s.eigenvectors * s.eigenvalues) @ s.eigenvectors.conj().T
            assert spectral_norm(rebuilt - A) <= 1e-9
            gram = s.eigenvectors.conj().T @ s.eigenvectors
            assert np.abs(gram - np.eye(dim)).max() <= 1e-10

    def test_descending_with_multiplicity(self, rng):
        w = eig(np.diag([2.0, 2.0, -1.0, 5.0])).eigenvalues
        assert list(w) == sorted(w, reverse=True)
        assert len(w) == 4


class TestNorms:
    def test_diagonal_case(self):
        A = np.diag([2.0, -3.0])
        assert spectral_norm(A) == pytest.approx(3.0)
        assert trace_norm(A) == pytest.approx(5.0)

    def test_density_trace_norm_is_one(self, rng):
        assert trace_norm(random_density(rng, 4)) == pytest.approx(1.0, abs=1e-12)

    def test_zero_matrix(self):
        assert spectral_norm(np.zeros((3, 3))) == 0.0
        assert trace_norm(np.zeros((3, 3))) == 0.0

    def test_norm_ordering(self, rng):
        for _ in range(20):
            A = random_hermitian(rng, 4)
            assert spectral_norm(A) <= trace_norm(A) + 1e-12
            assert trace_norm(A) <= 4 * spectral_norm(A) + 1e-12


class TestMatExp:
    def test_exp_of_zero(self):
        np.testing.assert_allclose(mat_exp(np.zeros((3, 3))), np.eye(3), atol=1e-15)

    def test_diagonal_exponential(self):
        np.testing.assert_allclose(
            mat_exp(np.diag([np.log(2.0), 0.0])), np.diag([2.0, 1.0]), rtol=1e-12
        )

    def test_hyperbolic_closed_form(self):
        # series oracle at 30 terms agrees with the cosh/sinh closed form
        t = 0.7
        A = np.array([[0.0, t], [t, 0.0]])
        expected = np.array([[np.cosh(t), np.sinh(t)], [np.sinh(t), np.cosh(t)]])
        np.testing.assert_allclose(series_expm(A), expected, rtol=1e-14)
        np.testing.assert_allclose(mat_exp(A), expected, rtol=1e-12)

    def test_matches_series_oracle(self, rng):
        for dim in (2, 3, 4, 5, 6):
            A = random_hermitian(rng, dim, scale=0.5)
            E = mat_exp(A)
            assert spectral_norm(E - series_expm(A, terms=40)) <= 1e-10 * spectral_norm(E)

    def test_positive_definite_output(self, rng):
        A = random_hermitian(rng, 4, scale=2.0)
        assert eig(mat_exp(A)).smallest > 0.0


class TestKron:
    def test_identity(self):
        np.testing.assert_allclose(kron(np.eye(2), np.eye(2)), np.eye(4))

    def test_projector_block_structure(self, rng):
        sigma = random_density(rng, 2)
        K = kron(np.diag([1.0, 0.0]), sigma)
        np.testing.assert_allclose(K[:2, :2], sigma)
        np.testing.assert_allclose(K[2:, 2:], np.zeros((2, 2)))

    def test_block_form(self, rng):
        A, B = random_hermitian(rng, 2), random_hermitian(rng, 3)
        K = kron(A, B)
        for i in range(2):
            for j in range(2):
                np.testing.assert_allclose(K[3 * i : 3 * i + 3, 3 * j : 3 * j + 3], A[i, j] * B)


class TestPartialTraces:
    def test_product_state(self, rng):
        rho, sigma = random_density(rng, 3), random_density(rng, 2)
        np.testing.assert_allclose(partial_trace_B(kron(rho, sigma), 3, 2), rho, atol=1e-13)
        np.testing.assert_allclose(partial_trace_A(kron(rho, sigma), 3, 2), sigma, atol=1e-13)

    def test_identity(self):
        np.testing.assert_allclose(partial_trace_B(np.eye(6), 2, 3), 3 * np.eye(2))
        np.testing.assert_allclose(partial_trace_A(np.eye(6), 2, 3), 2 * np.eye(3))

    def test_epr_projector(self):
        # entrywise summation oracle on the maximally entangled projector
        M = epr_projector()
        np.testing.assert_allclose(trace_out_b_sum(M, 2, 2), np.eye(2) / 2, atol=1e-15)
        np.testing.assert_allclose(partial_trace_B(M, 2, 2), np.eye(2) / 2, atol=1e-15)
        np.testing.assert_allclose(partial_trace_A(M, 2, 2), np.eye(2) / 2, atol=1e-15)

    def test_matches_summation_oracle(self, rng):
        for n, m in ((2, 3), (3, 2), (4, 2)):
            M = random_hermitian(rng, n * m)
            np.testing.assert_allclose(partial_trace_B(M, n, m), trace_out_b_sum(M, n, m), atol=1e-13)
            np.testing.assert_allclose(partial_trace_A(M, n, m), trace_out_a_sum(M, n, m), atol=1e-13)

    def test_trace_preservation_and_linearity(self, rng):
        M1, M2 = random_hermitian(rng, 6), random_hermitian(rng, 6)
        assert np.trace(partial_trace_B(M1, 2, 3)) == pytest.approx(np.trace(M1), abs=1e-12)
        np.testing.assert_allclose(
            partial_trace_B(2.0 * M1 - 0.5 * M2, 2, 3),
            2.0 * partial_trace_B(M1, 2, 3) - 0.5 * partial_trace_B(M2, 2, 3),
            atol=1e-12,
        )

    def test_product_trace_identity(self, rng):
        A, B = random_hermitian(rng, 2), random_hermitian(rng, 3)
        np.testing.assert_allclose(
            partial_trace_B(kron(A, B), 2, 3), np.trace(B) * A, atol=1e-12
        )

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionError):
            partial_trace_B(np.eye(6), 2, 2)


class TestExponentialInequalities:
    """Randomized suites for the two operator inequalities behind the solver."""

    def test_golden_thompson(self, rng):
        for _ in range(200):
            dim = int(rng.integers(2, 7))
            X = random_hermitian(rng, dim, scale=dim**-0.5)
            Y = random_hermitian(rng, dim, scale=dim**-0.5)
            lhs = np.trace(mat_exp(X + Y)).real
            rhs = np.trace(mat_exp(X) @ mat_exp(Y)).real
            assert lhs <= rhs + 1e-9

    def test_exp_upper_bounds(self, rng):
        # exp(mu P) <= 1 + mu e^mu P and exp(-mu P) <= 1 - mu e^-mu P for 0 <= P <= 1
        for _ in range(200):
            dim = int(rng.integers(2, 7))
            P = random_unit_interval(rng, dim)
            mu = float(rng.uniform(1e-3, 2.0))
            I = np.eye(dim)
            gap_plus = I + mu * np.exp(mu) * P - mat_exp(mu * P)
            gap_minus = I - mu * np.exp(-mu) * P - mat_exp(-mu * P)
            assert eig(gap_plus).smallest >= -1e-9
            assert eig(gap_minus).smallest >= -1e-9


def test_tolerances_record_is_shared():
    assert TOLERANCES.hermiticity == 1e-12
    assert TOLERANCES.psd == 1e-10
