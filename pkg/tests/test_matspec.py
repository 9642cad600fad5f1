"""Tests for utils/matspec.py: dense arithmetic, real spectra and Jordan structure."""

import numpy as np
import pytest
from numpy.testing import assert_allclose

from tests.helpers import jordan_matrix, random_distinct_eigenvalues, random_transform
from utils.errors import (
    ComplexSpectrum, DimensionMismatch, DimensionUnsupported, EigenvalueOutOfRange,
    IllConditioned, NonFinite, Singular,
)
from utils.matspec import (
    chain_coefficients, det, eig_real, inverse, jordan_from_declared, jordan_structure,
    matmul, matvec, perturbation_eigenvectors, perturbed_single_block, power,
    solve_chain_system,
)


class TestArithmetic:
    def test_det_and_inverse(self):
        A = [[2.0, 1.0], [1.0, 3.0]]
        assert det(A) == pytest.approx(5.0)
        assert_allclose(inverse(A) @ np.array(A), np.eye(2), atol=1e-14)

    def test_inverse_singular(self):
        with pytest.raises(Singular):
            inverse([[1.0, 2.0], [2.0, 4.0]])

    def test_power_negative_uses_inverse(self):
        A = np.array([[2.0, 0.0], [0.0, 4.0]])
        assert_allclose(power(A, -2), np.diag([0.25, 0.0625]))
        assert_allclose(power(A, 0), np.eye(2))

    def test_matmul_shape_mismatch(self):
        with pytest.raises(DimensionMismatch):
            matmul(np.ones((2, 3)), np.ones((2, 3)))
        with pytest.raises(DimensionMismatch):
            matvec(np.ones((2, 2)), [1.0, 2.0, 3.0])

    def test_non_square(self):
        with pytest.raises(DimensionMismatch):
            det(np.ones((2, 3)))

    def test_non_finite(self):
        with pytest.raises(NonFinite):
            det([[1.0, np.nan], [0.0, 1.0]])

    def test_dimension_cap(self):
        with pytest.raises(DimensionUnsupported):
            det(np.eye(33))
        assert det(np.eye(32)) == pytest.approx(1.0)


class TestEigReal:
    def test_sorted_ascending(self):
        spectrum = eig_real(np.diag([0.9, 0.1, 0.4]))
        assert_allclose(spectrum.eigenvalues, [0.1, 0.4, 0.9])
        assert spectrum.imag_residual == 0.0

    def test_rotation_is_complex(self):
        theta = 0.3
        R = [[np.cos(theta), -np.sin(theta)], [np.sin(theta), np.cos(theta)]]
        with pytest.raises(ComplexSpectrum):
            eig_real(R)

    def test_similarity_keeps_spectrum(self, rng):
        for _ in range(20):
            eigs = random_distinct_eigenvalues(rng, 4)
            T = random_transform(rng, 4)
            spectrum = eig_real(T @ np.diag(eigs) @ np.linalg.inv(T))
            assert_allclose(spectrum.eigenvalues, eigs, atol=1e-7)

    def test_similar_defective_is_real(self, rng):
        T = np.eye(4) + 0.15 * rng.standard_normal((4, 4))
        A = T @ jordan_matrix([(0.3, 1), (0.6, 3)]) @ np.linalg.inv(T)
        assert_allclose(eig_real(A).eigenvalues, [0.3, 0.6, 0.6, 0.6], atol=1e-7)


class TestJordanStructure:
    def test_distinct_diagonal(self):
        js = jordan_structure(np.diag([0.9, 0.4]))
        assert [tuple(b) for b in js.blocks] == [(0.4, 1), (0.9, 1)]
        assert js.is_diagonal
        assert_allclose(js.Q @ js.P, np.eye(2), atol=1e-12)

    def test_single_block(self):
        js = jordan_structure(jordan_matrix([(0.5, 2)]))
        assert [tuple(b) for b in js.blocks] == [(0.5, 2)]
        assert_allclose(js.P, np.eye(2))

    def test_three_block_chain(self):
        A = jordan_matrix([(0.7, 3)])
        js = jordan_structure(A)
        assert js.sizes == [3]
        assert_allclose(js.Q @ A @ js.P, js.jordan_matrix(), atol=1e-12)

    def test_multiple_blocks(self):
        A = jordan_matrix([(0.6, 2), (0.3, 1)])
        js = jordan_structure(A)
        assert [tuple(b) for b in js.blocks] == [(0.3, 1), (0.6, 2)]
        assert_allclose(js.Q @ A @ js.P, js.jordan_matrix(), atol=1e-12)

    def test_derogatory_eigenvalue(self):
        js = jordan_structure(np.diag([0.5, 0.5]))
        assert js.sizes == [1, 1]
        assert js.eigenvalues == [0.5, 0.5]

    def test_similar_distinct(self, rng):
        T = np.eye(3) + 0.3 * rng.standard_normal((3, 3))
        A = T @ np.diag([0.2, 0.5, 0.8]) @ np.linalg.inv(T)
        js = jordan_structure(A)
        assert_allclose(js.eigenvalues, [0.2, 0.5, 0.8], atol=1e-10)
        assert_allclose(js.Q @ A @ js.P, np.diag([0.2, 0.5, 0.8]), atol=1e-10)

    def test_last_row(self):
        js = jordan_structure(jordan_matrix([(0.3, 1), (0.6, 2)]))
        assert_allclose(js.last_row(1), [0.0, 0.0, 1.0])
        assert_allclose(js.q_row(1, 1), [0.0, 1.0, 0.0])

    def test_similar_single_block(self, rng):
        J = jordan_matrix([(0.5, 2)])
        for _ in range(20):
            T = random_transform(rng, 2)
            A = T @ J @ np.linalg.inv(T)
            js = jordan_structure(A)
            assert js.sizes == [2]
            assert js.eigenvalues[0] == pytest.approx(0.5, abs=1e-7)
            assert_allclose(js.Q @ A @ js.P, js.jordan_matrix(), atol=1e-6)

    def test_similar_mixed_blocks(self, rng):
        J = jordan_matrix([(0.3, 1), (0.6, 3)])
        for _ in range(10):
            T = np.eye(4) + 0.15 * rng.standard_normal((4, 4))
            A = T @ J @ np.linalg.inv(T)
            js = jordan_structure(A)
            assert js.sizes == [1, 3]
            assert_allclose(js.eigenvalues, [0.3, 0.6], atol=1e-7)

    @pytest.mark.parametrize("blocks", [[(0.5, 2)], [(0.7, 3)], [(0.3, 1), (0.6, 3)], [(0.2, 2), (0.8, 2)]])
    def test_chains_annihilated_at_block_size(self, rng, blocks):
        J = jordan_matrix(blocks)
        T = np.eye(len(J)) + 0.15 * rng.standard_normal(J.shape)
        A = T @ J @ np.linalg.inv(T)
        js = jordan_structure(A)
        for blk, start in zip(js.blocks, js.offsets()):
            chain = js.P[:, start:start + blk.size]
            M = A - blk.lam * np.eye(len(A))
            scale = np.linalg.norm(chain)
            assert np.linalg.norm(np.linalg.matrix_power(M, blk.size) @ chain) <= 1e-8 * scale
            assert np.linalg.norm(np.linalg.matrix_power(M, blk.size - 1) @ chain) > 1e-3 * scale


class TestDeclaredStructure:
    def test_blocks_reordered_with_columns(self):
        A = jordan_matrix([(0.3, 1), (0.6, 2)])
        # declare the blocks out of order, permuting P to match
        P = np.eye(3)[:, [1, 2, 0]]
        js = jordan_from_declared(A, [(0.6, 2), (0.3, 1)], P)
        assert [tuple(b) for b in js.blocks] == [(0.3, 1), (0.6, 2)]
        assert_allclose(js.P, np.eye(3))

    def test_wrong_sizes(self):
        with pytest.raises(DimensionMismatch):
            jordan_from_declared(np.eye(2) * 0.5, [(0.5, 1)], np.eye(2))

    def test_structure_must_fit(self):
        with pytest.raises(IllConditioned):
            jordan_from_declared(np.diag([0.4, 0.9]), [(0.4, 1), (0.8, 1)], np.eye(2))


class TestPerturbation:
    def test_perturbed_block(self):
        sys = perturbed_single_block(0.5, 3, 0.1, [0.0, 0.0, 1.0])
        assert_allclose(np.diag(sys.A), [0.5, 0.6, 0.7])
        assert_allclose(np.diag(sys.A, 1), [1.0, 1.0])

    def test_perturbed_out_of_range(self):
        with pytest.raises(EigenvalueOutOfRange):
            perturbed_single_block(0.9, 3, 0.1, [0.0, 0.0, 1.0])

    def test_perturbation_eigenvectors(self):
        sys = perturbed_single_block(0.5, 3, 0.1, [0.0, 0.0, 1.0])
        P = perturbation_eigenvectors(3, 0.1)
        lams = np.diag(sys.A)
        for j in range(3):
            assert_allclose(sys.A @ P[:, j], lams[j] * P[:, j], atol=1e-14)

    @pytest.mark.parametrize("n, expected", [(2, [-10.0, 10.0]), (3, [50.0, -100.0, 50.0])])
    def test_chain_coefficients(self, n, expected):
        assert_allclose(chain_coefficients(n, 0.1, 1.0), expected, rtol=1e-12)

    @pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
    def test_chain_coefficients_solve(self, n):
        assert_allclose(chain_coefficients(n, 0.2, 0.7), solve_chain_system(n, 0.2, 0.7), rtol=1e-10)

    @pytest.mark.parametrize("delta", [1e-3, 1e-2, 0.1])
    @pytest.mark.parametrize("n", range(1, 9))
    def test_chain_coefficients_small_delta(self, n, delta):
        assert_allclose(chain_coefficients(n, delta, 1.3), solve_chain_system(n, delta, 1.3), rtol=1e-9)
