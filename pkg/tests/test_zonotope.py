"""Tests for utils/zonotope.py: generators, the determinant-sum oracle and planar boundaries."""

from itertools import combinations

import numpy as np
import pytest
from numpy.testing import assert_allclose

from models import LdtSystem, Zonotope
from tests.helpers import jordan_matrix, random_distinct_eigenvalues, random_transform
from utils.errors import Degenerate, DimensionMismatch, DimensionUnsupported
from utils.zonotope import (
    build_generators, eigen_coordinates, eigencoord_halfwidths, oracle_volume,
    polygon_2d, polygon_area, polygon_extent,
)


def brute_force_volume(G):
    n = G.shape[0]
    return sum(abs(np.linalg.det(G[:, list(c)])) for c in combinations(range(G.shape[1]), n))


def random_system_2d(rng):
    eigs = random_distinct_eigenvalues(rng, 2)
    T = random_transform(rng, 2)
    A = T @ np.diag(eigs) @ np.linalg.inv(T)
    return LdtSystem(A, rng.uniform(0.5, 1.5, 2))


class TestGenerators:
    def test_reach_generators(self):
        sys = LdtSystem(np.diag([0.5, 0.25]), [1.0, 1.0])
        Z = build_generators(sys, 3)
        assert_allclose(Z.generators, [[1.0, 0.5, 0.25], [1.0, 0.25, 0.0625]])
        assert Z.count == 3 and Z.region_kind == "reach"

    def test_control_generators(self):
        sys = LdtSystem(np.diag([2.0, 4.0]), [1.0, 1.0])
        Z = build_generators(sys, 2, kind="control")
        assert_allclose(Z.generators, [[0.5, 0.25], [0.25, 0.0625]])

    def test_multi_input_block_order(self):
        sys = LdtSystem(np.diag([0.5, 0.5]), np.eye(2))
        Z = build_generators(sys, 2)
        assert_allclose(Z.generators, [[1.0, 0.0, 0.5, 0.0], [0.0, 1.0, 0.0, 0.5]])


class TestOracle:
    def test_unit_square(self):
        Z = Zonotope(np.eye(2), 1)
        assert oracle_volume(Z) == pytest.approx(1.0)
        assert oracle_volume(Z.with_convention("symmetric")) == pytest.approx(4.0)

    def test_hexagon(self):
        Z = Zonotope([[1.0, 0.0, 1.0], [0.0, 1.0, 1.0]], 1)
        assert oracle_volume(Z) == pytest.approx(3.0)

    def test_too_few_generators(self):
        with pytest.raises(DimensionMismatch):
            oracle_volume(Zonotope(np.ones((3, 2)), 1))

    @pytest.mark.parametrize("n, count", [(1, 7), (2, 9), (3, 8), (4, 8)])
    def test_matches_brute_force(self, rng, n, count):
        G = rng.standard_normal((n, count))
        assert oracle_volume(Zonotope(G, count)) == pytest.approx(brute_force_volume(G), rel=1e-12)

    def test_thread_count_does_not_matter(self, rng):
        G = rng.standard_normal((3, 40))
        Z = Zonotope(G, 40)
        assert oracle_volume(Z, threads=1) == pytest.approx(oracle_volume(Z, threads=4), rel=1e-13)

    def test_last_row_invariance_finite_horizon(self):
        A = jordan_matrix([(0.9, 2)])
        volumes = [
            oracle_volume(build_generators(LdtSystem(A, b), 50))
            for b in ([0.7, 1.0], [0.0, 1.0], [-0.7, 1.0])
        ]
        assert_allclose(volumes, volumes[1], rtol=1e-12)

    def test_nondecreasing_in_horizon(self, rng):
        sys = LdtSystem(np.diag(random_distinct_eigenvalues(rng, 3)), rng.uniform(0.5, 1.5, 3))
        volumes = [oracle_volume(build_generators(sys, N)) for N in range(3, 25)]
        assert all(later >= earlier * (1.0 - 1e-12) for earlier, later in zip(volumes, volumes[1:]))

    def test_generator_order_does_not_matter(self, rng):
        G = rng.standard_normal((3, 12))
        shuffled = G[:, rng.permutation(12)]
        assert oracle_volume(Zonotope(shuffled, 12)) == pytest.approx(oracle_volume(Zonotope(G, 12)), rel=1e-12)


class TestPolygon:
    def test_symmetric_square(self):
        poly = polygon_2d(Zonotope(np.eye(2), 1, convention="symmetric"))
        assert_allclose(poly.vertices, [[1, 1], [-1, 1], [-1, -1], [1, -1]])
        assert polygon_area(poly) == pytest.approx(4.0)

    def test_unit_cube_square(self):
        poly = polygon_2d(Zonotope(np.eye(2), 1, convention="unit-cube"))
        assert_allclose(poly.vertices, [[1, 1], [0, 1], [0, 0], [1, 0]])
        assert polygon_area(poly) == pytest.approx(1.0)

    def test_parallelogram(self):
        poly = polygon_2d(Zonotope([[1.0, 1.0], [0.0, 1.0]], 1, convention="symmetric"))
        assert_allclose(poly.vertices, [[2, 1], [0, 1], [-2, -1], [0, -1]])

    def test_parallel_generators_merge(self):
        Z = Zonotope([[1.0, -2.0, 0.0], [0.0, 0.0, 1.0]], 1, convention="symmetric")
        poly = polygon_2d(Z)
        assert len(poly) == 4
        assert polygon_area(poly) == pytest.approx(12.0)

    def test_counterclockwise(self, rng):
        poly = polygon_2d(build_generators(random_system_2d(rng), 10, convention="symmetric"))
        V = poly.vertices
        signed = 0.5 * np.sum(V[:, 0] * np.roll(V[:, 1], -1) - np.roll(V[:, 0], -1) * V[:, 1])
        assert signed > 0

    def test_diagonal_pair_vertex_count(self):
        sys = LdtSystem(np.diag([0.4, 0.9]), [1.0, 1.0])
        poly = polygon_2d(build_generators(sys, 30, convention="symmetric"))
        assert len(poly) == 60

    def test_area_matches_oracle(self, rng):
        for _ in range(20):
            Z = build_generators(random_system_2d(rng), 30, convention="symmetric")
            assert polygon_area(polygon_2d(Z)) == pytest.approx(oracle_volume(Z), rel=1e-9)
            unit = Z.with_convention("unit-cube")
            assert polygon_area(polygon_2d(unit)) == pytest.approx(oracle_volume(unit), rel=1e-9)

    def test_generator_order_keeps_vertices(self, rng):
        Z = build_generators(random_system_2d(rng), 15, convention="symmetric")
        shuffled = Zonotope(Z.generators[:, rng.permutation(Z.count)], 15, convention="symmetric")

        def by_row(V):
            return V[np.lexsort((V[:, 1], V[:, 0]))]

        assert_allclose(by_row(polygon_2d(shuffled).vertices), by_row(polygon_2d(Z).vertices), atol=1e-12)

    def test_not_planar(self):
        with pytest.raises(DimensionUnsupported):
            polygon_2d(Zonotope(np.eye(3), 1))

    def test_all_parallel(self):
        with pytest.raises(Degenerate):
            polygon_2d(Zonotope([[1.0, 2.0], [1.0, 2.0]], 1))


class TestExtentAndEigenCoordinates:
    def test_square_extent(self):
        poly = polygon_2d(Zonotope(np.eye(2), 1, convention="symmetric"))
        d_min, d_max, flatness = polygon_extent(poly)
        assert d_min == pytest.approx(1.0)
        assert d_max == pytest.approx(np.sqrt(2.0))
        assert flatness == pytest.approx(1.0 / np.sqrt(2.0))

    def test_close_eigenvalues_flatten(self):
        def flatness(eigs):
            sys = LdtSystem(np.diag(eigs), [1.0, 1.0])
            return polygon_extent(polygon_2d(build_generators(sys, 60, convention="symmetric")))[2]
        assert flatness([0.85, 0.9]) < flatness([0.4, 0.9])

    def test_eigen_coordinates(self):
        Z = Zonotope([[2.0, 0.0], [0.0, 1.0]], 1)
        P = np.diag([2.0, 1.0])
        assert_allclose(eigen_coordinates(Z, P).generators, np.eye(2))
        assert_allclose(eigencoord_halfwidths(Z, P), [1.0, 1.0])

    def test_column_sums(self):
        Z = Zonotope([[1.0, 0.4], [1.0, 0.9]], 1)
        assert_allclose(eigencoord_halfwidths(Z, np.eye(2)), [1.4, 1.9])

    def test_jordan_block_series(self):
        Z = build_generators(LdtSystem(jordan_matrix([(0.5, 2)]), [0.0, 1.0]), 200)
        assert_allclose(eigencoord_halfwidths(Z, np.eye(2)), [4.0, 2.0], atol=1e-6)

    def test_halfwidths_ignore_generator_order(self, rng):
        G = rng.standard_normal((3, 10))
        P = random_transform(rng, 3)
        shuffled = Zonotope(G[:, rng.permutation(10)], 10)
        assert_allclose(eigencoord_halfwidths(shuffled, P), eigencoord_halfwidths(Zonotope(G, 10), P), rtol=1e-12)

    def test_eigen_coordinates_shape(self):
        with pytest.raises(DimensionMismatch):
            eigen_coordinates(Zonotope(np.eye(2), 1), np.eye(3))
