"""Tests for the Chebyshev interpolation machinery."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from numpy.polynomial import chebyshev as npcheb

from src.numerics import (
    UNIT_INTERVAL,
    ChebGrid,
    Interval,
    cheb_derivative,
    cheb_eval,
    cheb_fit,
    cheb_nodes,
    cheb_oversample,
    cheb_weight_matrix,
    cheb_weights,
    dct2,
    dct3,
)

INDEX_INTERVAL = Interval(-819.0, 818.0)

finite = st.floats(min_value=-1.0, max_value=1.0, allow_nan=False, allow_infinity=False)


class TestInterval:
    """Tests for the interval map."""

    def test_maps_endpoints(self):
        """Test that a and b map onto -1 and 1."""
        interval = Interval(2.0, 6.0)
        assert interval.to_unit(2.0) == pytest.approx(-1.0)
        assert interval.to_unit(6.0) == pytest.approx(1.0)
        assert interval.from_unit(0.0) == pytest.approx(4.0)

    def test_rejects_empty_interval(self):
        """Test that a >= b is rejected."""
        with pytest.raises(ValueError, match="a < b"):
            Interval(1.0, 1.0)


class TestNodes:
    """Tests for cheb_nodes."""

    def test_nodes_are_increasing_and_interior(self):
        """Test ordering and interior placement of the mapped nodes."""
        nodes = cheb_nodes(7, INDEX_INTERVAL)
        assert np.all(np.diff(nodes) > 0)
        assert nodes[0] > INDEX_INTERVAL.a
        assert nodes[-1] < INDEX_INTERVAL.b

    def test_nodes_are_roots_of_t_p(self):
        """Test that the unit nodes are the roots of T_P."""
        nodes = cheb_nodes(9)
        np.testing.assert_allclose(npcheb.chebval(nodes, np.eye(10)[9]), 0.0, atol=1e-13)

    def test_order_one_is_the_midpoint(self):
        """Test the single-node case."""
        assert cheb_nodes(1, Interval(0.0, 4.0))[0] == pytest.approx(2.0)

    def test_order_zero_raises(self):
        """Test the order check."""
        with pytest.raises(ValueError, match=">= 1"):
            cheb_nodes(0)


class TestTransforms:
    """Tests for the unnormalized DCT pair."""

    def test_dct2_matches_definition(self):
        """Test dct2 against its defining sum."""
        v = np.array([0.3, -1.2, 2.5, 0.7, -0.4])
        n = v.size
        k = np.arange(n)[:, None]
        p = np.arange(1, n + 1)[None, :]
        expected = np.cos(np.pi * k * (p - 0.5) / n) @ v
        np.testing.assert_allclose(dct2(v), expected, atol=1e-13)

    def test_dct3_matches_definition(self):
        """Test dct3 against its defining sum."""
        c = np.array([1.0, -0.5, 0.25, 2.0])
        n = c.size
        p = np.arange(1, n + 1)[:, None]
        k = np.arange(n)[None, :]
        expected = np.cos(np.pi * k * (p - 0.5) / n) @ c
        np.testing.assert_allclose(dct3(c), expected, atol=1e-13)

    @given(st.lists(finite, min_size=1, max_size=64))
    @settings(max_examples=60, deadline=None)
    def test_round_trip_identity(self, values):
        """Test dct3(dct2(v)) = (N/2) v + sum(v)/2."""
        v = np.array(values)
        n = v.size
        np.testing.assert_allclose(dct3(dct2(v)), 0.5 * n * v + 0.5 * v.sum(), atol=1e-12 * n)

    def test_complex_input_is_split_into_parts(self):
        """Test that the transform acts on real and imaginary parts separately."""
        v = np.array([1.0 + 2.0j, -0.5 + 0.1j, 0.3 - 1.0j])
        np.testing.assert_allclose(dct2(v), dct2(v.real) + 1j * dct2(v.imag), atol=1e-14)

    def test_empty_input_raises(self):
        """Test the empty-input check."""
        with pytest.raises(ValueError):
            dct2(np.array([]))
        with pytest.raises(ValueError):
            dct3(np.array([]))


class TestCardinalWeights:
    """Tests for the cardinal weights Phi_p."""

    @pytest.mark.parametrize("order", [1, 2, 6, 10, 33])
    def test_cardinal_identity(self, order):
        """Test Phi_p(x_q) = delta_pq at the nodes."""
        weights = cheb_weight_matrix(order, INDEX_INTERVAL, cheb_nodes(order, INDEX_INTERVAL))
        np.testing.assert_allclose(weights, np.eye(order), atol=1e-12)

    @pytest.mark.parametrize("order", [2, 6, 10, 20])
    def test_partition_of_unity(self, order):
        """Test that the weights sum to one across the interval."""
        xs = np.arange(-819, 819, 7, dtype=float)
        weights = cheb_weight_matrix(order, INDEX_INTERVAL, xs)
        np.testing.assert_allclose(weights.sum(axis=1), 1.0, atol=1e-12)

    def test_weights_reproduce_series_evaluation(self):
        """Test sum_p Phi_p(x) g(x_p) against Clenshaw evaluation of the fitted series."""
        interval = Interval(-3.0, 5.0)
        grid = ChebGrid.from_function(lambda x: np.exp(0.3 * x) * np.sin(x), 12, interval)
        xs = np.linspace(-3.0, 5.0, 41)
        by_weights = cheb_weight_matrix(12, interval, xs) @ grid.values
        np.testing.assert_allclose(by_weights, cheb_eval(cheb_fit(grid), xs), atol=1e-12)

    def test_single_abscissa_helper(self):
        """Test cheb_weights against the matrix form."""
        np.testing.assert_allclose(cheb_weights(5, UNIT_INTERVAL, 0.3), cheb_weight_matrix(5, UNIT_INTERVAL, [0.3])[0])

    def test_order_zero_raises(self):
        """Test the order check."""
        with pytest.raises(ValueError):
            cheb_weight_matrix(0, UNIT_INTERVAL, [0.0])


class TestFitAndEvaluate:
    """Tests for fitting, evaluation, oversampling and differentiation."""

    @given(st.lists(finite, min_size=1, max_size=12), st.integers(min_value=0, max_value=6))
    @settings(max_examples=60, deadline=None)
    def test_polynomial_exactness(self, coeffs, extra):
        """Test that degree < P polynomials are reproduced exactly."""
        interval = Interval(-3.0, 5.0)
        coeffs = np.array(coeffs)
        order = coeffs.size + extra

        def poly(x):
            return npcheb.chebval(interval.to_unit(x), coeffs)

        series = cheb_fit(ChebGrid.from_function(poly, order, interval))
        xs = np.linspace(-3.0, 5.0, 23)
        scale = 1.0 + np.abs(coeffs).sum()
        np.testing.assert_allclose(series(xs), poly(xs), atol=1e-11 * scale)
        np.testing.assert_allclose(series.coeffs[: coeffs.size], coeffs, atol=1e-11 * scale)

    def test_oversampling_matches_the_interpolant(self):
        """Test that zero-padding resamples the interpolant at the new nodes."""
        interval = Interval(-1.0, 0.5)
        grid = ChebGrid.from_function(lambda x: np.cos(4.0 * x) + 1j * x**3, 16, interval)
        upsampled = cheb_oversample(grid, 40)
        expected = cheb_eval(cheb_fit(grid), cheb_nodes(40, interval))
        np.testing.assert_allclose(upsampled.values, expected, atol=1e-12)
        np.testing.assert_allclose(upsampled.nodes, cheb_nodes(40, interval))

    def test_oversampling_needs_a_larger_order(self):
        """Test that R <= P is rejected."""
        grid = ChebGrid.from_function(np.cos, 8, UNIT_INTERVAL)
        with pytest.raises(ValueError, match="must exceed"):
            cheb_oversample(grid, 8)

    def test_derivative_includes_interval_scale(self):
        """Test d/dx of x^3 on a non-unit interval."""
        interval = Interval(0.0, 2.0)
        series = cheb_fit(ChebGrid.from_function(lambda x: x**3, 6, interval))
        xs = np.linspace(0.0, 2.0, 9)
        np.testing.assert_allclose(cheb_derivative(series)(xs), 3.0 * xs**2, atol=1e-12)
        np.testing.assert_allclose(series.derivative().derivative()(xs), 6.0 * xs, atol=1e-11)

    def test_derivative_of_sine(self):
        """Test the derivative of a sine fit on [0, pi] at x = 1."""
        series = cheb_fit(ChebGrid.from_function(np.sin, 24, Interval(0.0, np.pi)))
        assert series.derivative()(1.0) == pytest.approx(np.cos(1.0), abs=1e-9)

    def test_weights_stay_accurate_next_to_a_node(self):
        """Test partition of unity and interpolation just outside the node switch."""
        interval = INDEX_INTERVAL
        node = cheb_nodes(10, interval)[3]
        xs = node + np.array([1e-5, 1e-3, 0.1]) * interval.half_width
        weights = cheb_weight_matrix(10, interval, xs)
        np.testing.assert_allclose(weights.sum(axis=1), 1.0, atol=1e-13)
        grid = ChebGrid.from_function(lambda x: (x / 818.0) ** 5, 10, interval)
        np.testing.assert_allclose(weights @ grid.values, (xs / 818.0) ** 5, atol=1e-13)

    def test_grid_is_read_only(self):
        """Test that node samples cannot be modified in place."""
        grid = ChebGrid.from_function(np.sin, 4, UNIT_INTERVAL)
        with pytest.raises(ValueError):
            grid.values[0] = 1.0
