"""Tests for the interpolated one-dimensional searches."""

import numpy as np
import pytest

from src.config import ScenarioConfig, SearchConfig
from src.domain import PseudoSpectrum
from src.estimation import (
    MinimaShortageError,
    beamformer_grid,
    compress_bin,
    compress_cheb,
    corr_cost,
    extended_beamformer_grid,
    locate_minima,
    music_pseudospectrum_grid,
    spectrum_frame,
)
from src.numerics import ChebGrid, cheb_nodes
from src.simulation import generate_snapshots

ONE_WAVE = ScenarioConfig(amplitudes=(1.0,), delays=(0.0,), gamma_true=(0.2,), snr_db=None)


def _double_well(gamma):
    return (gamma**2 - 0.25) ** 2 + 0.05 * gamma


@pytest.fixture
def one_wave_snapshots(small_array):
    """Return noiseless single-wave snapshots."""
    return generate_snapshots(ONE_WAVE, small_array, seed=3)


class TestLocateMinima:
    """Tests for locate_minima on a known polynomial."""

    def test_finds_both_wells_deepest_first(self, search):
        """Test positions against the roots of the derivative and the depth ordering."""
        ps = PseudoSpectrum(ChebGrid.from_function(_double_well, search.q_order, search.gamma_interval))
        roots = np.sort(np.real(np.roots([4.0, 0.0, -1.0, 0.05])))
        minima = locate_minima(ps, 2, search)
        assert minima[0][0] == pytest.approx(roots[0], abs=1e-10)
        assert minima[1][0] == pytest.approx(roots[2], abs=1e-10)
        assert minima[0][1] < minima[1][1]
        assert minima[0][1] == pytest.approx(_double_well(roots[0]), abs=1e-12)

    def test_shortage_reports_what_was_found(self, search):
        """Test that asking for more minima than exist raises with the partial list."""
        ps = PseudoSpectrum(ChebGrid.from_function(_double_well, search.q_order, search.gamma_interval))
        with pytest.raises(MinimaShortageError) as info:
            locate_minima(ps, 3, search)
        assert len(info.value.found) == 2

    def test_monotone_spectrum_has_no_interior_minimum(self, search):
        """Test that endpoint minima are not reported."""
        ps = PseudoSpectrum(ChebGrid.from_function(lambda g: g**3 + g, search.q_order, search.gamma_interval))
        with pytest.raises(MinimaShortageError) as info:
            locate_minima(ps, 1, search)
        assert info.value.found == []

    def test_count_must_be_positive(self, search):
        """Test the count check."""
        ps = PseudoSpectrum(ChebGrid.from_function(_double_well, search.q_order, search.gamma_interval))
        with pytest.raises(ValueError):
            locate_minima(ps, 0, search)

    def test_spectrum_frame_holds_the_oversampled_grid(self, search):
        """Test the exported (gamma, value) frame."""
        ps = PseudoSpectrum(ChebGrid.from_function(_double_well, search.q_order, search.gamma_interval))
        frame = spectrum_frame(ps, search)
        assert list(frame.columns) == ["gamma", "value"]
        assert len(frame) == search.oversampled_order
        np.testing.assert_allclose(frame["value"], _double_well(frame["gamma"].to_numpy()), atol=1e-12)


class TestBeamformers:
    """Tests for the beamformer and extended beamformer grids."""

    def test_beamformer_finds_a_single_wave(self, one_wave_snapshots, search):
        """Test that the beamformer minimum sits on a lone noiseless wave."""
        ps = beamformer_grid(compress_cheb(one_wave_snapshots, 8), search)
        (gamma, _), = locate_minima(ps, 1, search)
        assert gamma == pytest.approx(0.2, abs=1e-3)

    def test_beamformer_nodes_are_single_component_costs(self, noisy_snapshots, search):
        """Test the node samples against corr_cost with K = 1."""
        corr = compress_cheb(noisy_snapshots, 6)
        ps = beamformer_grid(corr, search)
        for node, value in list(zip(ps.nodes, ps.values, strict=True))[::7]:
            assert value == pytest.approx(corr_cost(corr, [node]), rel=1e-9)

    def test_exact_extension_matches_the_two_component_cost(self, noisy_snapshots, search):
        """Test the deflated extended beamformer against corr_cost of [gamma_o, gamma_q]."""
        corr = compress_cheb(noisy_snapshots, 6)
        ps = extended_beamformer_grid(corr, [-0.5], search, exact=True)
        for node, value in zip(ps.nodes, ps.values, strict=True):
            if abs(node + 0.5) > 0.05:
                assert value == pytest.approx(corr_cost(corr, [-0.5, node]), rel=1e-8)

    def test_extension_of_nothing_is_the_beamformer(self, noisy_snapshots, search):
        """Test gamma_o = []."""
        corr = compress_cheb(noisy_snapshots, 6)
        np.testing.assert_allclose(extended_beamformer_grid(corr, [], search).values, beamformer_grid(corr, search).values)

    def test_extension_finds_the_second_wave(self, noiseless_snapshots, two_waves, search):
        """Test that fixing one true direction exposes the other."""
        corr = compress_cheb(noiseless_snapshots, 10)
        ps = extended_beamformer_grid(corr, [two_waves.gamma_true[0]], search, exact=True)
        (gamma, _), *_ = locate_minima(ps, 1, search)
        assert gamma == pytest.approx(two_waves.gamma_true[1], abs=1e-3)


class TestMusic:
    """Tests for the incoherent MUSIC pseudo-spectrum."""

    def test_finds_a_single_wave(self, one_wave_snapshots, search):
        """Test IC-MUSIC on a lone noiseless wave."""
        ps = music_pseudospectrum_grid(compress_bin(one_wave_snapshots, 10), 1, search)
        (gamma, _), = locate_minima(ps, 1, search)
        assert gamma == pytest.approx(0.2, abs=1e-2)

    def test_values_are_bounded(self, noisy_snapshots, search):
        """Test 0 <= value <= k P_b at the nodes."""
        ps = music_pseudospectrum_grid(compress_bin(noisy_snapshots, 6), 2, search)
        assert np.all(ps.values >= -1e-12)
        assert np.all(ps.values <= 2 * 6 + 1e-12)

    def test_needs_bin_compression(self, noisy_snapshots, search):
        """Test the compression-kind check."""
        with pytest.raises(ValueError, match="bin"):
            music_pseudospectrum_grid(compress_cheb(noisy_snapshots, 6), 1, search)

    @pytest.mark.parametrize("k", [0, 4])
    def test_subspace_dimension_is_checked(self, noisy_snapshots, search, k):
        """Test k outside [1, M)."""
        with pytest.raises(ValueError):
            music_pseudospectrum_grid(compress_bin(noisy_snapshots, 6), k, search)


def test_narrow_search_interval(noisy_snapshots):
    """Test that the nodes follow a configured sub-interval."""
    search = SearchConfig(q_order=20, gamma_min=-0.8, gamma_max=0.0)
    ps = beamformer_grid(compress_cheb(noisy_snapshots, 6), search)
    np.testing.assert_allclose(ps.nodes, cheb_nodes(20, search.gamma_interval))
