import math

import numpy as np
import pytest

from spinbath.bath import (
    BathDistribution,
    BathSpecError,
    bath_from_config,
    delta_distribution,
    gaussian_approx,
    sector_multiplicity,
    spin_grid,
    unpolarized_exact,
)


class TestExactDistribution:
    def test_single_spin(self):
        d = unpolarized_exact(1)
        assert d.spins.tolist() == [0.5]
        assert d.weights.tolist() == [1.0]

    def test_two_spins(self):
        d = unpolarized_exact(2)
        assert d.spins.tolist() == [0.0, 1.0]
        assert np.allclose(d.weights, [0.25, 0.75])

    def test_four_spins(self):
        # multiplicities 2, 3, 1 for I = 0, 1, 2
        d = unpolarized_exact(4)
        assert np.allclose(d.weights, [2 / 16, 9 / 16, 5 / 16])
        assert sector_multiplicity(4, 0) == 2
        assert sector_multiplicity(4, 1) == 3
        assert sector_multiplicity(4, 2) == 1

    @pytest.mark.parametrize("n", range(1, 31))
    def test_dimension_count(self, n):
        total = sum(
            sector_multiplicity(n, i) * int(round(2 * i + 1)) for i in spin_grid(n)
        )
        assert total == 2**n

    @pytest.mark.parametrize("n", [1, 2, 3, 7, 10, 25, 64])
    def test_casimir_moment_is_three_quarters_n(self, n):
        # <(sum I_i)^2> = 3n/4 for uncorrelated maximally mixed spins
        assert unpolarized_exact(n).casimir_moment() == pytest.approx(0.75 * n, abs=1e-10)

    def test_range_check(self):
        with pytest.raises(BathSpecError):
            unpolarized_exact(0)
        with pytest.raises(BathSpecError):
            unpolarized_exact(65)


class TestGaussianApprox:
    @pytest.mark.parametrize("n", [2, 9, 40, 100])
    @pytest.mark.parametrize("variant", ["narrow", "wide"])
    def test_normalized_nonnegative(self, n, variant):
        d = gaussian_approx(n, variant)
        assert np.all(d.weights >= 0)
        assert d.weights.sum() == pytest.approx(1.0, abs=1e-12)

    def test_narrow_second_moment_matches_quadrature(self):
        # independent oracle: ratio of the continuum integrals
        # int I^4 exp(-2I^2/N) / int I^2 exp(-2I^2/N) = 3N/4
        n = 400
        grid = np.linspace(0, n, 200001)
        w = grid**2 * np.exp(-2 * grid**2 / n)
        continuum = np.trapezoid(w * grid**2, grid) / np.trapezoid(w, grid)
        assert continuum == pytest.approx(3 * n / 4, rel=1e-6)
        discrete = gaussian_approx(n, "narrow").moment("i_squared")
        assert discrete == pytest.approx(continuum, rel=0.02)

    def test_narrow_mode_location(self):
        # d/dI [I^2 exp(-2I^2/N)] = 0 at I = sqrt(N/2)
        d = gaussian_approx(100, "narrow")
        mode = d.spins[np.argmax(d.weights)]
        assert abs(mode - math.sqrt(50)) <= 1.0

    def test_wide_is_wider(self):
        n = 64
        assert gaussian_approx(n, "wide").moment("i_squared") > gaussian_approx(
            n, "narrow"
        ).moment("i_squared")

    def test_bad_variant(self):
        with pytest.raises(BathSpecError):
            gaussian_approx(10, "medium")


class TestMoments:
    def test_casimir_two_spins(self):
        # 0 * 1/4 + 1*2 * 3/4
        assert unpolarized_exact(2).moment("casimir") == pytest.approx(1.5)

    def test_delta_distribution(self):
        d = delta_distribution(2.5)
        assert d.moment(lambda i: np.cos(i)) == pytest.approx(math.cos(2.5))
        with pytest.raises(BathSpecError):
            delta_distribution(0.3)

    def test_narrow_100_fixture(self):
        # frozen reference values used by the timescale checks
        d = gaussian_approx(100, "narrow")
        assert d.moment("i_squared") == pytest.approx(75.0, abs=1e-9)
        assert d.casimir_moment() == pytest.approx(82.97889931231069, abs=1e-9)

    def test_unknown_kind(self):
        with pytest.raises(BathSpecError):
            unpolarized_exact(2).moment("i_cubed")


class TestConstructionAndConfig:
    def test_rejects_unnormalized(self):
        with pytest.raises(BathSpecError, match="sum to 1"):
            BathDistribution(np.array([0.5]), np.array([0.7]))

    def test_rejects_unsorted(self):
        with pytest.raises(BathSpecError, match="ascending"):
            BathDistribution(np.array([1.0, 0.0]), np.array([0.5, 0.5]))

    def test_rejects_negative_weights(self):
        with pytest.raises(BathSpecError, match="nonnegative"):
            BathDistribution(np.array([0.0, 1.0]), np.array([1.5, -0.5]))

    def test_from_config(self):
        d = bath_from_config("exact", 4)
        assert d.n_spins == 4
        d = bath_from_config("gaussian-narrow", 10)
        assert d.weights.sum() == pytest.approx(1.0)
        with pytest.raises(BathSpecError, match="unknown bath kind"):
            bath_from_config("flat", 4)
