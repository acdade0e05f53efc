"""Grid construction, sequence generators and the weighted integrator."""

import numpy as np
import pytest

from spectralrisk import (ExponentialSpectrum, QuadratureRule, STANDARD_NORMAL,
                          build_grid, integrate_weighted, van_der_corput,
                          weyl_node)

from oracles import exponential_srm_oracle

RULES = list(QuadratureRule)


class TestBuildGrid:
    def test_simpson_five_nodes(self):
        grid = build_grid(QuadratureRule.SIMPSON, 5)
        assert np.array_equal(grid.nodes, np.arange(1, 6) / 6.0)
        assert np.array_equal(grid.weights, np.array([1, 4, 2, 4, 1]) / 12.0)

    def test_trapezoid_weights(self):
        grid = build_grid(QuadratureRule.TRAPEZOID, 4)
        assert np.array_equal(grid.weights, np.array([1, 2, 2, 1]) / 6.0)
        assert np.array_equal(grid.nodes, np.arange(1, 5) / 5.0)

    def test_niederreiter_three_nodes(self):
        grid = build_grid(QuadratureRule.NIEDERREITER, 3)
        assert np.array_equal(grid.nodes, [0.5, 0.25, 0.75])
        assert np.allclose(grid.weights, 1.0 / 3.0, rtol=0, atol=0)

    def test_weyl_nodes(self):
        grid = build_grid(QuadratureRule.WEYL, 3)
        assert grid.nodes[0] == pytest.approx(0.41421356237309515, abs=1e-15)
        assert grid.nodes[1] == pytest.approx(0.8284271247461903, abs=1e-15)

    @pytest.mark.parametrize("rule", RULES)
    @pytest.mark.parametrize("n", [3, 101, 1001, 10001, 100001, 1000001])
    def test_weights_sum_to_one_and_nodes_interior(self, rule, n):
        if rule is QuadratureRule.SIMPSON and n % 2 == 0:
            n += 1
        grid = build_grid(rule, n)
        assert abs(grid.weights.sum() - 1.0) <= 1e-12
        assert grid.nodes.min() > 0.0
        assert grid.nodes.max() < 1.0

    def test_rejects_small_or_even_simpson(self):
        with pytest.raises(ValueError):
            build_grid(QuadratureRule.SIMPSON, 2)
        with pytest.raises(ValueError):
            build_grid(QuadratureRule.WEYL, 2)
        with pytest.raises(ValueError):
            build_grid(QuadratureRule.SIMPSON, 1000)

    def test_closed_variant_only_for_newton_cotes(self):
        grid = build_grid(QuadratureRule.SIMPSON, 101, closed=True)
        assert grid.nodes[0] == 0.0 and grid.nodes[-1] == 1.0
        with pytest.raises(ValueError):
            build_grid(QuadratureRule.WEYL, 101, closed=True)

    def test_rule_parse(self):
        assert QuadratureRule.parse("Simpson") is QuadratureRule.SIMPSON
        with pytest.raises(ValueError):
            QuadratureRule.parse("gauss")


class TestSequences:
    @pytest.mark.parametrize("index,expected", [
        (1, 0.5), (2, 0.25), (3, 0.75), (4, 0.125), (5, 0.625), (6, 0.375)])
    def test_van_der_corput_values(self, index, expected):
        assert van_der_corput(index) == expected

    @pytest.mark.parametrize("index,expected", [
        (1, 0.41421356237309515),
        (2, 0.8284271247461903),
        (5, 0.0710678118654755)])
    def test_weyl_values(self, index, expected):
        assert weyl_node(index) == pytest.approx(expected, abs=1e-15)

    def test_index_must_be_positive(self):
        with pytest.raises(ValueError):
            van_der_corput(0)
        with pytest.raises(ValueError):
            weyl_node(0)

    def test_sequences_stay_inside_unit_interval(self):
        from spectralrisk import kernels
        for seq in (kernels.van_der_corput_seq(4096), kernels.weyl_seq(4096)):
            assert seq.min() > 0.0 and seq.max() < 1.0


def _flat(p):
    return np.ones_like(p)


class TestIntegrateWeighted:
    def test_flat_spectrum_identity_quantile(self):
        grid = build_grid(QuadratureRule.SIMPSON, 101)
        assert integrate_weighted(_flat, lambda p: p, grid) == pytest.approx(
            0.5, abs=1e-12)

    def test_zero_quantile_gives_zero(self):
        for rule in RULES:
            grid = build_grid(rule, 101)
            value = integrate_weighted(ExponentialSpectrum(5.0),
                                       lambda p: np.zeros_like(p), grid)
            assert value == 0.0

    def test_accepts_precomputed_value_array(self):
        grid = build_grid(QuadratureRule.SIMPSON, 11)
        q = grid.nodes.copy()
        assert integrate_weighted(_flat, q, grid) == pytest.approx(0.5, abs=1e-14)

    def test_value_array_length_mismatch(self):
        grid = build_grid(QuadratureRule.SIMPSON, 11)
        with pytest.raises(ValueError, match="length"):
            integrate_weighted(_flat, np.zeros(10), grid)

    def test_nonfinite_quantile_names_the_node(self):
        grid = build_grid(QuadratureRule.SIMPSON, 5)

        def bad(p):
            out = np.asarray(p).copy()
            out[2] = np.inf
            return out

        with pytest.raises(ValueError, match="node 2"):
            integrate_weighted(_flat, bad, grid)

    def test_nonfinite_spectrum_names_the_node(self):
        grid = build_grid(QuadratureRule.SIMPSON, 5)

        def bad_spectrum(p):
            out = np.ones_like(p)
            out[4] = np.nan
            return out

        with pytest.raises(ValueError, match="spectrum weight.*node 4"):
            integrate_weighted(bad_spectrum, lambda p: p, grid)

    def test_closed_simpson_exact_on_cubics(self):
        # exactness for polynomials of degree <= 3 on the endpoint-inclusive grid
        grid = build_grid(QuadratureRule.SIMPSON, 101, closed=True)
        for coeffs, exact in [((0, 0, 0, 1), 0.25), ((1, -2, 3, 4), 2.0 / 3.0 + 1)]:
            poly = lambda p: (coeffs[0] + coeffs[1] * p + coeffs[2] * p ** 2
                              + coeffs[3] * p ** 3)
            want = (coeffs[0] + coeffs[1] / 2 + coeffs[2] / 3 + coeffs[3] / 4)
            got = integrate_weighted(_flat, poly, grid)
            assert got == pytest.approx(want, rel=1e-12)


@pytest.fixture(scope="module")
def srm_estimates():
    """Cache of quantile-integral estimates per (rule, n) for a = 5."""
    spectrum = ExponentialSpectrum(5.0)
    cache = {}

    def get(rule, n):
        key = (rule, n)
        if key not in cache:
            grid = build_grid(rule, n)
            cache[key] = integrate_weighted(spectrum, STANDARD_NORMAL.quantile, grid)
        return cache[key]

    return get


class TestConvergenceBehavior:
    def test_all_rules_converge_to_common_limit(self, srm_estimates):
        for rule in RULES:
            delta = abs(srm_estimates(rule, 1_000_001) - srm_estimates(rule, 10_000_001))
            assert delta < 1e-3, rule

    def test_newton_cotes_downward_bias(self, srm_estimates):
        anchor = srm_estimates(QuadratureRule.SIMPSON, 10_000_001)
        for rule in (QuadratureRule.TRAPEZOID, QuadratureRule.SIMPSON):
            for n in (1001, 10001, 100001):
                assert srm_estimates(rule, n) < anchor

    def test_newton_cotes_error_decays_monotonically(self, srm_estimates):
        truth = exponential_srm_oracle(5.0)
        for rule in (QuadratureRule.TRAPEZOID, QuadratureRule.SIMPSON):
            errs = [abs(srm_estimates(rule, n) - truth)
                    for n in (1001, 10001, 100001, 1_000_001)]
            assert all(a > b for a, b in zip(errs, errs[1:])), (rule, errs)
