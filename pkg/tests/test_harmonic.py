import numpy as np
import pytest

from gowers_lab.errors import DomainError, ParameterError
from gowers_lab.group_core import GroupParams, enumerate_group
from gowers_lab.harmonic import (
    FunctionTable,
    autocorrelation,
    convolve,
    count_3aps_exact,
    finite_difference,
    fourier,
    gowers_expectation,
    gowers_inner_product,
    gowers_norm_bruteforce,
    gowers_u2_via_fourier,
    gowers_u3_via_fourier,
    inverse_fourier,
    iterated_difference,
    parseval_gap,
    t3,
    t3_via_fourier,
)
from gowers_lab.poly import haar_random_function, parse_polynomial, phase_function


def random_table(params, seed):
    return haar_random_function(params, seed)


class TestFunctionTable:
    """FunctionTable construction and serialization"""

    @pytest.fixture
    def params(self):
        return GroupParams(3, 2)

    def test_wrong_length(self, params):
        with pytest.raises(ParameterError):
            FunctionTable(params, np.ones(5))

    def test_non_finite(self, params):
        values = np.ones(params.N)
        values[3] = np.nan
        with pytest.raises(ParameterError):
            FunctionTable(params, values)

    def test_read_only(self, params):
        table = FunctionTable.constant(params)
        with pytest.raises(ValueError):
            table.values[0] = 2.0

    def test_predicates(self, params):
        assert FunctionTable.constant(params).is_unimodular()
        assert FunctionTable.indicator(params, [0, 4]).is_indicator()
        assert not FunctionTable.indicator(params, [0, 4]).is_unimodular()

    def test_json_round_trip(self, params, tmp_path):
        table = random_table(params, 5)
        path = tmp_path / "table.json"
        table.save(path)
        assert FunctionTable.load(path).allclose(table, atol=1e-15)

    def test_translate(self, params):
        table = random_table(params, 2)
        a = params.vector((1, 2))
        shifted = table.translate(a)
        for x in enumerate_group(params):
            assert shifted(x) == table(x + a)


class TestFourier:
    """Spectra, inversion, convolution and correlation"""

    @pytest.fixture
    def params(self):
        return GroupParams(3, 2)

    def test_character_spectrum(self, params):
        gamma = params.vector((2, 1))
        spectrum = fourier(FunctionTable.character(gamma)).values
        expected = np.zeros(params.N)
        expected[gamma.linear_index] = 1.0
        assert np.allclose(spectrum, expected, atol=1e-12)

    def test_constant_spectrum(self, params):
        spectrum = fourier(FunctionTable.constant(params)).values
        assert abs(spectrum[0] - 1) < 1e-12
        assert np.allclose(spectrum[1:], 0, atol=1e-12)

    def test_parseval(self, params):
        for seed in range(5):
            f = random_table(params, seed)
            assert abs(np.sum(np.abs(fourier(f).values) ** 2) - 1.0) < 1e-10
            assert parseval_gap(f) < 1e-10

    def test_inversion(self, params):
        f = random_table(params, 11)
        assert inverse_fourier(fourier(f)).allclose(f)

    def test_delta_spectrum_is_character(self, params):
        gamma = params.vector((1, 1))
        delta = np.zeros(params.N)
        delta[gamma.linear_index] = 1.0
        assert inverse_fourier(FunctionTable(params, delta)).allclose(FunctionTable.character(gamma))
        assert inverse_fourier(FunctionTable(params, np.zeros(params.N))).allclose(
            FunctionTable(params, np.zeros(params.N)))

    def test_convolution_identity(self, params):
        f = random_table(params, 3)
        delta = FunctionTable.indicator(params, [0]).values * params.N
        assert convolve(f, FunctionTable(params, delta)).allclose(f)

    def test_convolution_with_constant(self, params):
        g = random_table(params, 4)
        result = convolve(FunctionTable.constant(params), g)
        assert np.allclose(result.values, g.mean(), atol=1e-12)

    def test_convolution_theorem(self):
        params = GroupParams(2, 3)
        f, g = random_table(params, 1), random_table(params, 2)
        lhs = fourier(convolve(f, g)).values
        rhs = fourier(f).values * fourier(g).values
        assert np.allclose(lhs, rhs, atol=1e-10)

    def test_autocorrelation(self):
        params = GroupParams(3, 1)
        f = random_table(params, 8)
        assert abs(autocorrelation(f, params.zero()) - 1) < 1e-12
        for a in enumerate_group(params):
            direct = sum(f(x) * np.conj(f(x + a)) for x in enumerate_group(params)) / params.N
            assert abs(autocorrelation(f, a) - direct) < 1e-12
        chi = FunctionTable.character(params.vector((1,)))
        for a in enumerate_group(params):
            assert abs(abs(autocorrelation(chi, a)) - 1) < 1e-12

    def test_differences(self):
        params = GroupParams(3, 1)
        f = random_table(params, 9)
        x, h1, h2 = (params.element(i) for i in (1, 2, 1))
        assert abs(finite_difference(f, h1)(x) - iterated_difference(f, x, [h1])) < 1e-12
        manual = f(x) * np.conj(f(x + h1)) * np.conj(f(x + h2)) * f(x + h1 + h2)
        assert abs(iterated_difference(f, x, [h1, h2]) - manual) < 1e-12


class TestGowersNorms:
    """Brute force against the Fourier-side identities"""

    def test_constant(self):
        params = GroupParams(3, 1)
        for d in (1, 2, 3):
            assert abs(gowers_norm_bruteforce(FunctionTable.constant(params), d) - 1.0) < 1e-10

    def test_phase_polynomials_have_norm_one(self):
        params = GroupParams(3, 2)
        linear = phase_function(parse_polynomial("x0 + 2*x1", params))
        quadratic = phase_function(parse_polynomial("x0^2 + x0*x1", params))
        assert abs(gowers_norm_bruteforce(linear, 2) - 1.0) < 1e-10
        assert abs(gowers_norm_bruteforce(quadratic, 3) - 1.0) < 1e-10

    def test_quadratic_phase_has_small_u2(self):
        params = GroupParams(3, 1)
        quadratic = phase_function(parse_polynomial("x0^2", params))
        assert gowers_norm_bruteforce(quadratic, 2) < 1.0 - 1e-6
        assert abs(gowers_norm_bruteforce(quadratic, 3) - 1.0) < 1e-10

    def test_u2_identity(self):
        for params in (GroupParams(2, 2), GroupParams(3, 2), GroupParams(5, 1)):
            for seed in range(10):
                f = random_table(params, seed)
                assert abs(gowers_norm_bruteforce(f, 2) - gowers_u2_via_fourier(f)) < 1e-10

    @pytest.mark.slow
    def test_u2_identity_grid(self):
        shapes = [(2, 2), (2, 4), (3, 2), (3, 3), (5, 1), (3, 4)]
        for seed in range(120):
            f = random_table(GroupParams(*shapes[seed % len(shapes)]), 1000 + seed)
            assert abs(gowers_norm_bruteforce(f, 2) - gowers_u2_via_fourier(f)) < 1e-10

    def test_shift_invariance(self):
        for params, a in ((GroupParams(3, 2), (1, 2)), (GroupParams(2, 3), (1, 0, 1))):
            for seed in range(3):
                f = random_table(params, seed)
                shifted = f.translate(params.vector(a))
                for d in (1, 2, 3):
                    assert abs(gowers_norm_bruteforce(shifted, d) - gowers_norm_bruteforce(f, d)) < 1e-10

    def test_norms_grow_with_order(self):
        for params in (GroupParams(3, 2), GroupParams(2, 3), GroupParams(5, 1)):
            for seed in range(10):
                f = random_table(params, 50 + seed)
                u1, u2, u3 = (gowers_norm_bruteforce(f, d) for d in (1, 2, 3))
                assert u1 <= u2 + 1e-12
                assert u2 <= u3 + 1e-12

    def test_u2_two_coefficients(self):
        params = GroupParams(2, 2)
        f = FunctionTable(params, (FunctionTable.character(params.element(1)).values
                                   + FunctionTable.character(params.element(2)).values) / np.sqrt(2))
        assert abs(gowers_u2_via_fourier(f) - 0.5 ** 0.25) < 1e-12

    def test_u3_identity(self):
        for params in (GroupParams(2, 2), GroupParams(2, 3), GroupParams(3, 2)):
            for seed in range(5):
                f = random_table(params, seed)
                assert abs(gowers_norm_bruteforce(f, 3) - gowers_u3_via_fourier(f)) < 1e-9
        chi = FunctionTable.character(GroupParams(3, 1).vector((1,)))
        assert abs(gowers_u3_via_fourier(chi) - 1.0) < 1e-10

    def test_u1_is_modulus_of_mean(self):
        f = random_table(GroupParams(5, 1), 3)
        assert abs(gowers_norm_bruteforce(f, 1) - abs(f.mean())) < 1e-12

    def test_invalid_order(self):
        with pytest.raises(ParameterError):
            gowers_expectation(FunctionTable.constant(GroupParams(2, 1)), 0)

    def test_inner_product_collapses_to_norm(self):
        params = GroupParams(3, 1)
        f = random_table(params, 6)
        value = gowers_inner_product([f] * 4, 2)
        assert abs(value - gowers_norm_bruteforce(f, 2) ** 4) < 1e-10

    def test_inner_product_zero_slot(self):
        params = GroupParams(3, 1)
        f = random_table(params, 6)
        zero = FunctionTable(params, np.zeros(params.N))
        assert abs(gowers_inner_product([f, zero, f, f], 2)) < 1e-15

    def test_inner_product_alternating_slots(self):
        params = GroupParams(3, 1)
        f = random_table(params, 12)
        elements = enumerate_group(params)
        # vertices 01 and 10 hold f (conjugated), 00 and 11 the constant 1
        direct = sum(np.conj(f(x + a)) * np.conj(f(x + b))
                     for x in elements for a in elements for b in elements) / params.N ** 3
        assert abs(gowers_inner_product([None, f, f, None], 2) - direct) < 1e-12


class TestProgressions:
    """T3 and exact 3-AP counts"""

    def test_constant(self):
        one = FunctionTable.constant(GroupParams(5, 1))
        assert abs(t3(one, one, one) - 1) < 1e-12

    def test_character_over_f3(self):
        chi = FunctionTable.character(GroupParams(3, 1).vector((1,)))
        assert abs(t3(chi, chi, chi) - 1) < 1e-12
        assert abs(t3_via_fourier(chi, chi, chi) - 1) < 1e-12

    def test_fourier_identity(self):
        shapes = [(3, 1), (3, 2), (5, 1), (5, 2)]
        for seed in range(60):
            params = GroupParams(*shapes[seed % len(shapes)])
            f, g, h = (random_table(params, seed * 3 + k) for k in range(3))
            assert abs(t3(f, g, h) - t3_via_fourier(f, g, h)) < 1e-10
            t3(f, g, h, verify=True)

    def test_characteristic_two_rejected(self):
        one = FunctionTable.constant(GroupParams(2, 2))
        with pytest.raises(DomainError):
            t3(one, one, one)

    def test_counts(self):
        params = GroupParams(3, 1)
        full = count_3aps_exact(FunctionTable.constant(params))
        assert full.count == 9 and full.t_value == 1.0
        assert count_3aps_exact(FunctionTable(params, np.zeros(3))).count == 0
        pair = count_3aps_exact(FunctionTable.indicator(params, [0, 1]))
        assert pair.count == 2
        assert abs(pair.t_value - 2 / 9) < 1e-15
        assert pair.nontrivial == 0

    def test_non_indicator_rejected(self):
        params = GroupParams(3, 1)
        with pytest.raises(DomainError):
            count_3aps_exact(FunctionTable(params, [0, 0.5, 1]))
