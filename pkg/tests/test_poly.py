import unittest

import numpy as np
import pytest

from gowers_lab.errors import DomainError, ParameterError, SizeCapError
from gowers_lab.group_core import GroupParams, enumerate_group
from gowers_lab.harmonic import FunctionTable, gowers_norm_bruteforce, iterated_difference
from gowers_lab.poly import (
    Instance,
    InstanceKind,
    PolynomialSpec,
    certify_farness,
    certify_farness_sampled,
    correlation,
    evaluate,
    evaluate_all,
    haar_random_function,
    monomials,
    parse_polynomial,
    phase_function,
    random_polynomial,
    reduce_exponent,
)


class TestPolynomialSpec(unittest.TestCase):

    def setUp(self):
        self.params = GroupParams(3, 2)

    def test_reduce_exponent(self):
        self.assertEqual(reduce_exponent(0, 3), 0)
        self.assertEqual(reduce_exponent(3, 3), 1)
        self.assertEqual(reduce_exponent(4, 3), 2)
        self.assertEqual(reduce_exponent(5, 5), 1)

    def test_from_terms_combines_and_reduces(self):
        poly = PolynomialSpec.from_terms(self.params, [((3, 0), 1), ((1, 0), 2), ((0, 1), 3)])
        # x0^3 = x0 on F_3, so the x0 terms cancel and 3*x1 vanishes
        self.assertEqual(poly.terms, ())
        self.assertEqual(poly.degree, 0)

    def test_stored_invariants(self):
        with self.assertRaises(ParameterError):
            PolynomialSpec(self.params, (((3, 0), 1),))
        with self.assertRaises(ParameterError):
            PolynomialSpec(self.params, (((1, 0), 0),))

    def test_parse_and_render(self):
        poly = parse_polynomial("2*x0*x1 + x1^2 - 1", self.params)
        self.assertEqual(poly.degree, 2)
        self.assertEqual(str(poly), "2 + x1^2 + 2*x0*x1")
        self.assertEqual(parse_polynomial(str(poly), self.params), poly)
        self.assertEqual(parse_polynomial("x0**2", self.params), parse_polynomial("x0^2", self.params))

    def test_parse_errors(self):
        with self.assertRaises(ParameterError):
            parse_polynomial("x5", self.params)
        with self.assertRaises(ParameterError):
            parse_polynomial("y0", self.params)
        with self.assertRaises(ParameterError):
            parse_polynomial("", self.params)

    def test_evaluate(self):
        line = GroupParams(3, 1)
        self.assertEqual(evaluate(parse_polynomial("x0", line), line.vector((2,))), 2)
        poly = parse_polynomial("x0*x1 + 2", self.params)
        self.assertEqual(evaluate(poly, self.params.vector((1, 2))), 1)
        zero = PolynomialSpec.zero(self.params)
        self.assertTrue(np.all(evaluate_all(zero) == 0))

    def test_evaluate_all_matches_pointwise(self):
        poly = parse_polynomial("x0^2*x1 + 2*x1^2 + x0 + 1", self.params)
        table = evaluate_all(poly)
        for x in enumerate_group(self.params):
            self.assertEqual(table[x.linear_index], evaluate(poly, x))

    def test_addition(self):
        a = parse_polynomial("x0 + x1", self.params)
        b = parse_polynomial("2*x0", self.params)
        self.assertEqual(a + b, parse_polynomial("x1", self.params))

    def test_monomial_order(self):
        basis = monomials(self.params, 2)
        self.assertEqual(basis[0], (0, 0))
        self.assertEqual([sum(e) for e in basis], sorted(sum(e) for e in basis))
        self.assertEqual(len(basis), 6)

    def test_json_round_trip(self):
        poly = parse_polynomial("2*x0*x1 + x1", self.params)
        self.assertEqual(PolynomialSpec.from_payload(poly.to_payload()), poly)


class TestPhaseFunctions:
    """Phase tables and random instances"""

    def test_zero_polynomial_is_constant_one(self):
        params = GroupParams(5, 1)
        assert phase_function(PolynomialSpec.zero(params)).allclose(FunctionTable.constant(params))

    def test_linear_phase_norm(self):
        params = GroupParams(5, 2)
        f = phase_function(parse_polynomial("3*x0 + x1", params))
        assert abs(gowers_norm_bruteforce(f, 2) - 1.0) < 1e-10

    def test_random_polynomial_deterministic(self):
        params = GroupParams(3, 2)
        assert random_polynomial(params, 2, 7) == random_polynomial(params, 2, 7)
        assert random_polynomial(params, 2, 7).degree <= 2

    def test_random_polynomial_degree_bound(self):
        with pytest.raises(ParameterError):
            random_polynomial(GroupParams(2, 3), 4, 1)

    def test_haar_deterministic_and_unimodular(self):
        params = GroupParams(3, 2)
        a = haar_random_function(params, 4)
        assert a.allclose(haar_random_function(params, 4), atol=0.0)
        assert a.is_unimodular()
        assert not a.allclose(haar_random_function(params, 5))

    def test_phase_of_sum_is_product(self):
        for params in (GroupParams(3, 2), GroupParams(5, 1), GroupParams(2, 3)):
            for seed in range(5):
                a = random_polynomial(params, 2, seed)
                b = random_polynomial(params, 3, 100 + seed)
                product = phase_function(a).values * phase_function(b).values
                assert np.allclose(phase_function(a + b).values, product, atol=1e-12)

    def test_derivatives_annihilate_low_degree(self):
        rng = np.random.default_rng(8)
        cases = [(GroupParams(3, 2), 1), (GroupParams(3, 2), 3), (GroupParams(5, 1), 3), (GroupParams(2, 3), 2)]
        for trial in range(120):
            params, d = cases[trial % len(cases)]
            f = phase_function(random_polynomial(params, d - 1, trial))
            x, *hs = (params.element(int(i)) for i in rng.integers(0, params.N, size=d + 1))
            assert abs(iterated_difference(f, x, hs) - 1.0) < 1e-10

    @pytest.mark.slow
    def test_haar_u2_fourth_power(self):
        params = GroupParams(2, 4)
        values = [gowers_norm_bruteforce(haar_random_function(params, seed), 2) ** 4 for seed in range(200)]
        assert np.mean(values) <= 2 / 16

    def test_instances(self):
        params = GroupParams(3, 1)
        poly = parse_polynomial("x0^2", params)
        instance = Instance.phase_poly(poly)
        assert instance.kind is InstanceKind.PHASE_POLY
        assert Instance.haar(params, 1).describe() == "haar(1)"
        with pytest.raises(DomainError):
            Instance.custom(FunctionTable.indicator(params, [0]))


class TestCertification:
    """Correlation and farness certificates"""

    def test_correlation_with_own_phase(self):
        params = GroupParams(3, 2)
        poly = parse_polynomial("x0*x1 + 2*x1", params)
        assert abs(correlation(phase_function(poly), poly) - 1.0) < 1e-12

    def test_orthogonal_characters(self):
        params = GroupParams(3, 2)
        chi = phase_function(parse_polynomial("x0", params))
        assert correlation(chi, parse_polynomial("x1", params)) < 1e-12

    def test_correlation_matches_loop(self):
        params = GroupParams(3, 1)
        f = haar_random_function(params, 3)
        poly = parse_polynomial("2*x0^2 + x0", params)
        direct = abs(sum(f(x) * np.conj(params.roots[evaluate(poly, x)])
                         for x in enumerate_group(params)) / params.N)
        assert abs(correlation(f, poly) - direct) < 1e-12

    def test_phase_polynomial_not_far(self):
        params = GroupParams(3, 2)
        poly = parse_polynomial("x0^2 + x1", params)
        cert = certify_farness(phase_function(poly), 2, 0.9)
        assert not cert.far
        assert abs(cert.max_correlation - 1.0) < 1e-12
        witness = PolynomialSpec.from_payload(cert.witness)
        assert abs(correlation(phase_function(poly), witness) - 1.0) < 1e-12

    def test_character_not_far(self):
        params = GroupParams(2, 3)
        chi = FunctionTable.character(params.vector((1, 0, 1)))
        assert not certify_farness(chi, 1, 0.5).far

    def test_haar_far_from_linear(self):
        params = GroupParams(2, 3)
        for seed in range(10):
            cert = certify_farness(haar_random_function(params, seed), 1, 0.9)
            assert cert.far
            assert cert.checked == 8

    def test_cap(self):
        params = GroupParams(3, 3)
        with pytest.raises(SizeCapError):
            certify_farness(haar_random_function(params, 1), 2, 0.5, cap=1000)

    def test_sampled_is_heuristic(self):
        params = GroupParams(3, 2)
        cert = certify_farness_sampled(haar_random_function(params, 1), 2, 0.5, samples=50, seed=2)
        assert cert.heuristic
        assert cert.checked == 50
