import unittest

import numpy as np

from gowers_lab.errors import DomainError, ParameterError, SizeCapError
from gowers_lab.group_core import (
    GroupParams,
    add,
    character_eval,
    dot,
    enumerate_group,
    is_prime,
    neg,
    scalar_mul,
)


class TestGroupParams(unittest.TestCase):

    def test_non_prime_rejected(self):
        with self.assertRaisesRegex(DomainError, "4 is not prime"):
            GroupParams(4, 1)

    def test_nonpositive_dimension_rejected(self):
        with self.assertRaises(ParameterError):
            GroupParams(3, 0)

    def test_size(self):
        self.assertEqual(GroupParams(3, 2).N, 9)
        self.assertEqual(GroupParams(2, 5).N, 32)

    def test_is_prime(self):
        self.assertEqual([q for q in range(20) if is_prime(q)], [2, 3, 5, 7, 11, 13, 17, 19])

    def test_encode_decode(self):
        params = GroupParams(3, 2)
        for index in range(params.N):
            self.assertEqual(params.encode(params.decode(index)), index)
        self.assertEqual(params.encode((1, 2)), 7)

    def test_roots_are_exact_at_zero_and_p2(self):
        self.assertEqual(GroupParams(2, 1).roots.tolist(), [1.0, -1.0])
        self.assertEqual(GroupParams(5, 1).roots[0], 1.0)

    def test_tables_agree_with_vector_ops(self):
        params = GroupParams(3, 2)
        for x in enumerate_group(params):
            for y in enumerate_group(params):
                self.assertEqual(params.add_table[x.linear_index, y.linear_index], (x + y).linear_index)
                self.assertEqual(params.sub_table[x.linear_index, y.linear_index], (x - y).linear_index)
                self.assertEqual(params.dot_table[x.linear_index, y.linear_index], dot(x, y))
            self.assertEqual(params.neg_table[x.linear_index], neg(x).linear_index)
            self.assertEqual(params.scalar_table(2)[x.linear_index], scalar_mul(2, x).linear_index)


class TestGroupOperations(unittest.TestCase):

    def test_add(self):
        params = GroupParams(3, 2)
        self.assertEqual(add(params.vector((1, 2)), params.vector((2, 2))).coords, (0, 1))
        x = params.vector((2, 1))
        self.assertEqual(add(x, params.zero()), x)
        binary = GroupParams(2, 3)
        self.assertEqual(add(binary.vector((1, 0, 1)), binary.vector((1, 0, 1))), binary.zero())

    def test_mismatched_params(self):
        with self.assertRaises(ParameterError):
            add(GroupParams(3, 1).vector((1,)), GroupParams(5, 1).vector((1,)))

    def test_neg_and_scalar(self):
        self.assertEqual(neg(GroupParams(5, 1).vector((2,))).coords, (3,))
        self.assertEqual(scalar_mul(2, GroupParams(3, 1).vector((2,))).coords, (1,))
        binary = GroupParams(2, 2)
        for x in enumerate_group(binary):
            self.assertEqual(neg(x), x)

    def test_scalar_out_of_range(self):
        with self.assertRaises(ParameterError):
            scalar_mul(3, GroupParams(3, 1).vector((1,)))

    def test_dot(self):
        params = GroupParams(3, 2)
        self.assertEqual(dot(params.vector((1, 2)), params.vector((2, 1))), 1)
        self.assertEqual(dot(params.zero(), params.vector((2, 2))), 0)
        binary = GroupParams(2, 2)
        self.assertEqual(dot(binary.vector((1, 1)), binary.vector((1, 1))), 0)

    def test_character_eval(self):
        params = GroupParams(5, 2)
        gamma = params.vector((1, 3))
        for x in enumerate_group(params):
            self.assertEqual(character_eval(params.zero(), x), 1 + 0j)
            expected = np.exp(2j * np.pi * dot(gamma, x) / 5)
            self.assertAlmostEqual(abs(character_eval(gamma, x) - expected), 0.0, places=12)

    def test_character_is_homomorphism(self):
        params = GroupParams(3, 2)
        gamma = params.vector((2, 1))
        elements = enumerate_group(params)
        for x in elements:
            for y in elements:
                product = character_eval(gamma, x) * character_eval(gamma, y)
                self.assertAlmostEqual(abs(character_eval(gamma, x + y) - product), 0.0, places=12)


class TestEnumerateGroup(unittest.TestCase):

    def test_binary_order(self):
        coords = [x.coords for x in enumerate_group(GroupParams(2, 2))]
        self.assertEqual(coords, [(0, 0), (1, 0), (0, 1), (1, 1)])

    def test_ternary_line(self):
        self.assertEqual([x.coords for x in enumerate_group(GroupParams(3, 1))], [(0,), (1,), (2,)])

    def test_cap(self):
        with self.assertRaises(SizeCapError):
            enumerate_group(GroupParams(3, 13), cap=2 ** 20)


if __name__ == '__main__':
    unittest.main()
