# Copyright (c) Microsoft Corporation.
# Licensed under the MIT license.

import os
import tempfile
import unittest

import numpy as np

from marco.setfn import (
    BoundFamily, CaseKind, CaseLabel, SetFunction, case_sequence, check_polymatroid, classify_split_sums,
    dump_set_function, enumerate_vertices, intersect_max_sum, load_set_function, max_weighted_sum_on_intersection,
    ordered_masks, random_polymatroid, subset_mask, subset_users, two_user_weighted_optimum
)
from marco.utils.exception.setfn_exception import (
    DimensionMismatchError, InvalidSetFunctionError, NonPositiveWeightError, UserCountError
)
from tests.utils import data_path


class TestSubsets(unittest.TestCase):
    def test_mask_conversion(self):
        self.assertEqual(subset_mask([1, 3]), 5)
        self.assertTupleEqual(subset_users(5), (1, 3))
        self.assertTupleEqual(subset_users(0), ())

    def test_ordered_masks(self):
        """Smallest cardinality first, then lexicographic."""
        self.assertListEqual(ordered_masks(3), [0, 1, 2, 4, 3, 5, 6, 7])
        self.assertListEqual(ordered_masks(2, include_empty=False), [1, 2, 3])


class TestSetFunction(unittest.TestCase):
    def test_construction(self):
        f = SetFunction(2, {1: 1.0, 2: 2.0, 3: 2.5})
        g = SetFunction(2, [1.0, 2.0, 2.5])

        self.assertEqual(f, g)
        self.assertEqual(f(0), 0.0)
        self.assertEqual(f.value([1, 2]), 2.5)

    def test_invalid_values(self):
        with self.assertRaises(InvalidSetFunctionError):
            SetFunction(2, [1.0, 2.0])
        with self.assertRaises(InvalidSetFunctionError):
            SetFunction(2, {1: 1.0, 2: 2.0})
        with self.assertRaises(InvalidSetFunctionError):
            SetFunction(2, [1.0, -2.0, 2.5])
        with self.assertRaises(InvalidSetFunctionError):
            SetFunction(1, [np.inf])
        with self.assertRaises(UserCountError):
            SetFunction(7, np.ones(127))

    def test_load_from_file(self):
        f = load_set_function(data_path("setfn", "two_user.txt"))

        self.assertEqual(f, SetFunction(2, [1.0, 1.0, 1.5]))

        with tempfile.TemporaryDirectory() as folder:
            path = os.path.join(folder, "f.txt")
            dump_set_function(f, path)
            self.assertEqual(load_set_function(path), f)

    def test_malformed_text(self):
        with self.assertRaises(InvalidSetFunctionError):
            SetFunction.from_text("1: 1.0\nnot a line\n")
        with self.assertRaises(InvalidSetFunctionError):
            SetFunction.from_text("# only a comment\n")


class TestPolymatroid(unittest.TestCase):
    def test_random_polymatroids_pass(self):
        rng = np.random.default_rng(11)
        for k in range(1, 7):
            check = check_polymatroid(random_polymatroid(k, rng))
            self.assertTrue(check.is_polymatroid, msg=f"expected a polymatroid for K={k}, got {check.violations}")

    def test_submodularity_violation(self):
        check = check_polymatroid(load_set_function(data_path("setfn", "not_submodular.txt")))

        self.assertFalse(check.is_polymatroid)
        self.assertEqual(len(check.violations), 1)
        violation = check.violations[0]
        self.assertEqual(violation.kind, "submodularity")
        self.assertTupleEqual(violation.subset, ())
        self.assertEqual((violation.first, violation.second), (1, 2))

    def test_monotonicity_violation(self):
        check = check_polymatroid(SetFunction(2, [2.0, 1.0, 1.5]))

        self.assertEqual([v.kind for v in check.violations], ["monotonicity"])
        self.assertTupleEqual(check.violations[0].subset, (1,))
        self.assertEqual(check.violations[0].first, 2)

    def test_vertices(self):
        f = SetFunction(2, [1.0, 2.0, 2.5])

        self.assertListEqual(enumerate_vertices(f), [(1.0, 1.5), (0.5, 2.0)])

    def test_vertices_sum_to_full_set(self):
        rng = np.random.default_rng(5)
        f = random_polymatroid(4, rng)
        vertices = enumerate_vertices(f)

        self.assertEqual(len(vertices), 24)
        for vertex in vertices:
            self.assertAlmostEqual(sum(vertex), f(15), places=12)


class TestCaseLabel(unittest.TestCase):
    def test_case_sequence_order(self):
        cases = case_sequence(2)

        self.assertEqual(len(cases), 11)
        self.assertEqual(cases[0], CaseLabel.inactive(1))
        self.assertEqual(cases[2], CaseLabel.boundary(1, CaseKind.ACTIVE_3A))
        self.assertListEqual([c.kind for c in cases[-3:]], [CaseKind.ACTIVE_3A, CaseKind.ACTIVE_3B, CaseKind.ACTIVE_3C])
        self.assertEqual(len(case_sequence(3)), 27)

    def test_string_round_trip(self):
        labels = case_sequence(3, BoundFamily.CUTSET) + [
            CaseLabel(CaseKind.BOUNDARY, 1, CaseKind.ACTIVE_3C, sub_case="d"),
            CaseLabel.active_case(CaseKind.ACTIVE_3A, sub_case="eq")
        ]
        for label in labels:
            parsed = CaseLabel.from_string(str(label), label.family)
            self.assertEqual(parsed, label, msg=f"expected {label}, got {parsed}")

        self.assertEqual(str(CaseLabel.boundary(3, CaseKind.ACTIVE_3B)), "boundary({1,2},3b)")
        with self.assertRaises(ValueError):
            CaseLabel.from_string("4d")

    def test_support(self):
        self.assertEqual(CaseLabel.boundary(1, CaseKind.ACTIVE_3C).support(2), frozenset({0, 1, 3}))
        self.assertEqual(CaseLabel.active_case(CaseKind.ACTIVE_3B).support(2), frozenset({0}))


class TestClassification(unittest.TestCase):
    def _label(self, g):
        return classify_split_sums(g, 2, 1e-6)

    def test_inactive(self):
        result = self._label([3.0, 1.0, 2.0, 3.0])

        self.assertEqual(result.label, CaseLabel.inactive(1))
        self.assertFalse(result.degenerate)

    def test_boundary(self):
        result = self._label([1.0, 1.0, 2.0, 2.0])

        self.assertEqual(result.label, CaseLabel.boundary(1, CaseKind.ACTIVE_3B))
        self.assertListEqual(result.band, [0, 1])

    def test_active(self):
        self.assertEqual(self._label([2.0, 2.0, 2.0, 1.0]).label.kind, CaseKind.ACTIVE_3A)
        self.assertEqual(self._label([1.0, 2.0, 2.0, 3.0]).label.kind, CaseKind.ACTIVE_3B)
        self.assertEqual(self._label([1.0, 2.0, 2.0, 1.0]).label.kind, CaseKind.ACTIVE_3C)

    def test_all_tied_is_degenerate(self):
        result = self._label([0.0, 0.0, 0.0, 0.0])

        self.assertTrue(result.degenerate)
        self.assertEqual(result.label.kind, CaseKind.ACTIVE_3C)
        self.assertEqual(result.argmin_subset, 0)


class TestIntersection(unittest.TestCase):
    def test_max_sum_example(self):
        f1 = SetFunction(2, {1: 1.0, 2: 1.0, 3: 1.5})
        f2 = SetFunction(2, {1: 2.0, 2: 2.0, 3: 3.0})
        verdict = intersect_max_sum(f1, f2)

        self.assertEqual(verdict.max_sum, 1.5)
        self.assertEqual(verdict.argmin_subset, 3)
        self.assertEqual(verdict.label.kind, CaseKind.ACTIVE_3A)
        self.assertTupleEqual(verdict.active_sum_sides, (True, False))

    def test_max_sum_matches_linear_program(self):
        """The min split sum is the largest sum rate in the intersection."""
        rng = np.random.default_rng(17)
        for _ in range(40):
            k = int(rng.integers(1, 5))
            f1, f2 = random_polymatroid(k, rng), random_polymatroid(k, rng, scale=2.0)
            expected = max_weighted_sum_on_intersection(f1, f2, np.ones(k)).value
            verdict = intersect_max_sum(f1, f2)
            self.assertAlmostEqual(
                verdict.max_sum, expected, places=7, msg=f"expected {expected}, got {verdict.max_sum}"
            )

    def test_two_user_weighted_vertex(self):
        rng = np.random.default_rng(23)
        for _ in range(40):
            f1, f2 = random_polymatroid(2, rng), random_polymatroid(2, rng)
            mu = rng.uniform(0.1, 2.0, size=2)
            single = [min(f1(mask), f2(mask)) for mask in (1, 2)]
            r1, r2, value = two_user_weighted_optimum(single[0], single[1], intersect_max_sum(f1, f2).max_sum, mu)
            expected = max_weighted_sum_on_intersection(f1, f2, mu).value

            self.assertAlmostEqual(float(value), expected, places=7)
            self.assertAlmostEqual(float(mu[0] * r1 + mu[1] * r2), float(value), places=12)

    def test_errors(self):
        f2 = SetFunction(2, [1.0, 1.0, 1.5])
        with self.assertRaises(DimensionMismatchError):
            intersect_max_sum(SetFunction(1, [1.0]), f2)
        with self.assertRaises(NonPositiveWeightError):
            max_weighted_sum_on_intersection(f2, f2, [1.0, 0.0])
        with self.assertRaises(DimensionMismatchError):
            max_weighted_sum_on_intersection(f2, f2, [1.0])
        with self.assertRaises(NonPositiveWeightError):
            two_user_weighted_optimum(1.0, 1.0, 1.5, (-1.0, 1.0))


if __name__ == "__main__":
    unittest.main()
