# Copyright (c) Microsoft Corporation.
# Licensed under the MIT license.

import math
import unittest

import numpy as np

from marco.fading import Budget, sample_ensemble
from marco.oracle import GridSpec, compositions, grid_best_sum_rate, grid_best_weighted, grid_bound, grid_size
from marco.utils.exception.oracle_exception import GridGuardExceededError, InvalidGridSpecError
from tests.utils import constant_ensemble, dead_relay_ensemble, two_user_geometry


class TestGrid(unittest.TestCase):
    def test_compositions(self):
        np.testing.assert_array_equal(compositions(2, 2), [[0, 2], [1, 1], [2, 0]])
        self.assertEqual(compositions(4, 3).shape, (15, 3))
        self.assertTrue(np.all(compositions(4, 3).sum(axis=1) == 4))

    def test_grid_size(self):
        ens = constant_ensemble(1.0, 1.0, 1.0, n=2, k=2)

        self.assertEqual(grid_size(ens, Budget.uniform(2), GridSpec(5)), 25)
        self.assertEqual(grid_size(ens, Budget((1.0, 0.0, 1.0)), GridSpec(5)), 5)

    def test_invalid_spec(self):
        for steps in (1, 0, True, 2.5):
            with self.assertRaises(InvalidGridSpecError):
                GridSpec(steps)
        with self.assertRaises(InvalidGridSpecError):
            GridSpec(5, guard=0)

    def test_instance_limits(self):
        with self.assertRaises(InvalidGridSpecError):
            grid_best_sum_rate(constant_ensemble(1.0, 1.0, 1.0, n=9), Budget.uniform(1), GridSpec(3))
        with self.assertRaises(InvalidGridSpecError):
            grid_best_weighted(constant_ensemble(1.0, 1.0, 1.0, n=2), Budget.uniform(1), GridSpec(3), (1.0,))

    def test_guard(self):
        ens = sample_ensemble(two_user_geometry(), 2, 1)

        with self.assertRaises(GridGuardExceededError):
            grid_best_sum_rate(ens, Budget.uniform(2), GridSpec(50, guard=10))


class TestGridOptimum(unittest.TestCase):
    def test_single_user_single_state(self):
        result = grid_best_sum_rate(constant_ensemble(3.0, 1.0, 1.0), Budget.uniform(1), GridSpec(3))

        # The relay cut is the tighter one: 0.5 log2 7 < log2 3.
        self.assertAlmostEqual(result.value, 0.5 * math.log2(7.0), places=12)
        self.assertEqual(result.points, 1)
        np.testing.assert_allclose(result.policy.mean_powers(), [1.0, 1.0])

    def test_dead_relay(self):
        result = grid_best_sum_rate(dead_relay_ensemble(n=2), Budget.uniform(2), GridSpec(5))

        self.assertEqual(result.value, 0.0)

    def test_policy_spends_budget(self):
        ens = sample_ensemble(two_user_geometry(relay_x=1.2), 3, 8)
        budget = Budget((1.0, 2.0, 1.0))
        result = grid_best_sum_rate(ens, budget, GridSpec(7))

        self.assertTrue(result.policy.feasible(budget, 1e-9))
        np.testing.assert_allclose(result.policy.mean_powers()[:2], [1.0, 2.0])

    def test_refinement_never_loses(self):
        ens = sample_ensemble(two_user_geometry(), 2, 4)
        budget = Budget.uniform(2)
        coarse = grid_best_sum_rate(ens, budget, GridSpec(3))
        fine = grid_best_sum_rate(ens, budget, GridSpec(5))

        self.assertGreaterEqual(fine.value, coarse.value - 1e-12)
        self.assertLess(grid_bound(ens, budget, GridSpec(5)), grid_bound(ens, budget, GridSpec(3)))

    def test_equal_weights_match_sum_rate(self):
        ens = sample_ensemble(two_user_geometry(), 2, 6)
        budget = Budget.uniform(2)
        grid = GridSpec(9)

        self.assertAlmostEqual(
            grid_best_weighted(ens, budget, grid, (1.0, 1.0)).value, grid_best_sum_rate(ens, budget, grid).value,
            places=12
        )
        self.assertEqual(grid_bound(ens, budget, grid, (1.0, 3.0)), 3.0 * grid_bound(ens, budget, grid))


if __name__ == "__main__":
    unittest.main()
