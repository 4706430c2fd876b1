# Copyright (c) Microsoft Corporation.
# Licensed under the MIT license.

import csv
import math
import os
import tempfile
import unittest
from unittest import mock

import numpy as np

from marco.fading import Budget
from marco.ratebounds import LN2, capacity, constant_policy, cutset_bounds
from marco.setfn import BoundFamily, CaseKind, CaseLabel
from marco.utils.exception.solver_exception import InvalidCaseError, InvalidSolverConfigError
from marco.wfsolve import (
    MixtureEngine, SisoTerm, SolverConfig, block_coordinate_ascent, case_pieces, case_weighted_pieces, export_trace,
    iterative_nonwf, kkt_residuals, project_column, projected_gradient_concave, solve_boundary_weights,
    solve_ratio_sum, solve_user_dual, split_piece, waterfill_mac_opportunistic, waterfill_single
)
from marco.wfsolve.block_ascent import block_kkt_residual
from marco.wfsolve.kkt import marginal_utility
from tests.utils import crossing_ensemble, sampled_instance, swapped_users_ensemble


class TestSolverConfig(unittest.TestCase):
    def test_defaults(self):
        cfg = SolverConfig()

        self.assertEqual(cfg.condition_tol, 1e-6)
        self.assertIn("max_iters", cfg.to_dict())

    def test_invalid(self):
        with self.assertRaises(InvalidSolverConfigError):
            SolverConfig(power_tol=-1.0)
        with self.assertRaises(InvalidSolverConfigError):
            SolverConfig(max_iters=0)
        with self.assertRaises(InvalidSolverConfigError):
            SolverConfig(tie_break="random")


class TestWaterfilling(unittest.TestCase):
    def test_two_states(self):
        result = waterfill_single([1.0, 0.25], 1.0, 1.0)

        np.testing.assert_allclose(result.powers, [2.0, 0.0])
        self.assertAlmostEqual(result.water_level, 3.0, places=14)
        self.assertAlmostEqual(result.nu, 1.0 / (3.0 * LN2), places=14)
        self.assertFalse(result.channel_zero)

    def test_degenerate_inputs(self):
        no_budget = waterfill_single([1.0, 2.0], 0.5, 0.0)
        self.assertEqual(no_budget.nu, math.inf)
        np.testing.assert_array_equal(no_budget.powers, [0.0, 0.0])

        no_channel = waterfill_single([0.0, 0.0], 0.5, 1.0)
        self.assertTrue(no_channel.channel_zero)
        self.assertEqual(no_channel.nu, 0.0)

    def test_random_gains(self):
        gains = np.random.default_rng(2).exponential(size=200)
        result = waterfill_single(gains, 0.5, 2.0)
        powered = result.powers > 0

        self.assertAlmostEqual(float(np.mean(result.powers)), 2.0, places=10)
        np.testing.assert_allclose(result.powers[powered] + 0.5 / gains[powered], result.water_level, rtol=1e-12)
        self.assertTrue(np.all(0.5 / gains[~powered] >= result.water_level - 1e-12))

    def test_opportunistic_disjoint_states(self):
        gains = np.array([[1.0, 0.0], [0.0, 1.0]])
        result = waterfill_mac_opportunistic(gains, 1.0, [0.5, 0.5])

        np.testing.assert_allclose(result.powers, [[1.0, 0.0], [0.0, 1.0]], atol=1e-8)

    def test_opportunistic_matches_block_ascent(self):
        """Both reach the sum-rate optimum of a fading MAC."""
        gains = np.random.default_rng(6).exponential(size=(60, 2))
        p_bars = np.array([1.0, 2.0])
        opportunistic = waterfill_mac_opportunistic(gains, 1.0, p_bars)
        ascent = block_coordinate_ascent([SisoTerm(1.0, gains, 3, 1.0)], p_bars, SolverConfig())

        value = float(np.mean(capacity(np.sum(gains * opportunistic.powers, axis=1))))
        self.assertAlmostEqual(value, ascent.objective, delta=1e-5)
        np.testing.assert_allclose(np.mean(opportunistic.powers, axis=0), p_bars, rtol=1e-6)


class TestKkt(unittest.TestCase):
    def test_single_term(self):
        powers = solve_ratio_sum(np.array([[2.0, 0.5]]), np.array([[1.0, 1.0]]), np.array([[1.0, 1.0]]), 1.0)

        np.testing.assert_allclose(powers, [1.0, 0.0])

    def test_two_and_three_terms(self):
        for a, d, e, u in (
            ([[1.0], [2.0]], [[1.0], [1.0]], [[1.0], [2.0]], 0.5),
            ([[1.0], [1.0], [1.0]], [[1.0], [2.0], [3.0]], [[1.0], [1.0], [1.0]], 0.3),
        ):
            a, d, e = np.array(a), np.array(d), np.array(e)
            powers = solve_ratio_sum(a, d, e, u)
            self.assertGreater(powers[0], 0.0)
            self.assertAlmostEqual(float(marginal_utility(a, d, e, powers)[0]), u, places=9)

    def test_user_dual_meets_budget(self):
        rng = np.random.default_rng(9)
        a, d, e = rng.uniform(0.5, 2.0, (2, 50)), rng.uniform(0.5, 2.0, (2, 50)), rng.uniform(0.1, 3.0, (2, 50))
        dual = solve_user_dual(a, d, e, 1.5, SolverConfig())

        self.assertAlmostEqual(float(np.mean(dual.powers)), 1.5, places=9)
        self.assertGreater(dual.nu, 0.0)

    def test_block_ascent(self):
        gains = np.random.default_rng(10).exponential(size=(40, 3))
        terms = [SisoTerm(1.0, gains, 7, 0.5), SisoTerm(0.5, gains, 1, 0.5)]
        p_bars = [1.0, 1.0, 0.5]
        result = block_coordinate_ascent(terms, p_bars, SolverConfig())

        self.assertTrue(all(b >= a - 1e-12 for a, b in zip(result.trace, result.trace[1:])))
        np.testing.assert_allclose(np.mean(result.powers, axis=0), p_bars, rtol=1e-8)
        self.assertLess(block_kkt_residual(terms, result.powers, result.nu), 1e-7)


class TestProjectedGradient(unittest.TestCase):
    def test_projection(self):
        np.testing.assert_allclose(project_column(np.array([3.0, 1.0]), 1.0), [2.0, 0.0])
        np.testing.assert_allclose(project_column(np.array([0.5, -1.0]), 1.0), [0.5, 0.0])
        np.testing.assert_allclose(project_column(np.array([0.5, 2.0]), 0.0), [0.0, 0.0])

    def test_single_user_waterfilling(self):
        gains = np.array([1.0, 0.25])

        def objective(x):
            value = float(np.mean(capacity(gains * x[:, 0])))
            gradient = (gains / ((1.0 + gains * x[:, 0]) * LN2) / gains.size)[:, None]
            return value, gradient

        result = projected_gradient_concave(objective, [1.0], 2, SolverConfig())

        self.assertAlmostEqual(result.objective, 0.5 * math.log2(3.0), places=6)
        self.assertTrue(all(b >= a for a, b in zip(result.trace, result.trace[1:])))


class TestMixtureEngine(unittest.TestCase):
    def setUp(self):
        self.ens, self.budget = sampled_instance(k=2, n=24, seed=31)

    def test_relay_sum_is_opportunistic(self):
        engine = MixtureEngine(self.ens, self.budget)
        solution = engine.solve(case_weighted_pieces(CaseLabel.active_case(CaseKind.ACTIVE_3A), 2))
        expected = waterfill_mac_opportunistic(self.ens.relay_power_gains, 0.5, self.budget.source_budgets)

        np.testing.assert_allclose(solution.policy.sources, expected.powers)
        self.assertLess(kkt_residuals(solution, self.budget)["power"], 1e-6)

    def test_mixture_weights(self):
        case = CaseLabel.active_case(CaseKind.ACTIVE_3C)
        solution = iterative_nonwf(self.ens, self.budget, 0.5, case)

        self.assertTupleEqual(solution.duals.alpha, (0.5,))
        self.assertTrue(solution.policy.feasible(self.budget, 1e-6))
        self.assertTrue(all(b >= a - 1e-12 for a, b in zip(solution.trace, solution.trace[1:])))

    def test_mixture_endpoints_are_opportunistic(self):
        case = CaseLabel.active_case(CaseKind.ACTIVE_3C)
        for alpha, gains in ((0.0, self.ens.destination_power_gains), (1.0, self.ens.relay_power_gains)):
            solution = iterative_nonwf(self.ens, self.budget, alpha, case)
            expected = waterfill_mac_opportunistic(gains, 0.5, self.budget.source_budgets)

            np.testing.assert_allclose(solution.policy.sources, expected.powers, err_msg=f"alpha={alpha}")

    def test_swapped_users_share_multiplier(self):
        budget = Budget.uniform(2)
        solution = iterative_nonwf(swapped_users_ensemble(), budget, 0.5, CaseLabel.active_case(CaseKind.ACTIVE_3C))
        nu1, nu2 = solution.duals.nu[:2]

        self.assertGreater(nu1, 0.0)
        self.assertAlmostEqual(nu1, nu2, delta=1e-6 * max(1.0, nu1))

    def test_invalid_weights(self):
        boundary = CaseLabel.boundary(1, CaseKind.ACTIVE_3C)
        with self.assertRaises(InvalidCaseError):
            iterative_nonwf(self.ens, self.budget, (0.5, 0.6), boundary)
        with self.assertRaises(InvalidCaseError):
            iterative_nonwf(self.ens, self.budget, 0.5, boundary)
        with self.assertRaises(InvalidCaseError):
            iterative_nonwf(self.ens, self.budget, 0.5, CaseLabel.inactive(1))
        with self.assertRaises(InvalidCaseError):
            solve_boundary_weights(self.ens, self.budget, CaseLabel.active_case(CaseKind.ACTIVE_3A))

    def test_cutset_solve_improves_on_constant_powers(self):
        engine = MixtureEngine(self.ens, self.budget, family=BoundFamily.CUTSET)
        piece = split_piece(2, 3)
        solution = engine.solve([(1.0, piece)])
        start = cutset_bounds(self.ens, constant_policy(self.budget, self.ens.n), self.budget).relay(3)

        self.assertGreaterEqual(solution.objective, start - 1e-9)
        self.assertTrue(solution.policy.feasible(self.budget, 1e-6))

    def test_export_trace(self):
        engine = MixtureEngine(self.ens, self.budget)
        solution = iterative_nonwf(self.ens, self.budget, 0.3, CaseLabel.active_case(CaseKind.ACTIVE_3C), engine=engine)

        with tempfile.TemporaryDirectory() as folder:
            path = os.path.join(folder, "trace.csv")
            export_trace(solution, path, self.budget)
            with open(path, "r") as fp:
                rows = list(csv.reader(fp))

        self.assertListEqual(rows[0], ["iteration", "objective", "increment", "power_residual"])
        self.assertEqual(len(rows), len(solution.trace) + 1)
        self.assertNotEqual(rows[-1][3], "")


class TestBoundaryWeights(unittest.TestCase):
    def setUp(self):
        self.ens, self.budget = crossing_ensemble(), Budget.uniform(1)
        self.case = CaseLabel.active_case(CaseKind.ACTIVE_3C)

    def test_residual_crossing(self):
        cfg = SolverConfig()
        result = solve_boundary_weights(self.ens, self.budget, self.case, cfg)
        engine = MixtureEngine(self.ens, self.budget)
        destination, relay = engine.piece_values(result.solution.policy, case_pieces(self.case, 1))

        self.assertLess(abs(result.residual), cfg.alpha_tol)
        self.assertTrue(0.0 < result.weights[0] < 1.0)
        self.assertAlmostEqual(relay, destination, delta=cfg.alpha_tol)

    def test_hint_saves_solves(self):
        cold_engine, warm_engine = MixtureEngine(self.ens, self.budget), MixtureEngine(self.ens, self.budget)
        with mock.patch.object(cold_engine, "solve", wraps=cold_engine.solve) as cold:
            first = solve_boundary_weights(self.ens, self.budget, self.case, engine=cold_engine)
        with mock.patch.object(warm_engine, "solve", wraps=warm_engine.solve) as warm:
            second = solve_boundary_weights(self.ens, self.budget, self.case, engine=warm_engine, hint=first.weights)

        self.assertAlmostEqual(second.weights[0], first.weights[0], places=9)
        self.assertLess(warm.call_count, cold.call_count)

    def test_distant_hint(self):
        cold = solve_boundary_weights(self.ens, self.budget, self.case)
        for hint in ((0.01,), (0.99,), (0.0,)):
            warm = solve_boundary_weights(self.ens, self.budget, self.case, hint=hint)
            self.assertAlmostEqual(warm.weights[0], cold.weights[0], places=5, msg=f"hint={hint}")


if __name__ == "__main__":
    unittest.main()
