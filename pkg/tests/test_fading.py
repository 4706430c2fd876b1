# Copyright (c) Microsoft Corporation.
# Licensed under the MIT license.

import os
import tempfile
import unittest

import numpy as np

from marco.fading import (
    Budget, FadingEnsemble, Geometry, LinkStreams, dump_ensemble_csv, load_ensemble_csv, relocate_relay,
    sample_ensemble
)
from marco.fading.baseline import mac_baseline_sum_capacity
from marco.utils.exception.fading_exception import (
    EnsembleShapeError, InvalidBudgetError, InvalidGeometryError, InvalidSeedError, MalformedEnsembleFileError
)
from tests.utils import constant_ensemble, data_path, two_user_geometry


class TestGeometry(unittest.TestCase):
    def test_mean_gain(self):
        geom = two_user_geometry(relay_x=1.0)

        self.assertEqual(geom.k, 2)
        self.assertAlmostEqual(geom.mean_gain("d", "r"), 1.0, places=12)
        self.assertAlmostEqual(geom.mean_gain("d", 1), np.hypot(2.0, 0.25) ** -3, places=12)

    def test_invalid_geometry(self):
        with self.assertRaises(InvalidGeometryError):
            Geometry(((1.0, 0.0),), (1.0, 0.0), (2.0, 0.0))
        with self.assertRaises(InvalidGeometryError):
            Geometry(((0.0, 0.0),), (1.0, 0.0), (2.0, 0.0), gamma=0.0)
        with self.assertRaises(InvalidGeometryError):
            Geometry(tuple((0.0, float(i)) for i in range(7)), (1.0, 0.0), (2.0, 0.0))
        with self.assertRaises(InvalidGeometryError):
            Geometry((("a", 0.0),), (1.0, 0.0), (2.0, 0.0))


class TestBudget(unittest.TestCase):
    def test_fields(self):
        budget = Budget((1.0, 2.0, 3.0), 0.25)

        self.assertEqual(budget.k, 2)
        self.assertEqual(budget.relay_budget, 3.0)
        self.assertEqual(budget.theta_bar, 0.75)
        np.testing.assert_array_equal(budget.source_budgets, [1.0, 2.0])
        self.assertEqual(budget, Budget((1, 2, 3), 0.25))
        self.assertNotEqual(budget, Budget((1.0, 2.0, 3.0), 0.5))
        self.assertEqual(Budget.uniform(2, 1.0, 3.0, 0.25), Budget((1.0, 1.0, 3.0), 0.25))

    def test_invalid_budget(self):
        with self.assertRaises(InvalidBudgetError) as context:
            Budget((1.0, 1.0), 1.5)
        self.assertIn("theta out of (0,1)", str(context.exception))
        with self.assertRaises(InvalidBudgetError):
            Budget((1.0, -1.0), 0.5)
        with self.assertRaises(InvalidBudgetError):
            Budget((1.0,), 0.5)


class TestSampling(unittest.TestCase):
    def test_same_seed_same_ensemble(self):
        geom = two_user_geometry()
        first, second = sample_ensemble(geom, 64, 1024), sample_ensemble(geom, 64, 1024)
        other = sample_ensemble(geom, 64, 1025)

        self.assertTrue(first.same_instance(second))
        self.assertFalse(first.same_instance(other))

    def test_prefix_does_not_depend_on_n(self):
        geom = two_user_geometry()
        short, long = sample_ensemble(geom, 10, 9), sample_ensemble(geom, 25, 9)

        np.testing.assert_array_equal(short.relay_gains, long.relay_gains[:10])
        np.testing.assert_array_equal(short.relay_link, long.relay_link[:10])

    def test_links_are_independent_of_other_users(self):
        geom = two_user_geometry()
        single = Geometry((geom.source_positions[0],), geom.relay_position, geom.destination_position, geom.gamma)
        both, alone = sample_ensemble(geom, 32, 5), sample_ensemble(single, 32, 5)

        np.testing.assert_array_equal(both.relay_gains[:, 0], alone.relay_gains[:, 0])
        np.testing.assert_array_equal(both.destination_gains[:, 0], alone.destination_gains[:, 0])
        np.testing.assert_array_equal(both.relay_link, alone.relay_link)

    def test_relocate_matches_fresh_draw(self):
        geom = two_user_geometry(relay_x=0.3)
        base = sample_ensemble(geom, 40, 77)
        moved = relocate_relay(base, (1.4, 0.1))
        fresh = sample_ensemble(geom.with_relay((1.4, 0.1)), 40, 77)

        self.assertTrue(moved.same_instance(fresh))
        np.testing.assert_array_equal(moved.destination_gains, base.destination_gains)
        self.assertEqual(moved.geometry.relay_position, (1.4, 0.1))

    def test_mean_power_gain(self):
        geom = two_user_geometry()
        ens = sample_ensemble(geom, 20000, 1024)
        measured = float(np.mean(ens.destination_power_gains[:, 0]))
        expected = geom.mean_gain("d", 1)

        self.assertLess(abs(measured / expected - 1.0), 0.05, msg=f"expected about {expected}, got {measured}")

    def test_invalid_seed(self):
        for seed in (-1, 2 ** 64, True, 1.5):
            with self.assertRaises(InvalidSeedError):
                LinkStreams(seed)
        with self.assertRaises(EnsembleShapeError):
            sample_ensemble(two_user_geometry(), 0, 1)


class TestEnsemble(unittest.TestCase):
    def test_single_user_gains(self):
        ens = FadingEnsemble.from_gains([1.0, 2j], [0.5, 0.5], [1.0, 1.0])

        self.assertEqual((ens.n, ens.k), (2, 1))
        np.testing.assert_allclose(ens.relay_power_gains[:, 0], [1.0, 4.0])

    def test_shape_mismatch(self):
        with self.assertRaises(EnsembleShapeError):
            FadingEnsemble(np.ones((3, 2)), np.ones((3, 1)), np.ones(3))
        with self.assertRaises(EnsembleShapeError) as context:
            FadingEnsemble(np.ones((3, 2)), np.ones((3, 2)), np.ones(2))
        self.assertEqual(context.exception.error_code, 2004)
        with self.assertRaises(EnsembleShapeError):
            FadingEnsemble(np.ones((3, 2)), np.ones((3, 2)), np.array([1.0, np.nan, 1.0]))

    def test_gains_are_read_only(self):
        ens = constant_ensemble(1.0, 1.0, 1.0, n=2)

        with self.assertRaises(ValueError):
            ens.relay_gains[0, 0] = 2.0

    def test_relocate_needs_sampled_ensemble(self):
        with self.assertRaises(InvalidGeometryError):
            relocate_relay(constant_ensemble(1.0, 1.0, 1.0), (1.0, 0.0))


class TestEnsembleCsv(unittest.TestCase):
    def test_load_fixture(self):
        ens = load_ensemble_csv(data_path("ensemble", "two_sample.csv"))

        self.assertEqual((ens.n, ens.k), (2, 2))
        self.assertEqual(ens.relay_link[1], 0.5 + 0.5j)
        self.assertEqual(ens.relay_gains[0, 1], 2j)
        self.assertAlmostEqual(ens.destination_power_gains[1, 0], 0.015625, places=15)
        self.assertIsNone(ens.seed)

    def test_dump_and_load(self):
        ens = sample_ensemble(two_user_geometry(), 8, 3)
        with tempfile.TemporaryDirectory() as folder:
            path = os.path.join(folder, "ensemble.csv")
            dump_ensemble_csv(ens, path)
            loaded = load_ensemble_csv(path)

        self.assertTrue(loaded.same_instance(ens))

    def test_malformed_files(self):
        with self.assertRaises(MalformedEnsembleFileError):
            load_ensemble_csv(data_path("ensemble", "missing_link.csv"))
        with self.assertRaises(MalformedEnsembleFileError):
            load_ensemble_csv(data_path("ensemble", "does_not_exist.csv"))


class TestMacBaseline(unittest.TestCase):
    def test_single_user_constant_channel(self):
        ens = constant_ensemble(1.0, 1.0, 1.0, n=4)

        self.assertAlmostEqual(mac_baseline_sum_capacity(ens, Budget((1.0, 1.0))), 1.0, places=12)

    def test_users_with_disjoint_states(self):
        ens = FadingEnsemble.from_power_gains([[1.0, 1.0], [1.0, 1.0]], [[1.0, 0.0], [0.0, 1.0]], [1.0, 1.0])
        capacity = mac_baseline_sum_capacity(ens, Budget((0.5, 0.5, 1.0)))

        self.assertAlmostEqual(capacity, 1.0, places=6)

    def test_zero_budget(self):
        ens = constant_ensemble(1.0, 1.0, 1.0, n=3, k=2)

        self.assertEqual(mac_baseline_sum_capacity(ens, Budget((0.0, 0.0, 1.0))), 0.0)


if __name__ == "__main__":
    unittest.main()
