# Copyright (c) Microsoft Corporation.
# Licensed under the MIT license.

import math
import unittest

import numpy as np

from marco.fading import Budget
from marco.ratebounds import (
    PowerPolicy, bounds_for, capacity, constant_policy, cutset_bounds, df_bounds, successive_min_rate
)
from marco.setfn import BoundFamily, check_polymatroid, full_mask, ordered_masks
from marco.utils.exception.ratebounds_exception import (
    InvalidReceiverError, NegativePowerError, PolicyDimensionError
)
from marco.utils.exception.setfn_exception import EmptySubsetError
from tests.utils import constant_ensemble, sampled_instance


def random_policy(n: int, k: int, seed: int) -> PowerPolicy:
    return PowerPolicy(np.random.default_rng(seed).uniform(0.0, 2.0, size=(n, k + 1)))


class TestPowerPolicy(unittest.TestCase):
    def test_columns(self):
        policy = PowerPolicy.from_columns(np.ones((3, 2)), np.full(3, 2.0))

        self.assertEqual((policy.n, policy.k), (3, 2))
        np.testing.assert_array_equal(policy.mean_powers(), [1.0, 1.0, 2.0])
        self.assertTrue(policy.feasible(Budget((1.0, 1.0, 2.0))))
        self.assertFalse(policy.feasible(Budget((1.0, 0.5, 2.0))))

    def test_mix(self):
        budget = Budget((2.0, 1.0))
        mixed = constant_policy(budget, 4).mix(PowerPolicy.zeros(4, 1), 0.25)

        np.testing.assert_allclose(mixed.mean_powers(), [1.5, 0.75])

    def test_invalid_policy(self):
        with self.assertRaises(NegativePowerError):
            PowerPolicy([[1.0, -0.5]])
        with self.assertRaises(NegativePowerError):
            PowerPolicy([[1.0, np.nan]])
        with self.assertRaises(PolicyDimensionError):
            PowerPolicy(np.ones((3, 1)))

    def test_policy_must_fit_ensemble(self):
        ens, budget = sampled_instance(k=2, n=8)

        with self.assertRaises(PolicyDimensionError):
            df_bounds(ens, PowerPolicy.zeros(7, 2), budget)
        with self.assertRaises(PolicyDimensionError):
            df_bounds(ens, PowerPolicy.zeros(8, 3), budget)


class TestBounds(unittest.TestCase):
    def test_capacity(self):
        self.assertEqual(float(capacity(0.0)), 0.0)
        self.assertAlmostEqual(float(capacity(3.0)), 2.0, places=15)

    def test_single_user_constant_channel(self):
        ens = constant_ensemble(3.0, 1.0, 1.0)
        budget = Budget((1.0, 1.0), 0.5)
        policy = constant_policy(budget, 1)

        df = df_bounds(ens, policy, budget)
        self.assertAlmostEqual(df.relay(1), 0.5 * math.log2(7.0), places=12)
        self.assertAlmostEqual(df.destination(1), math.log2(3.0), places=12)
        self.assertEqual(df.destination(0), 0.0)

        # Rank one: det(I + g g^H P / theta) = 1 + (|h_r|^2 + |h_d|^2) P / theta.
        cutset = cutset_bounds(ens, policy, budget)
        self.assertAlmostEqual(cutset.relay(1), 0.5 * math.log2(9.0), places=12)
        self.assertEqual(cutset.family, BoundFamily.CUTSET)

    def test_bounds_are_polymatroids(self):
        ens, budget = sampled_instance(k=3, n=32, seed=4)
        policy = random_policy(32, 3, seed=8)
        for family in (BoundFamily.DF, BoundFamily.CUTSET):
            pair = bounds_for(family, ens, policy, budget)
            for f in (pair.f_relay, pair.f_dest):
                check = check_polymatroid(f)
                self.assertTrue(check.is_polymatroid, msg=f"expected a polymatroid for {family}, got {check.violations}")

    def test_cutset_dominates_relay_bound(self):
        ens, budget = sampled_instance(k=3, n=32, seed=12)
        policy = random_policy(32, 3, seed=13)
        df, cutset = df_bounds(ens, policy, budget), cutset_bounds(ens, policy, budget)

        for mask in ordered_masks(3):
            self.assertGreaterEqual(cutset.relay(mask), df.relay(mask) - 1e-12)
            self.assertEqual(cutset.destination(mask), df.destination(mask))

    def test_bounds_are_concave_in_powers(self):
        ens, budget = sampled_instance(k=2, n=16, seed=21)
        p, q = random_policy(16, 2, seed=1), random_policy(16, 2, seed=2)
        middle = p.mix(q, 0.5)
        for family in (BoundFamily.DF, BoundFamily.CUTSET):
            at_p, at_q, at_mid = (bounds_for(family, ens, x, budget) for x in (p, q, middle))
            for receiver in ("r", "d"):
                for mask in range(1, 4):
                    chord = 0.5 * (at_p.bound(receiver, mask) + at_q.bound(receiver, mask))
                    self.assertGreaterEqual(at_mid.bound(receiver, mask), chord - 1e-12)

    def test_split_sums(self):
        ens, budget = sampled_instance(k=2, n=8)
        pair = df_bounds(ens, random_policy(8, 2, seed=3), budget)
        g = pair.split_sums()

        for mask in range(4):
            self.assertAlmostEqual(g[mask], pair.relay(mask) + pair.destination(3 ^ mask), places=14)

    def test_successive_min_rate(self):
        ens, budget = sampled_instance(k=3, n=8)
        pair = df_bounds(ens, random_policy(8, 3, seed=5), budget)
        everyone = full_mask(3)

        self.assertAlmostEqual(
            successive_min_rate(pair, 1, "r"), pair.relay(everyone) - pair.relay(everyone ^ 1), places=14
        )
        self.assertAlmostEqual(successive_min_rate(pair, everyone, "d"), pair.destination(everyone), places=14)
        with self.assertRaises(EmptySubsetError):
            successive_min_rate(pair, 0, "r")
        with self.assertRaises(InvalidReceiverError):
            pair.bound("x", 1)

    def test_zero_policy(self):
        ens, budget = sampled_instance(k=2, n=8)
        pair = df_bounds(ens, PowerPolicy.zeros(8, 2), budget)

        np.testing.assert_array_equal(pair.split_sums(), np.zeros(4))


if __name__ == "__main__":
    unittest.main()
