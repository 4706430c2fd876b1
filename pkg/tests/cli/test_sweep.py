# Copyright (c) Microsoft Corporation.
# Licensed under the MIT license.

import csv
import os
import tempfile
import unittest
from dataclasses import replace
from unittest import mock

from marco.cli.marco import main
from marco.cli.sweep import SWEEP_HEADERS, dump_sweep_csv, dumps, load_config, run_sweep, validate_config
from marco.cli.sweep.command import _env_seed, sweep, template
from marco.utils.exception.cli_exception import (
    CommandError, ConfigValidationError, ParsingError
)
from tests.utils import data_path


def read_file(path: str) -> str:
    with open(path, "r") as fr:
        return fr.read()


class TestConfigValidation(unittest.TestCase):
    def test_empty_config(self):
        with self.assertRaises(ConfigValidationError) as context:
            validate_config("")

        self.assertIn("missing geometry", context.exception.errors)
        self.assertEqual(context.exception.error_code, 3003)

    def test_bad_theta(self):
        with self.assertRaises(ConfigValidationError) as context:
            load_config(data_path("sweep", "bad_theta.yml"))

        self.assertTrue(any("theta out of (0,1)" in error for error in context.exception.errors))

    def test_unknown_key(self):
        with self.assertRaises(ConfigValidationError) as context:
            load_config(data_path("sweep", "unknown_key.yml"))

        self.assertIn("unknown key geometry.shadowing", context.exception.errors)

    def test_defaults_are_filled(self):
        config = load_config(data_path("sweep", "tiny_sweep.yml"))

        self.assertEqual(config.k, 2)
        self.assertTupleEqual(config.relay_x, (0.5, 1.5, 2))
        self.assertEqual((config.n, config.seed), (12, 2024))
        self.assertEqual(config.budget.p_bar, (1.0, 1.0, 1.0))
        self.assertEqual(config.solver.condition_tol, 1e-6)

    def test_dumps_round_trip(self):
        config = load_config(data_path("sweep", "tiny_sweep.yml"))

        self.assertEqual(validate_config(dumps(config)), config)

    def test_overrides(self):
        config = load_config(data_path("sweep", "tiny_sweep.yml")).with_overrides(seed=5, output_path="x.csv")

        self.assertEqual((config.seed, config.output_path), (5, "x.csv"))

    def test_invalid_seed_override(self):
        config = load_config(data_path("sweep", "tiny_sweep.yml"))
        for seed in (-1, 2 ** 64, True):
            with self.assertRaises(ConfigValidationError) as context:
                config.with_overrides(seed=seed)
            self.assertTrue(context.exception.errors[0].startswith("ensemble.seed:"))

    def test_template(self):
        with tempfile.TemporaryDirectory() as folder:
            path = os.path.join(folder, "nested", "sweep.yml")
            template(path)
            config = load_config(path)

        self.assertEqual((config.n, config.seed), (20000, 1024))
        self.assertEqual(config.relay_x[2], 25)
        self.assertEqual(config.geometry.gamma, 3.0)


class TestRunSweep(unittest.TestCase):
    def setUp(self):
        self.config = load_config(data_path("sweep", "tiny_sweep.yml"))

    def test_rows(self):
        rows = run_sweep(self.config)

        self.assertListEqual([row.relay_x for row in rows], [0.5, 1.5])
        self.assertEqual(len({row.mac_baseline for row in rows}), 1)
        for row in rows:
            self.assertFalse(row.flagged, msg=row.diagnostics)
            self.assertLessEqual(row.df_sum_rate, row.cutset_sum_rate + 1e-6)
            self.assertGreater(row.df_sum_rate, 0.0)

    def test_relay_line(self):
        rows = run_sweep(load_config(data_path("sweep", "relay_line.yml")))
        labels = [row.df_case for row in rows]

        for row in rows:
            self.assertFalse(row.flagged, msg=f"relay_x={row.relay_x}: {row.diagnostics}")
            self.assertLessEqual(row.df_sum_rate, row.cutset_sum_rate + 1e-6, msg=f"relay_x={row.relay_x}")
            if row.relay_x <= 1.6:
                self.assertGreater(row.df_sum_rate, row.mac_baseline, msg=f"relay_x={row.relay_x}")

        # 3b near the sources, then 3c, then 3a near the destination.
        self.assertTrue(set(labels) <= {"3a", "3b", "3c"}, msg=labels)
        order = [{"3b": 0, "3c": 1, "3a": 2}[label] for label in labels]
        self.assertListEqual(order, sorted(order))
        self.assertEqual((labels[0], labels[-1]), ("3b", "3a"))

        achieved = [row.capacity_achieved for row in rows]
        self.assertTrue(achieved[0])
        band = achieved.index(False) if False in achieved else len(achieved)
        self.assertFalse(any(achieved[band:]), msg=achieved)

    def test_bad_seed_stops_before_solving(self):
        with self.assertRaises(CommandError):
            run_sweep(replace(self.config, seed=-1))

    def test_csv_is_reproducible(self):
        with tempfile.TemporaryDirectory() as folder:
            first, second = os.path.join(folder, "first.csv"), os.path.join(folder, "second.csv")
            dump_sweep_csv(run_sweep(self.config), first)
            dump_sweep_csv(run_sweep(self.config), second)

            with open(first, "r") as fp:
                lines = list(csv.reader(fp))
            self.assertEqual(read_file(first), read_file(second))

        self.assertEqual(len(lines), 3)
        self.assertListEqual(lines[0], SWEEP_HEADERS)
        self.assertEqual(lines[1][0], "0.5")


class TestCommand(unittest.TestCase):
    def test_missing_config(self):
        with self.assertRaises(CommandError):
            sweep(config=data_path("sweep", "does_not_exist.yml"))

    def test_env_seed(self):
        with mock.patch.dict(os.environ, {"MARC_OPT_SEED": "7"}):
            self.assertEqual(_env_seed(), 7)
        with mock.patch.dict(os.environ, {"MARC_OPT_SEED": "seven"}):
            with self.assertRaises(ParsingError):
                _env_seed()
        with mock.patch.dict(os.environ, {"MARC_OPT_SEED": ""}):
            self.assertIsNone(_env_seed())

    def test_env_seed_matches_explicit_seed(self):
        with tempfile.TemporaryDirectory() as folder:
            from_env, explicit = os.path.join(folder, "env.csv"), os.path.join(folder, "explicit.csv")
            with mock.patch.dict(os.environ, {"MARC_OPT_SEED": "11"}):
                sweep(config=data_path("sweep", "tiny_sweep.yml"), out=from_env)
            with mock.patch.dict(os.environ, {"MARC_OPT_SEED": "99"}):
                sweep(config=data_path("sweep", "tiny_sweep.yml"), out=explicit, seed=11)

            self.assertEqual(read_file(from_env), read_file(explicit))

    def test_invalid_config_exit_code(self):
        argv = ["marc-opt", "sweep", "--config", data_path("sweep", "bad_theta.yml")]
        with mock.patch("sys.argv", argv):
            with self.assertRaises(SystemExit) as context:
                main()

        self.assertEqual(context.exception.code, 2)

    def test_negative_seed_exit_code(self):
        argv = ["marc-opt", "sweep", "--config", data_path("sweep", "tiny_sweep.yml"), "--seed", "-1"]
        with mock.patch("sys.argv", argv):
            with self.assertRaises(SystemExit) as context:
                main()
        self.assertEqual(context.exception.code, 2)

        argv = ["marc-opt", "sweep", "--config", data_path("sweep", "tiny_sweep.yml")]
        with mock.patch.dict(os.environ, {"MARC_OPT_SEED": "-3"}), mock.patch("sys.argv", argv):
            with self.assertRaises(SystemExit) as context:
                main()
        self.assertEqual(context.exception.code, 2)


if __name__ == "__main__":
    unittest.main()
