# Copyright (c) Microsoft Corporation.
# Licensed under the MIT license.

import json
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

import numpy as np

from marco.fading.geometry import Budget
from marco.ratebounds.policy import PowerPolicy
from marco.setfn.case_label import CaseLabel
from marco.wfsolve.config import DualVariables

from .conditions import ConditionRecord


@dataclass
class SolverReport:
    """Outcome of a case sweep.

    Attributes:
        policy (PowerPolicy): Accepted policy.
        label (CaseLabel): Case whose conditions the policy met.
        sum_rate (float): Largest sum rate in the intersection of the bounds at the policy.
        duals (DualVariables): Power multipliers and boundary weights.
        conditions_checked (List[ConditionRecord]): Every case tried, in order.
        iterations (Dict[str, int]): Work per stage.
        degenerate (bool): The binding split sums fall outside the case taxonomy.
        objective (float): Value of the accepted case's objective.
        budget (Budget): Limits the policy was solved for.
        rates (tuple): Per-user rates, when the solver fixes a rate point.
    """
    policy: PowerPolicy
    label: CaseLabel
    sum_rate: float
    duals: DualVariables
    conditions_checked: List[ConditionRecord]
    iterations: Dict[str, int]
    degenerate: bool
    objective: float
    budget: Budget
    rates: Optional[Tuple[float, ...]] = None
    notes: List[str] = field(default_factory=list)

    @property
    def k(self) -> int:
        return self.policy.k

    @property
    def n_samples(self) -> int:
        return self.policy.n

    @property
    def total_iterations(self) -> int:
        return int(sum(self.iterations.values()))


def report_to_flat_dict(report: SolverReport) -> dict:
    """Flat key/value view of a report, one key per scalar."""
    flat = {
        "label": str(report.label),
        "family": report.label.family.value,
        "sum_rate": report.sum_rate,
        "objective": report.objective,
        "degenerate": report.degenerate,
        "k": report.k,
        "n_samples": report.n_samples,
        "theta": report.budget.theta,
    }
    for position, mean in enumerate(report.policy.mean_powers()):
        name = "r" if position == report.k else str(position + 1)
        flat[f"mean_power.{name}"] = float(mean)
        nu = report.duals.nu[position]
        flat[f"nu.{name}"] = float(nu) if np.isfinite(nu) else "inf"
    for position, alpha in enumerate(report.duals.alpha):
        flat[f"alpha.{position + 1}"] = alpha
    if report.rates is not None:
        for position, rate in enumerate(report.rates):
            flat[f"rate.{position + 1}"] = float(rate)
    for stage, count in report.iterations.items():
        flat[f"iterations.{stage}"] = int(count)
    for position, record in enumerate(report.conditions_checked):
        flat[f"conditions.{position}.label"] = str(record.label)
        flat[f"conditions.{position}.satisfied"] = bool(record.satisfied)
        if record.note:
            flat[f"conditions.{position}.note"] = record.note
    return flat


def dumps_report(report: SolverReport) -> str:
    return json.dumps(report_to_flat_dict(report), indent=2)
