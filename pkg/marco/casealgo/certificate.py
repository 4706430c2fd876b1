# Copyright (c) Microsoft Corporation.
# Licensed under the MIT license.

from dataclasses import dataclass
from typing import Union

from marco.setfn.case_label import BoundFamily, CaseKind
from marco.utils.exception.solver_exception import MismatchedReportsError

from .report import SolverReport


@dataclass(frozen=True)
class Achieved:
    """DF meets the cutset bound: the sum capacity is known."""
    sum_capacity: float


@dataclass(frozen=True)
class Gap:
    """Cutset sum-rate bound minus the DF sum rate."""
    value: float


def sum_capacity_certificate(df: SolverReport, ob: SolverReport, tol: float = 1e-6) -> Union[Achieved, Gap]:
    """Sum-capacity test from a DF report and a cutset report of the same instance.

    DF achieves the sum capacity when the cutset optimum falls in case 3b, where the
    two bounds share the destination sum rate, and the sum rates agree within tol.

    Raises:
        MismatchedReportsError: Families swapped, or the reports differ in users,
            samples or budget.
    """
    if df.label.family != BoundFamily.DF or ob.label.family != BoundFamily.CUTSET:
        raise MismatchedReportsError(
            f"Expected a DF and a cutset report, got {df.label.family.value} and {ob.label.family.value}."
        )
    if df.k != ob.k or df.n_samples != ob.n_samples or df.budget != ob.budget:
        raise MismatchedReportsError("Reports were computed on different instances.")

    if ob.label.kind == CaseKind.ACTIVE_3B and abs(df.sum_rate - ob.sum_rate) <= tol:
        return Achieved(df.sum_rate)
    return Gap(ob.sum_rate - df.sum_rate)
