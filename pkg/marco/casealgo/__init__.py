# Copyright (c) Microsoft Corporation.
# Licensed under the MIT license.

from .certificate import Achieved, Gap, sum_capacity_certificate
from .clustered import kuser_clustered_corner_rates
from .conditions import CaseCheck, ConditionRecord, check_case_conditions, classify_pair, condition_residuals
from .report import SolverReport, dumps_report, report_to_flat_dict
from .sum_rate import candidate_order, optimal_cutset_sum_rate, optimal_df_sum_rate, solve_case, sweep_cases
from .weighted_region import optimal_df_weighted_region_2user, weighted_cases, weighted_pieces

__all__ = [
    "Achieved", "Gap", "sum_capacity_certificate", "kuser_clustered_corner_rates", "CaseCheck", "ConditionRecord",
    "check_case_conditions", "classify_pair", "condition_residuals", "SolverReport", "dumps_report",
    "report_to_flat_dict", "candidate_order", "optimal_cutset_sum_rate", "optimal_df_sum_rate", "solve_case",
    "sweep_cases", "optimal_df_weighted_region_2user", "weighted_cases", "weighted_pieces"
]
