# Copyright (c) Microsoft Corporation.
# Licensed under the MIT license.

from .block_ascent import BlockAscentResult, block_coordinate_ascent
from .boundary import (
    BoundaryResult, case_pieces, case_weighted_pieces, iterative_nonwf, solve_boundary_weights, solve_tied_pieces,
    tied_weighted_pieces
)
from .config import DualVariables, SolverConfig
from .kkt import solve_ratio_sum, solve_user_dual
from .mixture import MixtureEngine, MixtureSolution, kkt_residuals, piece_value, split_piece
from .projected_gradient import PgaResult, project_column, projected_gradient_concave
from .terms import SimoTerm, SisoTerm
from .trace_dump import export_trace
from .waterfilling import OpportunisticResult, WaterfillResult, waterfill_mac_opportunistic, waterfill_single

__all__ = [
    "BlockAscentResult", "block_coordinate_ascent", "BoundaryResult", "case_pieces", "case_weighted_pieces",
    "iterative_nonwf", "solve_boundary_weights", "solve_tied_pieces", "tied_weighted_pieces",
    "DualVariables", "SolverConfig", "solve_ratio_sum",
    "solve_user_dual", "MixtureEngine", "MixtureSolution", "kkt_residuals", "piece_value", "split_piece",
    "PgaResult", "project_column", "projected_gradient_concave", "SimoTerm", "SisoTerm", "export_trace",
    "OpportunisticResult", "WaterfillResult", "waterfill_mac_opportunistic", "waterfill_single"
]
