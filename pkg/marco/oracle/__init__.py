# Copyright (c) Microsoft Corporation.
# Licensed under the MIT license.

from .grid import GridOptimum, GridSpec, compositions, grid_best_sum_rate, grid_best_weighted, grid_bound, grid_size

__all__ = [
    "GridOptimum", "GridSpec", "compositions", "grid_best_sum_rate", "grid_best_weighted", "grid_bound", "grid_size"
]
