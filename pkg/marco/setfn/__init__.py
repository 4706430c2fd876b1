# Copyright (c) Microsoft Corporation.
# Licensed under the MIT license.

from .case_label import (
    ACTIVE_KINDS, BoundFamily, CaseKind, CaseLabel, SplitClassification, case_sequence, classify_split_sums
)
from .intersection import (
    IntersectionVerdict, WeightedOptimum, intersect_max_sum, max_weighted_sum_on_intersection, split_sums,
    two_user_weighted_optimum
)
from .set_function import (
    PolymatroidCheck, SetFunction, Violation, check_polymatroid, dump_set_function, enumerate_vertices, format_subset,
    full_mask, load_set_function, ordered_masks, random_polymatroid, subset_mask, subset_users
)

__all__ = [
    "ACTIVE_KINDS", "BoundFamily", "CaseKind", "CaseLabel", "SplitClassification", "case_sequence",
    "classify_split_sums", "IntersectionVerdict", "WeightedOptimum", "intersect_max_sum",
    "max_weighted_sum_on_intersection", "split_sums", "two_user_weighted_optimum", "PolymatroidCheck", "SetFunction",
    "Violation", "check_polymatroid", "dump_set_function", "enumerate_vertices", "format_subset", "full_mask",
    "load_set_function", "ordered_masks", "random_polymatroid", "subset_mask", "subset_users"
]
