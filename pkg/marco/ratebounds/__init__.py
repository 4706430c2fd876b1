# Copyright (c) Microsoft Corporation.
# Licensed under the MIT license.

from .bounds import RateRegionPair, bounds_for, cutset_bounds, df_bounds, successive_min_rate
from .capacity import LN2, capacity
from .policy import PowerPolicy, check_policy, constant_policy

__all__ = [
    "RateRegionPair", "bounds_for", "cutset_bounds", "df_bounds", "successive_min_rate", "LN2", "capacity",
    "PowerPolicy", "check_policy", "constant_policy"
]
