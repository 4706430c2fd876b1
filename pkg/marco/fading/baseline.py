# Copyright (c) Microsoft Corporation.
# Licensed under the MIT license.

import numpy as np

from marco.ratebounds.capacity import capacity
from marco.wfsolve.config import SolverConfig
from marco.wfsolve.waterfilling import waterfill_mac_opportunistic

from .ensemble import FadingEnsemble
from .geometry import Budget


def mac_baseline_sum_capacity(ens: FadingEnsemble, budget: Budget, cfg: SolverConfig = SolverConfig()) -> float:
    """Ergodic sum capacity of the sources' fading MAC to the destination, no relay, full band.

    Only the source limits of the budget are used.
    """
    gains = ens.destination_power_gains
    result = waterfill_mac_opportunistic(gains, 1.0, budget.source_budgets, cfg)
    return float(np.mean(capacity(np.sum(gains * result.powers, axis=1))))
