# Copyright (c) Microsoft Corporation.
# Licensed under the MIT license.

from .ensemble import FadingEnsemble, relocate_relay, sample_ensemble
from .ensemble_dump import dump_ensemble_csv, load_ensemble_csv
from .geometry import DESTINATION, RELAY, Budget, Geometry
from .link_random import LinkStreams

# The MAC baseline lives in ``marco.fading.baseline``; it depends on the solvers, which depend on this package.

__all__ = [
    "FadingEnsemble", "relocate_relay", "sample_ensemble", "dump_ensemble_csv", "load_ensemble_csv", "DESTINATION",
    "RELAY", "Budget", "Geometry", "LinkStreams"
]
