# Copyright (c) Microsoft Corporation.
# Licensed under the MIT license.

import numpy as np
import pandas as pd

from marco.utils import dump_csv_file
from marco.utils.exception.fading_exception import MalformedEnsembleFileError

from .ensemble import FadingEnsemble
from .geometry import DESTINATION, RELAY

ENSEMBLE_HEADERS = ["sample", "receiver", "transmitter", "re", "im"]


def dump_ensemble_csv(ens: FadingEnsemble, file_path: str):
    """Write every gain as one ``sample,receiver,transmitter,re,im`` row.

    Rows are ordered by sample, then (receiver, transmitter). Floats are written
    with ``repr`` so loading gives back the same bits.
    """
    def _rows():
        for i in range(ens.n):
            for user in range(1, ens.k + 1):
                h = ens.destination_gains[i, user - 1]
                yield [i, DESTINATION, user, repr(float(h.real)), repr(float(h.imag))]
            h = ens.relay_link[i]
            yield [i, DESTINATION, RELAY, repr(float(h.real)), repr(float(h.imag))]
            for user in range(1, ens.k + 1):
                h = ens.relay_gains[i, user - 1]
                yield [i, RELAY, user, repr(float(h.real)), repr(float(h.imag))]

    dump_csv_file(file_path, ENSEMBLE_HEADERS, _rows)


def load_ensemble_csv(file_path: str) -> FadingEnsemble:
    """Read an ensemble written by ``dump_ensemble_csv``; seed and geometry are not kept."""
    try:
        frame = pd.read_csv(
            file_path, dtype={"receiver": str, "transmitter": str}, float_precision="round_trip"
        )
    except (OSError, ValueError) as e:
        raise MalformedEnsembleFileError(f"Cannot read ensemble file {file_path}: {e}")

    missing = [column for column in ENSEMBLE_HEADERS if column not in frame.columns]
    if missing:
        raise MalformedEnsembleFileError(f"Ensemble file misses columns {missing}.")
    if frame.empty:
        raise MalformedEnsembleFileError("Ensemble file has no rows.")

    samples = frame["sample"].astype(int)
    n = int(samples.max()) + 1
    if sorted(samples.unique()) != list(range(n)):
        raise MalformedEnsembleFileError("Sample indices must cover 0..n-1.")
    users = sorted(int(t) for t in frame["transmitter"].unique() if t != RELAY)
    k = len(users)
    if k < 1 or users != list(range(1, k + 1)):
        raise MalformedEnsembleFileError(f"Source transmitters must be 1..K, got {users}.")

    values = {}
    for sample, receiver, transmitter, re, im in frame[ENSEMBLE_HEADERS].itertuples(index=False):
        key = (int(sample), receiver, transmitter)
        if key in values:
            raise MalformedEnsembleFileError(f"Duplicated gain for {key}.")
        values[key] = complex(re, im)

    def _column(receiver: str, transmitter: str) -> np.ndarray:
        try:
            return np.array([values[(i, receiver, transmitter)] for i in range(n)])
        except KeyError as e:
            raise MalformedEnsembleFileError(f"Missing gain for sample/link {e.args[0]}.")

    relay_gains = np.stack([_column(RELAY, str(user)) for user in users], axis=1)
    destination_gains = np.stack([_column(DESTINATION, str(user)) for user in users], axis=1)
    relay_link = _column(DESTINATION, RELAY)
    if len(values) != n * (2 * k + 1):
        raise MalformedEnsembleFileError("Ensemble file carries links outside the orthogonal MARC.")
    return FadingEnsemble(relay_gains, destination_gains, relay_link)
