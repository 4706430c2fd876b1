# Copyright (c) Microsoft Corporation.
# Licensed under the MIT license.

from typing import Union

import numpy as np

from marco.utils.exception.fading_exception import InvalidSeedError

from .geometry import DESTINATION, RELAY

RECEIVER_IDS = {RELAY: 0, DESTINATION: 1}
MAX_SEED = 2 ** 64


def transmitter_id(transmitter: Union[int, str]) -> int:
    return 0 if transmitter == RELAY else int(transmitter)


class LinkStreams:
    """Per-link random streams derived from one ensemble seed.

    Each (receiver, transmitter) link owns a generator spawned from
    ``SeedSequence(seed, spawn_key=(receiver id, transmitter id))``. A link's draws
    therefore do not depend on which other links exist or in what order they are
    drawn, and the first n draws of a stream do not depend on the total count.

    .. code-block:: python

        streams = LinkStreams(1024)
        h_r1 = streams.circular_gaussian("r", 1, n=1000)
    """

    def __init__(self, seed: int):
        if isinstance(seed, bool) or not isinstance(seed, (int, np.integer)) or seed < 0 or seed >= MAX_SEED:
            raise InvalidSeedError(f"Seed must be an integer in [0, 2^64), got {seed!r}.")
        self._seed = int(seed)

    @property
    def seed(self) -> int:
        return self._seed

    def generator(self, receiver: str, transmitter: Union[int, str]) -> np.random.Generator:
        """Fresh generator for a link, positioned at its first sample."""
        key = (RECEIVER_IDS[receiver], transmitter_id(transmitter))
        return np.random.default_rng(np.random.SeedSequence(entropy=self._seed, spawn_key=key))

    def circular_gaussian(self, receiver: str, transmitter: Union[int, str], n: int) -> np.ndarray:
        """n draws of a zero-mean unit-variance circularly symmetric complex Gaussian."""
        z = self.generator(receiver, transmitter).standard_normal((n, 2))
        return (z[:, 0] + 1j * z[:, 1]) / np.sqrt(2.0)
