# Copyright (c) Microsoft Corporation.
# Licensed under the MIT license.

from functools import cached_property
from typing import Optional, Sequence

import numpy as np

from marco.utils.exception.fading_exception import EnsembleShapeError, InvalidGeometryError

from .geometry import DESTINATION, RELAY, Geometry
from .link_random import LinkStreams


def _frozen(array: np.ndarray) -> np.ndarray:
    array = np.array(array, dtype=np.complex128)
    array.flags.writeable = False
    return array


class FadingEnsemble:
    """n equiprobable fading states of an orthogonal MARC.

    Sample means over the ensemble stand in for the ergodic expectation.

    Args:
        relay_gains (np.ndarray): n x K complex gains H_{r,k} from the sources to the relay.
        destination_gains (np.ndarray): n x K complex gains H_{d,k} from the sources to the destination.
        relay_link (np.ndarray): n complex gains H_{d,r} from the relay to the destination.
        seed (int): Seed the gains were drawn with, if any.
        geometry (Geometry): Geometry the gains were drawn for, if any.
    """

    def __init__(
        self, relay_gains: np.ndarray, destination_gains: np.ndarray, relay_link: np.ndarray,
        seed: Optional[int] = None, geometry: Optional[Geometry] = None
    ):
        relay_gains = _frozen(relay_gains)
        destination_gains = _frozen(destination_gains)
        relay_link = _frozen(relay_link)

        if relay_gains.ndim != 2 or relay_gains.shape != destination_gains.shape:
            raise EnsembleShapeError(
                f"Source gains must be two n x K arrays, got {relay_gains.shape} and {destination_gains.shape}."
            )
        if relay_link.shape != (relay_gains.shape[0],):
            raise EnsembleShapeError(f"Relay link must have {relay_gains.shape[0]} samples, got {relay_link.shape}.")
        if relay_gains.shape[0] < 1:
            raise EnsembleShapeError("An ensemble needs at least one sample.")
        for name, array in (("relay", relay_gains), ("destination", destination_gains), ("relay link", relay_link)):
            if not np.all(np.isfinite(array)):
                raise EnsembleShapeError(f"Non-finite {name} gains.")
        if geometry is not None and geometry.k != relay_gains.shape[1]:
            raise EnsembleShapeError(f"Geometry has {geometry.k} sources, gains have {relay_gains.shape[1]}.")

        self._relay_gains = relay_gains
        self._destination_gains = destination_gains
        self._relay_link = relay_link
        self._seed = seed
        self._geometry = geometry

    @classmethod
    def from_gains(
        cls, relay_gains: Sequence, destination_gains: Sequence, relay_link: Sequence
    ) -> "FadingEnsemble":
        """Ensemble from plain amplitude lists; 1-D source gains are read as K = 1."""
        relay_gains = np.asarray(relay_gains, dtype=np.complex128)
        destination_gains = np.asarray(destination_gains, dtype=np.complex128)
        if relay_gains.ndim == 1:
            relay_gains = relay_gains[:, None]
        if destination_gains.ndim == 1:
            destination_gains = destination_gains[:, None]
        return cls(relay_gains, destination_gains, np.asarray(relay_link).reshape(-1))

    @classmethod
    def from_power_gains(
        cls, relay_gains: Sequence, destination_gains: Sequence, relay_link: Sequence
    ) -> "FadingEnsemble":
        """Ensemble with real amplitudes whose squares are the given power gains."""
        return cls.from_gains(
            np.sqrt(np.asarray(relay_gains, dtype=np.float64)),
            np.sqrt(np.asarray(destination_gains, dtype=np.float64)),
            np.sqrt(np.asarray(relay_link, dtype=np.float64))
        )

    @property
    def n(self) -> int:
        return self._relay_gains.shape[0]

    @property
    def k(self) -> int:
        return self._relay_gains.shape[1]

    @property
    def seed(self) -> Optional[int]:
        return self._seed

    @property
    def geometry(self) -> Optional[Geometry]:
        return self._geometry

    @property
    def relay_gains(self) -> np.ndarray:
        return self._relay_gains

    @property
    def destination_gains(self) -> np.ndarray:
        return self._destination_gains

    @property
    def relay_link(self) -> np.ndarray:
        return self._relay_link

    @cached_property
    def relay_power_gains(self) -> np.ndarray:
        """|H_{r,k}|^2, n x K."""
        return _power(self._relay_gains)

    @cached_property
    def destination_power_gains(self) -> np.ndarray:
        """|H_{d,k}|^2, n x K."""
        return _power(self._destination_gains)

    @cached_property
    def relay_link_power_gain(self) -> np.ndarray:
        """|H_{d,r}|^2, length n."""
        return _power(self._relay_link)

    def link(self, receiver: str, transmitter) -> np.ndarray:
        if receiver == DESTINATION and transmitter == RELAY:
            return self._relay_link
        gains = self._relay_gains if receiver == RELAY else self._destination_gains
        return gains[:, int(transmitter) - 1]

    def same_instance(self, other: "FadingEnsemble") -> bool:
        return other is self or (
            np.array_equal(self._relay_gains, other._relay_gains)
            and np.array_equal(self._destination_gains, other._destination_gains)
            and np.array_equal(self._relay_link, other._relay_link)
        )

    def __repr__(self) -> str:
        return f"FadingEnsemble(n={self.n}, k={self.k}, seed={self._seed})"


def _power(gains: np.ndarray) -> np.ndarray:
    power = gains.real ** 2 + gains.imag ** 2
    power.flags.writeable = False
    return power


def _draw_link(streams: LinkStreams, geom: Geometry, receiver: str, transmitter, n: int) -> np.ndarray:
    return streams.circular_gaussian(receiver, transmitter, n) / np.sqrt(geom.distance(receiver, transmitter) ** geom.gamma)


def sample_ensemble(geom: Geometry, n: int, seed: int) -> FadingEnsemble:
    """Rayleigh ensemble with path loss: H = A / sqrt(d ** gamma), A standard circular Gaussian.

    Every link draws from its own seeded stream, so the result is fixed by
    (geometry, n, seed) and each link is unaffected by the others.
    """
    if n < 1:
        raise EnsembleShapeError(f"Sample count must be positive, got {n}.")
    streams = LinkStreams(seed)
    users = range(1, geom.k + 1)
    relay_gains = np.stack([_draw_link(streams, geom, RELAY, user, n) for user in users], axis=1)
    destination_gains = np.stack([_draw_link(streams, geom, DESTINATION, user, n) for user in users], axis=1)
    relay_link = _draw_link(streams, geom, DESTINATION, RELAY, n)
    return FadingEnsemble(relay_gains, destination_gains, relay_link, seed=streams.seed, geometry=geom)


def relocate_relay(ens: FadingEnsemble, relay_position: Sequence[float]) -> FadingEnsemble:
    """Move the relay, redrawing only the links that touch it.

    Source-to-destination gains are kept as they are. The result equals
    ``sample_ensemble`` on the moved geometry with the same n and seed.
    """
    if ens.seed is None or ens.geometry is None:
        raise InvalidGeometryError("Only sampled ensembles carry the seed and geometry needed to move the relay.")
    geom = ens.geometry.with_relay(relay_position)
    streams = LinkStreams(ens.seed)
    relay_gains = np.stack([_draw_link(streams, geom, RELAY, user, ens.n) for user in range(1, geom.k + 1)], axis=1)
    relay_link = _draw_link(streams, geom, DESTINATION, RELAY, ens.n)
    return FadingEnsemble(relay_gains, ens.destination_gains, relay_link, seed=ens.seed, geometry=geom)
