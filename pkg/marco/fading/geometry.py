# Copyright (c) Microsoft Corporation.
# Licensed under the MIT license.

import math
from dataclasses import dataclass, field, replace
from typing import Sequence, Tuple, Union

import numpy as np

from marco.utils.exception.fading_exception import InvalidBudgetError, InvalidGeometryError

MAX_SOURCES = 6

RELAY = "r"
DESTINATION = "d"

Point = Tuple[float, float]


def _as_point(value, name: str) -> Point:
    try:
        x, y = value
        point = (float(x), float(y))
    except (TypeError, ValueError):
        raise InvalidGeometryError(f"{name} must be a 2-D coordinate, got {value!r}.")
    if not all(math.isfinite(c) for c in point):
        raise InvalidGeometryError(f"{name} has a non-finite coordinate {point}.")
    return point


@dataclass(frozen=True)
class Geometry:
    """Positions of the K sources, the relay and the destination on the plane.

    Distances are in units of the reference distance, so a link of length d has
    mean power gain ``1 / d ** gamma``.
    """
    source_positions: Tuple[Point, ...]
    relay_position: Point
    destination_position: Point
    gamma: float = 3.0

    def __post_init__(self):
        sources = tuple(_as_point(p, f"source {i + 1}") for i, p in enumerate(self.source_positions))
        if not 1 <= len(sources) <= MAX_SOURCES:
            raise InvalidGeometryError(f"Source count {len(sources)} outside 1..{MAX_SOURCES}.")
        object.__setattr__(self, "source_positions", sources)
        object.__setattr__(self, "relay_position", _as_point(self.relay_position, "relay"))
        object.__setattr__(self, "destination_position", _as_point(self.destination_position, "destination"))
        if not (math.isfinite(self.gamma) and self.gamma > 0):
            raise InvalidGeometryError(f"Path-loss exponent must be positive, got {self.gamma}.")

        for receiver, transmitter in self.links():
            if self.distance(receiver, transmitter) <= 0:
                raise InvalidGeometryError(f"Transmitter {transmitter} is colocated with receiver {receiver}.")

    @property
    def k(self) -> int:
        return len(self.source_positions)

    def links(self):
        """(receiver, transmitter) pairs in lexicographic order; the relay transmitter is ``"r"``."""
        pairs = [(DESTINATION, user) for user in range(1, self.k + 1)] + [(DESTINATION, RELAY)]
        pairs += [(RELAY, user) for user in range(1, self.k + 1)]
        return pairs

    def position(self, node: Union[int, str]) -> Point:
        if node == RELAY:
            return self.relay_position
        if node == DESTINATION:
            return self.destination_position
        return self.source_positions[int(node) - 1]

    def distance(self, receiver: str, transmitter: Union[int, str]) -> float:
        return math.dist(self.position(receiver), self.position(transmitter))

    def mean_gain(self, receiver: str, transmitter: Union[int, str]) -> float:
        return self.distance(receiver, transmitter) ** -self.gamma

    def with_relay(self, relay_position: Sequence[float]) -> "Geometry":
        return replace(self, relay_position=tuple(relay_position))


@dataclass(frozen=True)
class Budget:
    """Average power limits of the K sources and the relay, and the bandwidth split.

    Noise variances are 1, so ``p_bar`` is in units of the noise power.

    Args:
        p_bar (tuple): K+1 limits, the relay last.
        theta (float): Fraction of the band used by the sources, in (0, 1).
    """
    p_bar: Tuple[float, ...]
    theta: float = 0.5
    _array: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        p_bar = tuple(float(p) for p in self.p_bar)
        if len(p_bar) < 2:
            raise InvalidBudgetError("Budget needs at least one source and the relay.")
        if not all(math.isfinite(p) and p >= 0 for p in p_bar):
            raise InvalidBudgetError(f"Power limits must be finite and non-negative, got {p_bar}.")
        if not 0 < self.theta < 1:
            raise InvalidBudgetError(f"theta out of (0,1): {self.theta}.")
        object.__setattr__(self, "p_bar", p_bar)
        array = np.array(p_bar)
        array.flags.writeable = False
        object.__setattr__(self, "_array", array)

    @classmethod
    def uniform(cls, k: int, source: float = 1.0, relay: float = 1.0, theta: float = 0.5) -> "Budget":
        return cls(tuple([source] * k + [relay]), theta)

    @property
    def k(self) -> int:
        return len(self.p_bar) - 1

    @property
    def limits(self) -> np.ndarray:
        return self._array

    @property
    def source_budgets(self) -> np.ndarray:
        return self._array[:-1]

    @property
    def relay_budget(self) -> float:
        return self.p_bar[-1]

    @property
    def theta_bar(self) -> float:
        return 1.0 - self.theta
