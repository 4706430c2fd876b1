# Copyright (c) Microsoft Corporation.
# Licensed under the MIT license.

import os

import numpy as np

from marco.fading import Budget, FadingEnsemble, Geometry, sample_ensemble

DATA_FOLDER = os.path.join(os.path.dirname(os.path.abspath(__file__)), "data")


def data_path(*parts) -> str:
    return os.path.join(DATA_FOLDER, *parts)


def two_user_geometry(relay_x: float = 1.0) -> Geometry:
    """Two sources left of a destination at (2, 0), relay on the axis between them."""
    return Geometry(((0.0, 0.25), (0.0, -0.25)), (relay_x, 0.0), (2.0, 0.0), 3.0)


def line_geometry(k: int, relay_x: float = 1.0) -> Geometry:
    sources = tuple((0.0, 0.1 * (i - (k - 1) / 2)) for i in range(k))
    return Geometry(sources, (relay_x, 0.0), (2.0, 0.0), 3.0)


def sampled_instance(k: int = 2, n: int = 16, seed: int = 7, relay_x: float = 1.0):
    """A Rayleigh ensemble and a unit budget with theta = 0.5."""
    ens = sample_ensemble(line_geometry(k, relay_x), n, seed)
    return ens, Budget.uniform(k)


def constant_ensemble(relay_gain: float, destination_gain: float, relay_link: float, n: int = 1, k: int = 1):
    """Every sample and every user sees the same real power gains."""
    return FadingEnsemble.from_power_gains(
        np.full((n, k), relay_gain), np.full((n, k), destination_gain), np.full(n, relay_link)
    )


def dead_relay_ensemble(k: int = 2, n: int = 4, seed: int = 3) -> FadingEnsemble:
    """Sources cannot reach the relay; destination and relay link gains are positive."""
    rng = np.random.default_rng(seed)
    return FadingEnsemble.from_power_gains(
        np.zeros((n, k)), rng.uniform(0.2, 2.0, size=(n, k)), rng.uniform(0.5, 2.0, size=n)
    )


def clustered_geometry() -> Geometry:
    """Two sources 0.1 from the relay, the destination 1 away."""
    return Geometry(((0.0, 0.1), (0.0, -0.1)), (0.0, 0.0), (1.0, 0.0), 3.0)


def crossing_ensemble() -> FadingEnsemble:
    """One user whose strong state at the relay is its weak state at the destination.

    The relay sum beats the destination sum when power follows the relay gains
    and loses when it follows the destination gains.
    """
    return FadingEnsemble.from_power_gains([[4.0], [0.01]], [[0.01], [4.0]], [0.5, 0.5])


def swapped_users_ensemble(n: int = 10, seed: int = 5) -> FadingEnsemble:
    """Two users whose samples come in pairs with the users swapped."""
    rng = np.random.default_rng(seed)
    relay, destination = rng.exponential(size=(n, 2)), rng.exponential(0.3, size=(n, 2))
    link = rng.exponential(size=n)
    return FadingEnsemble.from_power_gains(
        np.vstack([relay, relay[:, ::-1]]),
        np.vstack([destination, destination[:, ::-1]]),
        np.concatenate([link, link])
    )
