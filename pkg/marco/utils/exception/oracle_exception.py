# Copyright (c) Microsoft Corporation.
# Licensed under the MIT license.

from .base_exception import MarcoException

__all__ = ["GridGuardExceededError", "InvalidGridSpecError"]


class GridGuardExceededError(MarcoException):
    """Grid would evaluate more points than the guard allows."""
    def __init__(self, msg: str = None):
        super().__init__(2300, msg)


class InvalidGridSpecError(MarcoException):
    """Grid needs at least two steps per axis and an instance within oracle limits."""
    def __init__(self, msg: str = None):
        super().__init__(2301, msg)
