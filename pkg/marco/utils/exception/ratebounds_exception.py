# Copyright (c) Microsoft Corporation.
# Licensed under the MIT license.

from .base_exception import MarcoException

__all__ = ["NegativePowerError", "PolicyDimensionError", "InvalidReceiverError"]


class NegativePowerError(MarcoException):
    """A policy entry is negative or not finite."""
    def __init__(self, msg: str = None):
        super().__init__(2100, msg)


class PolicyDimensionError(MarcoException):
    """Policy shape does not match the ensemble."""
    def __init__(self, msg: str = None):
        super().__init__(2101, msg)


class InvalidReceiverError(MarcoException):
    """Receiver must be 'r' (relay) or 'd' (destination)."""
    def __init__(self, msg: str = None):
        super().__init__(2102, msg)
