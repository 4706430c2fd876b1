# Copyright (c) Microsoft Corporation.
# Licensed under the MIT license.

from .base_exception import MarcoException

__all__ = [
    "InvalidGeometryError", "InvalidBudgetError", "InvalidSeedError", "MalformedEnsembleFileError", "EnsembleShapeError"
]


class InvalidGeometryError(MarcoException):
    """Colocated transmitter and receiver, bad coordinates or non-positive path-loss exponent."""
    def __init__(self, msg: str = None):
        super().__init__(2000, msg)


class InvalidBudgetError(MarcoException):
    """Negative power limit or bandwidth fraction outside (0, 1)."""
    def __init__(self, msg: str = None):
        super().__init__(2001, msg)


class InvalidSeedError(MarcoException):
    """Seeds must be non-negative integers."""
    def __init__(self, msg: str = None):
        super().__init__(2002, msg)


class MalformedEnsembleFileError(MarcoException):
    """Ensemble CSV is missing rows or columns."""
    def __init__(self, msg: str = None):
        super().__init__(2003, msg)


class EnsembleShapeError(MarcoException):
    """Gain arrays disagree on sample or user counts, are empty or hold non-finite values."""
    def __init__(self, msg: str = None):
        super().__init__(2004, msg)
