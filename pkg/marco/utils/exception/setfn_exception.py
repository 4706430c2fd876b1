# Copyright (c) Microsoft Corporation.
# Licensed under the MIT license.

from .base_exception import MarcoException

__all__ = [
    "InvalidSetFunctionError", "DimensionMismatchError", "UserCountError", "EmptySubsetError",
    "MalformedPermutationError", "NonPositiveWeightError"
]


class InvalidSetFunctionError(MarcoException):
    """Missing, negative or non-finite subset value."""
    def __init__(self, msg: str = None):
        super().__init__(1001, msg)


class DimensionMismatchError(MarcoException):
    """Two operands are defined over different user counts or sample counts."""
    def __init__(self, msg: str = None):
        super().__init__(1002, msg)


class UserCountError(MarcoException):
    """User count outside what the operation supports."""
    def __init__(self, msg: str = None):
        super().__init__(1003, msg)


class EmptySubsetError(MarcoException):
    """The operation needs a nonempty subset."""
    def __init__(self, msg: str = None):
        super().__init__(1004, msg)


class MalformedPermutationError(MarcoException):
    """A decoding order is not a permutation of the expected subset."""
    def __init__(self, msg: str = None):
        super().__init__(1005, msg)


class NonPositiveWeightError(MarcoException):
    """Rate weights must be strictly positive."""
    def __init__(self, msg: str = None):
        super().__init__(1006, msg)
