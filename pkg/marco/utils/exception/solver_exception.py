# Copyright (c) Microsoft Corporation.
# Licensed under the MIT license.

from .base_exception import MarcoException

__all__ = [
    "SolverNonConvergenceError", "CaseInfeasibleError", "InvalidCaseError", "NoCaseSatisfiedError",
    "InvalidSolverConfigError", "MismatchedReportsError"
]


class SolverNonConvergenceError(MarcoException):
    """An iterative solver hit its iteration cap.

    Args:
        msg (str): Description of the failure.
        residuals (dict): Residuals at the last iterate.
        trace (list): Objective trace up to the failure.
    """
    def __init__(self, msg: str = None, residuals: dict = None, trace: list = None):
        super().__init__(2200, msg)
        self.residuals = residuals if residuals is not None else {}
        self.trace = trace if trace is not None else []


class CaseInfeasibleError(MarcoException):
    """The equality residual of a case has no sign change over its weight range."""
    def __init__(self, msg: str = None, residuals: tuple = None):
        super().__init__(2201, msg)
        self.residuals = residuals


class InvalidCaseError(MarcoException):
    """The case label is not one the solver handles."""
    def __init__(self, msg: str = None):
        super().__init__(2202, msg)


class NoCaseSatisfiedError(MarcoException):
    """Every case was solved and rejected, carrying all condition records."""
    def __init__(self, msg: str = None, records: list = None):
        super().__init__(2203, msg)
        self.records = records if records is not None else []


class InvalidSolverConfigError(MarcoException):
    """Non-positive tolerance or iteration cap."""
    def __init__(self, msg: str = None):
        super().__init__(2204, msg)


class MismatchedReportsError(MarcoException):
    """Reports were produced on different instances or by the wrong bound family."""
    def __init__(self, msg: str = None):
        super().__init__(2205, msg)
