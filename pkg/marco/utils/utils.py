# Copyright (c) Microsoft Corporation.
# Licensed under the MIT license.


import csv
import math
import os
from typing import Callable, Iterable, List


def dump_csv_file(file_path: str, headers: List[str], line_generator: Callable[[], Iterable[list]]):
    """Dump rows to a csv file, creating the parent folder when needed.

    Args:
        file_path (str): Path of output csv file.
        headers (List[str]): List of header.
        line_generator (callable): Generator function yielding the lines to write.
    """
    folder = os.path.dirname(os.path.abspath(file_path))
    os.makedirs(folder, exist_ok=True)

    with open(file_path, "wt+", newline="") as fp:
        writer = csv.writer(fp, lineterminator="\n")

        writer.writerow(headers)

        for line in line_generator():
            writer.writerow(line)


def format_significant(value: float, digits: int = 12) -> str:
    """Format a number with a fixed count of significant digits.

    Args:
        value (float): Number to format. NaN and infinities are written as ``nan``/``inf``.
        digits (int): Significant digits. Defaults to 12.

    Returns:
        str: Formatted number.
    """
    value = float(value)
    if math.isnan(value):
        return "nan"
    if math.isinf(value):
        return "inf" if value > 0 else "-inf"
    if value == 0.0:
        # Avoid "-0" in outputs.
        value = 0.0
    return f"{value:.{digits}g}"
