# Copyright (c) Microsoft Corporation.
# Licensed under the MIT license.


MARC_OPT_SWEEP = """
Examples:
  Sweep the relay along the x axis and write the bounds per position
    marc-opt sweep --config ./sweep.yml --out ./sweep.csv

  Same sweep with another channel draw
    marc-opt sweep --config ./sweep.yml --out ./sweep.csv --seed 7
"""

MARC_OPT_TEMPLATE = """
Examples:
  Export the default symmetric two-user sweep config
    marc-opt template ./sweep.yml
"""
