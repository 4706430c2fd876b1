# Copyright (c) Microsoft Corporation.
# Licensed under the MIT license.


ERROR_CODE = {
    # Error code table for marco.
    1000: "Marco Internal Error",

    # 1000-1099: set functions
    1001: "Invalid Set Function",
    1002: "Dimension Mismatch",
    1003: "User Count Out Of Range",
    1004: "Empty Subset",
    1005: "Malformed Permutation",
    1006: "Non-positive Weight",

    # 2000-2099: fading
    2000: "Invalid Geometry",
    2001: "Invalid Budget",
    2002: "Invalid Seed",
    2003: "Malformed Ensemble File",
    2004: "Ensemble Shape Mismatch",

    # 2100-2199: rate bounds
    2100: "Negative Power",
    2101: "Policy Dimension Mismatch",
    2102: "Invalid Receiver",

    # 2200-2299: solvers
    2200: "Solver Non-convergence",
    2201: "Case Infeasible For This Instance",
    2202: "Invalid Case For Solver",
    2203: "No Case Satisfied",
    2204: "Invalid Solver Config",
    2205: "Mismatched Solver Reports",

    # 2300-2399: oracle
    2300: "Grid Guard Exceeded",
    2301: "Invalid Grid Spec",

    # 3000-3999: CLI
    3000: "CLI Internal Error",
    3001: "Command Error",
    3002: "Parsing Error",
    3003: "Config Validation Error",
    3004: "Solver Diagnostics Present",
}
