# Copyright (c) Microsoft Corporation.
# Licensed under the MIT license.


import logging
import sys
import traceback
from argparse import Namespace
from copy import deepcopy

import marco.cli.utils.examples as CliExamples
from marco import __version__
from marco.cli.utils.params import GlobalParams
from marco.cli.utils.parser import ArgumentParser
from marco.utils.exception.cli_exception import CliException
from marco.utils.logger import CliLogger

MARCO_BANNER = """
Welcome to the marc-opt CLI

Decode-and-forward rates and cutset bounds for fading multiaccess relay channels.

Use `marc-opt --version` to get the current version.

"""

# CLI error code to process exit code; anything else exits with 1.
EXIT_CODES = {3003: 2, 3004: 3}

logger = CliLogger(name=__name__)


def main():
    global_parser = ArgumentParser()
    global_parser.add_argument("--debug", action="store_true", help="Enable debug mode")
    global_parser.add_argument("-h", "--help", action="store_true", help="Show this message and exit")

    parser = ArgumentParser(prog="marc-opt", description=MARCO_BANNER, parents=[global_parser])
    parser.set_defaults(func=_help_func(parser=parser))
    parser.add_argument("--version", action="store_true", help="Get version info")
    subparsers = parser.add_subparsers()

    # marc-opt sweep
    from marco.cli.sweep.command import sweep
    parser_sweep = subparsers.add_parser(
        "sweep",
        help="Sweep the relay position and write DF, cutset and no-relay sum rates as CSV.",
        examples=CliExamples.MARC_OPT_SWEEP,
        parents=[global_parser]
    )
    parser_sweep.add_argument("--config", required=True, help="Path of the YAML sweep config")
    parser_sweep.add_argument("--out", default=None, help="Path of the output CSV, overrides output.path")
    parser_sweep.add_argument("--seed", type=int, default=None, help="Ensemble seed, overrides the config and env")
    parser_sweep.set_defaults(func=sweep)

    # marc-opt template
    from marco.cli.sweep.command import template
    parser_template = subparsers.add_parser(
        "template",
        help="Export the default sweep config.",
        examples=CliExamples.MARC_OPT_TEMPLATE,
        parents=[global_parser]
    )
    parser_template.add_argument("export_path", help="Path of the exported config")
    parser_template.set_defaults(func=template)

    args = parser.parse_args()
    if args.debug:
        GlobalParams.LOG_LEVEL = logging.DEBUG
    else:
        GlobalParams.LOG_LEVEL = logging.INFO
    if args.version:
        logger.info(f"{__version__}")
        return
    if args.help:
        parser.print_help()
        return

    actual_args = _get_actual_args(namespace=args)

    try:
        args.func(**actual_args)
    except CliException as e:
        if args.debug:
            logger.error_red(f"{e.get_message()}\n{traceback.format_exc()}")
        else:
            logger.error_red(e.get_message())
        sys.exit(EXIT_CODES.get(e.error_code, 1))


def _help_func(parser):
    def wrapper(*args, **kwargs):
        parser.print_help()

    return wrapper


def _get_actual_args(namespace: Namespace) -> dict:
    actual_args = vars(deepcopy(namespace))
    return actual_args


if __name__ == "__main__":
    main()
