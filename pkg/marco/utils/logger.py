# Copyright (c) Microsoft Corporation.
# Licensed under the MIT license.

# native lib
import logging
import os
import sys
from datetime import datetime
from enum import Enum

# private lib
from marco.cli.utils.params import GlobalEnvs, GlobalParams as CliGlobalParams, GlobalPaths


class LogFormat(Enum):
    """The Enum class of the log format.

    Example:
        - ``LogFormat.internal``: simple time | component | level | msg
        - ``LogFormat.cli_debug``: simple time | level | msg
        - ``LogFormat.cli_info`` (file): simple time | level | msg
        - ``LogFormat.cli_info`` (stdout): msg
    """
    internal = 1
    cli_debug = 2
    cli_info = 3


FORMAT_NAME_TO_FILE_FORMAT = {
    LogFormat.internal: logging.Formatter(
        fmt="%(asctime)s | %(component)s | %(levelname)s | %(message)s", datefmt="%H:%M:%S"),
    LogFormat.cli_debug: logging.Formatter(
        fmt="%(asctime)s | %(levelname)-7s | %(message)s", datefmt="%H:%M:%S"),
    LogFormat.cli_info: logging.Formatter(
        fmt="%(asctime)s | %(levelname)-7s | %(message)s", datefmt="%H:%M:%S")
}

FORMAT_NAME_TO_STDOUT_FORMAT = {
    # Sweep progress on stdout stays clean in INFO mode.
    LogFormat.cli_info: logging.Formatter(fmt="%(message)s"),
}


def msgformat(logfunc):
    """Render non-string messages and trailing arguments before logging."""

    def _msgformatter(self, msg, *args):
        if args:
            logfunc(self, "%s %s", isinstance(msg, str) and msg or repr(msg), repr(args))
        else:
            logfunc(self, "%s", isinstance(msg, str) and msg or repr(msg))

    return _msgformatter


class Logger:
    """File plus stdout logger.

    The file handler takes every record from ``DEBUG`` up and writes
    ``dump_folder/tag.log``. The stdout handler uses ``stdout_level`` unless the
    ``LOG_LEVEL`` environment variable names one of ``DEBUG``, ``INFO``, ``WARN``,
    ``ERROR`` or ``CRITICAL``.

    Args:
        tag (str): Logger name and log file stem.
        format_ (LogFormat): Predefined formatter.
        dump_folder (str): Folder of the log file, created when missing.
        dump_mode (str): File mode, ``a`` to append. Defaults to ``a``.
        extra (dict): Fields the formatter expects beyond the standard ones.
        stdout_level: Level of the stdout handler. Defaults to ``INFO``.
    """

    def __init__(
        self, tag: str, format_: LogFormat, dump_folder: str, dump_mode: str = "a", extra: dict = None,
        stdout_level="INFO"
    ):
        stdout_level = os.environ.get(GlobalEnvs.LOG_LEVEL) or stdout_level
        file_format = FORMAT_NAME_TO_FILE_FORMAT[format_]
        self._logger = logging.getLogger(tag)
        self._logger.setLevel(logging.DEBUG)
        self._logger.propagate = False
        # Re-created loggers with the same tag must not stack handlers.
        for handler in list(self._logger.handlers):
            self._logger.removeHandler(handler)
            handler.close()

        os.makedirs(dump_folder, exist_ok=True)
        self.log_path = os.path.join(dump_folder, f"{tag}.log")

        fh = logging.FileHandler(filename=self.log_path, mode=dump_mode)
        fh.setLevel(logging.DEBUG)
        fh.setFormatter(file_format)

        sh = logging.StreamHandler(sys.stdout)
        sh.setLevel(stdout_level)
        sh.setFormatter(FORMAT_NAME_TO_STDOUT_FORMAT.get(format_, file_format))

        self._logger.addHandler(fh)
        self._logger.addHandler(sh)
        self._extra = extra or {}

    @msgformat
    def debug(self, msg, *args):
        self._logger.debug(msg, *args, extra=self._extra)

    @msgformat
    def info(self, msg, *args):
        self._logger.info(msg, *args, extra=self._extra)

    @msgformat
    def warn(self, msg, *args):
        self._logger.warning(msg, *args, extra=self._extra)

    @msgformat
    def error(self, msg, *args):
        self._logger.error(msg, *args, extra=self._extra)

    @msgformat
    def critical(self, msg, *args):
        self._logger.critical(msg, *args, extra=self._extra)


class DummyLogger:
    """Discards everything; the default logger of every solver entry point."""

    def debug(self, msg, *args):
        pass

    def info(self, msg, *args):
        pass

    def warn(self, msg, *args):
        pass

    def error(self, msg, *args):
        pass

    def critical(self, msg, *args):
        pass


class InternalLogger(Logger):
    """Solver trace logger, dumped under ``~/.marco/log/<time>/<pid>`` unless ``dump_folder`` is given.

    Args:
        component_name (str): Component shown in every record, e.g. ``sum_rate``.
        dump_folder (str): Folder of ``marco_internal.log``.
        stdout_level: Level of the stdout handler. Defaults to ``WARNING``.
    """

    def __init__(self, component_name: str, dump_folder: str = None, stdout_level="WARNING"):
        if dump_folder is None:
            dump_folder = os.path.join(
                os.path.expanduser(GlobalPaths.MARCO_LOG), datetime.now().strftime("%Y%m%d%H%M"), str(os.getpid())
            )
        super().__init__(
            "marco_internal", LogFormat.internal, dump_folder, extra={"component": component_name},
            stdout_level=stdout_level
        )


class CliLogger:
    """Logger for the ``marc-opt`` command line.

    One logger is shared for a command lifecycle and rebuilt when ``--debug``
    changes ``GlobalParams.LOG_LEVEL``. It also offers the ``warn``/``critical``
    interface of the solver loggers, so solvers can log straight to the CLI.
    """

    class _CliLogger(Logger):
        def __init__(self):
            self.log_level = CliGlobalParams.LOG_LEVEL
            super().__init__(
                tag="cli",
                format_=LogFormat.cli_debug if self.log_level == logging.DEBUG else LogFormat.cli_info,
                dump_folder=os.path.join(
                    os.path.expanduser(GlobalPaths.MARCO_CLI_LOG), datetime.now().strftime("%Y%m%d")
                ),
                stdout_level=self.log_level
            )

    _logger = None

    def __init__(self, name):
        self.name = name

    def passive_init(self) -> None:
        """Build the shared logger if missing or if its level no longer matches."""
        if not CliLogger._logger or CliLogger._logger.log_level != CliGlobalParams.LOG_LEVEL:
            CliLogger._logger = self._CliLogger()

    def debug(self, message: str, *args) -> None:
        self.passive_init()
        self._logger.debug(message)

    def info(self, message: str, *args) -> None:
        self.passive_init()
        self._logger.info(message)

    def warn(self, message: str, *args) -> None:
        self.warning_yellow(message)

    def error(self, message: str, *args) -> None:
        self.passive_init()
        self._logger.error(message)

    def critical(self, message: str, *args) -> None:
        self.error_red(message)

    def info_green(self, message: str) -> None:
        self.passive_init()
        self._logger.info("\033[32m" + message + "\033[0m")

    def warning_yellow(self, message: str) -> None:
        self.passive_init()
        self._logger.warn("\033[33m" + message + "\033[0m")

    def error_red(self, message: str) -> None:
        self.passive_init()
        self._logger.error("\033[31m" + message + "\033[0m")
