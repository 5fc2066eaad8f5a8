"""Shared plumbing for the CLI commands."""

import functools
import logging

import click

# internal imports
from ..errors import PrePostError, ScenarioParseError
from ..report import dump_report, render_text


logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_IO = 3
EXIT_NUMERIC = 4


def emit(report, as_json):
    # both outputs come from the same Report value
    click.echo(dump_report(report) if as_json else render_text(report), nl=False)


def handles_errors(command):
    """Turn our exceptions into a stderr diagnostic and the exit code they carry."""

    @functools.wraps(command)
    def wrapper(*args, **kwargs):
        try:
            return command(*args, **kwargs)
        except PrePostError as exc:
            logger.debug("command failed", exc_info=True)
            click.echo(f"error: {exc}", err=True)
            raise SystemExit(exc.exit_code)

    return wrapper


def read_bytes(path):
    try:
        with open(path, 'rb') as f:
            return f.read()
    except OSError as exc:
        raise ScenarioParseError(exc.strerror or str(exc), path) from exc


def write_bytes(path, data):
    try:
        with open(path, 'wb') as f:
            f.write(data)
    except OSError as exc:
        raise ScenarioParseError(exc.strerror or str(exc), path) from exc
    logger.info("wrote %s", path)
