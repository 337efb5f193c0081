"""
nodeavg CLI logger
==================
Thin wrapper around Loguru with the structured conventions shared by the
nodeavg tools. Command output goes to stdout, so logs go to stderr.

Usage:
    from nodeavg_cli.log_setup import create_logger

    log = create_logger("nodeavg")
    log.info("sweep finished rows={}", 12)
"""

import os
import sys

from loguru import logger as _logger

from .config import CliConfig


def create_logger(service: str, settings: CliConfig | None = None):
    """Create a configured Loguru logger for a command.

    Parameters
    ----------
    service:
        Logical name included in every log entry.
    settings:
        ``log_level``, ``environment`` (``development`` for human-readable
        output, anything else for JSON lines) and ``log_dir`` (rotating file
        sink, off when unset). Defaults to the environment.
    """
    settings = settings or CliConfig()
    _logger.remove()  # Remove default handler

    log_level = settings.log_level.upper()

    # JSON structured format for production
    json_format = (
        '{{"timestamp":"{time:YYYY-MM-DDTHH:mm:ss.SSS}","level":"{level}",'
        '"service":"' + service + '","message":"{message}",{extra}}}'
    )

    # Human-readable for dev
    dev_format = (
        "<green>{time:HH:mm:ss.SSS}</green> | "
        "<level>{level: <8}</level> | "
        f"<cyan>{service}</cyan> | "
        "<level>{message}</level>"
    )

    dev = settings.environment == "development"
    _logger.add(sys.stderr, format=dev_format if dev else json_format, level=log_level, colorize=dev)

    if settings.log_dir:
        os.makedirs(settings.log_dir, exist_ok=True)
        _logger.add(
            f"{settings.log_dir}/{service}.log",
            format=json_format,
            level=log_level,
            rotation="50 MB",
            retention="7 days",
            compression="gz",
        )

    return _logger.bind(service=service)
