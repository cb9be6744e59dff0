"""Utilities for logging."""

import datetime
import logging
import os
import sys
from logging import Logger

LOG_LEVEL_ENV_VAR = "REEBSWEEP_LOG_LEVEL"


def generate_datetime_string() -> str:
    """Generate a timestamp of the form YYYY_MM_DD_HH_MM_SS (24-hour time)."""
    return f"{datetime.datetime.now():%Y_%m_%d_%H_%M_%S}"


def get_log_level() -> int:
    """Read the log level name from the environment, falling back to INFO for unknown names."""
    level_name = os.environ.get(LOG_LEVEL_ENV_VAR, "INFO").upper()
    level = logging.getLevelName(level_name)
    return level if isinstance(level, int) else logging.INFO


def get_logger() -> Logger:
    """Getter for the main logger, shared by the command line entry points."""
    logger_name = "reebsweep"
    logger = logging.getLogger(logger_name)
    logger.setLevel(get_log_level())
    if not logger.handlers:
        handler = logging.StreamHandler(sys.stderr)
        fmt = "[%(asctime)s %(levelname)s %(filename)s line %(lineno)d %(process)d] %(message)s"
        handler.setFormatter(logging.Formatter(fmt))
        logger.addHandler(handler)
    return logger


def setup_file_logger(home_dir: str, program_name: str) -> str:
    """Route root logging to a timestamped file under `{home_dir}/logging/`.

    Returns:
        Path to the created log file.
    """
    date_str = generate_datetime_string()
    log_output_fpath = f"{home_dir}/logging/{program_name}_{date_str}.log"

    os.makedirs(f"{home_dir}/logging", exist_ok=True)

    logging.basicConfig(
        format="[%(asctime)s %(levelname)-8s %(message)s",
        datefmt="%m/%d/%Y %I:%M:%S %p",
        filename=log_output_fpath,
        level=get_log_level(),
    )
    logging.info("Logging %s to %s", program_name, log_output_fpath)
    return log_output_fpath
