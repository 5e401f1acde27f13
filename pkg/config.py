#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
Runtime configuration for the char-p Simpson toolkit.

Values come from the environment (optionally from a .env file) and can be
overridden by command line flags in cli.py.
"""

import os
import logging

# Try to load environment variables from .env file if it exists
try:
    from dotenv import load_dotenv
    load_dotenv()
except ImportError:
    pass

LOG_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'

DEFAULT_DEGREE_BOUND = 6
DEFAULT_TERM_CAP = 10 ** 6
DEFAULT_MAX_FIELD_SIZE = 2 ** 20
DEFAULT_JOBS = 1
DEFAULT_SWEEP_SCALE = 1.0
DEFAULT_SEED = 42


def _env_int(name, default):
    value = os.getenv(name)
    if value is None or value.strip() == "":
        return default
    try:
        return int(value)
    except ValueError:
        logging.getLogger("charp-config").warning(
            f"Ignoring non-integer {name}={value!r}, using {default}")
        return default


def _env_float(name, default):
    value = os.getenv(name)
    if value is None or value.strip() == "":
        return default
    try:
        return float(value)
    except ValueError:
        logging.getLogger("charp-config").warning(
            f"Ignoring non-numeric {name}={value!r}, using {default}")
        return default


DEGREE_BOUND = _env_int("CHARP_DEGREE_BOUND", DEFAULT_DEGREE_BOUND)
TERM_CAP = _env_int("CHARP_TERM_CAP", DEFAULT_TERM_CAP)
MAX_FIELD_SIZE = _env_int("CHARP_MAX_FIELD_SIZE", DEFAULT_MAX_FIELD_SIZE)
JOBS = _env_int("CHARP_JOBS", DEFAULT_JOBS)
SWEEP_SCALE = _env_float("CHARP_SWEEP_SCALE", DEFAULT_SWEEP_SCALE)
LOG_LEVEL = os.getenv("LOG_LEVEL", "INFO").upper()
LOG_FILE = os.getenv("LOG_FILE")
PORT = _env_int("PORT", 5000)


def setup_logging(level=None, log_file=None):
    """Configure root logging once for an entry point (stderr, optional file)"""
    handlers = [logging.StreamHandler()]
    log_file = log_file or LOG_FILE
    if log_file:
        handlers.append(logging.FileHandler(log_file))
    logging.basicConfig(
        level=getattr(logging, (level or LOG_LEVEL).upper(), logging.INFO),
        format=LOG_FORMAT,
        handlers=handlers,
        force=True,
    )
