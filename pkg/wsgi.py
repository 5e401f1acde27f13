#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
WSGI entry point for the charp-simpson API
"""

import os
import sys
import logging

import config

config.setup_logging()
logger = logging.getLogger("wsgi")

# Log environment information
logger.info(f"Starting application with Python {sys.version}")
logger.info(f"Working directory: {os.getcwd()}")
logger.info(f"CHARP_DEGREE_BOUND: {config.DEGREE_BOUND}")
logger.info(f"CHARP_JOBS: {config.JOBS}")

# Import application components
from api import app
from sweep_api import register_sweep_blueprint

register_sweep_blueprint(app)

# This is the gunicorn entry point
if __name__ == "__main__":
    app.run(host='0.0.0.0', port=config.PORT)
