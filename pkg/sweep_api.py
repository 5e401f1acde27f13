#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
Selftest endpoint.

POST /selftest with {"seed": int, "scale": float, "criteria": [int, ...]}
runs the property sweeps and returns the selftest report.
"""

import logging

from flask import Blueprint, request, jsonify

import config
from cli import run

logger = logging.getLogger("charp-api-sweep")

sweep_blueprint = Blueprint('sweep_api', __name__)


def register_sweep_blueprint(app):
    """Register the sweep blueprint with the Flask app"""
    app.register_blueprint(sweep_blueprint)
    logger.info("Sweep API blueprint registered")
    return True


@sweep_blueprint.route('/selftest', methods=['POST'])
def selftest():
    """Seeded selftest; 200 when every identity holds, 500 otherwise"""
    from api import report_response

    data = request.get_json(silent=True) or {}
    if not isinstance(data, dict):
        return jsonify({"error": "SchemaError", "identity": None, "message": "Body must be a JSON object"}), 400
    seed = data.get("seed", config.DEFAULT_SEED)
    payload = {"scale": data.get("scale", config.SWEEP_SCALE)}
    if "criteria" in data:
        payload["criteria"] = data["criteria"]
    logger.info(f"Selftest requested: seed={seed}, scale={payload['scale']}")
    report, code = run({"mode": "selftest", "p": 2, "seed": seed, "payload": payload})
    return report_response(report, code)
