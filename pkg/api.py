#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
HTTP front end for the toolkit: POST a problem file, get the CLI report.
"""

import logging
import os

from flask import Flask, request, jsonify
from flask_cors import CORS

import config
from cli import MODES, run
from serialization import dumps

logger = logging.getLogger("charp-api")

# Initialize Flask app
app = Flask(__name__)

# Enable CORS for API access
CORS(app, resources={r"/*": {"origins": "*"}}, supports_credentials=True)

STATUS_BY_EXIT = {0: 200, 1: 400, 2: 500}


def report_response(report, code):
    """Report body as the CLI prints it, with the status mapped from the exit code"""
    return app.response_class(dumps(report), status=STATUS_BY_EXIT.get(code, 500), mimetype="application/json")


@app.route('/health', methods=['GET', 'HEAD'])
def health():
    """Health check endpoint"""
    return jsonify({
        "service": "charp-simpson",
        "status": "ok",
    })


@app.route('/', methods=['GET', 'HEAD'])
def root():
    """Root endpoint: status and the accepted modes"""
    return jsonify({
        "service": "charp-simpson",
        "status": "ok",
        "modes": list(MODES),
        "degree_bound": config.DEGREE_BOUND,
    })


@app.route('/run', methods=['POST'])
def run_problem():
    """Run one problem file"""
    try:
        data = request.get_json(silent=True)
        if data is None:
            return jsonify({"error": "SchemaError", "identity": None,
                            "message": "No data provided. Please send a JSON problem file."}), 400
        logger.info(f"Running mode {data.get('mode') if isinstance(data, dict) else None}")
        report, code = run(data)
        if code:
            logger.warning(f"Problem finished with exit code {code}")
        return report_response(report, code)
    except Exception as e:
        logger.error(f"Error processing request: {str(e)}", exc_info=True)
        return jsonify({"error": type(e).__name__, "identity": None, "message": str(e)}), 500


@app.errorhandler(404)
def not_found(e):
    """Handle 404 errors gracefully"""
    return jsonify({
        "error": "Endpoint not found",
        "status": "error",
        "message": "The requested endpoint does not exist. Try GET / for the accepted modes.",
    }), 404


if __name__ == "__main__":
    config.setup_logging()
    from sweep_api import register_sweep_blueprint
    register_sweep_blueprint(app)
    port = int(os.environ.get("PORT", config.PORT))
    app.run(host='0.0.0.0', port=port, debug=False)
