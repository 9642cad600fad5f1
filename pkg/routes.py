"""
Route definitions for the control-ability analysis service.

This module defines the HTTP API on top of the analyzers. Request bodies
are system-file documents, optionally extended with request options.
"""

import logging

from flask import jsonify, request

from analyzers import get_analyzer, is_error

logger = logging.getLogger(__name__)

# Request options that are not part of a system file
ANALYZE_OPTIONS = ("horizon", "region", "threads")


def _status(payload):
    # unsupported requests are well-formed but cannot be served
    return 422 if payload.get("exit_code") == 3 else 400


def _split(data, options):
    system = {k: v for k, v in data.items() if k not in options}
    extra = {k: data[k] for k in options if k in data}
    return system, extra


def _body():
    data = request.get_json(silent=True)
    if not isinstance(data, dict):
        return None
    return data


def _bad_body():
    return jsonify({
        'error': 'request body must be a JSON object',
        'code': 'SystemFileError',
        'exit_code': 1,
    }), 400


def register_routes(app):
    """Register all routes with the Flask application."""

    @app.route('/health')
    def health():
        return jsonify({'status': 'ok'})

    @app.route('/api/analyze', methods=['POST'])
    def analyze_api():
        """API endpoint for the full analysis report."""
        data = _body()
        if data is None:
            return _bad_body()
        system, options = _split(data, ANALYZE_OPTIONS)
        try:
            report = get_analyzer('volume').analyze(
                system,
                horizon=options.get('horizon'),
                region=options.get('region', 'reach'),
                threads=options.get('threads'),
            )
        except (TypeError, ValueError) as e:
            logger.error(f"Error in analyze API: {str(e)}")
            return jsonify({'error': str(e), 'code': 'InputError', 'exit_code': 1}), 400
        if is_error(report):
            return jsonify(report), _status(report)
        return jsonify(report)

    @app.route('/api/factors', methods=['POST'])
    def factors_api():
        """API endpoint for the shape factors."""
        data = _body()
        if data is None:
            return _bad_body()
        system, options = _split(data, ("region",))
        result = get_analyzer('volume').factors(system, region=options.get('region', 'reach'))
        if is_error(result):
            return jsonify(result), _status(result)
        return jsonify(result)

    @app.route('/api/limit', methods=['POST'])
    def limit_api():
        """API endpoint for the Jordan perturbation sequence."""
        data = _body()
        if data is None:
            return _bad_body()
        try:
            lam = float(data['lambda'])
            size = int(data['size'])
            deltas = [float(d) for d in data['deltas']]
            b_last = float(data.get('b_last', 1.0))
        except (KeyError, TypeError, ValueError) as e:
            logger.error(f"Error in limit API: {str(e)}")
            return jsonify({
                'error': f"expected lambda, size and deltas: {str(e)}",
                'code': 'InputError',
                'exit_code': 1,
            }), 400
        result = get_analyzer('volume').limit(lam, size, deltas, b_last)
        if is_error(result):
            return jsonify(result), _status(result)
        return jsonify(result)
