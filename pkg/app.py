"""
Control-ability analysis service.

This is the Flask application exposing the analyzers over HTTP. It sets up
logging and the application config, and registers the API routes.
Serve it with ``gunicorn app:app``.
"""

import logging
import sys

from flask import Flask, jsonify

import config

# Configure logging
logging.basicConfig(
    level=config.LOG_LEVEL,
    format=config.LOG_FORMAT,
    stream=sys.stderr,
)
logger = logging.getLogger(__name__)

# Create the Flask application
app = Flask(__name__)
app.config['SECRET_KEY'] = config.SECRET_KEY


def register_blueprints():
    """Register the API routes."""
    # Import routes at runtime to avoid circular imports
    from routes import register_routes
    register_routes(app)


def setup_application():
    """Create the analyzer instances before the first request."""
    try:
        from analyzers import initialize_analyzers
        analyzers = initialize_analyzers()
        logger.info(f"Initialized analyzers: {', '.join(analyzers.keys())}")
    except Exception as e:
        logger.error(f"Error initializing analyzers: {str(e)}")


setup_application()
register_blueprints()


# Error handlers
@app.errorhandler(404)
def page_not_found(e):
    return jsonify({'error': 'Not found', 'code': 'NotFound'}), 404


@app.errorhandler(500)
def server_error(e):
    return jsonify({'error': 'Internal server error', 'code': 'ServerError'}), 500


if __name__ == '__main__':
    # For local development
    app.run(host='0.0.0.0', port=5000, debug=True)
