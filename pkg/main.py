"""
Entry point for the control-ability analysis toolkit.

Configures logging on stderr and hands the command line to ``cli.main``.
The HTTP service is served separately with ``gunicorn app:app``.
"""

import logging
import sys

import config

# Configure logging
logging.basicConfig(
    level=config.LOG_LEVEL,
    format=config.LOG_FORMAT,
    stream=sys.stderr,
)
logger = logging.getLogger(__name__)


def run():
    from cli import main
    return main()


if __name__ == "__main__":
    sys.exit(run())
