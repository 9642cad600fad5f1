"""
Base analyzer module for the control-ability analysis toolkit.

This module provides the functionality shared by every analyzer: action
logging, a small cache of loaded systems, and conversion of numerical
failures into error payloads.
"""

import json
import logging

from utils.errors import CtlError
from utils.system_loader import load_system, parse_system

logger = logging.getLogger(__name__)


class BaseAnalyzer:
    """
    Base class for all analyzers.

    Subclasses call numerical routines through ``run`` so that every failure
    comes back as a dict with ``error``, ``code`` and ``exit_code`` keys
    instead of an exception.
    """

    def __init__(self, analyzer_type):
        """
        Initialize the base analyzer with a specified type.

        Args:
            analyzer_type (str): Type of the analyzer (e.g., 'volume', 'region')
        """
        self.analyzer_type = analyzer_type
        self.cache = {}

    def log_action(self, action, details=None):
        """
        Log an analyzer action.

        Args:
            action (str): Description of the action performed
            details (dict, optional): Additional details about the action

        Returns:
            bool: True if logging succeeded, False otherwise
        """
        try:
            serialized_details = json.dumps(details or {}, default=str)
            logger.info(f"Analyzer {self.analyzer_type} {action}: {serialized_details}")
            return True
        except (TypeError, ValueError) as e:
            logger.error(f"Error logging analyzer action: {str(e)}")
            return False

    def run(self, action, func, *args, **kwargs):
        """
        Call ``func`` and turn toolkit errors into an error payload.

        Returns:
            The function's result, or a dict with an ``error`` key
        """
        try:
            return func(*args, **kwargs)
        except CtlError as e:
            logger.error(f"Error in {self.analyzer_type} {action}: {e.code}: {str(e)}")
            return e.to_dict()

    def get_system(self, source):
        """
        Load a system from a file path or a decoded system-file document.

        File-based systems are cached by path.

        Raises:
            CtlError: when the source cannot be parsed
        """
        if isinstance(source, dict):
            return parse_system(source)
        cache_key = f"system_{source}"
        if cache_key in self.cache:
            return self.cache[cache_key]
        system = load_system(source)
        self.cache[cache_key] = system
        return system

    def clear_cache(self):
        """Clear the analyzer's cache."""
        self.cache = {}
        logger.info(f"Analyzer {self.analyzer_type} cache cleared")


def is_error(result):
    return isinstance(result, dict) and "error" in result
