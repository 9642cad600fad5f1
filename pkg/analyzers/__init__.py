"""
Analyzer modules for the control-ability analysis toolkit.

This package contains the analyzers behind the command line and the HTTP
API: region volumes with their factor decomposition, and planar region
boundaries.
"""

import logging

from .base_analyzer import BaseAnalyzer, is_error
from .region_analyzer import RegionAnalyzer
from .volume_analyzer import VolumeAnalyzer

logger = logging.getLogger(__name__)

volume_analyzer = None
region_analyzer = None


def initialize_analyzers():
    """
    Initialize all analyzer instances if they are not already initialized.

    Returns:
        dict: Dictionary of initialized analyzers
    """
    global volume_analyzer, region_analyzer

    if volume_analyzer is None:
        volume_analyzer = VolumeAnalyzer()
        logger.info("Volume analyzer initialized")
    if region_analyzer is None:
        region_analyzer = RegionAnalyzer()
        logger.info("Region analyzer initialized")

    return {'volume': volume_analyzer, 'region': region_analyzer}


def get_analyzer(analyzer_type):
    """
    Get an analyzer instance by type.

    Args:
        analyzer_type (str): Type of analyzer to get ('volume', 'region')

    Returns:
        Analyzer instance or None if the type is unknown
    """
    analyzers = initialize_analyzers()
    if analyzer_type not in analyzers:
        logger.warning(f"Unknown analyzer type: {analyzer_type}")
        return None
    return analyzers[analyzer_type]


__all__ = [
    "BaseAnalyzer", "RegionAnalyzer", "VolumeAnalyzer",
    "get_analyzer", "initialize_analyzers", "is_error",
]
