"""
Configuration for the control-ability analysis toolkit.

Values are read once from the environment at import time. Every numerical
operation that takes a tolerance defaults to the matching value here.
"""

import os
import logging

logger = logging.getLogger(__name__)


def _env_float(name, default):
    raw = os.environ.get(name)
    if raw is None or raw == "":
        return default
    try:
        return float(raw)
    except ValueError:
        logger.warning(f"Ignoring non-numeric {name}={raw!r}, using {default}")
        return default


def _env_int(name, default, minimum=1):
    raw = os.environ.get(name)
    if raw is None or raw == "":
        return default
    try:
        return max(minimum, int(raw))
    except ValueError:
        logger.warning(f"Ignoring non-integer {name}={raw!r}, using {default}")
        return default


# Oracle worker cap
THREADS = _env_int("CTL_THREADS", os.cpu_count() or 1)

# Eigenvalues closer than this are one cluster (and route to the Jordan formulas)
CLUSTER_TOL = _env_float("CTL_CLUSTER_TOL", 1e-8)

# Largest imaginary part accepted as round-off in eig_real
COMPLEX_TOL = _env_float("CTL_COMPLEX_TOL", 1e-7)

# Relative singular-value threshold for rank tests
RANK_TOL = _env_float("CTL_RANK_TOL", 1e-10)

# Widest eigenvalue spread still examined as a single defective eigenvalue
DEFECT_TOL = _env_float("CTL_DEFECT_TOL", 5e-5)

DEFAULT_HORIZON = _env_int("CTL_DEFAULT_HORIZON", 200)

LOG_LEVEL = os.environ.get("CTL_LOG_LEVEL", "INFO").upper()

LOG_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'

SECRET_KEY = os.environ.get('FLASK_SECRET_KEY', 'dev-key-for-development-only')
