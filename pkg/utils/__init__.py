"""
Utility modules for the control-ability analysis toolkit.

This package contains the numerical core: small dense matrix routines and
Jordan structure detection (matspec), zonotope construction with its volume
oracle and planar boundaries (zonotope), the closed-form region volumes
(analytic_volume), shape factors (shape_factors), system file loading
(system_loader) and the error hierarchy (errors).

Submodules are imported explicitly; ``models`` depends on ``utils.errors``,
so this package does not import its numerical modules eagerly.
"""
