"""
Shape factor utility for the control-ability analysis toolkit.

This module splits the analytic reach volume into three factor families:
the eigenvalue evenness (shape) factor F1, the half-widths F2 of the box
circumscribing the region in eigen-coordinates, and the modal
controllability F3. Both the distinct-eigenvalue and the Jordan case are
covered, together with the residual of the volume identity each case
satisfies exactly.

For Jordan blocks the product of the F2 half-widths is NOT the volume
divided by F1; the exact identity uses the last-row factors
(|q_{i,m_i} b| / (1 - λ_i))^{m_i}. Both quantities are reported.
"""

import logging
import math

import numpy as np

import config
from models import JordanStructure, LdtSystem, ShapeFactors
from utils.analytic_volume import (
    check_eigen_range, last_row_couplings, single_input, classify,
    volume_distinct, volume_jordan,
)
from utils.errors import RepeatedEigenvalues
from utils.matspec import jordan_structure

logger = logging.getLogger(__name__)


def f1_distinct(eigs):
    """
    Eigenvalue evenness factor |Π_{j1<j2} (λ_j2 - λ_j1) / (1 - λ_j1 λ_j2)|.

    Lies in [0, 1]; zero exactly when two eigenvalues coincide.
    """
    eigs = [float(lam) for lam in eigs]
    check_eigen_range(eigs)
    value = 1.0
    for a in range(len(eigs)):
        for c in range(a + 1, len(eigs)):
            value *= (eigs[c] - eigs[a]) / (1.0 - eigs[a] * eigs[c])
    return abs(value)


def f1_jordan(blocks):
    """
    Shape factor for Jordan blocks: the cross-block evenness raised to m_i·m_j
    times the within-block factor Π 1/(1 - λ_i²)^{m_i(m_i-1)/2}.
    """
    lams = [float(lam) for lam, _ in blocks]
    sizes = [int(m) for _, m in blocks]
    check_eigen_range(lams)
    value = 1.0
    for i in range(len(lams)):
        for j in range(i + 1, len(lams)):
            value *= ((lams[i] - lams[j]) / (1.0 - lams[i] * lams[j])) ** (sizes[i] * sizes[j])
    for lam, m in zip(lams, sizes):
        value /= (1.0 - lam * lam) ** (m * (m - 1) // 2)
    return abs(value)


def _resolve(sys_or_js, b=None, cluster_tol=None):
    if isinstance(sys_or_js, LdtSystem):
        structure = sys_or_js.jordan or jordan_structure(sys_or_js.A, cluster_tol)
        return structure, sys_or_js.b
    if isinstance(sys_or_js, JordanStructure):
        if b is None:
            raise ValueError("an input vector is required with a bare Jordan structure")
        return sys_or_js, single_input(b)
    raise TypeError(f"expected LdtSystem or JordanStructure, got {type(sys_or_js).__name__}")


def f2_distinct(sys, cluster_tol=None):
    """Circumscribed-box half-widths |q_i b| / (1 - λ_i), one per eigenvalue."""
    structure, b = _resolve(sys, cluster_tol=cluster_tol)
    if not structure.is_diagonal:
        raise RepeatedEigenvalues("f2_distinct needs distinct eigenvalues; use f2_jordan")
    check_eigen_range(structure.eigenvalues)
    couplings = last_row_couplings(structure, b)
    return [abs(c) / (1.0 - lam) for c, lam in zip(couplings, structure.eigenvalues)]


def f3_modal(sys_or_js, b=None, cluster_tol=None):
    """
    Modal controllability per block: |q_{i,m_i} b|^{m_i} (exponent one for distinct eigenvalues).
    """
    structure, b = _resolve(sys_or_js, b, cluster_tol)
    couplings = last_row_couplings(structure, b)
    return [abs(c) ** blk.size for c, blk in zip(couplings, structure.blocks)]


def f2_jordan(structure, b):
    """
    Box half-widths along every chain position, computed backward within each block.

    F_{2,i,m_i} = |q_{i,m_i} b| / (1 - λ_i) and F_{2,i,j} = |q_{i,j} b + F_{2,i,j+1}| / (1 - λ_i),
    evaluated on the signed recursion. They are exact half-widths only when
    each q_{i,j} b has the sign of the running term it is added to.

    Returns:
        tuple (list of half-widths in block/chain order, same_sign_ok)
    """
    b = single_input(b)
    check_eigen_range(structure.eigenvalues)
    c = structure.couplings(b)
    values = []
    same_sign_ok = True
    for (lam, m), start in zip(structure.blocks, structure.offsets()):
        running = [0.0] * m
        running[m - 1] = c[start + m - 1] / (1.0 - lam)
        for j in range(m - 2, -1, -1):
            if c[start + j] * running[j + 1] < 0:
                same_sign_ok = False
            running[j] = (c[start + j] + running[j + 1]) / (1.0 - lam)
        values.extend(abs(s) for s in running)
    if not same_sign_ok:
        logger.warning("Couplings along a Jordan chain change sign; F2 box half-widths are approximate")
    return values, same_sign_ok


def _f2_index(structure):
    if structure.is_diagonal:
        return [(i + 1,) for i in range(len(structure.blocks))]
    return [(i + 1, j + 1) for i, blk in enumerate(structure.blocks) for j in range(blk.size)]


def decompose(sys, tol=None):
    """
    All shape factors of a single-input system and the residual of its exact volume identity.

    Distinct case: V/|det P| = F1 · Π F2_i.
    Jordan case: V/|det P_J| = F1 · Π_i (|q_{i,m_i} b| / (1 - λ_i))^{m_i}.

    Returns:
        tuple (ShapeFactors, relative residual of the identity)
    """
    tol = config.CLUSTER_TOL if tol is None else tol
    structure, b = _resolve(sys, cluster_tol=tol)
    case = classify(structure)
    couplings = last_row_couplings(structure, b)
    last_row_product = math.prod(
        (abs(cpl) / (1.0 - blk.lam)) ** blk.size for cpl, blk in zip(couplings, structure.blocks)
    )

    if case == "distinct":
        volume = volume_distinct(sys, tol, structure=structure)
        f1 = f1_distinct(structure.eigenvalues)
        f2 = [abs(cpl) / (1.0 - lam) for cpl, lam in zip(couplings, structure.eigenvalues)]
        same_sign_ok = True
        identity = f1 * math.prod(f2)
        tag = "distinct"
    else:
        volume = volume_jordan(structure, b, tol)
        f1 = f1_jordan(structure.blocks)
        f2, same_sign_ok = f2_jordan(structure, b)
        identity = f1 * last_row_product
        tag = "jordan"

    v_eigen = volume / abs(float(np.linalg.det(structure.P)))
    residual = abs(v_eigen - identity) / v_eigen if v_eigen > 0 else abs(v_eigen - identity)
    factors = ShapeFactors(
        f1=f1,
        f2=[float(v) for v in f2],
        f3=f3_modal(structure, b),
        case=tag,
        same_sign_ok=same_sign_ok,
        f2_index=_f2_index(structure),
        box_volume=math.prod(f2),
        last_row_product=last_row_product,
        uncontrollable=0.0 in couplings,
    )
    return factors, residual
