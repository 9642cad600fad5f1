"""
Analytic volume utility for the control-ability analysis toolkit.

This module evaluates the closed-form volume of the infinite-horizon reach
region of a single-input system whose eigenvalues lie in [0, 1), for
distinct eigenvalues, a single Jordan block and several Jordan blocks. It
also dispatches between the three cases, maps control regions onto reach
regions of the inverse system and reproduces the limit that takes a
perturbed bidiagonal system onto a Jordan block.

All volumes use the unit-cube coefficient convention.
"""

import logging

import numpy as np

import config
from models import LdtSystem, VolumeReport
from utils.errors import (
    EigenvalueOutOfRange, InputError, MultiInputUnsupported, NotAntiStable,
    RepeatedEigenvalues, SharedBlockEigenvalue,
)
from utils.matspec import det, eig_real, inverse, jordan_structure, perturbed_single_block

logger = logging.getLogger(__name__)

# |q b| below this fraction of |q|·|b| counts as an uncoupled mode
COUPLING_TOL = 1e-12


def check_eigen_range(eigenvalues):
    for lam in eigenvalues:
        if not 0.0 <= lam < 1.0:
            raise EigenvalueOutOfRange(f"eigenvalue {lam:.10g} lies outside [0, 1)")


def single_input(b):
    b = np.asarray(b, dtype=float)
    if b.ndim == 2 and b.shape[1] != 1:
        raise MultiInputUnsupported(f"analytic formulas need a single input, got {b.shape[1]} columns")
    return b.reshape(-1)


def last_row_couplings(structure, b):
    """q_{i,m_i}·b per block, with numerically vanishing couplings set to zero."""
    out = []
    for i in range(len(structure.blocks)):
        q = structure.last_row(i)
        c = float(q @ b)
        if abs(c) <= COUPLING_TOL * np.linalg.norm(q) * np.linalg.norm(b):
            c = 0.0
        out.append(c)
    return out


def infinite_volume(eigenvalues, sizes, det_p, couplings):
    """
    |det_p · Π_{i<j} ((λ_i-λ_j)/(1-λ_iλ_j))^{m_i m_j} · Π_i c_i^{m_i} / ((1-λ_i)^{m_i} (1-λ_i²)^{m_i(m_i-1)/2})|

    Shared by the distinct and Jordan cases so that blocks of size one give
    identical results either way.
    """
    check_eigen_range(eigenvalues)
    value = det_p
    q = len(eigenvalues)
    for i in range(q):
        for j in range(i + 1, q):
            li, lj = eigenvalues[i], eigenvalues[j]
            value *= ((li - lj) / (1.0 - li * lj)) ** (sizes[i] * sizes[j])
    for lam, m, c in zip(eigenvalues, sizes, couplings):
        value *= c ** m / ((1.0 - lam) ** m * (1.0 - lam * lam) ** (m * (m - 1) // 2))
    return abs(value)


def _structure(sys, cluster_tol):
    return sys.jordan if sys.jordan is not None else jordan_structure(sys.A, cluster_tol)


def _min_gap(eigenvalues):
    lams = sorted(eigenvalues)
    return min((b - a for a, b in zip(lams, lams[1:])), default=float("inf"))


def volume_distinct(sys, cluster_tol=None, structure=None):
    """
    Infinite-horizon reach volume for n distinct eigenvalues in [0, 1).

    q_i is the i-th row of P^-1 with P the eigenvector matrix; any column
    scaling of P cancels between det(P) and the q_i.

    Args:
        sys: Single-input LdtSystem
        cluster_tol: Smallest eigenvalue gap treated as distinct
        structure: Precomputed JordanStructure of sys.A (optional)

    Returns:
        float volume; 0.0 when some mode is uncoupled from the input
    """
    cluster_tol = config.CLUSTER_TOL if cluster_tol is None else cluster_tol
    b = sys.b
    structure = structure or _structure(sys, cluster_tol)
    if not structure.is_diagonal or _min_gap(structure.eigenvalues) <= cluster_tol:
        raise RepeatedEigenvalues(
            f"eigenvalues {structure.eigenvalues} are not distinct; use the Jordan formula"
        )
    check_eigen_range(structure.eigenvalues)
    couplings = last_row_couplings(structure, b)
    if 0.0 in couplings:
        logger.warning(f"Uncontrollable: modes {[i for i, c in enumerate(couplings) if c == 0.0]} are not excited by b")
    return infinite_volume(structure.eigenvalues, structure.sizes, float(np.linalg.det(structure.P)), couplings)


def volume_single_jordan(lam, n, b_last):
    """
    Infinite-horizon reach volume of a single n×n Jordan block in Jordan form.

    Only the last entry of b matters: |b_n|^n / ((1-λ)^n (1-λ²)^{n(n-1)/2}).
    """
    return infinite_volume([float(lam)], [int(n)], 1.0, [float(b_last)])


def volume_general_single_jordan(structure, b):
    """Single-block volume for a general A: |det(P_J)| times the Jordan-form value with b_n = q_n·b."""
    if len(structure.blocks) != 1:
        raise ValueError("structure has more than one Jordan block")
    b = single_input(b)
    lam, n = structure.blocks[0]
    return abs(float(np.linalg.det(structure.P))) * volume_single_jordan(lam, n, last_row_couplings(structure, b)[0])


def volume_jordan(structure, b, cluster_tol=None):
    """
    Infinite-horizon reach volume for any Jordan structure with real eigenvalues in [0, 1).

    Args:
        structure: JordanStructure of A
        b: Input vector
        cluster_tol: Blocks closer than this share an eigenvalue

    Raises:
        SharedBlockEigenvalue: two blocks carry the same eigenvalue, where
            the cross factor vanishes and no single input can control both
    """
    cluster_tol = config.CLUSTER_TOL if cluster_tol is None else cluster_tol
    b = single_input(b)
    check_eigen_range(structure.eigenvalues)
    if len(structure.blocks) > 1 and _min_gap(structure.eigenvalues) <= cluster_tol:
        raise SharedBlockEigenvalue(
            f"blocks {[tuple(blk) for blk in structure.blocks]} share an eigenvalue"
        )
    couplings = last_row_couplings(structure, b)
    if 0.0 in couplings:
        logger.warning(f"Uncontrollable: blocks {[i for i, c in enumerate(couplings) if c == 0.0]} are not excited by b")
    return infinite_volume(structure.eigenvalues, structure.sizes, float(np.linalg.det(structure.P)), couplings)


def classify(structure):
    if len(structure.blocks) == 1 and structure.blocks[0].size > 1:
        return "single-jordan"
    if structure.is_diagonal and len(set(structure.eigenvalues)) == len(structure.blocks):
        return "distinct"
    return "multi-jordan"


def volume_auto(sys, tol=None):
    """
    Classify the spectrum of a single-input system and apply the matching formula.

    Args:
        sys: LdtSystem (a declared Jordan structure is used as given)
        tol: Clustering / dispatch threshold (defaults to config.CLUSTER_TOL)

    Returns:
        VolumeReport with the case tag and analytic volume
    """
    tol = config.CLUSTER_TOL if tol is None else tol
    b = sys.b
    structure = _structure(sys, tol)
    case = classify(structure)
    if case == "distinct" and _min_gap(structure.eigenvalues) <= tol:
        case = "multi-jordan"

    if case == "distinct":
        analytic = volume_distinct(sys, tol, structure=structure)
    elif case == "single-jordan":
        analytic = volume_general_single_jordan(structure, b)
    else:
        analytic = volume_jordan(structure, b, tol)
    logger.debug(f"Analytic volume ({case}): {analytic:.17g}")
    return VolumeReport(analytic=analytic, case=case)


def reversed_system(sys):
    """
    The pair (A^-1, B) whose reach region, mapped by A^-1, is the control region of (A, B).

    Raises:
        NotAntiStable: when some eigenvalue has modulus at most one
    """
    eigenvalues = eig_real(sys.A).eigenvalues
    inside = [lam for lam in eigenvalues if abs(lam) <= 1.0]
    if inside:
        raise NotAntiStable(f"eigenvalues {inside} are not outside the unit circle; the control region is unbounded")
    return LdtSystem(inverse(sys.A), sys.B)


def region_volume(sys, region="reach", tol=None):
    """
    Analytic volume of the reach or control region, with the system whose reach region it scales.

    Returns:
        tuple (VolumeReport, LdtSystem); for 'control' the system is (A^-1, B)
        and the report volume already carries the |det A|^-1 factor
    """
    if region == "reach":
        return volume_auto(sys, tol), sys
    if region != "control":
        raise InputError(f"unknown region {region!r}; expected 'reach' or 'control'")
    target = reversed_system(sys)
    report = volume_auto(target, tol)
    report.analytic /= abs(det(sys.A))
    return report, target


def volume_controllability(sys, tol=None):
    """
    Infinite-horizon volume of the control region: |det A|^-1 times the reach volume of (A^-1, B).
    """
    report, _ = region_volume(sys, "control", tol)
    return report.analytic


def jordan_limit_check(lam, n, b_last, deltas, cluster_tol=None):
    """
    Volumes of the perturbed bidiagonal systems for a sequence of deltas.

    As delta shrinks the sequence approaches volume_single_jordan(lam, n, b_last).

    Returns:
        list of (delta, volume) tuples in the order given
    """
    b = np.zeros(n)
    b[-1] = b_last
    sequence = []
    for delta in deltas:
        sys = perturbed_single_block(lam, n, delta, b)
        sequence.append((float(delta), volume_distinct(sys, cluster_tol)))
    return sequence
