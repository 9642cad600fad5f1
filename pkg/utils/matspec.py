"""
Dense matrix utility for the control-ability analysis toolkit.

This module provides the small dense-matrix arithmetic every other module
relies on, real-spectrum extraction, numerical Jordan structure detection
and the bidiagonal perturbation used to approach a single Jordan block by
systems with distinct eigenvalues.
"""

import logging
import math

import numpy as np
from scipy import linalg as sla

import config
from models import JordanBlock, JordanStructure, LdtSystem, SpectrumReal, as_dense
from utils.errors import (
    ComplexSpectrum, DimensionMismatch, DimensionUnsupported,
    EigenvalueOutOfRange, IllConditioned, Singular,
)

logger = logging.getLogger(__name__)

MAX_DIMENSION = 32
IDENTITY_TOL = 1e-9
# Round-off headroom on the (eps·‖A‖)^(1/m) split of a defective eigenvalue
DEFECT_SPREAD = 100.0


def _square(A, name="A"):
    A = as_dense(A, name)
    if A.shape[0] != A.shape[1]:
        raise DimensionMismatch(f"{name} must be square, got {A.shape[0]}x{A.shape[1]}")
    if A.shape[0] > MAX_DIMENSION:
        raise DimensionUnsupported(f"{name} is {A.shape[0]}x{A.shape[0]}; at most {MAX_DIMENSION} is supported")
    return A


def det(A):
    """Determinant of a square matrix."""
    return float(np.linalg.det(_square(A)))


def inverse(A):
    """
    Inverse of a square matrix.

    Raises:
        Singular: when A is not numerically invertible
    """
    A = _square(A)
    if np.linalg.cond(A) > 1.0 / np.finfo(float).eps:
        raise Singular("matrix is singular to working precision")
    try:
        return np.linalg.inv(A)
    except np.linalg.LinAlgError as e:
        raise Singular(f"matrix is singular: {e}")


def matmul(A, B):
    A, B = as_dense(A, "A"), as_dense(B, "B")
    if A.shape[1] != B.shape[0]:
        raise DimensionMismatch(f"cannot multiply {A.shape} by {B.shape}")
    return A @ B


def matvec(A, x):
    A = as_dense(A, "A")
    x = np.asarray(x, dtype=float).reshape(-1)
    if A.shape[1] != x.shape[0]:
        raise DimensionMismatch(f"cannot apply {A.shape} matrix to vector of length {x.shape[0]}")
    return A @ x


def power(A, k):
    """A^k; negative ``k`` uses the inverse."""
    A = _square(A)
    if k < 0:
        return np.linalg.matrix_power(inverse(A), -k)
    return np.linalg.matrix_power(A, k)


def _kernel(M, tol):
    """Orthonormal basis of the numerical null space of M (absolute threshold)."""
    smax = np.linalg.norm(M, 2)
    if smax <= tol:
        return np.eye(M.shape[0])
    return sla.null_space(M, rcond=tol / smax)


def _independent(columns):
    X = np.column_stack(columns)
    norms = np.linalg.norm(X, axis=0)
    if np.any(norms <= np.finfo(float).tiny):
        return False
    return np.linalg.matrix_rank(X / norms) == X.shape[1]


def _chains(A, lam, multiplicity, rank_tol):
    """Generalized eigenvector chains for one eigenvalue cluster, longest first."""
    n = A.shape[0]
    scale = max(np.linalg.norm(A, 2), 1.0)
    M = A - lam * np.eye(n)

    powers = [np.eye(n)]
    dims = [0]
    while dims[-1] < multiplicity:
        if len(powers) > multiplicity:
            raise IllConditioned(
                f"kernel of (A - {lam:.6g} I)^p never reaches multiplicity {multiplicity}"
            )
        powers.append(powers[-1] @ M)
        p = len(powers) - 1
        dims.append(_kernel(powers[p], rank_tol * scale ** p).shape[1])
    if dims[-1] != multiplicity:
        raise IllConditioned(f"kernel dimension {dims[-1]} does not match multiplicity {multiplicity} at {lam:.6g}")
    logger.debug(f"Kernel dimensions for eigenvalue {lam:.6g}: {dims}")

    top = len(dims) - 1
    at_least = [dims[p] - dims[p - 1] for p in range(1, top + 1)] + [0]
    exact = {s: at_least[s - 1] - at_least[s] for s in range(1, top + 1)}

    chosen = []
    chains = []
    for size in range(top, 0, -1):
        for _ in range(exact[size]):
            kernel = _kernel(powers[size], rank_tol * scale ** size)
            # strongest survivors of (A - λI)^(size-1) first
            _, _, vt = np.linalg.svd(powers[size - 1] @ kernel)
            for v in (kernel @ vt.T).T:
                head = powers[size - 1] @ v
                if head[np.argmax(np.abs(head))] < 0:
                    v = -v
                chain = [powers[size - 1 - k] @ v for k in range(size)]
                if _independent(chosen + chain):
                    chosen.extend(chain)
                    chains.append(chain)
                    break
            else:
                raise IllConditioned(f"could not build a Jordan chain of length {size} for {lam:.6g}")
    return chains


def _check_structure(A, structure):
    scale = max(np.linalg.norm(A, 2), 1.0)
    if np.max(np.abs(structure.Q @ structure.P - np.eye(structure.n))) > IDENTITY_TOL:
        raise IllConditioned("transform inverse is inaccurate (Q·P differs from identity)")
    residual = np.max(np.abs(structure.Q @ A @ structure.P - structure.jordan_matrix()))
    if residual > 1e-6 * scale:
        raise IllConditioned(f"transform does not reproduce the Jordan matrix (residual {residual:.3g})")


def _unit(v):
    v = v / np.linalg.norm(v)
    return -v if v[np.argmax(np.abs(v))] < 0 else v


def _defect_tol(m, scale, cluster_tol):
    """Widest spread of m computed eigenvalues that may still be one defective eigenvalue."""
    split = DEFECT_SPREAD * (np.finfo(float).eps * scale) ** (1.0 / m)
    return max(cluster_tol, min(split, config.DEFECT_TOL))


def _candidate_groups(vals, scale, cluster_tol):
    """
    Index groups of eigenvalues whose distance from the group mean stays within
    the defect tolerance for the group size, largest groups first.
    """
    reach = 2.0 * max(cluster_tol, config.DEFECT_TOL)
    remaining = list(range(len(vals)))
    groups = []
    while remaining:
        best = [remaining[0]]
        for i in remaining:
            nearest = sorted(remaining, key=lambda j: (abs(vals[j] - vals[i]), j))
            within = sum(1 for j in nearest if abs(vals[j] - vals[i]) <= reach)
            for m in range(within, len(best), -1):
                members = vals[nearest[:m]]
                if np.max(np.abs(members - members.mean())) <= _defect_tol(m, scale, cluster_tol):
                    best = nearest[:m]
                    break
        groups.append(best)
        remaining = [j for j in remaining if j not in best]
    return groups


def _real_spectrum(A, cluster_tol=None, rank_tol=None, complex_tol=None):
    """
    Eigenvalues of A grouped into clusters, each confirmed by the kernel ranks of (A - λI)^p.

    Round-off splits a defective eigenvalue of multiplicity m by about
    (eps·‖A‖)^(1/m), possibly off the real line, so candidate groups are
    formed in the complex plane first. A candidate whose chains cannot be
    built falls back to simple eigenvalues, unless it lies within
    ``cluster_tol`` in which case the failure propagates.

    Returns:
        tuple (list of (lam, chains) sorted by lam, largest imaginary part kept)
    """
    cluster_tol = config.CLUSTER_TOL if cluster_tol is None else cluster_tol
    rank_tol = config.RANK_TOL if rank_tol is None else rank_tol
    complex_tol = config.COMPLEX_TOL if complex_tol is None else complex_tol
    scale = max(np.linalg.norm(A, 2), 1.0)
    vals, vecs = np.linalg.eig(A)

    groups = []
    imag_residual = 0.0
    for members in _candidate_groups(vals, scale, cluster_tol):
        center = complex(np.mean(vals[members]))
        chains = None
        if len(members) > 1 and abs(center.imag) <= complex_tol:
            try:
                chains = _chains(A, center.real, len(members), rank_tol)
            except IllConditioned:
                if np.max(np.abs(vals[members] - center)) <= cluster_tol:
                    raise
                logger.debug(f"Eigenvalue cluster near {center.real:.6g} is not defective; keeping it split")
        if chains is not None:
            imag_residual = max(imag_residual, abs(center.imag))
            groups.append((center.real, chains))
            continue
        for j in members:
            imag = abs(vals[j].imag)
            if imag > complex_tol:
                raise ComplexSpectrum(
                    f"eigenvalue with imaginary part {imag:.3g} exceeds tolerance {complex_tol:.3g}"
                )
            imag_residual = max(imag_residual, imag)
            groups.append((float(vals[j].real), [[_unit(vecs[:, j].real)]]))
    groups.sort(key=lambda group: group[0])
    return groups, imag_residual


def eig_real(A, complex_tol=None):
    """
    Real spectrum of a square matrix.

    Eigenvalues of a defective cluster are reported at the cluster mean with
    their full multiplicity.

    Args:
        A: Square matrix, at most 32x32
        complex_tol: Largest imaginary part treated as round-off

    Returns:
        SpectrumReal with eigenvalues sorted ascending
    """
    groups, imag_residual = _real_spectrum(_square(A), complex_tol=complex_tol)
    eigenvalues = tuple(lam for lam, chains in groups for chain in chains for _ in chain)
    return SpectrumReal(eigenvalues, imag_residual)


def jordan_structure(A, cluster_tol=None, rank_tol=None, complex_tol=None):
    """
    Numerical Jordan structure of a real-spectrum matrix.

    Eigenvalues are grouped around a common mean when their spread fits the
    round-off of a defective eigenvalue (or ``cluster_tol``); block sizes
    follow from the kernel dimensions of powers of (A - λI).

    Args:
        A: Square matrix
        cluster_tol: Clustering threshold (defaults to config.CLUSTER_TOL)
        rank_tol: Relative singular-value threshold (defaults to config.RANK_TOL)
        complex_tol: Largest imaginary part treated as round-off

    Returns:
        JordanStructure with blocks ordered by ascending eigenvalue
    """
    A = _square(A)
    groups, _ = _real_spectrum(A, cluster_tol, rank_tol, complex_tol)

    blocks, columns = [], []
    for lam, chains in groups:
        for chain in chains:
            blocks.append(JordanBlock(lam, len(chain)))
            columns.extend(chain)

    P = np.column_stack(columns)
    try:
        Q = inverse(P)
    except Singular:
        raise IllConditioned("eigenvector matrix is singular; spectrum is too close to defective")
    structure = JordanStructure(tuple(blocks), P, Q)
    _check_structure(A, structure)
    logger.debug(f"Jordan blocks: {[(round(b.lam, 12), b.size) for b in blocks]}")
    return structure


def jordan_from_declared(A, blocks, P):
    """
    Jordan structure supplied by the caller instead of detected.

    Blocks are reordered by ascending eigenvalue together with their
    columns of P.

    Raises:
        DimensionMismatch: when block sizes do not add up to n
        Singular: when P is not invertible
        IllConditioned: when P^{-1}·A·P is not the declared Jordan matrix
    """
    A = _square(A)
    P = _square(P, "P")
    blocks = [JordanBlock(float(lam), int(size)) for lam, size in blocks]
    if any(blk.size < 1 for blk in blocks) or sum(blk.size for blk in blocks) != A.shape[0]:
        raise DimensionMismatch(f"Jordan block sizes {[b.size for b in blocks]} do not sum to n={A.shape[0]}")
    if P.shape != A.shape:
        raise DimensionMismatch(f"P is {P.shape}, expected {A.shape}")

    starts = np.cumsum([0] + [blk.size for blk in blocks])
    order = sorted(range(len(blocks)), key=lambda i: blocks[i].lam)
    cols = np.concatenate([np.arange(starts[i], starts[i + 1]) for i in order])
    P = P[:, cols]
    structure = JordanStructure(tuple(blocks[i] for i in order), P, inverse(P))
    _check_structure(A, structure)
    return structure


def perturbed_single_block(lam, n, delta, b):
    """
    Bidiagonal system approaching a single Jordan block as delta shrinks.

    Diagonal entries are lam + (i-1)·delta, superdiagonal entries are one.

    Raises:
        EigenvalueOutOfRange: when the spectrum leaves [0, 1)
    """
    if delta <= 0:
        raise ValueError("delta must be positive")
    if n < 1:
        raise ValueError("n must be at least 1")
    top = lam + (n - 1) * delta
    if lam < 0 or top >= 1:
        raise EigenvalueOutOfRange(f"perturbed eigenvalues span [{lam}, {top}], outside [0, 1)")
    A = np.diag(lam + delta * np.arange(n)) + np.diag(np.ones(n - 1), 1)
    b = as_dense(b, "b", column=True)
    if b.shape != (n, 1):
        raise DimensionMismatch(f"b must have length {n}")
    return LdtSystem(A, b)


def perturbation_eigenvectors(n, delta):
    """
    Eigenvector matrix of the perturbed block: p_ij = (j-1)!/(j-i)! · delta^(i-1) for i <= j.
    """
    P = np.zeros((n, n))
    for i in range(1, n + 1):
        for j in range(i, n + 1):
            P[i - 1, j - 1] = math.factorial(j - 1) / math.factorial(j - i) * delta ** (i - 1)
    return P


def chain_coefficients(n, delta, b_n):
    """
    Eigen-coordinates of b = (0, ..., 0, b_n) for the perturbed block.

    Closed form: beta_{n-k} = (-1)^k b_n / ((n-k-1)! k! delta^(n-1)).

    Returns:
        list [beta_1, ..., beta_n]
    """
    if delta <= 0 or n < 1:
        raise ValueError("need delta > 0 and n >= 1")
    beta = [0.0] * n
    for k in range(n):
        beta[n - k - 1] = (-1) ** k * b_n / (math.factorial(n - k - 1) * math.factorial(k) * delta ** (n - 1))
    return beta


def solve_chain_system(n, delta, b_n):
    """Back-substitution solution of P·beta = (0, ..., 0, b_n)."""
    rhs = np.zeros(n)
    rhs[-1] = b_n
    return sla.solve_triangular(perturbation_eigenvectors(n, delta), rhs, lower=False)
