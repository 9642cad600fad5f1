"""Shared constructors for test systems."""

import numpy as np

from models import LdtSystem
from utils.matspec import jordan_from_declared


def jordan_matrix(blocks):
    """Upper bidiagonal matrix with the given (eigenvalue, size) blocks."""
    n = sum(size for _, size in blocks)
    A = np.zeros((n, n))
    start = 0
    for lam, size in blocks:
        for k in range(size):
            A[start + k, start + k] = lam
            if k + 1 < size:
                A[start + k, start + k + 1] = 1.0
        start += size
    return A


def jordan_system(blocks, b):
    """System already in Jordan form with its structure declared."""
    A = jordan_matrix(blocks)
    return LdtSystem(A, np.asarray(b, dtype=float), jordan=jordan_from_declared(A, blocks, np.eye(A.shape[0])))


def random_distinct_eigenvalues(rng, n, low=0.05, high=0.85, gap=0.02):
    while True:
        eigs = np.sort(rng.uniform(low, high, n))
        if np.all(np.diff(eigs) >= gap):
            return eigs


def random_transform(rng, n):
    """Well-conditioned random similarity transform."""
    while True:
        T = np.eye(n) + 0.4 * rng.standard_normal((n, n))
        if np.linalg.cond(T) < 20:
            return T
