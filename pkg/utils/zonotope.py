"""
Zonotope utility for the control-ability analysis toolkit.

This module builds the finite-horizon generator matrices of reach and
control regions, computes zonotope volume by brute-force summation of
subset determinants (the oracle every analytic formula is checked
against), and extracts 2-D region boundaries for plotting elsewhere.
"""

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from itertools import combinations, islice

import numpy as np

import config
from models import Polygon2D, Zonotope, as_dense
from utils.errors import Degenerate, DimensionMismatch, DimensionUnsupported
from utils.matspec import inverse

logger = logging.getLogger(__name__)

DET_CHUNK = 65536
PARALLEL_TOL = 1e-13


def build_generators(sys, N, kind="reach", convention="unit-cube"):
    """
    Generators of the N-step reach or control region of a system.

    Args:
        sys: LdtSystem
        N: Horizon, at least 1
        kind: 'reach' for [B, AB, ..., A^(N-1)B], 'control' for [A^-1 B, ..., A^-N B]
        convention: Input coefficient range, 'unit-cube' ([0,1]) or 'symmetric' ([-1,1])

    Returns:
        Zonotope with N·r generators
    """
    if N < 1:
        raise ValueError(f"horizon must be at least 1, got {N}")
    if kind == "reach":
        step, block = sys.A, sys.B
    elif kind == "control":
        step = inverse(sys.A)
        block = step @ sys.B
    else:
        raise ValueError(f"unknown region kind {kind!r}")

    blocks = []
    for _ in range(N):
        blocks.append(block)
        block = step @ block
    return Zonotope(np.hstack(blocks), N, kind, convention)


def _batched(iterable, size):
    it = iter(iterable)
    while True:
        chunk = list(islice(it, size))
        if not chunk:
            return
        yield chunk


def _leading_sum(G, i, n):
    """Sum of |det| over all n-subsets of columns whose smallest index is i."""
    head = G[:, i]
    rest = G[:, i + 1:]
    if n == 1:
        return abs(float(head[0]))
    if rest.shape[1] < n - 1:
        return 0.0
    if n == 2:
        return float(np.sum(np.abs(head[0] * rest[1] - head[1] * rest[0])))
    if n == 3:
        # dets[a, b] = det[head, g_a, g_b] = (head x g_a) . g_b
        dets = np.cross(head, rest.T) @ rest
        return float(np.sum(np.abs(np.triu(dets, k=1))))

    partial = []
    mats = None
    for chunk in _batched(combinations(range(rest.shape[1]), n - 1), DET_CHUNK):
        idx = np.array(chunk)
        if mats is None or mats.shape[0] != len(idx):
            mats = np.empty((len(idx), n, n))
            mats[:, :, 0] = head
        mats[:, :, 1:] = rest[:, idx].transpose(1, 0, 2)
        partial.append(float(np.sum(np.abs(np.linalg.det(mats)))))
    return math.fsum(partial)


def oracle_volume(Z, threads=None):
    """
    Volume of a zonotope as the sum of |det| over every n-subset of generators.

    Subsets are enumerated in lexicographic order and partitioned by their
    smallest index; partitions run on a thread pool and their partial sums
    are combined with compensated summation.

    Args:
        Z: Zonotope
        threads: Worker cap (defaults to config.THREADS)

    Returns:
        float, in Z's coefficient convention
    """
    n, count = Z.dim, Z.count
    if count < n:
        raise DimensionMismatch(f"{count} generators cannot span dimension {n}")
    G = Z.generators
    leads = range(count - n + 1)
    threads = config.THREADS if threads is None else max(1, int(threads))

    if threads == 1 or len(leads) < 2:
        partial = [_leading_sum(G, i, n) for i in leads]
    else:
        with ThreadPoolExecutor(max_workers=threads) as executor:
            partial = list(executor.map(lambda i: _leading_sum(G, i, n), leads))

    volume = math.fsum(partial)
    logger.debug(f"Oracle over {count} generators in R^{n}: {len(partial)} partitions, volume {volume:.17g}")
    return volume * Z.volume_scale


def _edge_directions(G):
    """Generator directions folded into [0, pi), parallel ones summed, sorted by angle."""
    norms = np.linalg.norm(G, axis=1)
    G = G[norms > 0].copy()
    flip = (G[:, 1] < 0) | ((G[:, 1] == 0) & (G[:, 0] < 0))
    G[flip] *= -1
    G = G[np.argsort(np.arctan2(G[:, 1], G[:, 0]), kind="stable")]

    def parallel(u, v):
        return abs(u[0] * v[1] - u[1] * v[0]) <= PARALLEL_TOL * np.linalg.norm(u) * np.linalg.norm(v)

    groups = []
    for g in G:
        if groups and parallel(groups[-1], g):
            groups[-1] = groups[-1] + g
        else:
            groups.append(g)
    # directions just below pi are parallel to those at 0
    if len(groups) > 1 and parallel(groups[0], groups[-1]):
        groups[0] = groups[0] - groups.pop()
    return groups


def polygon_2d(Z):
    """
    Boundary of a 2-D zonotope.

    Generators are sorted by angle; the walk starts at the sum of all
    generators and steps by -2g in angle order, then by +2g, which traces
    the symmetric-convention region counterclockwise. The unit-cube region
    is the same polygon halved and shifted by half the generator sum.

    Returns:
        Polygon2D with 2·(number of distinct directions) vertices
    """
    if Z.dim != 2:
        raise DimensionUnsupported(f"polygon export needs a 2-D zonotope, got dimension {Z.dim}")
    groups = _edge_directions(Z.generators.T)
    if len(groups) < 2:
        raise Degenerate("all generators are parallel; the region is a segment")

    v = np.sum(groups, axis=0)
    vertices = [v]
    for g in groups:
        v = v - 2 * g
        vertices.append(v)
    for g in groups[:-1]:
        v = v + 2 * g
        vertices.append(v)
    vertices = np.array(vertices)

    if Z.convention == "unit-cube":
        vertices = 0.5 * vertices + 0.5 * Z.generators.sum(axis=1)
    return Polygon2D(vertices, Z.convention)


def polygon_area(p):
    """Shoelace area of a polygon."""
    x, y = p.vertices[:, 0], p.vertices[:, 1]
    return 0.5 * abs(float(np.dot(x, np.roll(y, -1)) - np.dot(np.roll(x, -1), y)))


def polygon_extent(p):
    """
    Smallest and largest distance from the polygon centre to its boundary.

    Returns:
        tuple (d_min, d_max, d_min / d_max); a flatness near zero means the
        region has collapsed toward a segment
    """
    V = p.vertices
    centre = V.mean(axis=0)
    d_max = float(np.max(np.linalg.norm(V - centre, axis=1)))
    edges = np.roll(V, -1, axis=0) - V
    offsets = centre - V
    cross = np.abs(edges[:, 0] * offsets[:, 1] - edges[:, 1] * offsets[:, 0])
    d_min = float(np.min(cross / np.linalg.norm(edges, axis=1)))
    return d_min, d_max, d_min / d_max


def _check_transform(Z, P):
    P = as_dense(P, "P")
    if P.shape != (Z.dim, Z.dim):
        raise DimensionMismatch(f"transform is {P.shape}, zonotope dimension is {Z.dim}")
    return inverse(P)


def eigencoord_halfwidths(Z, P):
    """
    Half-widths of the circumscribed box in the coordinates x = P·y.

    Component i is the sum over generators of |(P^-1 g_k)_i|.
    """
    return list(np.sum(np.abs(_check_transform(Z, P) @ Z.generators), axis=1))


def eigen_coordinates(Z, P):
    """The same region expressed in the coordinates x = P·y."""
    return Zonotope(_check_transform(Z, P) @ Z.generators, Z.horizon, Z.region_kind, Z.convention)
