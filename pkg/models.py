"""
Domain models for the control-ability analysis toolkit.

This module defines the value types shared by every other module: dense
matrices, linear discrete-time systems, spectra, Jordan structures,
zonotopes, polygons and the reports built from them.
"""

from dataclasses import dataclass, field
from typing import NamedTuple, Optional

import numpy as np

from utils.errors import DimensionMismatch, MultiInputUnsupported, NonFinite

REGION_KINDS = ("reach", "control")
CONVENTIONS = ("unit-cube", "symmetric")


def as_dense(values, name="matrix", column=False):
    """
    Coerce ``values`` into a finite, two-dimensional float array.

    Args:
        values: Nested sequence or array of real numbers
        name: Name used in error messages
        column: Treat one-dimensional input as a column vector instead of a row

    Returns:
        numpy.ndarray of dtype float64 and shape (rows, cols)
    """
    try:
        arr = np.array(values, dtype=float)
    except (TypeError, ValueError) as e:
        raise DimensionMismatch(f"{name} is not a real matrix: {e}")
    if arr.ndim == 0:
        arr = arr.reshape(1, 1)
    elif arr.ndim == 1:
        arr = arr.reshape(-1, 1) if column else arr.reshape(1, -1)
    elif arr.ndim != 2:
        raise DimensionMismatch(f"{name} must be two-dimensional, got {arr.ndim} dimensions")
    if arr.shape[0] < 1 or arr.shape[1] < 1:
        raise DimensionMismatch(f"{name} is empty")
    if not np.all(np.isfinite(arr)):
        raise NonFinite(f"{name} contains NaN or Inf entries")
    return arr


class JordanBlock(NamedTuple):
    """One Jordan block: eigenvalue and chain length."""
    lam: float
    size: int


@dataclass(frozen=True)
class SpectrumReal:
    """Real spectrum sorted ascending, with the largest discarded imaginary part."""
    eigenvalues: tuple
    imag_residual: float = 0.0

    def __len__(self):
        return len(self.eigenvalues)


@dataclass(frozen=True, eq=False)
class JordanStructure:
    """
    Jordan blocks of a matrix with the transform that exposes them.

    Columns of ``P`` are the generalized eigenvector chains in block order;
    ``Q`` is the inverse of ``P`` and its rows are the left vectors q_{i,j}.
    """
    blocks: tuple
    P: np.ndarray
    Q: np.ndarray

    @property
    def n(self):
        return self.P.shape[0]

    @property
    def eigenvalues(self):
        return [blk.lam for blk in self.blocks]

    @property
    def sizes(self):
        return [blk.size for blk in self.blocks]

    @property
    def is_diagonal(self):
        return all(blk.size == 1 for blk in self.blocks)

    def offsets(self):
        """Row offset of each block inside P/Q."""
        out, start = [], 0
        for blk in self.blocks:
            out.append(start)
            start += blk.size
        return out

    def q_row(self, i, j):
        """Left vector q_{i,j}: block ``i`` (0-based), chain position ``j`` (1-based)."""
        return self.Q[self.offsets()[i] + j - 1, :]

    def last_row(self, i):
        return self.q_row(i, self.blocks[i].size)

    def couplings(self, b):
        """Q·b, the input coupling of every chain position."""
        return self.Q @ np.asarray(b, dtype=float).reshape(-1)

    def jordan_matrix(self):
        J = np.zeros((self.n, self.n))
        for (lam, size), start in zip(self.blocks, self.offsets()):
            for k in range(size):
                J[start + k, start + k] = lam
                if k + 1 < size:
                    J[start + k, start + k + 1] = 1.0
        return J


@dataclass(frozen=True, eq=False)
class LdtSystem:
    """Linear discrete-time system x_{k+1} = A x_k + B u_k."""
    A: np.ndarray
    B: np.ndarray
    jordan: Optional[JordanStructure] = None
    labels: dict = field(default_factory=dict)

    def __post_init__(self):
        A = as_dense(self.A, "A")
        B = as_dense(self.B, "B", column=True)
        if A.shape[0] != A.shape[1]:
            raise DimensionMismatch(f"A must be square, got {A.shape[0]}x{A.shape[1]}")
        if B.shape[0] != A.shape[0]:
            raise DimensionMismatch(f"B has {B.shape[0]} rows but A is {A.shape[0]}x{A.shape[0]}")
        if self.jordan is not None and self.jordan.n != A.shape[0]:
            raise DimensionMismatch("declared Jordan structure does not match A")
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "B", B)

    @property
    def n(self):
        return self.A.shape[0]

    @property
    def r(self):
        return self.B.shape[1]

    @property
    def b(self):
        """The input vector of a single-input system."""
        if self.r != 1:
            raise MultiInputUnsupported(f"analytic formulas need a single input, system has r={self.r}")
        return self.B[:, 0]

    def __repr__(self):
        return f"<LdtSystem n={self.n} r={self.r}>"


@dataclass(frozen=True, eq=False)
class Zonotope:
    """Ordered generators (columns) of a reach or control region."""
    generators: np.ndarray
    horizon: int
    region_kind: str = "reach"
    convention: str = "unit-cube"

    def __post_init__(self):
        if self.region_kind not in REGION_KINDS:
            raise ValueError(f"unknown region kind {self.region_kind!r}")
        if self.convention not in CONVENTIONS:
            raise ValueError(f"unknown convention {self.convention!r}")
        object.__setattr__(self, "generators", as_dense(self.generators, "generators", column=True))

    @property
    def dim(self):
        return self.generators.shape[0]

    @property
    def count(self):
        return self.generators.shape[1]

    @property
    def volume_scale(self):
        """Factor turning a unit-cube volume into this zonotope's convention."""
        return 2.0 ** self.dim if self.convention == "symmetric" else 1.0

    def with_convention(self, convention):
        return Zonotope(self.generators, self.horizon, self.region_kind, convention)


@dataclass(frozen=True, eq=False)
class Polygon2D:
    """Counterclockwise vertices; closure is implicit."""
    vertices: np.ndarray
    convention: str = "symmetric"

    def __len__(self):
        return len(self.vertices)


@dataclass
class VolumeReport:
    analytic: float
    case: str
    oracle: Optional[float] = None
    horizon_used: Optional[int] = None
    rel_gap: Optional[float] = None

    def with_oracle(self, oracle, horizon):
        """Attach an oracle value and its horizon, filling in the relative gap."""
        self.oracle = float(oracle)
        self.horizon_used = int(horizon)
        self.rel_gap = abs(self.analytic - self.oracle) / self.analytic if self.analytic > 0 else None
        return self


@dataclass
class ShapeFactors:
    f1: float
    f2: list
    f3: list
    case: str
    same_sign_ok: bool = True
    f2_index: list = field(default_factory=list)
    box_volume: float = 0.0
    last_row_product: float = 0.0
    uncontrollable: bool = False

    def to_dict(self):
        return {
            "f1": self.f1,
            "f2": list(self.f2),
            "f3": list(self.f3),
            "f2_index": [list(ix) for ix in self.f2_index],
            "same_sign_ok": self.same_sign_ok,
            "box_volume": self.box_volume,
            "last_row_product": self.last_row_product,
        }


@dataclass
class AnalysisReport:
    """Everything ``analyze`` produces; ``to_dict`` keeps the key set stable."""
    case: Optional[str]
    n: int
    region: str = "reach"
    volume: Optional[VolumeReport] = None
    factors: Optional[ShapeFactors] = None
    residual: Optional[float] = None
    warnings: list = field(default_factory=list)

    def to_dict(self):
        vol = self.volume
        analytic = vol.analytic if vol else None
        fac = self.factors.to_dict() if self.factors else {
            "f1": None, "f2": [], "f3": [], "f2_index": [], "same_sign_ok": None,
            "box_volume": None, "last_row_product": None,
        }
        fac["identity_residual"] = self.residual
        return {
            "case": self.case,
            "n": self.n,
            "region": self.region,
            "volume": {
                "analytic_unit": analytic,
                "analytic_symmetric": analytic * 2.0 ** self.n if analytic is not None else None,
                "oracle": vol.oracle if vol else None,
                "rel_gap": vol.rel_gap if vol else None,
                "horizon": vol.horizon_used if vol else None,
            },
            "factors": fac,
            "warnings": list(self.warnings),
        }
