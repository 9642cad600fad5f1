"""
System file loader for the control-ability analysis toolkit.

A system file is one JSON document:

    {
      "A": [[0.4, 0.0], [0.0, 0.9]],
      "B": [[1.0], [1.0]],
      "jordan": {"blocks": [{"lambda": 0.4, "size": 1}, {"lambda": 0.9, "size": 1}],
                 "P": [[1, 0], [0, 1]]},
      "labels": {"name": "diagonal pair"}
    }

"B" may also be a flat list, read as a single input column. The optional
"jordan" entry bypasses numerical Jordan detection; omitting its "P" means
A is already in Jordan form.
"""

import json
import logging
from typing import Any, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, ValidationError, model_validator

from models import LdtSystem
from utils.errors import SystemFileError
from utils.matspec import jordan_from_declared

logger = logging.getLogger(__name__)


class JordanBlockSpec(BaseModel):
    model_config = ConfigDict(populate_by_name=True, allow_inf_nan=False)

    lam: float = Field(alias="lambda")
    size: int = Field(ge=1)


class JordanSpec(BaseModel):
    model_config = ConfigDict(allow_inf_nan=False)

    blocks: list[JordanBlockSpec] = Field(min_length=1)
    P: Optional[list[list[float]]] = None


class SystemFile(BaseModel):
    """Schema of a system file."""
    model_config = ConfigDict(allow_inf_nan=False, extra="forbid")

    A: list[list[float]] = Field(min_length=1)
    B: list[list[float]] | list[float] = Field(min_length=1)
    jordan: Optional[JordanSpec] = None
    labels: dict[str, Any] = Field(default_factory=dict)

    @model_validator(mode="after")
    def _dimensions(self):
        n = len(self.A)
        if any(len(row) != n for row in self.A):
            raise ValueError(f"A must be square; got {n} rows of lengths {[len(r) for r in self.A]}")
        if isinstance(self.B[0], list):
            widths = {len(row) for row in self.B}
            if len(widths) != 1 or 0 in widths:
                raise ValueError("B rows must be non-empty and of equal length")
        if len(self.B) != n:
            raise ValueError(f"B has {len(self.B)} rows but A is {n}x{n}")
        if self.jordan is not None:
            total = sum(blk.size for blk in self.jordan.blocks)
            if total != n:
                raise ValueError(f"Jordan block sizes add up to {total}, expected {n}")
            if self.jordan.P is not None and (len(self.jordan.P) != n or any(len(r) != n for r in self.jordan.P)):
                raise ValueError(f"Jordan transform P must be {n}x{n}")
        return self


def parse_system(data):
    """
    Build an LdtSystem from a decoded system-file document.

    Raises:
        SystemFileError: schema violations (exit code 1)
        StructuralError: a declared Jordan structure that does not fit A
    """
    try:
        parsed = SystemFile.model_validate(data)
    except ValidationError as e:
        raise SystemFileError(f"invalid system file: {e.errors(include_url=False)}")

    A = np.array(parsed.A, dtype=float)
    B = np.array(parsed.B, dtype=float)
    if B.ndim == 1:
        B = B.reshape(-1, 1)
    jordan = None
    if parsed.jordan is not None:
        P = np.eye(A.shape[0]) if parsed.jordan.P is None else np.array(parsed.jordan.P, dtype=float)
        jordan = jordan_from_declared(A, [(blk.lam, blk.size) for blk in parsed.jordan.blocks], P)
    return LdtSystem(A, B, jordan=jordan, labels=dict(parsed.labels))


def load_system(path):
    """Read and parse a system file from disk."""
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except FileNotFoundError:
        raise SystemFileError(f"system file not found: {path}")
    except (OSError, UnicodeDecodeError) as e:
        raise SystemFileError(f"cannot read system file {path}: {e}")
    except json.JSONDecodeError as e:
        raise SystemFileError(f"system file {path} is not valid JSON: {e}")
    logger.info(f"Loaded system file {path}")
    return parse_system(data)


def _rows(M):
    # repr of a float round-trips bit-exactly (at most 17 significant digits)
    return [[float(f"{x:.17g}") for x in row] for row in np.asarray(M)]


def system_to_dict(sys):
    doc = {"A": _rows(sys.A), "B": _rows(sys.B)}
    if sys.jordan is not None:
        doc["jordan"] = {
            "blocks": [{"lambda": float(f"{blk.lam:.17g}"), "size": blk.size} for blk in sys.jordan.blocks],
            "P": _rows(sys.jordan.P),
        }
    if sys.labels:
        doc["labels"] = dict(sys.labels)
    return doc


def dump_system(sys, path=None):
    """
    Serialize a system to system-file JSON, optionally writing it to ``path``.

    Returns:
        str JSON text
    """
    text = json.dumps(system_to_dict(sys), indent=2)
    if path is not None:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        logger.info(f"Wrote system file {path}")
    return text
