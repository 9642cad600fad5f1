import json

import numpy as np
import pytest


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def write_system(tmp_path):
    """Write a system-file document to a fresh JSON file and return its path."""
    counter = {"n": 0}

    def _write(A, B, jordan=None, labels=None):
        doc = {"A": np.asarray(A, dtype=float).tolist(), "B": np.asarray(B, dtype=float).tolist()}
        if jordan is not None:
            doc["jordan"] = jordan
        if labels is not None:
            doc["labels"] = labels
        counter["n"] += 1
        path = tmp_path / f"system_{counter['n']}.json"
        path.write_text(json.dumps(doc), encoding="utf-8")
        return str(path)

    return _write
