"""JSON state files: {"dims": [dA, dB], "matrix": [[[re, im], ...], ...]}.

The matrix is row-major with one [re, im] pair per entry.  Saving uses a
canonical layout (sorted keys, two-space indent, repr floats) so that
save(load(f)) is byte-identical for canonically formatted files.
"""

from __future__ import annotations

import json

import numpy as np

from .types import BipartiteState


class StateParseError(ValueError):
    """Raised when a state file cannot be parsed into a bipartite state."""


def state_to_payload(state: BipartiteState, name: str | None = None,
                     description: str | None = None) -> dict:
    matrix = [[[float(z.real), float(z.imag)] for z in row] for row in state.rho]
    payload = {"dims": [state.dim_a, state.dim_b], "matrix": matrix}
    metadata = {}
    if name is not None:
        metadata["name"] = name
    if description is not None:
        metadata["description"] = description
    if metadata:
        payload["metadata"] = metadata
    return payload


def payload_to_state(payload) -> BipartiteState:
    try:
        dim_a, dim_b = (int(d) for d in payload["dims"])
        matrix = payload["matrix"]
        d = len(matrix)
        rho = np.empty((d, d), dtype=complex)
        for i, row in enumerate(matrix):
            if len(row) != d:
                raise StateParseError(f"row {i} has {len(row)} entries, expected {d}")
            for j, entry in enumerate(row):
                re, im = entry
                rho[i, j] = complex(float(re), float(im))
    except StateParseError:
        raise
    except (KeyError, TypeError, ValueError, IndexError) as exc:
        raise StateParseError(f"malformed state payload: {exc}") from exc
    if dim_a * dim_b != d:
        raise StateParseError(
            f"dims {dim_a}x{dim_b} do not match a {d}x{d} matrix")
    return BipartiteState(rho, dim_a, dim_b)


def load_state(path) -> BipartiteState:
    """Read and validate a state file; invariant violations propagate."""
    try:
        with open(path, "r", encoding="utf-8") as fh:
            payload = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise StateParseError(f"cannot parse {path}: {exc}") from exc
    return payload_to_state(payload)


def save_state(path, state: BipartiteState, name: str | None = None,
               description: str | None = None) -> None:
    payload = state_to_payload(state, name=name, description=description)
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True)
        fh.write("\n")
