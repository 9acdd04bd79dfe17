"""JSON encodings for matrices, states, Kraus sets, reports, and scenarios.

Matrix encoding: {"rows": n, "cols": m, "data": [[re, im], ...]} with the
data row-major.  Decimal round-trip is good to full double precision.
"""

from __future__ import annotations

import json
from dataclasses import asdict
from typing import Any

import numpy as np

from .dynamics import CnotScenario, CompositeState
from .kraus import ChannelReport, KrausSet, kraus_set
from .states import BlochVector, DensityMatrix, bloch_to_density, validate_density


class DecodeError(ValueError):
    """Raised when a JSON document does not match the expected schema."""


def matrix_to_json(m: np.ndarray) -> dict[str, Any]:
    m = np.asarray(m, dtype=complex)
    return {
        "rows": int(m.shape[0]),
        "cols": int(m.shape[1]),
        "data": [[float(v.real), float(v.imag)] for v in m.reshape(-1)],
    }


def matrix_from_json(obj: Any) -> np.ndarray:
    try:
        rows, cols, data = int(obj["rows"]), int(obj["cols"]), obj["data"]
    except (TypeError, KeyError) as exc:
        raise DecodeError(f"not a matrix object: missing {exc}") from exc
    if len(data) != rows * cols:
        raise DecodeError(f"matrix data length {len(data)} != rows*cols = {rows * cols}")
    flat = np.array([complex(re, im) for re, im in data])
    return flat.reshape(rows, cols)


def state_to_json(state: DensityMatrix | BlochVector) -> dict[str, Any]:
    if isinstance(state, BlochVector):
        return {"bloch": {"r": state.r, "theta": state.theta, "phi": state.phi}}
    return {"matrix": matrix_to_json(state.mat)}


def state_from_json(obj: Any, tol: float | None = None) -> DensityMatrix:
    """Decode either encoding of a state; Bloch input is converted."""
    if not isinstance(obj, dict):
        raise DecodeError("state must be a JSON object")
    if "bloch" in obj:
        b = obj["bloch"]
        try:
            return bloch_to_density(BlochVector(float(b["r"]), float(b["theta"]), float(b["phi"])))
        except (TypeError, KeyError) as exc:
            raise DecodeError(f"bad bloch object: {exc}") from exc
    if "matrix" in obj:
        mat = matrix_from_json(obj["matrix"])
        if tol is None:
            return validate_density(mat)
        return validate_density(mat, tol=tol)
    raise DecodeError("state object needs a 'bloch' or 'matrix' key")


def kraus_to_json(k: KrausSet) -> dict[str, Any]:
    return {
        "d_in": k.d_in,
        "d_out": k.d_out,
        "ops": [matrix_to_json(op) for op in k.ops],
    }


def kraus_from_json(obj: Any) -> KrausSet:
    try:
        ops = [matrix_from_json(o) for o in obj["ops"]]
        return kraus_set(ops, d_in=int(obj["d_in"]), d_out=int(obj["d_out"]))
    except (TypeError, KeyError) as exc:
        raise DecodeError(f"not a Kraus-set object: {exc}") from exc


def report_to_json(report: ChannelReport) -> dict[str, float]:
    return asdict(report)


def scenario_from_json(obj: Any) -> tuple[np.ndarray, CompositeState]:
    """Decode a scenario document into (hamiltonian, initial joint state).

    Two forms: {"scenario": "cnot", "r0": x} or
    {"scenario": "custom", "hamiltonian": <matrix>, "rho_ie0": <matrix>,
    "dims": [d_i, d_e]}.
    """
    if not isinstance(obj, dict) or "scenario" not in obj:
        raise DecodeError("scenario object needs a 'scenario' key")
    kind = obj["scenario"]
    if kind == "cnot":
        from .dynamics import cnot_hamiltonian

        try:
            sc = CnotScenario(float(obj["r0"]))
        except (TypeError, KeyError) as exc:
            raise DecodeError(f"cnot scenario needs 'r0': {exc}") from exc
        return cnot_hamiltonian(), sc.initial_joint()
    if kind == "custom":
        try:
            h = matrix_from_json(obj["hamiltonian"])
            rho = matrix_from_json(obj["rho_ie0"])
            d_i, d_e = (int(d) for d in obj["dims"])
        except (TypeError, KeyError, ValueError) as exc:
            raise DecodeError(f"bad custom scenario: {exc}") from exc
        joint = CompositeState(mat=validate_density(rho), d_i=d_i, d_e=d_e)
        return h, joint
    raise DecodeError(f"unknown scenario kind {kind!r}")


def dump(obj: Any, path: str) -> None:
    with open(path, "w") as fh:
        json.dump(obj, fh, indent=2)
        fh.write("\n")


def load(path: str) -> Any:
    with open(path) as fh:
        return json.load(fh)
