"""JSON and CSV formats.

Element:        {"algebra": {"kind": "sym"|"herm"|"spin", "n": int}, "data": [...]}
                sym: row-major n x n reals; herm: row-major (re, im) pairs;
                spin: [t, v_1, ..., v_{d-1}].
BoundaryParams: {"frame": [Element, ...], "I": [int], "J": [int],
                 "alpha": {index: real}, "mode": "thompson"|"hilbert"}
HoroPair:       {"y": Element, "z": Element}
"""

from __future__ import annotations

import csv
import json
from pathlib import Path

import numpy as np

from .algebra import AlgebraDescriptor, Element
from .thompson import BoundaryParams, HoroPair


class FormatError(ValueError):
    """Input that does not parse to the expected JSON layout."""


def element_to_json(x: Element) -> dict:
    a = x.algebra
    if a.kind == "herm":
        data = np.stack([x.coords.real, x.coords.imag], axis=-1).ravel()
    else:
        data = np.asarray(x.coords, dtype=float).ravel()
    return {"algebra": {"kind": a.kind, "n": a.n}, "data": [float(v) for v in data]}


def element_from_json(obj) -> Element:
    try:
        desc = obj["algebra"]
        a = AlgebraDescriptor(str(desc["kind"]), int(desc["n"]))
        data = np.asarray(obj["data"], dtype=float)
    except (KeyError, TypeError, ValueError) as exc:
        raise FormatError(f"malformed element: {exc}") from exc
    expected = {"sym": a.n * a.n, "herm": 2 * a.n * a.n, "spin": a.n}[a.kind]
    if data.ndim != 1 or data.size != expected:
        raise FormatError(f"{a} expects {expected} data values, got {data.size}")
    if a.kind == "herm":
        pairs = data.reshape(a.n, a.n, 2)
        coords = pairs[..., 0] + 1j * pairs[..., 1]
    elif a.kind == "sym":
        coords = data.reshape(a.n, a.n)
    else:
        coords = data
    return Element(a, coords)


def params_to_json(params: BoundaryParams) -> dict:
    return {
        "frame": [element_to_json(p) for p in params.frame],
        "I": list(params.I),
        "J": list(params.J),
        "alpha": {str(k): v for k, v in sorted(params.alpha.items())},
        "mode": params.mode,
    }


def params_from_json(obj, mode: str | None = None) -> BoundaryParams:
    try:
        frame = [element_from_json(e) for e in obj["frame"]]
        alpha = {int(k): float(v) for k, v in obj.get("alpha", {}).items()}
        I, J = [int(i) for i in obj.get("I", [])], [int(j) for j in obj.get("J", [])]
        mode = mode or obj.get("mode", "thompson")
    except (KeyError, TypeError, AttributeError, ValueError) as exc:
        raise FormatError(f"malformed boundary parameters: {exc}") from exc
    return BoundaryParams(tuple(frame), tuple(I), tuple(J), alpha, mode)


def pair_to_json(pair: HoroPair) -> dict:
    return {"y": element_to_json(pair.y), "z": element_to_json(pair.z), "mode": pair.mode}


def pair_from_json(obj, mode: str | None = None) -> HoroPair:
    try:
        y, z = element_from_json(obj["y"]), element_from_json(obj["z"])
        mode = mode or obj.get("mode", "thompson")
    except (KeyError, TypeError) as exc:
        raise FormatError(f"malformed pair: {exc}") from exc
    return HoroPair(y, z, mode)


def load_json(path):
    try:
        with open(path) as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path}: {exc}") from exc


def load_element(path) -> Element:
    return element_from_json(load_json(path))


def load_elements(path) -> list:
    """A single element, a list of elements, or {"probes": [...]}."""
    obj = load_json(path)
    if isinstance(obj, dict) and "probes" in obj:
        obj = obj["probes"]
    if isinstance(obj, dict):
        return [element_from_json(obj)]
    if not isinstance(obj, list):
        raise FormatError(f"{path}: expected an element or a list of elements")
    return [element_from_json(e) for e in obj]


def load_boundary(path, mode: str | None = None):
    """BoundaryParams if the file has a frame, otherwise a HoroPair."""
    obj = load_json(path)
    if not isinstance(obj, dict):
        raise FormatError(f"{path}: expected a JSON object")
    if "frame" in obj:
        return params_from_json(obj, mode)
    return pair_from_json(obj, mode)


def dump_json(obj, fh) -> None:
    json.dump(obj, fh, indent=2, sort_keys=True)
    fh.write("\n")


def write_csv(path, header, rows) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        for row in rows:
            w.writerow([format_number(v) if isinstance(v, float) else v for v in row])
    return path


def format_number(v: float) -> str:
    """Fixed 12-decimal output; 'inf' / 'nan' spelled out, tiny values print as 0."""
    if v != v:
        return "nan"
    if v in (float("inf"), float("-inf")):
        return "inf" if v > 0 else "-inf"
    if abs(v) < 5e-13:
        v = 0.0
    return f"{v:.12f}"
