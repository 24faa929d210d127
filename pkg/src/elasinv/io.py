"""Tensor file formats.

JSON: ``{"voigt": [[...6...] x 6]}`` or ``{"components": [...81...]}`` (flat
or nested 3x3x3x3, row-major ``E_ijkl``); extra keys are ignored. Plain text:
six lines of six whitespace-separated numbers, the Voigt matrix.
"""
import json
import sys

import numpy as np

from .elasticity import as_elasticity, from_voigt, to_voigt
from .errors import FormatError


def parse_tensor(text):
    text = text.strip()
    if not text:
        raise FormatError("empty input")
    if text[0] in "{[":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise FormatError(f"invalid JSON: {exc}") from exc
        return tensor_from_json(data)
    try:
        rows = [[float(x) for x in line.split()] for line in text.splitlines() if line.strip()]
    except ValueError as exc:
        raise FormatError(f"non-numeric entry in Voigt matrix: {exc}") from exc
    if len(rows) != 6 or any(len(r) != 6 for r in rows):
        raise FormatError("plain-text input must be six rows of six numbers")
    return from_voigt(np.array(rows))


def tensor_from_json(data):
    if not isinstance(data, dict):
        raise FormatError('JSON input must be an object with a "voigt" or "components" key')
    try:
        if "voigt" in data:
            return from_voigt(np.array(data["voigt"], dtype=float))
        if "components" in data:
            comps = np.array(data["components"], dtype=float)
            if comps.size != 81:
                raise FormatError(f"expected 81 components, got {comps.size}")
            return as_elasticity(comps.reshape(3, 3, 3, 3))
    except (TypeError, ValueError) as exc:
        if isinstance(exc, FormatError):
            raise
        raise FormatError(f"malformed tensor data: {exc}") from exc
    raise FormatError('JSON input needs a "voigt" or "components" key')


def read_tensor(path):
    """Read a tensor from ``path`` (``-`` for stdin)."""
    try:
        if path == "-":
            text = sys.stdin.read()
        else:
            with open(path, encoding="utf-8") as fh:
                text = fh.read()
    except OSError as exc:
        raise FormatError(f"cannot read {path}: {exc.strerror}") from exc
    return parse_tensor(text)


def tensor_to_json(E, **extra):
    out = {"voigt": to_voigt(np.asarray(E, dtype=float)).tolist()}
    for key, value in extra.items():
        out[key] = np.asarray(value).tolist() if isinstance(value, np.ndarray) else value
    return out
