"""
Canonical JSON output. Keys are sorted and floats are written with 17 significant digits, so identical inputs give
byte-identical reports.
"""
import json
import math
from enum import Enum
from fractions import Fraction
from pathlib import Path

import numpy as np
from pydantic import BaseModel

from .numbers import format_fraction


def _normalize(value):
    if isinstance(value, BaseModel):
        return _normalize(value.model_dump(mode="python"))
    if isinstance(value, Enum):
        return value.value
    if isinstance(value, Fraction):
        return format_fraction(value)
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        value = float(value)
        if not math.isfinite(value):
            return str(value)
        return float(f"{value:.17g}")
    if isinstance(value, (complex, np.complexfloating)):
        return {"re": _normalize(value.real), "im": _normalize(value.imag)}
    if isinstance(value, np.ndarray):
        return [_normalize(v) for v in value.tolist()]
    if isinstance(value, dict):
        return {str(k.value if isinstance(k, Enum) else k): _normalize(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_normalize(v) for v in value]
    if isinstance(value, Path):
        return str(value)
    return value


def to_canonical_json(value, indent: int | None = 2) -> str:
    """
    Serialize a report to canonical JSON.

    Parameters
    ----------
    value : any
        Nested structure of dicts, lists, numbers, pydantic models, enums, fractions and numpy values.
    indent : int or None, optional
        Indentation passed to ``json.dumps``, by default 2.

    Returns
    -------
    str
        JSON text with sorted keys.
    """
    return json.dumps(_normalize(value), sort_keys=True, indent=indent, ensure_ascii=False)
