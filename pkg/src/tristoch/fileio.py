"""Parameter input: inline lists, JSON objects and CSV rows.

Values are decimals or ``"p/q"`` strings.  One ``"p/q"`` anywhere switches
the whole record to exact rational mode.
"""
from __future__ import annotations

import csv
import io
import json
from fractions import Fraction
from pathlib import Path

from .model import PARAM_NAMES


def parse_values(items) -> tuple:
    texts = [str(x).strip() for x in items]
    if any("/" in t for t in texts):
        return tuple(Fraction(t) for t in texts)
    return tuple(float(t) for t in texts)


def parse_inline(text: str) -> tuple:
    """``"0.5,0.25,..."`` or ``"1/2,1/4,..."``."""
    parts = [p for p in text.replace(" ", "").split(",") if p]
    if not parts:
        raise ValueError("empty parameter list")
    return parse_values(parts)


def _from_json_obj(obj) -> tuple:
    if isinstance(obj, list):
        return parse_values(obj)
    if not isinstance(obj, dict):
        raise ValueError("parameter record must be an object or a list")
    if "params" in obj:
        return parse_values(obj["params"])
    missing = [k for k in PARAM_NAMES if k not in obj]
    if missing:
        raise ValueError(f"missing parameter(s): {', '.join(missing)}")
    return parse_values([obj[k] for k in PARAM_NAMES])


def load_json(text: str) -> list[tuple]:
    data = json.loads(text)
    if isinstance(data, list) and data and isinstance(data[0], (dict, list)):
        return [_from_json_obj(o) for o in data]
    return [_from_json_obj(data)]


def load_csv(text: str) -> list[tuple]:
    rows = [r for r in csv.reader(io.StringIO(text)) if r and any(c.strip() for c in r)]
    if rows and rows[0][0].strip().lower() in (PARAM_NAMES[0], "p0"):
        rows = rows[1:]
    return [parse_values(r) for r in rows]


def load_params(path: str | Path) -> list[tuple]:
    """Read every parameter record from a ``.json`` or ``.csv`` file."""
    path = Path(path)
    text = path.read_text(encoding="utf-8")
    if path.suffix.lower() == ".json" or text.lstrip()[:1] in "{[":
        return load_json(text)
    return load_csv(text)
