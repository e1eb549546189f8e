"""JSON encoding helpers: rationals travel as "num/den" strings."""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any

from . import __version__


def frac_str(q) -> str:
    q = Fraction(q)
    return f"{q.numerator}/{q.denominator}"


def parse_frac(s) -> Fraction:
    if isinstance(s, (int, Fraction)):
        return Fraction(s)
    num, _, den = str(s).partition("/")
    return Fraction(int(num), int(den or 1))


def _default(obj: Any):
    if isinstance(obj, Fraction):
        return frac_str(obj)
    if hasattr(obj, "to_json"):
        return obj.to_json()
    if isinstance(obj, (set, frozenset)):
        return sorted(obj)
    if isinstance(obj, tuple):
        return list(obj)
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def dumps(obj: Any) -> str:
    """Deterministic JSON (sorted keys, fixed separators)."""
    return json.dumps(obj, default=_default, sort_keys=True, indent=2, ensure_ascii=False)


def certificate(command: str, inputs: dict, result: dict, flags: dict, example: str = "") -> dict:
    return {
        "command": command,
        "inputs": inputs,
        "result": result,
        "flags": flags,
        "verified": all(bool(v) for v in flags.values()),
        "example": example,
        "tool": {"name": "hopfforms", "version": __version__},
    }
