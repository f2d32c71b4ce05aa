"""Machine-readable structured-text dumps.

One `key.path = value` line per scalar, depth-first through dicts and
sequences, in insertion order, so two runs of the same command emit
byte-identical output.  Exact rationals are written as "num/den"."""

from __future__ import annotations

from fractions import Fraction


def dump_scalar(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if value is None:
        return "none"
    if isinstance(value, Fraction):
        return f"{value.numerator}/{value.denominator}"
    return str(value)


def dump_lines(value, prefix: str = "") -> list[str]:
    if isinstance(value, dict):
        out = []
        for key, sub in value.items():
            path = f"{prefix}.{key}" if prefix else str(key)
            out.extend(dump_lines(sub, path))
        return out
    if isinstance(value, (list, tuple)):
        out = []
        for i, sub in enumerate(value):
            path = f"{prefix}.{i}" if prefix else str(i)
            out.extend(dump_lines(sub, path))
        return out
    return [f"{prefix} = {dump_scalar(value)}"]


def dump_text(value) -> str:
    return "\n".join(dump_lines(value)) + "\n"
