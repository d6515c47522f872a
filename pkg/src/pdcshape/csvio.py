"""Deterministic CSV emission: `# key = value` metadata, then data columns.

Data numbers use scientific notation with 9 significant digits; metadata
floats use repr so a run can be reconstructed bit-exactly from the header.
Rewriting the same result produces identical bytes.
"""

from __future__ import annotations

from pathlib import Path

import numpy as np


def format_number(value) -> str:
    if isinstance(value, str):
        return value
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return f"{float(value):.8e}"


def _meta_str(value) -> str:
    if value is None:
        return "none"
    if isinstance(value, float):
        return repr(value)
    return str(value)


def render_csv(metadata: dict, columns: list[tuple[str, np.ndarray]]) -> str:
    lines = [f"# {key} = {_meta_str(metadata[key])}" for key in sorted(metadata)]
    lines.append(",".join(name for name, _ in columns))
    if columns:
        n_rows = len(columns[0][1])
        for name, values in columns:
            if len(values) != n_rows:
                raise ValueError(f"column {name!r} length {len(values)} != {n_rows}")
        for i in range(n_rows):
            lines.append(",".join(format_number(values[i]) for _, values in columns))
    return "\n".join(lines) + "\n"


def write_csv(path: str | Path, metadata: dict,
              columns: list[tuple[str, np.ndarray]]) -> None:
    """Write the rendered CSV with LF endings regardless of platform."""
    content = render_csv(metadata, columns)
    with open(path, "w", encoding="ascii", newline="") as fh:
        fh.write(content)
