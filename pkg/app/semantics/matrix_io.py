from pathlib import Path

import numpy as np

from app.errors import CircuitParseError


def format_matrix(m: np.ndarray) -> str:
    """One row per line, entries written as `re+imj`."""
    rows = []
    for row in np.atleast_2d(m):
        rows.append(" ".join(f"{z.real:.17g}{z.imag:+.17g}j" for z in row))
    return "\n".join(rows) + "\n"


def parse_matrix(text: str) -> np.ndarray:
    rows = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            rows.append([complex(token) for token in line.split()])
        except ValueError as e:
            raise CircuitParseError(f"bad matrix entry: {e}", line=lineno) from e
        if len(rows[-1]) != len(rows[0]):
            raise CircuitParseError("ragged matrix row", line=lineno)
    if not rows:
        raise CircuitParseError("empty matrix")
    return np.array(rows, dtype=complex)


def read_matrix(path: str | Path) -> np.ndarray:
    path = Path(path)
    try:
        return parse_matrix(path.read_text())
    except OSError as e:
        raise CircuitParseError(f"cannot read {path}: {e}") from e


def write_matrix(m: np.ndarray, path: str | Path) -> None:
    Path(path).write_text(format_matrix(m))
