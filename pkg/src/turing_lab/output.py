"""File output: CSV tables, field snapshots, 16-bit graymaps.

Every floating-point value is written with ``repr``, i.e. the shortest
string that round-trips to the same double; output is therefore
byte-reproducible and locale-independent.  Graymaps are binary PGM (P5)
with maxval 65535 and big-endian samples, scaled linearly between the
field minimum and maximum; the scaling bounds and grid layout go into a
sidecar text file next to the image so the raw values can be recovered.
"""

from __future__ import annotations

import os

import numpy as np

from .pde import FieldSet, GridSpec

__all__ = [
    "format_value",
    "write_csv",
    "write_field_csv",
    "write_graymap",
    "write_fieldset",
    "write_key_values",
]


def format_value(x) -> str:
    if isinstance(x, (float, np.floating)):
        return repr(float(x))
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    return str(x)


def write_csv(path: str, header: list[str], rows) -> None:
    """Plain comma-separated table; one header line, repr-formatted cells."""
    with open(path, "w", newline="\n") as fh:
        fh.write(",".join(header) + "\n")
        for row in rows:
            fh.write(",".join(format_value(x) for x in row) + "\n")


def write_field_csv(path: str, values: np.ndarray) -> None:
    """One CSV row per grid row (y fixed, x varying)."""
    with open(path, "w", newline="\n") as fh:
        for row in values:
            fh.write(",".join(repr(float(x)) for x in row) + "\n")


def write_graymap(path: str, values: np.ndarray, note: str = "") -> None:
    """16-bit PGM plus a ``<path>.txt`` sidecar with the scaling bounds."""
    lo = float(values.min())
    hi = float(values.max())
    if hi > lo:
        scaled = np.rint((values - lo) / (hi - lo) * 65535.0).astype(">u2")
    else:
        scaled = np.zeros(values.shape, dtype=">u2")
    ny, nx = values.shape
    with open(path, "wb") as fh:
        fh.write(f"P5\n{nx} {ny}\n65535\n".encode("ascii"))
        fh.write(scaled.tobytes())
    sidecar = [
        f"min = {lo!r}",
        f"max = {hi!r}",
        "encoding = value = min + (max - min) * sample / 65535",
        "layout = row-major, x fastest; row 0 is y = dy/2",
        f"shape = {ny} {nx}",
    ]
    with open(path + ".txt", "w", newline="\n") as fh:
        fh.write("\n".join(sidecar) + "\n")


_FIELD_NAMES = ("u1", "u2", "v1", "v2")


def write_fieldset(
    out_dir: str,
    tag: str,
    f: FieldSet,
    g: GridSpec,
    graymaps: bool = True,
    csv: bool = True,
) -> list[str]:
    """Write all four fields of a snapshot; returns the paths created."""
    paths = []
    for k, name in enumerate(_FIELD_NAMES):
        stem = os.path.join(out_dir, f"{tag}_{name}")
        if csv:
            write_field_csv(stem + ".csv", f.w[k])
            paths.append(stem + ".csv")
        if graymaps:
            write_graymap(stem + ".pgm", f.w[k])
            paths.extend([stem + ".pgm", stem + ".pgm.txt"])
    return paths


def write_key_values(path: str, items: dict) -> None:
    """Flat ``key = value`` text document (repr-formatted floats)."""
    with open(path, "w", newline="\n") as fh:
        for key, value in items.items():
            fh.write(f"{key} = {format_value(value)}\n")
