"""Text formats: structure files, partial EDM CSV, radii CSV, traces, XYZ, reports.

Float fields are serialized with repr (shortest round-trip form) so that
identical runs produce byte-identical files.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .edm import PartialEDM, PointCloud
from .errors import InvalidInput, ParseError


def _fmt(v) -> str:
    return repr(float(v))


def parse_structure(text) -> PointCloud:
    """Parse `ELEMENT X Y Z RESIDUE` lines into a labeled point cloud.

    Blank lines and lines starting with # are ignored. Coordinates are in
    angstroms, the residue index is a nonnegative integer. Raises
    ParseError with the 1-based line number on malformed lines and
    InvalidInput when no atoms remain.
    """
    lines = text.splitlines() if isinstance(text, str) else list(text)
    rows = []
    elements = []
    residues = []
    for lineno, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        tokens = line.split()
        if len(tokens) != 5:
            raise ParseError(
                f"expected ELEMENT X Y Z RESIDUE, got {len(tokens)} fields", line=lineno
            )
        try:
            xyz = [float(t) for t in tokens[1:4]]
        except ValueError:
            raise ParseError(f"bad coordinate in {tokens[1:4]}", line=lineno) from None
        try:
            residue = int(tokens[4])
        except ValueError:
            raise ParseError(f"bad residue index {tokens[4]!r}", line=lineno) from None
        if residue < 0:
            raise ParseError(f"residue index must be nonnegative, got {residue}", line=lineno)
        rows.append(xyz)
        elements.append(tokens[0])
        residues.append(residue)
    if not rows:
        raise InvalidInput("structure file contains no atoms")
    return PointCloud(np.array(rows), tuple(elements), tuple(residues))


def write_xyz(path, pc: PointCloud, comment: str = "") -> None:
    """Write a point cloud in XYZ format with 6-decimal coordinates.

    Clouds with fewer than 3 dimensions are zero-padded; more than 3 is
    an error since XYZ has no place for the extra coordinates.
    """
    if pc.dim > 3:
        raise InvalidInput("write_xyz: points must have dimension at most 3")
    coords = np.zeros((pc.order, 3))
    coords[:, : pc.dim] = pc.coords
    lines = [str(pc.order), " ".join(comment.split())]
    for element, (x, y, z) in zip(pc.elements, coords):
        lines.append(f"{element} {x:.6f} {y:.6f} {z:.6f}")
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def write_partial_edm(path, partial: PartialEDM) -> None:
    """Write the known off-diagonal entries as `i,j,value` rows with i < j."""
    m = partial.order
    lines = ["i,j,value"]
    for i in range(m - 1):
        for j in range(i + 1, m):
            if partial.mask[i, j]:
                lines.append(f"{i},{j},{_fmt(partial.values[i, j])}")
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def read_partial_edm(text, order: int) -> PartialEDM:
    """Parse `i,j,value` rows (0-based, i < j, squared distances) for a known order."""
    if order < 1:
        raise InvalidInput("read_partial_edm: order must be positive")
    lines = text.splitlines() if isinstance(text, str) else list(text)
    mask = np.eye(order, dtype=bool)
    values = np.zeros((order, order))
    saw_header = False
    for lineno, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line:
            continue
        if not saw_header:
            if [t.strip() for t in line.split(",")] != ["i", "j", "value"]:
                raise ParseError("expected header i,j,value", line=lineno)
            saw_header = True
            continue
        fields = [t.strip() for t in line.split(",")]
        if len(fields) != 3:
            raise ParseError(f"expected 3 fields, got {len(fields)}", line=lineno)
        try:
            i, j = int(fields[0]), int(fields[1])
            value = float(fields[2])
        except ValueError:
            raise ParseError(f"bad entry {line!r}", line=lineno) from None
        if not 0 <= i < j < order:
            raise ParseError(f"indices ({i}, {j}) must satisfy 0 <= i < j < {order}", line=lineno)
        if not np.isfinite(value) or value < 0.0:
            raise ParseError(f"value must be a finite nonnegative number, got {fields[2]}", line=lineno)
        if mask[i, j]:
            raise ParseError(f"duplicate entry for pair ({i}, {j})", line=lineno)
        mask[i, j] = mask[j, i] = True
        values[i, j] = values[j, i] = value
    if not saw_header:
        raise InvalidInput("partial EDM file is empty")
    return PartialEDM(mask=mask, values=values)


def read_radii(text) -> dict:
    """Parse an `element,radius_angstrom` CSV into a radius table."""
    lines = text.splitlines() if isinstance(text, str) else list(text)
    radii = {}
    saw_header = False
    for lineno, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line:
            continue
        if not saw_header:
            if [t.strip() for t in line.split(",")] != ["element", "radius_angstrom"]:
                raise ParseError("expected header element,radius_angstrom", line=lineno)
            saw_header = True
            continue
        fields = [t.strip() for t in line.split(",")]
        if len(fields) != 2 or not fields[0]:
            raise ParseError(f"expected element,radius pairs, got {line!r}", line=lineno)
        try:
            radius = float(fields[1])
        except ValueError:
            raise ParseError(f"bad radius {fields[1]!r}", line=lineno) from None
        if not np.isfinite(radius) or radius <= 0.0:
            raise ParseError(f"radius must be positive, got {fields[1]}", line=lineno)
        if fields[0] in radii:
            raise ParseError(f"duplicate element {fields[0]!r}", line=lineno)
        radii[fields[0]] = radius
    if not saw_header:
        raise InvalidInput("radius file is empty")
    return radii


def write_trace(path, trace) -> None:
    """Write solver trace rows as CSV, one row per iteration."""
    lines = ["iteration,relative_error,relative_error_db,gap_norm"]
    for rec in trace:
        lines.append(
            f"{rec.iteration},{_fmt(rec.relative_error)},{_fmt(rec.relative_error_db)},{_fmt(rec.gap_norm)}"
        )
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def write_report(path, report: dict) -> None:
    """Write the run report as stable, human-readable JSON."""
    Path(path).write_text(json.dumps(report, indent=2) + "\n", encoding="utf-8")
