"""Artifact writers: unit-annotated CSV, binary field snapshots, JSON reports.

Snapshot layout (little-endian, fixed for cross-language readers):

    bytes 0-3   magic "CWOM"
    bytes 4-5   version, u16 (currently 1)
    bytes 6-13  n_points, u64
    bytes 14-21 dx in meters, f64
    then n_points (re, im) f64 pairs for field a,
    then n_points (re, im) f64 pairs for field b.
"""

import json
import struct
from pathlib import Path

import numpy as np

SNAPSHOT_MAGIC = b"CWOM"
SNAPSHOT_VERSION = 1


def write_csv(path, columns):
    """Write columns of equal length; header names each column and unit.

    ``columns`` is a list of (name, unit, values). Numbers are rendered
    with %.17g so identical runs emit identical bytes.
    """
    path = Path(path)
    n = len(columns[0][2])
    for name, _, values in columns:
        if len(values) != n:
            raise ValueError(f"column {name!r} length mismatch")
    header = ",".join(f"{name} [{unit}]" for name, unit, _ in columns)
    lines = [header]
    for i in range(n):
        cells = []
        for _, _, values in columns:
            v = values[i]
            if isinstance(v, str):
                cells.append(v)
            elif isinstance(v, complex):
                cells.append("%.17g%+.17gj" % (v.real, v.imag))
            else:
                cells.append("%.17g" % v)
        lines.append(",".join(cells))
    path.write_text("\n".join(lines) + "\n")


def write_snapshot(path, a, b, dx: float):
    """Binary snapshot of one field pair; see module docstring for layout."""
    a = np.asarray(a, dtype=np.complex128)
    b = np.asarray(b, dtype=np.complex128)
    if a.shape != b.shape or a.ndim != 1:
        raise ValueError("snapshot requires two 1D fields of equal length")
    header = SNAPSHOT_MAGIC + struct.pack("<HQd", SNAPSHOT_VERSION, a.size, dx)
    body = bytearray()
    for fieldvals in (a, b):
        inter = np.empty(2 * fieldvals.size, dtype="<f8")
        inter[0::2] = np.real(fieldvals)
        inter[1::2] = np.imag(fieldvals)
        body += inter.tobytes()
    Path(path).write_bytes(header + bytes(body))


def read_snapshot(path):
    """Read a snapshot back: (a, b, dx)."""
    raw = Path(path).read_bytes()
    if raw[:4] != SNAPSHOT_MAGIC:
        raise ValueError("not a field snapshot (bad magic)")
    version, n_points, dx = struct.unpack("<HQd", raw[4:22])
    if version != SNAPSHOT_VERSION:
        raise ValueError(f"unsupported snapshot version {version}")
    expect = 22 + 2 * 16 * n_points
    if len(raw) != expect:
        raise ValueError(f"snapshot truncated: {len(raw)} bytes, need {expect}")
    flat = np.frombuffer(raw, dtype="<f8", offset=22)
    a = flat[0:2 * n_points:2] + 1j * flat[1:2 * n_points:2]
    rest = flat[2 * n_points:]
    b = rest[0::2] + 1j * rest[1::2]
    return a.copy(), b.copy(), dx


def write_json_report(path, payload: dict):
    def default(obj):
        if isinstance(obj, complex):
            return {"re": obj.real, "im": obj.imag}
        if isinstance(obj, np.ndarray):
            return obj.tolist()
        if isinstance(obj, (np.floating, np.integer)):
            return obj.item()
        raise TypeError(f"not JSON-serializable: {type(obj)}")

    Path(path).write_text(json.dumps(payload, indent=2, sort_keys=True,
                                     default=default) + "\n")
