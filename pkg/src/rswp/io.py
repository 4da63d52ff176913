"""Result serialization: probe CSV tables and field-slice rasters.

Probe CSV schema (UTF-8, LF, '.' decimal):
    scenario,probe_id,line,dist_lambda,x_mm,y_mm,z_mm,mag,phase_rad,db

Raster format (little-endian): header = magic "RSWP" (4 bytes),
u32 version=1, u32 nx, u32 ny, f32 spacing_mm, u32 component-id;
payload = nx*ny float32 magnitudes (row-major) then nx*ny float32
phases.  All writes go through a temp file + rename so re-running a
command replaces outputs atomically.
"""

from __future__ import annotations

import os
import struct
import tempfile
from dataclasses import dataclass

import numpy as np

from .errors import RswpError

RASTER_MAGIC = b"RSWP"
RASTER_VERSION = 1
COMPONENT_IDS = {"En": 0, "Et_long": 1, "Et_trans": 2}
COMPONENT_NAMES = {v: k for k, v in COMPONENT_IDS.items()}

CSV_HEADER = "scenario,probe_id,line,dist_lambda,x_mm,y_mm,z_mm,mag,phase_rad,db"

# dB floor written for probes reading exactly zero (e.g. a probe sitting
# inside an ideal conductor); keeps the CSV finite-valued.
DB_FLOOR = -400.0


def atomic_write_bytes(path, payload: bytes) -> None:
    path = os.fspath(path)
    os.makedirs(os.path.dirname(path) or ".", exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=os.path.dirname(path) or ".",
                               prefix=".tmp_", suffix="~")
    try:
        with os.fdopen(fd, "wb") as fh:
            fh.write(payload)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def format_float(x: float) -> str:
    return f"{x:.10g}"


def write_probe_csv(path, scenario: str, rows) -> None:
    """Write probe rows; each row is a mapping with the schema's keys."""
    lines = [CSV_HEADER]
    for r in rows:
        lines.append(",".join([
            scenario,
            r["probe_id"],
            r["line"],
            format_float(r["dist_lambda"]),
            format_float(r["x_mm"]),
            format_float(r["y_mm"]),
            format_float(r["z_mm"]),
            format_float(r["mag"]),
            format_float(r["phase_rad"]),
            format_float(max(r["db"], DB_FLOOR)),
        ]))
    atomic_write_bytes(path, ("\n".join(lines) + "\n").encode("utf-8"))


def read_probe_csv(path) -> list[dict]:
    with open(path, "r", encoding="utf-8") as fh:
        header = fh.readline().strip()
        if header != CSV_HEADER:
            raise RswpError(f"{path}: unexpected probe CSV header {header!r}")
        out = []
        for line in fh:
            line = line.strip()
            if not line:
                continue
            vals = line.split(",")
            out.append({
                "scenario": vals[0], "probe_id": vals[1], "line": vals[2],
                "dist_lambda": float(vals[3]), "x_mm": float(vals[4]),
                "y_mm": float(vals[5]), "z_mm": float(vals[6]),
                "mag": float(vals[7]), "phase_rad": float(vals[8]),
                "db": float(vals[9]),
            })
    return out


@dataclass
class FieldSlice:
    """Finalized complex phasor raster on one grid plane."""

    axis: str                 # plane normal: "x", "y" or "z"
    offset: float             # plane position along the normal, metres
    component: str            # "En" / "Et_long" / "Et_trans"
    mags: np.ndarray          # (nx, ny) float32
    phases: np.ndarray        # (nx, ny) float32
    spacing: float            # in-plane sample spacing, metres

    def __post_init__(self):
        if self.mags.shape != self.phases.shape:
            raise ValueError("magnitude and phase rasters must share a shape")


def write_slice(slc: FieldSlice, path) -> None:
    """Serialize a slice to the binary raster format."""
    nx, ny = slc.mags.shape
    header = struct.pack(
        "<4sIIIfI", RASTER_MAGIC, RASTER_VERSION, nx, ny,
        slc.spacing * 1e3, COMPONENT_IDS[slc.component])
    mags = np.ascontiguousarray(slc.mags, dtype="<f4")
    phases = np.ascontiguousarray(slc.phases, dtype="<f4")
    atomic_write_bytes(path, header + mags.tobytes() + phases.tobytes())


def read_slice(path) -> FieldSlice:
    with open(path, "rb") as fh:
        blob = fh.read()
    if len(blob) < 24 or blob[:4] != RASTER_MAGIC:
        raise RswpError(f"{path}: not a field raster (bad magic)")
    magic, version, nx, ny, spacing_mm, comp_id = struct.unpack("<4sIIIfI", blob[:24])
    if version != RASTER_VERSION:
        raise RswpError(f"{path}: unsupported raster version {version}")
    need = 24 + 2 * 4 * nx * ny
    if len(blob) != need:
        raise RswpError(f"{path}: truncated raster ({len(blob)} of {need} bytes)")
    mags = np.frombuffer(blob, dtype="<f4", count=nx * ny, offset=24).reshape(nx, ny)
    phases = np.frombuffer(blob, dtype="<f4", count=nx * ny,
                           offset=24 + 4 * nx * ny).reshape(nx, ny)
    return FieldSlice(axis="z", offset=0.0, component=COMPONENT_NAMES[comp_id],
                      mags=mags.copy(), phases=phases.copy(), spacing=spacing_mm * 1e-3)
