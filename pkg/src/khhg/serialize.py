"""CSV serialization of the result types.

All files share the same layout: '#'-prefixed metadata comment lines,
one header line with column names, then comma-delimited data rows.
Writes are atomic (temp file + rename) and bitwise deterministic for
identical inputs.
"""

from __future__ import annotations

import os
import tempfile
from pathlib import Path

import numpy as np

from khhg.errors import ValidationError
from khhg.dipole import AccelerationSeries
from khhg.spectrum import Spectrum
from khhg.tfa import GaborMap


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def _meta_lines(meta: dict) -> list:
    return [f"# {key}: {meta[key]}" for key in sorted(meta)]


def atomic_write_text(path, text: str) -> Path:
    """Write text to ``path`` via a temp file in the same directory."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=path.name, suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
    return path


def _write_table(path, meta: dict, header: list, columns: list) -> Path:
    lines = _meta_lines(meta)
    lines.append(",".join(header))
    for row in zip(*columns):
        lines.append(",".join(_fmt(v) for v in row))
    return atomic_write_text(path, "\n".join(lines) + "\n")


def _read_table(path, expected_header: list):
    meta = {}
    rows = []
    with open(path) as fh:
        header = None
        for line in fh:
            line = line.strip()
            if not line:
                continue
            if line.startswith("#"):
                key, _, value = line[1:].partition(":")
                meta[key.strip()] = value.strip()
                continue
            if header is None:
                header = line.split(",")
                if header != expected_header:
                    raise ValidationError(
                        f"{path}: expected columns {expected_header}, found {header}"
                    )
                continue
            rows.append([float(v) for v in line.split(",")])
    if header is None:
        raise ValidationError(f"{path}: no header line found")
    data = np.array(rows, dtype=float).reshape(len(rows), len(expected_header))
    return meta, data


# --- acceleration series ---------------------------------------------

SERIES_HEADER = ["t_au", "accel_au"]


def write_series(path, series: AccelerationSeries) -> Path:
    return _write_table(path, series.meta, SERIES_HEADER, [series.t, series.a])


def read_series(path) -> AccelerationSeries:
    meta, data = _read_table(path, SERIES_HEADER)
    for key in ("omega_L", "alpha0", "Z", "ellipticity"):
        if key in meta:
            meta[key] = float(meta[key])
    return AccelerationSeries(t=data[:, 0], a=data[:, 1], meta=meta)


# --- spectra ----------------------------------------------------------

SPECTRUM_HEADER = ["harmonic_order", "omega_au", "S_normalized"]
SPECTRUM_RAW_HEADER = ["harmonic_order", "omega_au", "S_normalized", "S_raw"]


def write_spectrum(path, spec: Spectrum) -> Path:
    meta = dict(spec.meta)
    meta["omega_L"] = spec.omega_L
    meta["normalization"] = spec.normalization
    peak = float(spec.S.max()) if spec.S.size else 0.0
    scale = peak if peak > 0 else 1.0
    if spec.normalization == "raw":
        cols = [spec.harmonic_order, spec.omega, spec.S / scale, spec.S]
        return _write_table(path, meta, SPECTRUM_RAW_HEADER, cols)
    cols = [spec.harmonic_order, spec.omega, spec.S]
    return _write_table(path, meta, SPECTRUM_HEADER, cols)


def read_spectrum(path) -> Spectrum:
    meta, data = _read_table_any(path, (SPECTRUM_HEADER, SPECTRUM_RAW_HEADER))
    omega_L = float(meta.pop("omega_L"))
    normalization = meta.pop("normalization", "max_normalized")
    S = data[:, 3] if data.shape[1] == 4 else data[:, 2]
    return Spectrum(omega=data[:, 1], S=S, omega_L=omega_L,
                    normalization=normalization, meta=meta)


def _read_table_any(path, headers):
    last_error = None
    for header in headers:
        try:
            return _read_table(path, list(header))
        except ValidationError as exc:
            last_error = exc
    raise last_error


# --- Gabor maps -------------------------------------------------------

GABOR_HEADER = ["t_au", "omega_au", "G2"]


def write_gabor(path, gmap: GaborMap, max_normalize: bool = True) -> Path:
    meta = dict(gmap.meta)
    meta["tau"] = gmap.tau
    meta["normalization"] = "max_normalized" if max_normalize else "raw"
    G2 = gmap.G2
    if max_normalize:
        peak = float(G2.max())
        G2 = G2 / peak if peak > 0 else G2
    t_col, w_col = np.meshgrid(gmap.t_grid, gmap.omega_grid, indexing="ij")
    return _write_table(path, meta, GABOR_HEADER,
                        [t_col.ravel(), w_col.ravel(), G2.ravel()])


def read_gabor(path) -> GaborMap:
    meta, data = _read_table(path, GABOR_HEADER)
    t = np.unique(data[:, 0])
    w = np.unique(data[:, 1])
    G2 = data[:, 2].reshape(t.size, w.size)
    tau = float(meta.pop("tau"))
    for key in ("omega_L", "alpha0", "Z", "ellipticity"):
        if key in meta:
            meta[key] = float(meta[key])
    return GaborMap(t_grid=t, omega_grid=w, G2=G2, tau=tau, meta=meta)
