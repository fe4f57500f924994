"""Run manifests and canonical JSON / CSV report files."""

from __future__ import annotations

import csv
import enum
import io
import json
import math
import os
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

__all__ = [
    "SIG_DIGITS",
    "RunManifest",
    "canonical",
    "dumps_canonical",
    "table_to_csv",
    "write_report",
    "spectrum_table",
    "leakage_table",
    "artifact_version",
]

SIG_DIGITS = 15


def artifact_version() -> str:
    try:
        from importlib.metadata import PackageNotFoundError, version
    except ImportError:  # pragma: no cover
        return "unknown"
    try:
        return version("artifact")
    except PackageNotFoundError:
        return "unknown"


def _round(x: float):
    if math.isnan(x):
        return "nan"
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return float(f"{x:.{SIG_DIGITS}g}")


def canonical(obj):
    """Recursively convert to plain JSON types, floats rounded to 15 significant digits."""
    if isinstance(obj, dict):
        return {str(k): canonical(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [canonical(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return canonical(obj.tolist())
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        return _round(float(obj))
    if isinstance(obj, complex):
        return {"re": _round(obj.real), "im": _round(obj.imag)}
    if isinstance(obj, enum.Enum):
        return obj.value
    if hasattr(obj, "to_json"):
        return canonical(obj.to_json())
    if obj is None or isinstance(obj, str):
        return obj
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def dumps_canonical(obj) -> str:
    return json.dumps(canonical(obj), sort_keys=True, indent=2, ensure_ascii=True) + "\n"


@dataclass
class RunManifest:
    """Everything needed to re-run a command and trace its numbers.

    ``wall_clock`` is recorded but written to a separate ``timing.json`` so
    that ``manifest.json`` itself is reproducible byte for byte.
    """

    command: str
    parameters: dict
    master_seed: int | None = None
    tolerances: dict = field(default_factory=dict)
    passed: bool | None = None
    summary: dict = field(default_factory=dict)
    version: str = field(default_factory=artifact_version)
    wall_clock: float | None = None

    def to_json(self) -> dict:
        return {
            "command": self.command,
            "parameters": self.parameters,
            "master_seed": self.master_seed,
            "tolerances": self.tolerances,
            "passed": self.passed,
            "summary": self.summary,
            "version": self.version,
        }


def _cell(v) -> str:
    v = canonical(v)
    if isinstance(v, float):
        return repr(v)
    if isinstance(v, bool):
        return "true" if v else "false"
    if v is None:
        return ""
    return str(v)


def table_to_csv(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([_cell(v) for v in row])
    return buf.getvalue()


def _write(path: Path, text: str) -> None:
    try:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    except OSError as exc:
        raise OSError(f"cannot write report file {path}: {exc.strerror}") from exc


def write_report(manifest: RunManifest, payload: dict | None, fmt: str = "json", out_dir=".",
                 stem: str | None = None) -> list:
    """Write ``manifest.json`` plus the payload; returns the written paths.

    ``fmt="json"`` writes ``<stem>.json``.  ``fmt="csv"`` writes the payload's
    ``"table"`` entry (``{"header": [...], "rows": [...]}``) to ``<stem>.csv``
    and anything else to ``<stem>.json``; a payload with no table becomes a
    ``key,value`` CSV of its scalar entries.  An empty payload writes only the
    manifest.
    """
    if fmt not in ("json", "csv"):
        raise ValueError(f"format must be 'json' or 'csv', got {fmt!r}")
    out = Path(out_dir)
    try:
        out.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        raise OSError(f"cannot create output directory {out}: {exc.strerror}") from exc
    stem = stem or manifest.command
    payload = dict(payload or {})
    files = {}
    if payload and fmt == "json":
        files[f"{stem}.json"] = dumps_canonical(payload)
    elif payload:
        table = payload.pop("table", None)
        if table is not None:
            files[f"{stem}.csv"] = table_to_csv(table["header"], table["rows"])
            if payload:
                files[f"{stem}.json"] = dumps_canonical(payload)
        else:
            flat = canonical(payload)
            rows = [(k, v if not isinstance(v, (dict, list)) else json.dumps(v, sort_keys=True))
                    for k, v in sorted(flat.items())]
            files[f"{stem}.csv"] = table_to_csv(["key", "value"], rows)
    doc = manifest.to_json()
    doc["artifacts"] = sorted(files)
    written = []
    for name in sorted(files):
        _write(out / name, files[name])
        written.append(out / name)
    _write(out / "manifest.json", dumps_canonical(doc))
    written.append(out / "manifest.json")
    if manifest.wall_clock is not None:
        _write(out / "timing.json", dumps_canonical({"wall_clock_seconds": manifest.wall_clock}))
        written.append(out / "timing.json")
    return [os.fspath(p) for p in written]


def spectrum_table(eigenvalues) -> dict:
    return {"header": ["index", "eigenvalue"], "rows": [(k, float(w)) for k, w in enumerate(eigenvalues)]}


def leakage_table(trace) -> dict:
    return {"header": ["t", "charge_expectation", "norm_drift"], "rows": list(trace.rows())}
