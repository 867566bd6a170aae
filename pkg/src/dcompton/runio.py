"""Run configuration files, CSV emission and JSON manifests.

Config files are flat ``key = value`` text with '#' comments; a
``*.manifest.json`` produced by an earlier run is also accepted (its
resolved parameter block is reused, which reproduces the run bit-identically
in deterministic mode).

CSV dialect: comma-separated, '.' decimal, floats in scientific notation at
17 significant digits (lossless double round-trip), mandatory header row,
UTF-8, LF line endings.  Missing values (e.g. an undefined density matrix)
are emitted as 'nan'.
"""

import json
from datetime import datetime, timezone
from pathlib import Path

from . import __version__
from .backend import active_backend

MISSING = "nan"


def parse_config_file(path) -> dict:
    """Flat key = value config (str values; callers coerce types)."""
    path = Path(path)
    if path.suffix == ".json":
        payload = json.loads(path.read_text(encoding="utf-8"))
        params = payload.get("params", payload)
        return {str(k): str(v) for k, v in params.items() if v is not None}
    out = {}
    for lineno, raw in enumerate(path.read_text(encoding="utf-8").splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"{path}:{lineno}: expected 'key = value', got {raw!r}")
        key, value = line.split("=", 1)
        out[key.strip()] = value.strip()
    return out


def fmt_float(x) -> str:
    if x != x:                          # NaN sentinel
        return MISSING
    return format(float(x), ".16e")


def format_cell(x) -> str:
    if isinstance(x, (int,)) and not isinstance(x, bool):
        return str(x)
    if isinstance(x, str):
        return x
    return fmt_float(x)


def write_csv(path, header, rows) -> int:
    """Streamed CSV write; returns the number of data rows written."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    count = 0
    with path.open("w", encoding="utf-8", newline="\n") as fh:
        fh.write(",".join(header) + "\n")
        for row in rows:
            fh.write(",".join(format_cell(c) for c in row) + "\n")
            count += 1
    return count


def manifest_path(out_path) -> Path:
    out_path = Path(out_path)
    return out_path.with_suffix(out_path.suffix + ".manifest.json")


def write_manifest(out_path, subcommand: str, params: dict,
                   convergence: dict, deterministic: bool) -> Path:
    """JSON sidecar with every resolved parameter and diagnostics."""
    payload = {
        "subcommand": subcommand,
        "engine_version": __version__,
        "backend": active_backend(),
        "deterministic": bool(deterministic),
        "timestamp": None if deterministic
        else datetime.now(timezone.utc).isoformat(),
        "params": params,
        "convergence": convergence,
    }
    mpath = manifest_path(out_path)
    mpath.write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n",
                     encoding="utf-8")
    return mpath
