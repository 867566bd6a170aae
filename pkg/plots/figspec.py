"""Shared machinery for the figure scripts: CSV + manifest loading, input
consistency checks, and the render dispatcher.

The scripts consume only the engine CLI's outputs (CSV files and their
``*.manifest.json`` sidecars); no physics is recomputed here.
"""

import json
from dataclasses import dataclass, field
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

RATE_UNITS = r"$\mathrm{s^{-1}\,sr^{-2}\,MeV^{-1}}$"

# physics keys that must agree between CSVs shown in one figure
_SHARED_KEYS = ("omega_ev", "xi", "laser_pol", "electron_mev", "theta_b",
                "psi_b", "theta_c", "psi_c", "omega_b")


class FigureInputError(Exception):
    pass


@dataclass
class FigureSpec:
    csv_paths: list
    kind: str                      # spectrum | contour | norders | xi-sweep | concurrence-contour
    out_path: str
    log_scale: bool = False
    dpi: int = 300
    value_column: str | None = None
    title: str | None = None
    extras: dict = field(default_factory=dict)


def load_table(path):
    """CSV -> (header list, float ndarray with NaN for sentinels)."""
    path = Path(path)
    with path.open(encoding="utf-8") as fh:
        header = fh.readline().rstrip("\n").split(",")
        rows = [line.rstrip("\n").split(",") for line in fh if line.strip()]
    if not rows:
        raise FigureInputError(f"{path}: no data rows (header-only CSV)")
    data = np.array([[float(c) for c in row] for row in rows])
    return header, data


def load_manifest(csv_path):
    mpath = Path(str(csv_path) + ".manifest.json")
    if not mpath.exists():
        return None
    return json.loads(mpath.read_text(encoding="utf-8"))


def check_manifests_compatible(csv_paths):
    """Refuse to overlay CSVs produced at conflicting physics parameters."""
    manifests = [load_manifest(p) for p in csv_paths]
    known = [(p, m) for p, m in zip(csv_paths, manifests) if m is not None]
    if len(known) < 2:
        return
    ref_path, ref = known[0]
    for path, m in known[1:]:
        for key in _SHARED_KEYS:
            a = ref.get("params", {}).get(key)
            b = m.get("params", {}).get(key)
            if a is not None and b is not None and a != b:
                raise FigureInputError(
                    f"manifest conflict between {ref_path} and {path}: "
                    f"{key} = {a} vs {b}")


def column(header, data, name):
    if name not in header:
        raise FigureInputError(f"missing column {name!r}; have {header}")
    return data[:, header.index(name)]


def grid_from_rows(a1, a2, values):
    """Reshape flat (angle1, angle2, value) rows into a plotting mesh."""
    x = np.unique(a1)
    y = np.unique(a2)
    z = np.full((len(y), len(x)), np.nan)
    ix = np.searchsorted(x, a1)
    iy = np.searchsorted(y, a2)
    z[iy, ix] = values
    return x, y, z


def save(fig, spec):
    out = Path(spec.out_path)
    out.parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(out, dpi=spec.dpi)
    plt.close(fig)
    return out


def render(spec: FigureSpec):
    """Dispatch on figure kind; returns the matplotlib Figure (also saved)."""
    from plot_concurrence_map import render_concurrence
    from plot_norders import render_norders
    from plot_rate_map import render_rate_map
    from plot_spectrum import render_spectrum
    from plot_xi_sweep import render_xi_sweep

    check_manifests_compatible(spec.csv_paths)
    kinds = {
        "spectrum": render_spectrum,
        "contour": render_rate_map,
        "norders": render_norders,
        "xi-sweep": render_xi_sweep,
        "concurrence-contour": render_concurrence,
    }
    if spec.kind not in kinds:
        raise FigureInputError(f"unknown figure kind {spec.kind!r}")
    return kinds[spec.kind](spec)
