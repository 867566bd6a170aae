#!/usr/bin/env python3
"""Concurrence contour map over an angle-angle plane.  Cells whose density
matrix was undefined (NaN sentinel in the CSV) render as blank/masked,
visually distinct from concurrence zero."""

import argparse
import sys

import matplotlib.pyplot as plt
import numpy as np

import figspec
from figspec import FigureSpec, column, grid_from_rows, load_table


def render_concurrence(spec):
    header, data = load_table(spec.csv_paths[0])
    a1_name, a2_name = header[0], header[1]
    value_col = spec.value_column or header[2]
    x, y, z = grid_from_rows(column(header, data, a1_name),
                             column(header, data, a2_name),
                             column(header, data, value_col))
    fig, ax = plt.subplots(figsize=(5.2, 4.2))
    masked = np.ma.masked_invalid(z)
    mesh = ax.pcolormesh(x, y, masked, shading="nearest", vmin=0.0, vmax=1.0,
                         cmap="viridis")
    mesh.cmap.set_bad(color="white")
    fig.colorbar(mesh, ax=ax, label="concurrence")
    ax.set_xlabel(a1_name)
    ax.set_ylabel(a2_name)
    if spec.title:
        ax.set_title(spec.title)
    fig.tight_layout()
    figspec.save(fig, spec)
    return fig


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("csv")
    ap.add_argument("--out", required=True)
    ap.add_argument("--column", help="value column (default: third column)")
    ap.add_argument("--dpi", type=int, default=300)
    ap.add_argument("--title")
    args = ap.parse_args(argv)
    spec = FigureSpec(csv_paths=[args.csv], kind="concurrence-contour",
                      out_path=args.out, dpi=args.dpi,
                      value_column=args.column, title=args.title)
    try:
        figspec.render(spec)
    except figspec.FigureInputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
