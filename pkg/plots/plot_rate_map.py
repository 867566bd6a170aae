#!/usr/bin/env python3
"""Angular contour map of the differential rate over a psi-psi or
theta-theta plane, linear or decadic-log color scale."""

import argparse
import sys

import matplotlib.pyplot as plt
import numpy as np

import figspec
from figspec import FigureSpec, column, grid_from_rows, load_table


def render_rate_map(spec):
    header, data = load_table(spec.csv_paths[0])
    a1_name, a2_name = header[0], header[1]
    value_col = spec.value_column or header[2]
    x, y, z = grid_from_rows(column(header, data, a1_name),
                             column(header, data, a2_name),
                             column(header, data, value_col))
    fig, ax = plt.subplots(figsize=(5.2, 4.2))
    if spec.log_scale:
        with np.errstate(divide="ignore"):
            z = np.log10(z)
        label = rf"$\log_{{10}}$ rate [{figspec.RATE_UNITS}]"
    else:
        label = rf"rate [{figspec.RATE_UNITS}]"
    mesh = ax.pcolormesh(x, y, np.ma.masked_invalid(z), shading="nearest")
    fig.colorbar(mesh, ax=ax, label=label)
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
    ap.add_argument("--log", action="store_true", help="decadic-log color scale")
    ap.add_argument("--dpi", type=int, default=300)
    ap.add_argument("--title")
    args = ap.parse_args(argv)
    spec = FigureSpec(csv_paths=[args.csv], kind="contour", out_path=args.out,
                      log_scale=args.log, dpi=args.dpi,
                      value_column=args.column, title=args.title)
    try:
        figspec.render(spec)
    except figspec.FigureInputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
