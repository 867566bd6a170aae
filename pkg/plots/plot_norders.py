#!/usr/bin/env python3
"""Photon-order decomposition: per-order rates for the linear and circular
laser polarizations on a log axis (the sawtooth/smooth contrast figure)."""

import argparse
import sys

import matplotlib.pyplot as plt

import figspec
from figspec import FigureSpec, column, load_table


def render_norders(spec):
    header, data = load_table(spec.csv_paths[0])
    n = column(header, data, "n")
    fig, ax = plt.subplots(figsize=(5.6, 4.0))
    for name, style in (("rate_linear_s1_sr2_MeV1", "o-"),
                        ("rate_circular_s1_sr2_MeV1", "s--")):
        if name in header:
            ax.plot(n, column(header, data, name), style, ms=3, lw=0.9,
                    label=name.split("_")[1])
    ax.set_yscale("log")
    ax.set_xlabel("photon order n")
    ax.set_ylabel(rf"rate contribution [{figspec.RATE_UNITS}]")
    ax.legend()
    if spec.title:
        ax.set_title(spec.title)
    fig.tight_layout()
    figspec.save(fig, spec)
    return fig


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("csv")
    ap.add_argument("--out", required=True)
    ap.add_argument("--dpi", type=int, default=300)
    ap.add_argument("--title")
    args = ap.parse_args(argv)
    spec = FigureSpec(csv_paths=[args.csv], kind="norders", out_path=args.out,
                      dpi=args.dpi, title=args.title)
    try:
        figspec.render(spec)
    except figspec.FigureInputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
