#!/usr/bin/env python3
"""Photon-b spectrum figure: log-scale rate vs omega_b, with the
intermediate-state resonance positions from the manifest overlaid as
vertical markers."""

import argparse
import sys

import matplotlib.pyplot as plt

import figspec
from figspec import FigureSpec, column, load_manifest, load_table


def render_spectrum(spec):
    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    for path in spec.csv_paths:
        header, data = load_table(path)
        wb = column(header, data, "omega_b_MeV")
        rate = column(header, data, "rate_s1_sr2_MeV1")
        ax.plot(wb, rate, lw=0.9, label=str(path))
    manifest = load_manifest(spec.csv_paths[0])
    if manifest:
        marks = manifest.get("convergence", {}).get("resonances", {})
        for w in marks.get("type1", []):
            ax.axvline(w, color="crimson", lw=0.8, alpha=0.8)
        for w in marks.get("type2", []):
            ax.axvline(w, color="gray", lw=0.4, alpha=0.35)
    if spec.log_scale:
        ax.set_yscale("log")
    ax.set_xlabel(r"$\omega_b$ [MeV]")
    ax.set_ylabel(rf"rate [{figspec.RATE_UNITS}]")
    if spec.title:
        ax.set_title(spec.title)
    if len(spec.csv_paths) > 1:
        ax.legend(fontsize=7)
    fig.tight_layout()
    figspec.save(fig, spec)
    return fig


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("csv", nargs="+")
    ap.add_argument("--out", required=True)
    ap.add_argument("--linear", action="store_true",
                    help="linear rate axis (default: log)")
    ap.add_argument("--dpi", type=int, default=300)
    ap.add_argument("--title")
    args = ap.parse_args(argv)
    spec = FigureSpec(csv_paths=args.csv, kind="spectrum", out_path=args.out,
                      log_scale=not args.linear, dpi=args.dpi, title=args.title)
    try:
        figspec.render(spec)
    except figspec.FigureInputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
