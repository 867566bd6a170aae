#!/usr/bin/env python3
"""Integrated-rate sweep: nonperturbative (both laser polarizations) and
perturbative curves vs xi, annotated with the power-law exponent of their
difference fitted on the log-log grid."""

import argparse
import sys

import matplotlib.pyplot as plt
import numpy as np

import figspec
from figspec import FigureSpec, column, load_table


def _fit_eta(xi, diff):
    mask = (xi > 0) & (diff > 0)
    if mask.sum() < 2:
        return float("nan")
    return float(np.polyfit(np.log(xi[mask]), np.log(diff[mask]), 1)[0])


def render_xi_sweep(spec):
    header, data = load_table(spec.csv_paths[0])
    xi = column(header, data, "xi")
    w_lin = column(header, data, "W_nonpert_linear_s1")
    w_cir = column(header, data, "W_nonpert_circular_s1")
    w_pd = column(header, data, "W_pdcs_s1")
    fig, ax = plt.subplots(figsize=(5.6, 4.2))
    ax.plot(xi, w_lin, "o-", label="nonperturbative, linear")
    ax.plot(xi, w_cir, "s--", label="nonperturbative, circular")
    ax.plot(xi, w_pd, "k:", label="perturbative")
    ax.set_xscale("log")
    ax.set_yscale("log")
    ax.set_xlabel(r"$\xi$")
    ax.set_ylabel(r"integrated rate [$\mathrm{s^{-1}}$]")
    eta_lin = _fit_eta(xi, w_lin - w_pd)
    eta_cir = _fit_eta(xi, w_cir - w_pd)
    ax.annotate(rf"$\eta_\mathrm{{lin}} = {eta_lin:.2f}$,"
                rf" $\eta_\mathrm{{circ}} = {eta_cir:.2f}$",
                xy=(0.04, 0.92), xycoords="axes fraction", fontsize=9)
    ax.legend(fontsize=8)
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
    spec = FigureSpec(csv_paths=[args.csv], kind="xi-sweep", out_path=args.out,
                      dpi=args.dpi, title=args.title)
    try:
        figspec.render(spec)
    except figspec.FigureInputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
