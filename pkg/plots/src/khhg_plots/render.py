"""Render khhg CSV outputs into figure images.

Each recipe consumes only the documented CSV schemas produced by the
``hhg-kh`` CLI and performs no physics of its own.  Invoked as::

    render_figure <figure_id> <input_dir> <out.png>
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np
import pandas as pd

FIGURE_IDS = ("fig1", "fig2", "fig3", "fig4", "fig5")

# stable PNG text chunk so repeated renders are byte-identical
_PNG_META = {"Software": "khhg-plots"}


class RecipeError(Exception):
    """Raised when inputs are missing or do not match their schema."""


def _load(path: Path, columns: tuple[str, ...]) -> tuple[dict, pd.DataFrame]:
    if not path.is_file():
        raise RecipeError(f"missing input file: {path}")
    meta = {}
    with open(path) as fh:
        for line in fh:
            if not line.startswith("#"):
                break
            key, _, value = line[1:].partition(":")
            meta[key.strip()] = value.strip()
    try:
        df = pd.read_csv(path, comment="#")
    except Exception as exc:
        raise RecipeError(f"unreadable CSV {path}: {exc}") from exc
    for col in columns:
        if col not in df.columns:
            raise RecipeError(f"{path}: missing column '{col}'")
    if df.empty:
        raise RecipeError(f"{path}: no data rows")
    return meta, df


def _spectrum_axes(ax):
    ax.set_yscale("log")
    ax.set_xlabel("harmonic order")
    ax.set_ylabel("normalized signal")


def _render_fig1(input_dir: Path, fig):
    _, df = _load(input_dir / "fig1.csv",
                  ("z_au", "potential_au", "rho_plus_x4", "rho_minus_x4"))
    ax = fig.subplots()
    z = df["z_au"].to_numpy()
    ax.plot(z, df["potential_au"], color="tab:green", label="potential")
    ax.plot(z, df["rho_plus_x4"], color="tab:blue", label="shifted density (x4)")
    ax.plot(z, df["rho_minus_x4"], color="tab:red", ls="--",
            label="shifted density (x4)")
    # force from the attractive center points from each density peak
    # back toward the origin
    for col, color in (("rho_plus_x4", "tab:blue"), ("rho_minus_x4", "tab:red")):
        i = int(np.argmax(df[col].to_numpy()))
        z0, y0 = z[i], float(df[col].iloc[i])
        ax.annotate("", xy=(z0 - np.sign(z0) * 2.0, y0 * 0.5),
                    xytext=(z0, y0 * 0.5),
                    arrowprops=dict(arrowstyle="-|>", color=color, lw=1.5))
    ax.set_xlabel("z (a.u.)")
    ax.set_ylabel("potential / scaled density (a.u.)")
    ax.legend(loc="lower right", fontsize=8)


def _render_fig2(input_dir: Path, fig):
    _, fin = _load(input_dir / "spectrum_exact.csv",
                   ("harmonic_order", "omega_au", "S_normalized"))
    _, comb = _load(input_dir / "longpulse.csv",
                    ("harmonic_order", "omega_au", "S_normalized"))
    ax = fig.subplots()
    ax.plot(fin["harmonic_order"], fin["S_normalized"], color="tab:blue",
            lw=1.5, label="finite pulse (10 cycles)")
    mask = comb["S_normalized"] > 0
    ax.vlines(comb["harmonic_order"][mask], 1e-12, comb["S_normalized"][mask],
              color="tab:red", lw=1.0)
    ax.plot(comb["harmonic_order"][mask], comb["S_normalized"][mask], "r.",
            ms=5, label="long pulse")
    _spectrum_axes(ax)
    ax.set_xlim(0, 21)
    ax.set_ylim(1e-10, 3)
    ax.legend(loc="upper right", fontsize=8)


def _render_fig3(input_dir: Path, fig):
    _, exact = _load(input_dir / "spectrum_exact.csv",
                     ("harmonic_order", "omega_au", "S_normalized"))
    _, pa = _load(input_dir / "spectrum_peaking.csv",
                  ("harmonic_order", "omega_au", "S_normalized"))
    ax = fig.subplots()
    ax.plot(exact["harmonic_order"], exact["S_normalized"], color="tab:blue",
            lw=1.8, label="leading order")
    ax.plot(pa["harmonic_order"], pa["S_normalized"], color="tab:red",
            lw=0.9, label="peaked-integrand approximation")
    _spectrum_axes(ax)
    ax.set_xlim(0, 21)
    ax.set_ylim(1e-10, 3)
    ax.legend(loc="upper right", fontsize=8)


def _render_fig4(input_dir: Path, fig):
    styles = (("spectrum_800nm.csv", "800 nm", "tab:blue", "-"),
              ("spectrum_1600nm.csv", "1600 nm", "black", ":"),
              ("spectrum_3200nm.csv", "3200 nm", "tab:red", "--"))
    ax = fig.subplots()
    for name, label, color, ls in styles:
        _, df = _load(input_dir / name,
                      ("harmonic_order", "omega_au", "S_normalized"))
        ax.plot(df["harmonic_order"], df["S_normalized"], color=color, ls=ls,
                lw=1.0, label=label)
    _spectrum_axes(ax)
    ax.set_xlim(0, 41)
    ax.set_ylim(1e-12, 3)
    ax.legend(loc="upper right", fontsize=8)


def _render_fig5(input_dir: Path, fig):
    _, alpha = _load(input_dir / "alpha_abs.csv",
                     ("t_au", "alpha_abs_au", "alpha_abs_norm"))
    meta, gab = _load(input_dir / "gabor.csv", ("t_au", "omega_au", "G2"))
    omega_L = float(meta.get("omega_L", 0.0))
    if omega_L <= 0:
        raise RecipeError("gabor.csv: missing or invalid omega_L metadata")
    top, bottom = fig.subplots(2, 1, sharex=True,
                               height_ratios=[1, 2])
    top.plot(alpha["t_au"], alpha["alpha_abs_norm"], color="tab:blue")
    top.set_ylabel("|alpha(t)| (norm.)")

    t = np.sort(gab["t_au"].unique())
    w = np.sort(gab["omega_au"].unique())
    grid = (gab.pivot(index="omega_au", columns="t_au", values="G2")
            .reindex(index=w, columns=t).to_numpy())
    if np.isnan(grid).any():
        raise RecipeError("gabor.csv: (t_au, omega_au) grid is not complete")
    grid = grid / grid.max() if grid.max() > 0 else grid
    mesh = bottom.pcolormesh(t, w / omega_L, grid, cmap="viridis",
                             shading="nearest", rasterized=True)
    fig.colorbar(mesh, ax=bottom, label="|G|^2 (max norm.)")
    bottom.set_xlabel("t (a.u.)")
    bottom.set_ylabel("harmonic order")


_RECIPES = {
    "fig1": _render_fig1,
    "fig2": _render_fig2,
    "fig3": _render_fig3,
    "fig4": _render_fig4,
    "fig5": _render_fig5,
}


def render(figure_id: str, input_dir, out_path) -> None:
    """Render one figure from the CSVs in input_dir to out_path."""
    if figure_id not in _RECIPES:
        raise RecipeError(
            f"unknown figure_id '{figure_id}' (choose from {', '.join(FIGURE_IDS)})")
    input_dir = Path(input_dir)
    if not input_dir.is_dir():
        raise RecipeError(f"input directory not found: {input_dir}")
    fig = plt.figure(figsize=(6.0, 4.5), dpi=150)
    try:
        _RECIPES[figure_id](input_dir, fig)
        fig.tight_layout()
        fig.savefig(out_path, metadata=_PNG_META)
    finally:
        plt.close(fig)


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="render_figure",
        description="Render khhg CSV outputs into a figure image.")
    parser.add_argument("figure_id", choices=FIGURE_IDS)
    parser.add_argument("input_dir")
    parser.add_argument("output", help="output image path (.png)")
    args = parser.parse_args(argv)
    try:
        render(args.figure_id, args.input_dir, args.output)
    except RecipeError as exc:
        print(f"render_figure: {exc}", file=sys.stderr)
        return 2
    print(args.output)
    return 0


if __name__ == "__main__":
    sys.exit(main())
