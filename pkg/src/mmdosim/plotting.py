"""Figure rendering for the command line front end.

Every function takes already-computed arrays and writes one PNG next to
the delimited output.  The CSV remains the interchange format; figures
are a convenience view of the same numbers, never an extra computation.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402  backend must be pinned first

_DPI = 150


def save_reflectance_figure(angles_deg, curves: dict, path: str, frequency_ghz: float):
    """Angle sweeps of |R|^2, one pair of curves per model."""
    fig, ax = plt.subplots(figsize=(7, 4.5))
    for label, (r_par, r_perp) in curves.items():
        (line,) = ax.plot(angles_deg, r_par, label=f"{label} parallel")
        ax.plot(angles_deg, r_perp, linestyle="--", color=line.get_color(),
                label=f"{label} perpendicular")
    ax.set_xlabel("incidence angle [deg]")
    ax.set_ylabel("power reflection coefficient")
    ax.set_title(f"Air/tissue reflection at {frequency_ghz:g} GHz")
    ax.set_ylim(0.0, 1.0)
    ax.grid(True, alpha=0.3)
    ax.legend(fontsize=7)
    fig.tight_layout()
    fig.savefig(path, dpi=_DPI)
    plt.close(fig)


def save_depth_figure(rows: list, path: str):
    """Penetration depth versus frequency, one line per tissue."""
    by_tissue: dict = {}
    for tissue, f_ghz, depth_mm, _ in rows:
        by_tissue.setdefault(tissue, []).append((f_ghz, depth_mm))
    fig, ax = plt.subplots(figsize=(6, 4))
    for tissue, pts in by_tissue.items():
        pts.sort()
        ax.plot([p[0] for p in pts], [p[1] for p in pts], marker="o", label=tissue)
    ax.set_xlabel("frequency [GHz]")
    ax.set_ylabel("penetration depth [mm]")
    ax.grid(True, alpha=0.3)
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=_DPI)
    plt.close(fig)


def save_profile_figure(z_mm, values, ylabel: str, path: str, boundaries_mm=()):
    """One quantity against depth, layer boundaries marked."""
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.plot(z_mm, values)
    for b in boundaries_mm:
        ax.axvline(b, color="gray", linestyle=":", linewidth=0.8)
    ax.set_xlabel("depth [mm]")
    ax.set_ylabel(ylabel)
    ax.grid(True, alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=_DPI)
    plt.close(fig)


def save_clothing_sweep_figure(thickness_mm, fractions, thetas, path: str):
    """Transmitted fraction and surface elevation against clothing thickness."""
    fig, (ax1, ax2) = plt.subplots(2, 1, figsize=(6, 6), sharex=True)
    ax1.plot(thickness_mm, fractions)
    ax1.set_ylabel("power fraction into skin")
    ax1.grid(True, alpha=0.3)
    ax2.plot(thickness_mm, thetas)
    ax2.set_xlabel("clothing thickness [mm]")
    ax2.set_ylabel("surface temperature elevation [degC]")
    ax2.grid(True, alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=_DPI)
    plt.close(fig)
