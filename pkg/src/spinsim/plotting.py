"""Figure rendering for the CLI report paths (file output only, Agg backend)."""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np


def render_run_figure(times, columns: dict, outputs, title: str, path) -> None:
    """Stacked time-series panels for whichever outputs the run produced."""
    panels = []
    if "edge_populations" in outputs or "ghz_fidelity" in outputs:
        panels.append("populations")
    if "squeezing" in outputs:
        panels.append("squeezing")
    if "moments" in outputs:
        panels.append("moments")
    if not panels:
        return
    fig, axes = plt.subplots(
        len(panels), 1, figsize=(7.0, 2.6 * len(panels)), sharex=True, squeeze=False
    )
    axes = axes[:, 0]

    for ax, panel in zip(axes, panels):
        if panel == "populations":
            if "edge_populations" in outputs:
                ax.plot(times, columns["p0"], label=r"$|c_0|^2$")
                ax.plot(times, columns["pN"], "--", label=r"$|c_N|^2$")
            if "ghz_fidelity" in outputs:
                ax.plot(times, columns["ghz_fidelity"], ":", label="GHZ fidelity")
            ax.set_ylabel("probability")
            ax.set_ylim(-0.05, 1.05)
            ax.legend(loc="best", fontsize="small")
        elif panel == "squeezing":
            xi = np.asarray(columns["xi_squared"], dtype=float)
            finite = np.isfinite(xi)
            if finite.any() and np.nanmin(xi) > 0 and np.nanmax(xi) / np.nanmin(xi) > 50:
                ax.semilogy(times, xi)
            else:
                ax.plot(times, xi)
            ax.axhline(1.0, color="gray", lw=0.6)
            ax.set_ylabel(r"$\xi^2$")
        else:
            for key, label in (("jx", r"$\langle J_x\rangle$"),
                               ("jy", r"$\langle J_y\rangle$"),
                               ("jz", r"$\langle J_z\rangle$")):
                ax.plot(times, columns[key], label=label)
            ax.set_ylabel("spin components")
            ax.legend(loc="best", fontsize="small")
    axes[-1].set_xlabel(r"$\Omega_R t$")
    axes[0].set_title(title, fontsize="medium")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def render_scaling_figure(report: dict, path) -> None:
    """Log-log minima and timing versus N, with the fitted power laws."""
    per_n = report["per_n"]
    ns = np.array([row["n_atoms"] for row in per_n], dtype=float)
    quantities = []
    if "min_variance" in per_n[0]:
        quantities.append(("min_variance", "t_at_min_variance", "min variance"))
    if "min_xi_squared" in per_n[0]:
        quantities.append(("min_xi_squared", "t_at_min_xi_squared", r"min $\xi^2$"))
    if not quantities:
        return
    fig, axes = plt.subplots(1, 2, figsize=(9.0, 3.6))

    for key, _, label in quantities:
        vals = np.array([row[key] for row in per_n], dtype=float)
        axes[0].loglog(ns, vals, "o-", label=label)
        fit = report["fits"].get(f"{key}_exponent")
        if fit and fit.get("slope") is not None:
            trend = np.exp(fit["intercept"]) * ns ** fit["slope"]
            axes[0].loglog(ns, trend, "k--", lw=0.7)
    axes[0].set_xlabel("N")
    axes[0].set_ylabel("minimum over time")
    axes[0].legend(fontsize="small")

    for key, tkey, label in quantities:
        tvals = np.array([row[tkey] for row in per_n], dtype=float)
        axes[1].loglog(ns, tvals, "s-", label=f"t at {label}")
    axes[1].set_xlabel("N")
    axes[1].set_ylabel(r"$\Omega_R t$ at minimum")
    axes[1].legend(fontsize="small")

    fig.suptitle(f"{report['scheme']} scaling study", fontsize="medium")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def render_raman_figure(report: dict, path) -> None:
    """Resonance lines (Hz) and the molecular/atomic coupling comparison."""
    fig, axes = plt.subplots(1, 2, figsize=(8.5, 3.4))

    bragg = report["bragg_counterpropagating"]
    raman = report["raman_copropagating"]
    labels = ["Bragg\npair", "Bragg\natomic", "Raman\npair", "Raman\natomic"]
    freqs = [bragg["molecular_hz"], bragg["atomic_hz"],
             raman["molecular_hz"], raman["atomic_hz"]]
    axes[0].bar(labels, freqs, color=["C0", "C1", "C0", "C1"])
    positive = [f for f in freqs if f > 0]
    if positive and max(positive) / min(positive) > 100:
        axes[0].set_yscale("log")
    axes[0].set_ylabel("resonance (Hz)")

    eff = report["effective_rabi"]
    axes[1].bar(["molecular", "atomic"], [abs(eff["omega_m"]), abs(eff["omega_a"])],
                color=["C0", "C1"])
    axes[1].set_yscale("log")
    axes[1].set_ylabel("|effective Rabi| (rad/s)")
    axes[1].set_title(
        f"suppression ratio {eff['suppression_ratio']:.3g}", fontsize="small"
    )
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
