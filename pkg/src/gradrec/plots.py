"""Figure rendering for the CLI report paths (written next to the data)."""

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np


def save_recover_figure(path, g_by_method, spec, title=None):
    """Recovered gradient(s) against the exact derivative when available."""
    m = next(iter(g_by_method.values())).mesh
    fig, ax = plt.subplots(figsize=(6.4, 4.0))
    if spec.has_exact_derivative:
        dense = np.linspace(m.alpha, m.beta, 400)
        ax.plot(dense, spec.derivative(dense), "k-", lw=1.0, label="exact u'")
    for name, g in g_by_method.items():
        ax.plot(m.nodes, g.values, "o-", ms=3.5, lw=1.0, label=f"recovered ({name})")
    ax.set_xlabel("x")
    ax.set_ylabel("gradient")
    ax.set_title(title or f"gradient recovery, {spec.label()}, n={m.n}")
    ax.legend()
    ax.grid(alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def save_study_figure(path, records, slope, title=None):
    """Log-log error vs h with the fitted slope as a reference line."""
    h = np.array([r.h for r in records])
    e = np.array([r.error for r in records])
    fig, ax = plt.subplots(figsize=(6.4, 4.0))
    ax.loglog(h, e, "o-", label="measured error")
    if np.all(e > 0):
        ax.loglog(h, e[0] * (h / h[0]) ** round(slope), "--",
                  label=f"O(h^{round(slope)}) reference")
    ax.set_xlabel("mesh size h")
    ax.set_ylabel("error")
    ax.set_title(title or f"convergence, fitted slope {slope:.3f}")
    ax.legend()
    ax.grid(True, which="both", alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def save_infsup_figure(path, ns, values, title=None):
    """Stability estimate across refinement levels."""
    fig, ax = plt.subplots(figsize=(6.4, 4.0))
    ax.plot(ns, values, "o-")
    ax.set_xscale("log", base=2)
    ax.set_xlabel("elements n")
    ax.set_ylabel("stability estimate")
    ax.set_ylim(0, max(values) * 1.2)
    ax.set_title(title or "inf-sup stability across levels")
    ax.grid(alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
