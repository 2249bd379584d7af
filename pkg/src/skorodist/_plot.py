"""Figure rendering for the CLI report paths (lazy matplotlib, Agg only)."""

from __future__ import annotations

from pathlib import Path


def _plt():
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
    return plt


def save_curves_figure(curves: dict, out: str | Path, title: str = "") -> None:
    """One line per window: modulus value against delta (log-x)."""
    plt = _plt()
    fig, ax = plt.subplots(figsize=(6, 4))
    for label, pairs in curves.items():
        if not pairs:
            continue
        xs = [d for d, _ in pairs]
        ys = [v for _, v in pairs]
        ax.plot(xs, ys, marker="o", label=f"T={label}")
    ax.set_xscale("log")
    ax.set_xlabel("delta")
    ax.set_ylabel("modulus")
    if title:
        ax.set_title(title)
    ax.legend(loc="best", fontsize=8)
    fig.tight_layout()
    fig.savefig(out, dpi=120)
    plt.close(fig)


def save_convergence_figure(rows: list[tuple[int, float]], out: str | Path,
                            title: str = "") -> None:
    plt = _plt()
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.plot([n for n, _ in rows], [v for _, v in rows], marker="o")
    ax.set_xscale("log")
    ax.set_xlabel("n")
    ax.set_ylabel("distance")
    if title:
        ax.set_title(title)
    fig.tight_layout()
    fig.savefig(out, dpi=120)
    plt.close(fig)


def save_matrix_figure(labels: list[str], matrix, out: str | Path) -> None:
    plt = _plt()
    fig, ax = plt.subplots(figsize=(6, 5))
    im = ax.imshow(matrix, cmap="viridis")
    ax.set_xticks(range(len(labels)), labels, rotation=90, fontsize=6)
    ax.set_yticks(range(len(labels)), labels, fontsize=6)
    fig.colorbar(im, ax=ax)
    fig.tight_layout()
    fig.savefig(out, dpi=120)
    plt.close(fig)
