"""Static pictures of the two-line layout: ASCII and matplotlib figures."""
from __future__ import annotations

from typing import Iterable, Sequence

from .core import Instance, Matching


def render_ascii(
    instance: Instance,
    matching: Matching | None = None,
    blocking: Iterable[tuple[int, int]] = (),
    width: int = 41,
) -> str:
    """Men down the left margin, women down the right, matching edges drawn
    with '#' and blocking pairs with '.'; crossings are visible as such."""
    nm, nw = instance.n_men, instance.n_women
    rows = max(nm, nw, 1)
    vstep = 2
    height = (rows - 1) * vstep + 1
    canvas = [[" "] * width for _ in range(height)]

    def draw(i: int, j: int, ch: str) -> None:
        y0, x0 = (i - 1) * vstep, 0
        y1, x1 = (j - 1) * vstep, width - 1
        steps = max(abs(y1 - y0), x1 - x0, 1)
        for s in range(steps + 1):
            y = round(y0 + (y1 - y0) * s / steps)
            x = round(x0 + (x1 - x0) * s / steps)
            if canvas[y][x] == " " or ch == "#":
                canvas[y][x] = ch

    blocking = sorted(set(blocking))
    for i, j in blocking:
        draw(i, j, ".")
    edge_list = list(matching.pairs) if matching is not None else []
    for i, j in edge_list:
        draw(i, j, "#")

    label_w = max(len(f"m{nm}"), 2)
    lines = []
    for y in range(height):
        r = y // vstep
        on_row = y % vstep == 0
        left = f"m{r + 1}" if on_row and r < nm else ""
        right = f"w{r + 1}" if on_row and r < nw else ""
        lines.append(f"{left:>{label_w}} " + "".join(canvas[y]) + f" {right}")
    out = [line.rstrip() for line in lines]
    if edge_list:
        out.append("edges: " + " ".join(f"({i},{j})" for i, j in edge_list))
    if blocking:
        out.append("blocking: " + " ".join(f"({i},{j})" for i, j in blocking))
    return "\n".join(out) + "\n"


def render_figure(
    instance: Instance,
    matching: Matching | None = None,
    blocking: Iterable[tuple[int, int]] = (),
    *,
    out_path: str,
    title: str | None = None,
    man_labels: Sequence[str] | None = None,
    woman_labels: Sequence[str] | None = None,
) -> None:
    """Save a figure of the layout; the file format follows the extension
    (.svg, .png, .pdf, ...).  Acceptable pairs are drawn faintly underneath,
    matching edges solid, blocking pairs dashed."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    nm, nw = instance.n_men, instance.n_women
    rows = max(nm, nw, 1)
    fig, ax = plt.subplots(figsize=(4.5, 0.32 * rows + 1.2))
    for i, j in instance.acceptable_pairs():
        ax.plot([0, 1], [-i, -j], color="0.85", lw=0.8, zorder=1)
    for i, j in sorted(set(blocking)):
        ax.plot([0, 1], [-i, -j], color="tab:red", lw=1.4, ls="--", zorder=2)
    if matching is not None:
        for i, j in matching.pairs:
            ax.plot([0, 1], [-i, -j], color="tab:blue", lw=2.0, zorder=3)
    men_names = man_labels or [f"m{i}" for i in range(1, nm + 1)]
    women_names = woman_labels or [f"w{j}" for j in range(1, nw + 1)]
    for i in range(1, nm + 1):
        ax.plot([0], [-i], "o", color="black", ms=4, zorder=4)
        ax.annotate(
            men_names[i - 1], (0, -i), textcoords="offset points",
            xytext=(-6, 0), ha="right", va="center", fontsize=8,
        )
    for j in range(1, nw + 1):
        ax.plot([1], [-j], "o", color="black", ms=4, zorder=4)
        ax.annotate(
            women_names[j - 1], (1, -j), textcoords="offset points",
            xytext=(6, 0), ha="left", va="center", fontsize=8,
        )
    if title:
        ax.set_title(title, fontsize=10)
    ax.set_xlim(-0.35, 1.35)
    ax.set_ylim(-rows - 0.7, -0.3)
    ax.axis("off")
    fig.savefig(out_path, bbox_inches="tight")
    plt.close(fig)
