"""Figure rendering for the report path.

matplotlib is imported lazily and driven through the Agg backend, so
figure output works headless and the library import stays cheap when no
figure was requested.
"""

from __future__ import annotations

__all__ = ["cup_figure", "matrix_figure", "hierarchy_figure"]


def _plt():
    import matplotlib

    matplotlib.use("Agg", force=True)
    import matplotlib.pyplot as plt

    return plt


def cup_figure(payload: dict, path: str) -> None:
    """Arc diagram of a division: cups between paired positions, rays
    for fixed signs."""
    plt = _plt()
    import matplotlib.patches as mpatches

    t = payload["t"]
    n = len(t)
    fig, ax = plt.subplots(figsize=(max(3, 0.7 * n + 1), 3))
    for i, c in enumerate(t, start=1):
        ax.text(i, 0.15, c, ha="center", va="bottom", fontsize=14)
    if payload.get("found"):
        for a, b in payload["pairs"]:
            arc = mpatches.Arc(((a + b) / 2, 0), b - a, 0.8 * (b - a),
                               theta1=180, theta2=360)
            ax.add_patch(arc)
        for p in payload["fixed_plus"] + payload["fixed_minus"]:
            ax.plot([p, p], [0, -1.2], linestyle="--", linewidth=1)
        title = f"{payload['t']} -> {payload['s']}  degree {payload['degree']}"
    else:
        title = f"{payload['t']} -> {payload['s']}: no division"
    ax.set_title(title)
    ax.set_xlim(0.3, n + 0.7)
    ax.set_ylim(-0.6 * n - 0.5, 0.8)
    ax.axis("off")
    fig.savefig(path, bbox_inches="tight")
    plt.close(fig)


def matrix_figure(matrix: list, row_labels: list, col_labels: list,
                  title: str, path: str) -> None:
    """Annotated heatmap of a small integer matrix."""
    plt = _plt()
    rows, cols = len(matrix), len(matrix[0]) if matrix else 0
    fig, ax = plt.subplots(
        figsize=(max(3, 0.5 * cols + 2), max(3, 0.5 * rows + 2)))
    ax.imshow(matrix, cmap="Blues")
    ax.set_xticks(range(cols), labels=col_labels, rotation=90, fontsize=7)
    ax.set_yticks(range(rows), labels=row_labels, fontsize=7)
    for i in range(rows):
        for j in range(cols):
            if matrix[i][j]:
                ax.text(j, i, str(matrix[i][j]), ha="center", va="center",
                        fontsize=7)
    ax.set_title(title)
    fig.savefig(path, bbox_inches="tight")
    plt.close(fig)


def hierarchy_figure(tree: list, path: str) -> None:
    """Node-link drawing of a hierarchy tree, nodes sized by element
    count and placed by depth."""
    plt = _plt()
    by_depth: dict[int, list] = {}
    for node in tree:
        by_depth.setdefault(node["depth"], []).append(node)
    pos = {}
    for depth, nodes in sorted(by_depth.items()):
        for k, node in enumerate(nodes):
            pos[node["id"]] = (k - (len(nodes) - 1) / 2, -depth)
    fig, ax = plt.subplots(
        figsize=(max(4, 0.9 * max(len(v) for v in by_depth.values())),
                 2 + 1.2 * len(by_depth)))
    for node in tree:
        if node["parent"] is not None:
            x0, y0 = pos[node["parent"]]
            x1, y1 = pos[node["id"]]
            ax.plot([x0, x1], [y0, y1], color="gray", linewidth=0.8, zorder=1)
    xs = [pos[n["id"]][0] for n in tree]
    ys = [pos[n["id"]][1] for n in tree]
    sizes = [30 + 12 * n["size"] ** 0.5 for n in tree]
    ax.scatter(xs, ys, s=sizes, zorder=2)
    for node in tree:
        x, y = pos[node["id"]]
        ax.annotate(str(node["size"]), (x, y), textcoords="offset points",
                    xytext=(6, 4), fontsize=7)
    ax.set_title("hierarchy nodes by depth (labels: element counts)")
    ax.axis("off")
    fig.savefig(path, bbox_inches="tight")
    plt.close(fig)
