"""Single fixed style shared by every figure, chosen for print readability.

Rendering must be a pure function of CSV content + spec, so everything
nondeterministic (timestamps, interactive backends) is pinned here.
"""

import matplotlib

matplotlib.use("Agg")  # headless, deterministic

STYLE = {
    "figure.figsize": (7.0, 4.2),
    "figure.dpi": 110,
    "savefig.dpi": 110,
    "font.size": 10,
    "axes.grid": True,
    "grid.alpha": 0.3,
    "axes.spines.top": False,
    "axes.spines.right": False,
    "lines.linewidth": 1.2,
    "legend.frameon": False,
    "svg.hashsalt": "figrender",
}

LINE_COLORS = ["#1b6ca8", "#d1495b", "#2e933c", "#8d5a97", "#c77d1e", "#3d3d3d"]
BAR_COLOR = "#1b6ca8"
REFERENCE_LINE_COLOR = "#d1495b"
