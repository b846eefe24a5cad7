"""Render publication-style figures from ergoloss CSV sweep outputs.

Figure ids fig1/fig2/fig3 are multi-curve time-series plots built from the
``dynamics`` CSVs (columns: t, I_delta_T, theta1, theta2, abs_delta); fig5,
fig6 and fig6a are grouped bar panels built from the ``uncertainty`` CSVs
(columns: alpha, avg_info_loss, nonergodicity_max, lhs_sum, slack), with a
horizontal reference line at the unit bound.

Rendering is a pure function of CSV content + spec: fixed style, no
timestamps, byte-stable for a fixed toolchain.
"""

from __future__ import annotations

import argparse
import csv
import re
import sys
from dataclasses import dataclass
from pathlib import Path

import matplotlib.pyplot as plt
import numpy as np

from .style import BAR_COLOR, LINE_COLORS, REFERENCE_LINE_COLOR, STYLE

DYNAMICS_COLUMNS = ["t", "I_delta_T", "theta1", "theta2", "abs_delta"]
UNCERTAINTY_COLUMNS = ["alpha", "avg_info_loss", "nonergodicity_max", "lhs_sum", "slack"]

# figure id -> (kind, default axis labels)
FIGURES = {
    "fig1": ("dynamics", "t", "transfer weight Θ₁+Θ₂"),
    "fig2": ("dynamics", "t", "transfer weight Θ₁+Θ₂"),
    "fig3": ("dynamics", "t", "transfer weight Θ₁+Θ₂"),
    "fig5": ("uncertainty", "coupling α", "uncertainty sum"),
    "fig6": ("uncertainty", "coupling α", "uncertainty sum"),
    "fig6a": ("uncertainty", "coupling α", "uncertainty sum"),
}


class RenderError(RuntimeError):
    """Raised when inputs are missing or malformed; no output file is written."""


@dataclass(frozen=True)
class FigureSpec:
    figure_id: str
    csv_paths: tuple[Path, ...]
    out_path: Path
    x_label: str = ""
    y_label: str = ""

    def __post_init__(self):
        if self.figure_id not in FIGURES:
            raise RenderError(f"unknown figure id {self.figure_id!r}")
        if not self.csv_paths:
            raise RenderError(f"{self.figure_id}: no input CSVs")
        kind, x, y = FIGURES[self.figure_id]
        object.__setattr__(self, "csv_paths", tuple(Path(p) for p in self.csv_paths))
        object.__setattr__(self, "out_path", Path(self.out_path))
        if not self.x_label:
            object.__setattr__(self, "x_label", x)
        if not self.y_label:
            object.__setattr__(self, "y_label", y)

    @property
    def kind(self) -> str:
        return FIGURES[self.figure_id][0]


def _read_csv(path: Path, expected_columns: list[str]) -> dict[str, np.ndarray]:
    if not path.exists():
        raise RenderError(f"missing CSV: {path}")
    with path.open(encoding="utf-8") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise RenderError(f"empty CSV: {path}") from None
        if header != expected_columns:
            raise RenderError(
                f"{path}: header {header} does not match the "
                f"expected contract {expected_columns}"
            )
        rows = []
        for lineno, row in enumerate(reader, start=2):
            try:
                rows.append([float(x) for x in row])
            except ValueError as exc:
                raise RenderError(f"{path}:{lineno}: non-numeric value ({exc})") from None
    if not rows:
        raise RenderError(f"no data rows in CSV: {path}")
    data = np.asarray(rows)
    return {name: data[:, i] for i, name in enumerate(expected_columns)}


def _series_label(spec: FigureSpec, path: Path) -> str:
    stem = path.stem
    prefix = f"{spec.figure_id}_"
    return stem[len(prefix):] if stem.startswith(prefix) else stem


def _render_dynamics(spec: FigureSpec):
    fig, ax = plt.subplots(layout="constrained")
    for i, path in enumerate(spec.csv_paths):
        data = _read_csv(path, DYNAMICS_COLUMNS)
        ax.plot(
            data["t"],
            data["theta1"] + data["theta2"],
            color=LINE_COLORS[i % len(LINE_COLORS)],
            label=_series_label(spec, path),
        )
    ax.set_xlabel(spec.x_label)
    ax.set_ylabel(spec.y_label)
    ax.legend(loc="upper right")
    return fig


def _render_uncertainty(spec: FigureSpec):
    panels = len(spec.csv_paths)
    fig, axes = plt.subplots(1, panels, sharey=True, squeeze=False, layout="constrained")
    for i, (ax, path) in enumerate(zip(axes[0], spec.csv_paths)):
        data = _read_csv(path, UNCERTAINTY_COLUMNS)
        x = np.arange(len(data["alpha"]))
        ax.bar(x, data["lhs_sum"], color=BAR_COLOR, width=0.7)
        ax.axhline(1.0, color=REFERENCE_LINE_COLOR, linewidth=1.0, linestyle="--")
        ax.set_xticks(x)
        ax.set_xticklabels([f"{a:g}" for a in data["alpha"]], rotation=45)
        ax.set_xlabel(spec.x_label)
        ax.set_title(_series_label(spec, path), fontsize=9)
        if i == 0:
            ax.set_ylabel(spec.y_label)
    return fig


def render(spec: FigureSpec) -> Path:
    """Render one figure; raises RenderError (writing nothing) on bad input."""
    with plt.rc_context(STYLE):
        if spec.kind == "dynamics":
            fig = _render_dynamics(spec)
        else:
            fig = _render_uncertainty(spec)
        try:
            spec.out_path.parent.mkdir(parents=True, exist_ok=True)
            fig.savefig(spec.out_path, format="png", metadata={"Software": "figrender"})
        finally:
            plt.close(fig)
    return spec.out_path


def discover(csv_dir: Path, figure_id: str) -> tuple[Path, ...]:
    def numeric_suffix(path: Path):
        # order panels by the swept value (N10 < N50 < N100), not lexically
        tail = path.stem[len(figure_id) + 1:]
        match = re.search(r"-?\d+(?:\.\d+)?", tail)
        return (0, float(match.group())) if match else (1, 0.0)

    return tuple(sorted(csv_dir.glob(f"{figure_id}_*.csv"), key=numeric_suffix))


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="render_figures", description="Render figures from ergoloss CSVs"
    )
    parser.add_argument("csv_dir", type=Path)
    parser.add_argument("out_dir", type=Path)
    parser.add_argument("--figure", choices=sorted(FIGURES), action="append",
                        help="render only this figure (repeatable)")
    args = parser.parse_args(argv)
    figure_ids = args.figure or sorted(FIGURES)
    status = 0
    for fid in figure_ids:
        paths = discover(args.csv_dir, fid)
        try:
            spec = FigureSpec(
                figure_id=fid, csv_paths=paths, out_path=args.out_dir / f"{fid}.png"
            )
            out = render(spec)
            print(f"wrote {out}")
        except RenderError as exc:
            print(f"error: {exc}", file=sys.stderr)
            status = 1
    return status


if __name__ == "__main__":
    sys.exit(main())
