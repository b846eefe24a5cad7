"""Tests for figrender.

The input CSVs are produced by the actual `ergoloss` CLI (the only interface
this package is allowed to consume), so these tests also pin the cross-package
CSV contract.
"""

import subprocess
import sys

import pytest

from figrender.render import FigureSpec, RenderError, discover, main, render


@pytest.fixture(scope="module")
def csv_dir(tmp_path_factory):
    out = tmp_path_factory.mktemp("csvs")
    small = '{"t_max": 5.0, "t_step": 0.1}'
    cfg = out / "dyn.json"
    cfg.write_text(small)
    for preset in ("fig1", "fig2", "fig3"):
        subprocess.run(
            [sys.executable, "-m", "ergoloss.cli", "dynamics", "--preset", preset,
             "--config", str(cfg), "--out", str(out)],
            check=True, capture_output=True,
        )
    ucfg = out / "unc.json"
    ucfg.write_text('{"alphas": [0.5, 2.0, 10.0]}')
    for preset in ("fig5", "fig6", "fig6a"):
        subprocess.run(
            [sys.executable, "-m", "ergoloss.cli", "uncertainty", "--preset", preset,
             "--config", str(ucfg), "--out", str(out)],
            check=True, capture_output=True,
        )
    return out


class TestDiscovery:
    def test_finds_panel_files(self, csv_dir):
        assert len(discover(csv_dir, "fig1")) == 4
        assert len(discover(csv_dir, "fig3")) == 3
        assert len(discover(csv_dir, "fig5")) == 4
        # fig6 glob must not swallow the fig6a panels
        assert all("fig6a" not in p.name for p in discover(csv_dir, "fig6"))


class TestRender:
    @pytest.mark.parametrize("fid", ["fig1", "fig2", "fig3", "fig5", "fig6", "fig6a"])
    def test_renders_all_six(self, csv_dir, tmp_path, fid):
        spec = FigureSpec(
            figure_id=fid,
            csv_paths=discover(csv_dir, fid),
            out_path=tmp_path / f"{fid}.png",
        )
        out = render(spec)
        assert out.exists() and out.stat().st_size > 1000
        assert out.read_bytes()[:8] == b"\x89PNG\r\n\x1a\n"

    def test_deterministic_across_runs(self, csv_dir, tmp_path):
        a = render(FigureSpec("fig5", discover(csv_dir, "fig5"), tmp_path / "a.png"))
        b = render(FigureSpec("fig5", discover(csv_dir, "fig5"), tmp_path / "b.png"))
        assert a.read_bytes() == b.read_bytes()

    def test_unknown_figure_rejected(self, csv_dir, tmp_path):
        with pytest.raises(RenderError):
            FigureSpec("fig9", discover(csv_dir, "fig1"), tmp_path / "x.png")

    def test_missing_csv_rejected(self, tmp_path):
        spec = FigureSpec("fig1", (tmp_path / "nope.csv",), tmp_path / "x.png")
        with pytest.raises(RenderError):
            render(spec)
        assert not (tmp_path / "x.png").exists()

    def test_empty_csv_errors_without_partial_file(self, tmp_path):
        empty = tmp_path / "fig1_N10.csv"
        empty.write_text("t,I_delta_T,theta1,theta2,abs_delta\n")
        spec = FigureSpec("fig1", (empty,), tmp_path / "x.png")
        with pytest.raises(RenderError, match="no data rows"):
            render(spec)
        assert not (tmp_path / "x.png").exists()

    def test_wrong_header_rejected(self, tmp_path):
        bad = tmp_path / "fig5_T1.csv"
        bad.write_text("a,b\n1,2\n")
        spec = FigureSpec("fig5", (bad,), tmp_path / "x.png")
        with pytest.raises(RenderError, match="contract"):
            render(spec)


class TestCli:
    def test_renders_everything(self, csv_dir, tmp_path):
        assert main([str(csv_dir), str(tmp_path)]) == 0
        names = sorted(p.name for p in tmp_path.glob("*.png"))
        assert names == [
            "fig1.png", "fig2.png", "fig3.png", "fig5.png", "fig6.png", "fig6a.png"
        ]

    def test_single_figure_flag(self, csv_dir, tmp_path):
        assert main([str(csv_dir), str(tmp_path), "--figure", "fig2"]) == 0
        assert [p.name for p in tmp_path.glob("*.png")] == ["fig2.png"]

    def test_missing_inputs_exit_1(self, tmp_path):
        empty = tmp_path / "nothing"
        empty.mkdir()
        assert main([str(empty), str(tmp_path / "out")]) == 1
