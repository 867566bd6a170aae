import json
import shutil

import numpy as np
import pytest

import figspec
import plot_concurrence_map
import plot_norders
import plot_rate_map
import plot_spectrum
import plot_xi_sweep
from figspec import FigureInputError, FigureSpec, load_table


def write_csv(path, header, rows):
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(",".join(header) + "\n")
        for row in rows:
            fh.write(",".join(str(c) for c in row) + "\n")


class TestSpectrum:
    def test_render_with_markers(self, csv_dir, tmp_path):
        out = tmp_path / "spec.png"
        rc = plot_spectrum.main([str(csv_dir / "spectrum.csv"), "--out", str(out)])
        assert rc == 0 and out.exists() and out.stat().st_size > 5000
        manifest = json.loads((csv_dir / "spectrum.csv.manifest.json").read_text())
        assert manifest["convergence"]["resonances"]["type1"], \
            "sweep window should contain the first resonance marker"

    def test_round_trip_data(self, csv_dir, tmp_path):
        # the plotted line carries the CSV values exactly (no transforms)
        spec = FigureSpec(csv_paths=[str(csv_dir / "spectrum.csv")],
                          kind="spectrum", out_path=str(tmp_path / "s.png"))
        fig = figspec.render(spec)
        line = fig.axes[0].lines[0]
        header, data = load_table(csv_dir / "spectrum.csv")
        assert np.array_equal(line.get_xdata(), data[:, 0])
        assert np.array_equal(line.get_ydata(), data[:, 1])

    def test_header_only_rejected(self, tmp_path):
        bad = tmp_path / "empty.csv"
        write_csv(bad, ["omega_b_MeV", "rate_s1_sr2_MeV1"], [])
        rc = plot_spectrum.main([str(bad), "--out", str(tmp_path / "x.png")])
        assert rc == 1

    def test_manifest_conflict_rejected(self, csv_dir, tmp_path):
        a = tmp_path / "a.csv"
        b = tmp_path / "b.csv"
        shutil.copy(csv_dir / "spectrum.csv", a)
        shutil.copy(csv_dir / "spectrum.csv", b)
        ma = json.loads((csv_dir / "spectrum.csv.manifest.json").read_text())
        mb = json.loads((csv_dir / "spectrum.csv.manifest.json").read_text())
        mb["params"]["xi"] = 0.123
        (tmp_path / "a.csv.manifest.json").write_text(json.dumps(ma))
        (tmp_path / "b.csv.manifest.json").write_text(json.dumps(mb))
        rc = plot_spectrum.main([str(a), str(b), "--out", str(tmp_path / "x.png")])
        assert rc == 1


class TestRateMap:
    def test_render_linear_and_log(self, csv_dir, tmp_path):
        for flag, name in ((None, "lin.png"), ("--log", "log.png")):
            args = [str(csv_dir / "angmap.csv"), "--out", str(tmp_path / name)]
            if flag:
                args.append(flag)
            assert plot_rate_map.main(args) == 0
            assert (tmp_path / name).exists()

    def test_missing_column(self, csv_dir, tmp_path):
        rc = plot_rate_map.main([str(csv_dir / "angmap.csv"), "--out",
                                 str(tmp_path / "x.png"), "--column", "bogus"])
        assert rc == 1

    def test_round_trip_mesh(self, csv_dir, tmp_path):
        spec = FigureSpec(csv_paths=[str(csv_dir / "angmap.csv")],
                          kind="contour", out_path=str(tmp_path / "m.png"))
        fig = figspec.render(spec)
        mesh = fig.axes[0].collections[0]
        header, data = load_table(csv_dir / "angmap.csv")
        assert np.isclose(np.nanmax(mesh.get_array()), data[:, 2].max(),
                          rtol=0, atol=0)


class TestNorders:
    def test_render(self, csv_dir, tmp_path):
        out = tmp_path / "orders.png"
        assert plot_norders.main([str(csv_dir / "norders.csv"),
                                  "--out", str(out)]) == 0
        assert out.exists()


class TestXiSweep:
    def test_render_engine_csv(self, csv_dir, tmp_path):
        out = tmp_path / "wint.png"
        assert plot_xi_sweep.main([str(csv_dir / "integrate.csv"),
                                   "--out", str(out)]) == 0
        assert out.exists()

    def test_render_and_eta(self, tmp_path):
        csvp = tmp_path / "wint.csv"
        xi = np.array([0.3, 0.5, 0.7, 1.0])
        w_pd = 5e6 * xi ** 2
        w_lin = w_pd + 1.2e6 * xi ** 2.7
        w_cir = w_pd + 1.0e6 * xi ** 3.0
        rows = [[x, a, b, c, 2.7, 3.0, 1]
                for x, a, b, c in zip(xi, w_lin, w_cir, w_pd)]
        write_csv(csvp, ["xi", "W_nonpert_linear_s1", "W_nonpert_circular_s1",
                         "W_pdcs_s1", "eta_linear", "eta_circular",
                         "row_converged"], rows)
        out = tmp_path / "sweep.png"
        assert plot_xi_sweep.main([str(csvp), "--out", str(out)]) == 0
        assert out.exists()
        # the script's own log-log difference fit recovers the exponents
        spec = FigureSpec(csv_paths=[str(csvp)], kind="xi-sweep",
                          out_path=str(tmp_path / "sweep2.png"))
        fig = figspec.render(spec)
        note = fig.axes[0].texts[0].get_text()
        assert "2.70" in note and "3.00" in note


class TestConcurrenceMap:
    def test_render_with_sentinels(self, csv_dir, tmp_path):
        # inject NaN sentinels, confirm they render as masked cells
        src = csv_dir / "concurrence.csv"
        header, data = load_table(src)
        csvp = tmp_path / "conc.csv"
        rows = [list(r) for r in data]
        rows[0][2] = "nan"
        rows[4][2] = "nan"
        write_csv(csvp, header, rows)
        out = tmp_path / "conc.png"
        assert plot_concurrence_map.main([str(csvp), "--out", str(out)]) == 0
        spec = FigureSpec(csv_paths=[str(csvp)], kind="concurrence-contour",
                          out_path=str(tmp_path / "c2.png"))
        fig = figspec.render(spec)
        arr = fig.axes[0].collections[0].get_array()
        assert np.ma.is_masked(arr) and arr.mask.sum() == 2

    def test_values_in_range(self, csv_dir):
        header, data = load_table(csv_dir / "concurrence.csv")
        vals = data[:, 2:]
        finite = vals[np.isfinite(vals)]
        assert np.all((finite >= 0.0) & (finite <= 1.0))


class TestDispatcher:
    def test_unknown_kind(self, csv_dir, tmp_path):
        spec = FigureSpec(csv_paths=[str(csv_dir / "angmap.csv")],
                          kind="pie-chart", out_path=str(tmp_path / "x.png"))
        with pytest.raises(FigureInputError):
            figspec.render(spec)
