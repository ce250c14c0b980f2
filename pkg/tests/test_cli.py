import csv
import json

import numpy as np
import pytest

from dualframes import Frame, GridSpec, canonical_dual, identity, sample_bspline
from dualframes import io
from dualframes.cli import main

from conftest import random_frame


@pytest.fixture
def phi0_file(tmp_path):
    path = tmp_path / "phi0.json"
    io.save_frame(Frame.from_vectors([(1, 0), (0, 1), (1, 1)]), path)
    return str(path)


def read_csv(path):
    with open(path, newline="") as fh:
        return list(csv.reader(fh))


class TestFrameInfo:
    def test_reports_bounds_and_riesz(self, phi0_file, capsys):
        assert main(["frame-info", phi0_file]) == 0
        out = capsys.readouterr().out
        assert "lower_bound: 1" in out
        assert "upper_bound: 3" in out
        assert "is_riesz: False" in out

    def test_bessel_only_not_fatal(self, tmp_path, capsys):
        path = tmp_path / "bessel.json"
        io.save_frame(Frame.from_vectors([(1, 0), (2, 0)]), path)
        assert main(["frame-info", str(path)]) == 0
        out = capsys.readouterr().out
        assert "lower_bound: 0" in out
        assert "is_frame: False" in out

    def test_malformed_json_exit_3(self, tmp_path, capsys):
        path = tmp_path / "bad.json"
        path.write_text("{not json")
        assert main(["frame-info", str(path)]) == 3
        assert "line" in capsys.readouterr().err


class TestDual:
    def test_canonical(self, phi0_file, tmp_path, capsys):
        out = tmp_path / "dual.json"
        assert main(["dual", phi0_file, "--mode", "canonical", "--out", str(out)]) == 0
        text = capsys.readouterr().out
        assert "approximation_rate: " in text
        loaded = io.load_frame(out)
        phi0 = io.load_frame(phi0_file)
        assert np.allclose(loaded.synthesis, canonical_dual(phi0).synthesis)

    def test_approx_with_operator_file(self, phi0_file, tmp_path, capsys):
        op = tmp_path / "a09.json"
        io.save_operator(0.9 * identity(2), op)
        assert main(["dual", phi0_file, "--mode", "approx", "--op-file", str(op)]) == 0
        out = capsys.readouterr().out
        rate = [l for l in out.splitlines() if l.startswith("approximation_rate")][0]
        assert float(rate.split(": ")[1]) == pytest.approx(0.1, abs=1e-10)

    def test_random_theta_is_deterministic(self, phi0_file, tmp_path):
        out1, out2 = tmp_path / "d1.json", tmp_path / "d2.json"
        op = tmp_path / "a.json"
        io.save_operator(0.9 * identity(2), op)
        base = ["dual", phi0_file, "--mode", "approx", "--op-file", str(op), "--theta", "random:42:0.5"]
        assert main(base + ["--out", str(out1)]) == 0
        assert main(base + ["--out", str(out2)]) == 0
        assert out1.read_text() == out2.read_text()

    def test_contract_violation_exit_2(self, phi0_file, tmp_path, capsys):
        op = tmp_path / "far.json"
        io.save_operator(3.0 * identity(2), op)
        assert main(["dual", phi0_file, "--mode", "approx", "--op-file", str(op)]) == 2
        assert "measured" in capsys.readouterr().err

    def test_missing_op_file_exit_3(self, phi0_file):
        assert main(["dual", phi0_file, "--mode", "gdual"]) == 3

    def test_gdual_mode(self, phi0_file, tmp_path, capsys):
        op = tmp_path / "s.json"
        io.save_operator(2.0 * identity(2), op)
        assert main(["dual", phi0_file, "--mode", "gdual", "--op-file", str(op)]) == 0
        out = capsys.readouterr().out
        resid = [l for l in out.splitlines() if l.startswith("mixed_operator_residual")][0]
        assert float(resid.split(": ")[1]) <= 1e-10


class TestVerify:
    def test_dual_pair(self, phi0_file, tmp_path, capsys):
        dual_path = tmp_path / "dual.json"
        phi0 = io.load_frame(phi0_file)
        io.save_frame(canonical_dual(phi0), dual_path)
        assert main(["verify", phi0_file, str(dual_path)]) == 0
        out = capsys.readouterr().out
        assert "kind: dual" in out
        assert "bessel_bound_ok: True" in out

    def test_self_pair_gdual(self, tmp_path, capsys):
        path = tmp_path / "phi1.json"
        io.save_frame(Frame.from_vectors([(1, 0), (1, 0), (0, 1)]), path)
        assert main(["verify", str(path), str(path)]) == 0
        out = capsys.readouterr().out
        assert "kind: gdual" in out
        assert "rate: 1" in out

    def test_shape_mismatch_exit_3(self, phi0_file, tmp_path):
        other = tmp_path / "o.json"
        io.save_frame(Frame.from_vectors([(1, 0), (0, 1)]), other)
        assert main(["verify", phi0_file, str(other)]) == 3


class TestPerturb:
    def test_identity_transfer(self, tmp_path, capsys):
        phi = random_frame(4, 6, seed=90)
        phi_path = tmp_path / "phi.json"
        ad_path = tmp_path / "ad.json"
        out_path = tmp_path / "out.json"
        io.save_frame(phi, phi_path)
        io.save_frame(canonical_dual(phi), ad_path)
        code = main(
            ["perturb", str(phi_path), str(phi_path), str(ad_path), "--out", str(out_path)]
        )
        assert code == 0
        out = capsys.readouterr().out
        assert "mixed_match_residual" in out
        transferred = io.load_frame(out_path)
        assert np.allclose(
            transferred.synthesis, canonical_dual(phi).synthesis, atol=1e-12
        )

    def test_report_json(self, tmp_path):
        phi = random_frame(4, 6, seed=91)
        phi_path = tmp_path / "phi.json"
        ad_path = tmp_path / "ad.json"
        report_path = tmp_path / "report.json"
        io.save_frame(phi, phi_path)
        io.save_frame(canonical_dual(phi), ad_path)
        code = main(
            [
                "perturb",
                str(phi_path),
                str(phi_path),
                str(ad_path),
                "--report",
                str(report_path),
            ]
        )
        assert code == 0
        report = json.loads(report_path.read_text())
        assert report["command"] == "perturb"
        assert (
            report["verdicts"]["measured_diff_bound"]
            <= report["verdicts"]["predicted_diff_bound"] + 1e-9
        )


class TestGaborCommands:
    def test_window_generation(self, tmp_path):
        out = tmp_path / "b2.json"
        csv_out = tmp_path / "b2.csv"
        code = main(
            [
                "gabor", "window",
                "--window", "bspline:2",
                "--grid", "10:20",
                "--out", str(out),
                "--csv", str(csv_out),
            ]
        )
        assert code == 0
        w = io.load_window(out)
        assert np.allclose(w.values, sample_bspline(2, GridSpec(10, 20)).values)
        rows = read_csv(csv_out)
        assert rows[0] == ["x", "re", "im"]
        assert len(rows) == 201

    def test_dual_ck1_bspline(self, tmp_path, capsys):
        out = tmp_path / "g1d.json"
        code = main(
            [
                "gabor", "dual",
                "--window", "bspline:2",
                "--grid", "10:20",
                "--b", "1/10",
                "--method", "ck1",
                "--out", str(out),
            ]
        )
        assert code == 0
        text = capsys.readouterr().out
        resid = [l for l in text.splitlines() if "janssen_residual" in l][0]
        assert float(resid.split(": ")[1]) <= 1e-10
        dual = io.load_window(out)
        b2 = sample_bspline(2, GridSpec(10, 20))
        expected = 0.1 * b2.values + 0.2 * np.roll(b2.values, -10)
        assert np.array_equal(dual.values, expected)

    def test_dual_hypothesis_violation_exit_2(self, tmp_path):
        code = main(
            [
                "gabor", "dual",
                "--window", "bspline:2",
                "--grid", "10:20",
                "--b", "1/2",
            ]
        )
        assert code == 2

    def test_verify_pair(self, tmp_path, capsys):
        b2_path = tmp_path / "b2.json"
        dual_path = tmp_path / "d.json"
        main(["gabor", "window", "--window", "bspline:2", "--grid", "10:20", "--out", str(b2_path)])
        main(
            [
                "gabor", "dual",
                "--window", str(b2_path),
                "--b", "1/10",
                "--support", "2",
                "--out", str(dual_path),
            ]
        )
        capsys.readouterr()
        code = main(
            [
                "gabor", "verify",
                "--window", str(b2_path),
                "--dual", str(dual_path),
                "--a", "1",
                "--b", "1/10",
                "--materialize",
            ]
        )
        assert code == 0
        out = capsys.readouterr().out
        assert "dual: True" in out
        rate = [l for l in out.splitlines() if "materialized_rate" in l][0]
        assert float(rate.split(": ")[1]) <= 1e-10

    def test_weight_csv(self, tmp_path):
        csv_out = tmp_path / "w.csv"
        code = main(
            [
                "gabor", "weight",
                "--window", "char:1",
                "--grid", "4:2",
                "--a", "1/2",
                "--csv", str(csv_out),
            ]
        )
        assert code == 0
        rows = read_csv(csv_out)
        assert rows[0] == ["x", "weight"]
        assert all(float(r[1]) == pytest.approx(2.0) for r in rows[1:])

    def test_sweep_matches_criterion(self, tmp_path, capsys):
        out = tmp_path / "sweep.csv"
        code = main(
            ["gabor", "sweep", "--char", "--grid", "4:3", "--step", "1/4", "--out", str(out)]
        )
        assert code == 0
        assert "criterion_agreement: True" in capsys.readouterr().out
        rows = read_csv(out)
        assert len(rows) == 1 + 64  # header + 4^3 cells
        assert all(r[6] == "1" for r in rows[1:])

    def test_sweep_bspline_frequency_step(self, tmp_path, capsys):
        out = tmp_path / "bsweep.csv"
        code = main(
            [
                "gabor", "sweep",
                "--bspline", "2",
                "--samples", "10",
                "--denominators", "2:6",
                "--out", str(out),
            ]
        )
        assert code == 0
        assert "criterion_agreement: True" in capsys.readouterr().out
        rows = read_csv(out)
        assert rows[0] == ["b", "hypothesis", "residual", "dual", "agree"]
        # dual exactly when b <= 1/3 for the order-2 window
        verdicts = {r[0]: r[3] for r in rows[1:]}
        assert verdicts["1/2"] == "0" and verdicts["1/3"] == "1"

    def test_sweep_requires_one_mode(self):
        assert main(["gabor", "sweep", "--out", "x.csv"]) == 3

    def test_approx_dual_window(self, tmp_path, capsys):
        code = main(
            [
                "gabor", "approx-dual",
                "--window", "bspline:2",
                "--dual", str(self._make_dual(tmp_path)),
                "--scale-window", "bspline:3",
                "--a", "1",
                "--b", "1/3",
                "--grid", "6:6",
                "--out", str(tmp_path / "gad.json"),
            ]
        )
        assert code == 0
        out = capsys.readouterr().out
        rate = [l for l in out.splitlines() if l.startswith("approximation_rate")][0]
        gap = [l for l in out.splitlines() if l.startswith("identity_gap")][0]
        assert float(rate.split(": ")[1]) == pytest.approx(
            float(gap.split(": ")[1]), abs=1e-9
        )

    @staticmethod
    def _make_dual(tmp_path):
        from dualframes import ck_dual1
        from fractions import Fraction

        dual = ck_dual1(sample_bspline(2, GridSpec(6, 6)), 2, Fraction(1, 3))
        path = tmp_path / "dual_in.json"
        io.save_window(dual, path)
        return path
