"""Command line behavior: flags, exit codes, error reporting, artifacts."""

import json

import numpy as np
import pytest

from edmcomplete.cli import build_parser, main
from conftest import random_cloud


def write_structure(path, cloud):
    lines = [
        f"{el} {float(x)!r} {float(y)!r} {float(z)!r} {res}"
        for el, res, (x, y, z) in zip(cloud.elements, cloud.residues, cloud.coords)
    ]
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")


@pytest.fixture()
def structure_file(tmp_path):
    path = tmp_path / "mol.txt"
    write_structure(path, random_cloud(40, order=6))
    return path


class TestParser:
    def test_defaults(self):
        args = build_parser().parse_args(["--input", "x", "--out-dir", "y"])
        assert args.mode == "cutoff"
        assert args.cutoff == 6.0
        assert args.percent == 10.0
        assert args.radii is None
        assert args.rank == 3
        assert args.epsilon == 1e-5
        assert args.max_iters == 200000
        assert args.period == 1
        assert args.seed == 0
        assert args.replications == 5

    def test_mode_choices(self):
        parser = build_parser()
        for mode in ("cutoff", "cutoff+residue", "top-percent", "vdw"):
            assert parser.parse_args(["--input", "x", "--out-dir", "y", "--mode", mode]).mode == mode
        with pytest.raises(SystemExit):
            parser.parse_args(["--input", "x", "--out-dir", "y", "--mode", "everything"])

    def test_input_and_out_dir_required(self):
        with pytest.raises(SystemExit):
            build_parser().parse_args(["--input", "x"])
        with pytest.raises(SystemExit):
            build_parser().parse_args(["--out-dir", "y"])


class TestMain:
    def test_happy_path(self, structure_file, tmp_path, capsys):
        out = tmp_path / "results"
        rc = main(
            [
                "--input", str(structure_file),
                "--out-dir", str(out),
                "--replications", "2",
                "--seed", "11",
            ]
        )
        assert rc == 0
        captured = capsys.readouterr()
        assert "replication seed=11: converged" in captured.out
        assert "replication seed=12: converged" in captured.out
        assert "aggregate: position_error mean/worst" in captured.out
        report = json.loads((out / "report.json").read_text())
        assert report["config"]["mode"] == "cutoff"
        assert report["config"]["seed"] == 11
        assert len(report["replications"]) == 2

    def test_vdw_requires_radii(self, structure_file, tmp_path):
        with pytest.raises(SystemExit):
            main(
                [
                    "--input", str(structure_file),
                    "--out-dir", str(tmp_path / "o"),
                    "--mode", "vdw",
                ]
            )

    def test_vdw_with_radii(self, structure_file, tmp_path):
        radii = tmp_path / "radii.csv"
        radii.write_text("element,radius_angstrom\nC,1.7\n", encoding="utf-8")
        rc = main(
            [
                "--input", str(structure_file),
                "--out-dir", str(tmp_path / "o"),
                "--mode", "vdw",
                "--radii", str(radii),
                "--replications", "1",
            ]
        )
        assert rc == 0

    def test_missing_input_file(self, tmp_path, capsys):
        rc = main(["--input", str(tmp_path / "absent.txt"), "--out-dir", str(tmp_path / "o")])
        assert rc == 1
        assert capsys.readouterr().err.startswith("error:")

    def test_malformed_structure(self, tmp_path, capsys):
        bad = tmp_path / "bad.txt"
        bad.write_text("C 0 0 0 1\nC zero 0 0 1\n", encoding="utf-8")
        rc = main(["--input", str(bad), "--out-dir", str(tmp_path / "o")])
        assert rc == 1
        assert "line 2:" in capsys.readouterr().err

    def test_out_of_range_percent(self, structure_file, tmp_path, capsys):
        rc = main(
            [
                "--input", str(structure_file),
                "--out-dir", str(tmp_path / "o"),
                "--mode", "top-percent",
                "--percent", "150",
            ]
        )
        assert rc == 1
        assert "percent" in capsys.readouterr().err

    def test_missing_radius_entry(self, tmp_path, capsys):
        mol = tmp_path / "mol.txt"
        mol.write_text("C 0 0 0 1\nN 1 0 0 1\n", encoding="utf-8")
        radii = tmp_path / "radii.csv"
        radii.write_text("element,radius_angstrom\nC,1.7\n", encoding="utf-8")
        rc = main(
            [
                "--input", str(mol),
                "--out-dir", str(tmp_path / "o"),
                "--mode", "vdw",
                "--radii", str(radii),
            ]
        )
        assert rc == 1
        assert "N" in capsys.readouterr().err

    def test_bad_solver_flags(self, structure_file, tmp_path, capsys):
        rc = main(
            [
                "--input", str(structure_file),
                "--out-dir", str(tmp_path / "o"),
                "--epsilon", "0",
            ]
        )
        assert rc == 1
        assert "epsilon" in capsys.readouterr().err
