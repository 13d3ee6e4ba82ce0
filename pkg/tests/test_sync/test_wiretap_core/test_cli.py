# pylint: disable=R0201, R0903

"""Command-line entry point tests."""

import json

import pytest
from sqlalchemy import create_engine
from sqlalchemy.orm import Session

from wiretap_core import Run, Vertex
from wiretap_core.cli import main
from wiretap_core.measures import binary_entropy
from tests.data import bad_body_negative, design_xor_case1, side_info_1

H_01 = binary_entropy(0.1)
SMALL = ["--restarts", "1", "--iterations", "3", "--directions", "3"]


def write_json(path, payload):
    path.write_text(json.dumps(payload), encoding="utf-8")
    return str(path)


def diagnostic(capsys):
    return json.loads(capsys.readouterr().err.strip().splitlines()[-1])


class TestValidate:

    def test_builtin(self, capsys):
        assert main(["validate", "--builtin", "fig6"]) == 0
        report = json.loads(capsys.readouterr().out)
        assert report["valid"]
        assert report["alphabets"] == {"S": 1, "X": 2, "Y": 2, "Z": 2}
        assert report["degradedness"] == "Degraded"
        assert report["provenance"]["argv"][:2] == ["wiretap-core", "validate"]

    def test_with_design(self, capsys, tmp_path):
        design = write_json(tmp_path / "design.json", design_xor_case1)
        assert main(["validate", "--builtin", "xor_state", "--aux-file", design]) == 0
        assert json.loads(capsys.readouterr().out)["design"] == {"mode": "Case1", "U": 1, "V": 2}

    def test_missing_file(self, capsys, tmp_path):
        assert main(["validate", str(tmp_path / "absent.json")]) == 1
        assert diagnostic(capsys)["exit_code"] == 1

    def test_invalid_channel(self, capsys, tmp_path):
        path = write_json(tmp_path / "bad.json", bad_body_negative)
        assert main(["validate", path]) == 2
        report = diagnostic(capsys)
        assert report["error"] == "ValidationError"
        assert "negative probability" in report["message"]

    def test_no_channel(self, capsys):
        assert main(["validate"]) == 2
        assert "--builtin" in diagnostic(capsys)["message"]

    def test_no_command(self):
        with pytest.raises(SystemExit) as err:
            main([])
        assert err.value.code == 2


class TestRegion:

    def test_csv_and_json(self, capsys, tmp_path):
        out, companion = tmp_path / "frontier.csv", tmp_path / "frontier.json"
        code = main(
            ["region", "--builtin", "fig6", "--bound", "D_Region_T4", "--seed", "3",
             "--out", str(out), "--json", str(companion), *SMALL]
        )
        assert code == 0
        lines = out.read_text(encoding="utf-8").splitlines()
        assert lines[0].startswith("# wiretap-core 0.1.0 seed=3 config=")
        assert lines[1] == "R_M,R_K,provenance_id"
        data = json.loads(companion.read_text(encoding="utf-8"))
        assert data["bound"] == "D_Region_T4"
        assert data["provenance"]["seed"] == 3
        assert "SM endpoint" in capsys.readouterr().err

    def test_unknown_bound(self, capsys):
        assert main(["region", "--builtin", "fig6", "--bound", "T99"]) == 2
        assert "valid bounds" in diagnostic(capsys)["message"]

    def test_infeasible_config(self, capsys):
        assert main(["region", "--builtin", "fig6", "--bound", "D_Region_T4", "--grid", "1"]) == 3
        assert diagnostic(capsys)["error"] == "InfeasibleConfigError"

    def test_ledger(self, tmp_path):
        url = f"sqlite:///{tmp_path / 'ledger.db'}"
        code = main(
            ["region", "--builtin", "fig6", "--bound", "D_Region_T4", "--db", url,
             "--out", str(tmp_path / "f.csv"), *SMALL]
        )
        assert code == 0
        engine = create_engine(url)
        with Session(engine) as session:
            (run,) = Run.get_all(session)
            assert run.bound == "D_Region_T4"
            assert run.channel.name == "fig6"
            assert len(Vertex.get_all(session)) == len(run.vertices)
        engine.dispose()


class TestCapacity:

    def test_objective(self, capsys):
        code = main(["capacity", "--builtin", "fig6", "--objective", "cor8_sm", *SMALL])
        assert code == 0
        report = json.loads(capsys.readouterr().out)
        assert report["objective"] == "cor8_sm"
        assert report["value"] == pytest.approx(H_01, abs=1e-3)
        assert report["feasible"]

    def test_bound_and_axis(self, capsys):
        code = main(
            ["capacity", "--builtin", "xor_state", "--bound", "C_Case1", "--axis", "SK",
             "--u-size", "1", "--v-size", "2", *SMALL]
        )
        assert code == 0
        report = json.loads(capsys.readouterr().out)
        assert report["objective"] == "C_Case1:SK"
        assert report["value"] == pytest.approx(1.0, abs=1e-6)

    def test_unknown_objective(self, capsys):
        assert main(["capacity", "--builtin", "fig6", "--objective", "nope"]) == 2
        assert "unknown objective" in diagnostic(capsys)["message"]

    def test_exclusive_targets(self):
        with pytest.raises(SystemExit):
            main(["capacity", "--builtin", "fig6", "--objective", "m1", "--inequalities"])

    def test_inequalities(self, capsys):
        code = main(
            ["capacity", "--builtin", "fig6", "--inequalities", "--u-size", "2", "--v-size", "2",
             "--restarts", "1", "--iterations", "5"]
        )
        assert code == 0
        report = json.loads(capsys.readouterr().out)
        assert set(report["inequalities"]) == {"M1", "K1", "M2", "K2", "M1'", "K1'", "M2'", "K2'"}
        assert report["inequalities"]["K1'"]["signed"] >= H_01 - 1e-3
        assert report["inequalities"]["K2'"]["signed"] == pytest.approx(0.0, abs=1e-6)
        assert report["provenance"]["seed"] == 20240601

    def test_fig7_family(self, capsys):
        code = main(
            ["capacity", "--fig7-family", "--u-size", "2", "--v-size", "2",
             "--restarts", "1", "--iterations", "5"]
        )
        assert code == 0
        rows = json.loads(capsys.readouterr().out)["rows"]
        assert [row["flip"] for row in rows] == [0.05, 0.1, 0.15, 0.2, 0.25]
        assert any(row["exhibits"] for row in rows)
        assert all(row["k1"] < row["k2"] for row in rows if row["exhibits"])


class TestCompare:

    def test_matrix_and_json(self, capsys, tmp_path):
        out = tmp_path / "compare.json"
        code = main(
            ["compare", "--builtin", "fig6", "--bounds", "D_Region_T4", "E_Outer_T5",
             "--out", str(out), *SMALL]
        )
        assert code == 0
        lines = capsys.readouterr().out.strip().splitlines()
        assert lines[0].startswith("# wiretap-core 0.1.0 seed=")
        assert lines[1].split() == ["D_Region_T4", "E_Outer_T5"]
        rows = [line.split() for line in lines[2:]]
        assert [row[0] for row in rows] == ["D_Region_T4", "E_Outer_T5"]
        assert rows[0][1] == "yes" and rows[1][2] == "yes"
        assert all(cell in ("yes", "no") for row in rows for cell in row[1:])
        data = json.loads(out.read_text(encoding="utf-8"))
        assert data["dominates"]["D_Region_T4"]["D_Region_T4"]
        assert set(data["signed"]) == {"D_Region_T4", "E_Outer_T5"}
        assert data["endpoints"]["D_Region_T4"]["SM"] == pytest.approx(H_01, abs=1e-3)
        assert data["provenance"]["argv"][1] == "compare"

    def test_unknown_bound(self, capsys):
        assert main(["compare", "--builtin", "fig6", "--bounds", "D_Region_T4", "T99"]) == 2
        assert "valid bounds" in diagnostic(capsys)["message"]


class TestSimulate:

    def test_exact(self, capsys, tmp_path):
        design = write_json(tmp_path / "design.json", design_xor_case1)
        code = main(
            ["simulate", "--builtin", "xor_state", "--aux-file", design, "--n", "2",
             "--rates", "0", "0", "0", "0.5", "--mode", "exact", "--seed", "4"]
        )
        assert code == 0
        report = json.loads(capsys.readouterr().out)
        assert report["mode"] == "exact"
        assert report["rates"] == {"R1": 0.0, "R2": 0.0, "RK": 0.0, "RM": 0.5}
        assert report["leakage_bits"] == pytest.approx(0.0, abs=1e-12)
        assert report["seed"] == 4

    def test_negative_rates(self, capsys, tmp_path):
        design = write_json(tmp_path / "design.json", design_xor_case1)
        code = main(
            ["simulate", "--builtin", "xor_state", "--aux-file", design, "--n", "2",
             "--rates", "0", "0", "-1", "0.5"]
        )
        assert code == 2
        assert "nonnegative" in diagnostic(capsys)["message"]

    def test_guard(self, capsys, tmp_path):
        design = write_json(tmp_path / "design.json", design_xor_case1)
        code = main(
            ["simulate", "--builtin", "xor_state", "--aux-file", design, "--n", "2",
             "--rates", "0", "0", "0", "0.5", "--mode", "exact", "--guard", "10"]
        )
        assert code == 4
        assert diagnostic(capsys)["error"] == "GuardExceededError"


class TestSoftcover:

    def test_sweep_n(self, tmp_path):
        design = write_json(tmp_path / "design.json", design_xor_case1)
        out = tmp_path / "cover.csv"
        code = main(
            ["softcover", "--builtin", "xor_state", "--aux-file", design, "--n", "2",
             "--sweep", "n", "--out", str(out)]
        )
        assert code == 0
        lines = out.read_text(encoding="utf-8").splitlines()
        assert lines[0].startswith("# wiretap-core")
        assert lines[1].startswith("# thresholds I(U;S)=")
        assert lines[2] == "variable,value,L,N,divergence_bits,stderr"
        assert [line.split(",")[1] for line in lines[3:]] == ["1", "2"]

    def test_sweep_needs_values(self, capsys, tmp_path):
        design = write_json(tmp_path / "design.json", design_xor_case1)
        code = main(
            ["softcover", "--builtin", "xor_state", "--aux-file", design, "--sweep", "R1",
             "--out", str(tmp_path / "cover.csv")]
        )
        assert code == 2
        assert "--values" in diagnostic(capsys)["message"]


class TestTransform:

    def test_side_info(self, capsys, tmp_path):
        side = write_json(tmp_path / "side.json", side_info_1)
        assert main(["transform", "--builtin", "xor_state", "--side-info", side]) == 0
        report = json.loads(capsys.readouterr().out)
        assert report["alphabets"] == {"S": 2, "X": 2, "Y": 4, "Z": 1}
        assert report["name"] == "xor_state~csi"
        assert "provenance" in report
