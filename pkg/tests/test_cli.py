# tests/test_cli.py

import json

from click.testing import CliRunner

from src.cli.main import cli, run
from src.core.cm import CmParams
from src.core.oracle import OracleReport
from src.services.census_service import CensusService

GAUSSIAN_SURFACE = ["--g", "2", "--cm", "0,1,1", "--pol", "1,1"]


def invoke(*args):
    return CliRunner().invoke(cli, list(args))


class TestCommands:
    def test_count(self):
        result = invoke("count", "--g", "3", "--cm", "0,1,1", "--pol", "1,1,1", "--max-degree", "3")
        assert result.exit_code == 0, result.output
        assert result.stdout == "55\n"

    def test_count_without_cm(self):
        result = invoke("count", "--g", "2", "--no-cm", "--pol", "1,1", "--max-degree", "2")
        assert result.stdout == "4\n"

    def test_count_json(self):
        result = invoke("count", *GAUSSIAN_SURFACE, "--max-degree", "2", "--format", "json")
        data = json.loads(result.stdout)
        assert data["count"] == 6
        assert data["params"]["cm"] == {"u": 0, "v": 1, "w": 1, "disc": -4}

    def test_enumerate_json(self):
        result = invoke("enumerate", *GAUSSIAN_SURFACE, "--max-degree", "2")
        assert result.exit_code == 0, result.output
        data = json.loads(result.stdout)
        assert data["count"] == 6
        assert data["curves"][0] == {"coords": [0, 1, 0, 0], "degree": 1, "kind": "ordinary"}
        assert {c["kind"] for c in data["curves"]} == {"ordinary", "extra-ordinary"}

    def test_enumerate_with_basis(self):
        result = invoke("enumerate", *GAUSSIAN_SURFACE, "--max-degree", "1", "--with-basis")
        data = json.loads(result.stdout)
        assert data["curves"][1]["basis"] == {"lambda": [1, 0, 0, 0], "mu": [0, 0, 1, 0]}

    def test_enumerate_csv(self):
        result = invoke("enumerate", *GAUSSIAN_SURFACE, "--max-degree", "2", "--format", "csv")
        lines = result.stdout.splitlines()
        assert lines[0] == "alpha,beta,gamma,eta,degree,kind"
        assert lines[1] == "0,1,0,0,1,ordinary"
        assert len(lines) == 7
        assert "\r" not in result.stdout

    def test_sweep_csv(self):
        result = invoke("sweep", *GAUSSIAN_SURFACE, "--t-max", "2")
        assert result.exit_code == 0, result.output
        lines = result.stdout.splitlines()
        assert lines[0] == "t,count,ordinary,extraordinary,bound"
        assert lines[1] == "0,0,0,0,0.000000"
        assert lines[2].startswith("1,2,2,0,")
        assert lines[3].startswith("2,6,4,2,")

    def test_sweep_does_not_depend_on_threads(self):
        args = ["sweep", "--g", "3", "--cm", "1,1,1", "--pol", "1,1,2", "--t-max", "6"]
        single = invoke(*args, "--threads", "1")
        many = invoke(*args, "--threads", "4")
        assert single.exit_code == many.exit_code == 0
        assert single.stdout_bytes == many.stdout_bytes

    def test_bound(self):
        result = invoke("bound", "--g", "3", "--no-cm", "--pol", "1,1,1", "--max-degree", "4")
        data = json.loads(result.stdout)
        assert data["kind"] == "overhagen"
        assert set(data["constants"]) == {"V", "S", "M"}

    def test_verify(self):
        result = invoke("verify", *GAUSSIAN_SURFACE, "--max-degree", "3", "--box", "2")
        assert result.exit_code == 0, result.output
        assert json.loads(result.stdout)["passed"] is True

    def test_out_file(self, tmp_path):
        target = tmp_path / "curves.csv"
        result = invoke("enumerate", *GAUSSIAN_SURFACE, "--max-degree", "1", "--format", "csv", "--out", str(target))
        assert result.exit_code == 0, result.output
        assert result.stdout == ""
        assert target.read_bytes().count(b"\n") == 3


class TestExitCodes:
    def test_success(self, capsys):
        assert run(["count", *GAUSSIAN_SURFACE, "--max-degree", "1"]) == 0
        assert capsys.readouterr().out == "2\n"

    def test_missing_cm_choice(self, capsys):
        assert run(["count", "--g", "2", "--pol", "1,1", "--max-degree", "1"]) == 1
        assert "exactly one of --cm and --no-cm" in capsys.readouterr().err

    def test_both_cm_choices(self):
        assert run(["count", "--g", "2", "--cm", "0,1,1", "--no-cm", "--pol", "1,1", "--max-degree", "1"]) == 1

    def test_invalid_cm(self, capsys):
        assert run(["count", "--g", "2", "--cm", "2,1,1", "--pol", "1,1", "--max-degree", "1"]) == 1
        assert "u^2 - 4vw < 0" in capsys.readouterr().err

    def test_polarization_length(self):
        assert run(["count", "--g", "3", "--cm", "0,1,1", "--pol", "1,1", "--max-degree", "1"]) == 1

    def test_unparseable_list(self):
        assert run(["count", "--g", "2", "--cm", "0,x,1", "--pol", "1,1", "--max-degree", "1"]) == 1

    def test_verify_needs_cm(self):
        assert run(["verify", "--g", "2", "--no-cm", "--pol", "1,1", "--max-degree", "1"]) == 1

    def test_verification_failure(self, monkeypatch, capsys):
        def failing(self, query, t, box=None, threads=None):
            return OracleReport(
                cm=CmParams(u=0, v=1, w=1),
                g=2,
                multipliers=(1, 1),
                box=1,
                t=t,
                oracle_classes=[(1, 0, 0, 0)],
                census_classes=[],
                missing_from_census=[(1, 0, 0, 0)],
                invalid_oracle_classes=[],
                round_trip_failures=[],
                extra_in_census_unwitnessed=[],
            )

        monkeypatch.setattr(CensusService, "verify", failing)
        assert run(["verify", *GAUSSIAN_SURFACE, "--max-degree", "1"]) == 2
        captured = capsys.readouterr()
        assert json.loads(captured.out)["passed"] is False
        assert "Verification failed" in captured.err
