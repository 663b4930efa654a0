import json

import pytest

from energy_transfer.cli.cli import build_parser, main
from energy_transfer.config import config
from energy_transfer.utils.file_utils import save_json

ENUMERATE = ["enumerate", "--preset", "overpartition", "--side", "O", "--word", "bbar,abar,b,a"]


def run_cli(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out


def test_enumerate_count(capsys):
    code, out = run_cli(capsys, *ENUMERATE, "--n", "10", "--bound", "0+", "--count-only")
    assert code == 0
    assert out == "11\n"


def test_enumerate_negative_energy(capsys):
    code, out = run_cli(capsys, *ENUMERATE, "--n", "-8", "--bound", "1-", "--count-only")
    assert code == 0
    assert out == "11\n"


def test_enumerate_lists_partitions(capsys):
    code, out = run_cli(capsys, *ENUMERATE, "--n", "10", "--bound", "1+")
    assert code == 0
    assert set(out.splitlines()) == {"6:bbar 2:abar 1:b 1:a", "5:bbar 3:abar 1:b 1:a", "4:bbar 3:abar 2:b 1:a"}


def test_enumerate_json(capsys):
    code, out = run_cli(capsys, "--format", "json", *ENUMERATE, "--n", "10", "--bound", "0+")
    payload = json.loads(out)
    assert code == 0
    assert payload["count"] == 11
    assert payload["run"]["energy_source"] == "preset:overpartition"
    assert all(p["flavor"] == "O" for p in payload["partitions"])


def test_energy_file_source(capsys):
    code, out = run_cli(capsys, "enumerate", "--energy", config.ref("overpartition_energy.json"),
                        "--side", "E", "--word", "bbar,abar,b,a", "--n", "10", "--bound", "0+", "--count-only")
    assert code == 0
    assert out == "11\n"


def test_unbounded_request(capsys):
    code, _ = run_cli(capsys, *ENUMERATE, "--n", "10", "--count-only")
    assert code == 3


def test_unknown_preset(capsys):
    code, _ = run_cli(capsys, "enumerate", "--preset", "fibonacci", "--word", "a", "--n", "1", "--bound", "0+")
    assert code == 2


def test_map_phi(capsys, worked):
    code, out = run_cli(capsys, "map", "phi", "--preset", "overpartition", "--partition", worked["lambda"],
                        "--predict")
    rows = dict(line.split("\t", 1) for line in out.splitlines() if not line.startswith("table"))
    assert code == 0
    assert rows["partition"] == worked["nu"]
    assert rows["crossings"] == "4"
    assert rows["predicted"] == "4"
    assert rows["agreement"] == "equal"


def test_map_psi_from_file(capsys, worked):
    code, out = run_cli(capsys, "map", "psi", "--preset", "overpartition", "--input", config.ref("worked_nu.json"))
    assert code == 0
    assert f"partition\t{worked['lambda']}" in out.splitlines()


def test_map_trace_and_random_strategy(capsys, worked):
    code, out = run_cli(capsys, "map", "phi", "--preset", "overpartition", "--input", config.ref("worked_lambda.json"),
                        "--trace", "--strategy", "random", "--seed", "11")
    events = [json.loads(line) for line in out.splitlines() if line.startswith("{")]
    assert code == 0
    assert len(events) == 4
    assert sorted(event["origins"] for event in events) == sorted(worked["phi"]["pairs"])
    assert f"partition\t{worked['nu']}" in out.splitlines()


def test_map_dual(capsys, worked):
    code, out = run_cli(capsys, "--format", "json", "map", "phi", "--dual", "--preset", "overpartition",
                        "--partition", worked["lambda"])
    assert code == 0
    assert json.loads(out)["partition"]["flavor"] == "E*"


def test_map_rejects_invalid_partition(capsys):
    code, _ = run_cli(capsys, "map", "phi", "--preset", "overpartition", "--partition", "1:a 5:a")
    assert code == 2


def test_map_dual_cannot_predict(capsys, worked):
    code, _ = run_cli(capsys, "map", "phi", "--dual", "--predict", "--preset", "overpartition",
                      "--partition", worked["lambda"])
    assert code == 3


def test_verify_siladic(capsys):
    code, out = run_cli(capsys, "verify", "siladic", "--variant", "odd", "--n-max", "10")
    lines = out.splitlines()
    assert code == 0
    assert lines[0] == "n\tlhs\trhs\tequal"
    assert "10\t10\t10\tequal" in lines
    assert lines[-1] == "PASS"


def test_verify_bijection(capsys):
    code, out = run_cli(capsys, "verify", "bijection", "--preset", "overpartition", "--word", "bbar,abar,b,a",
                        "--n-range", "-2..10", "--bound", "0+")
    assert code == 0
    assert "10\t11\t11\tequal" in out.splitlines()


def test_verify_diffmatrix(capsys):
    code, out = run_cli(capsys, "verify", "diffmatrix", "--preset", "overpartition",
                        "--expect", config.ref("overpartition_difference_matrix.json"))
    assert code == 0
    assert "extra\tparity\tequal" in out.splitlines()
    assert out.splitlines()[-1] == "PASS"


def test_verify_diffmatrix_mismatch(capsys, tmp_path):
    expected = json.loads(open(config.ref("overpartition_difference_matrix.json"), encoding="utf-8").read())
    expected["matrix"][0][0] = 1
    path = tmp_path / "expected.json"
    save_json(expected, str(path))
    code, out = run_cli(capsys, "verify", "diffmatrix", "--preset", "overpartition", "--expect", str(path))
    lines = out.splitlines()
    assert code == 1
    assert "bbar\tbbar\t2\t1" in lines
    assert lines[-2].startswith("counterexample\t")
    assert lines[-1] == "FAIL"


def test_verify_report(capsys, tmp_path):
    report = tmp_path / "reports" / "euler.html"
    code, _ = run_cli(capsys, "verify", "euler", "--q-order", "12", "--report", str(report))
    assert code == 0
    html = report.read_text(encoding="utf-8")
    assert "PASS" in html
    assert "euler" in html


def test_verify_selfcheck_json(capsys):
    code, out = run_cli(capsys, "--format", "json", "--seed", "3", "verify", "selfcheck", "--trials", "20")
    payload = json.loads(out)
    assert code == 0
    assert payload["passed"]
    assert payload["run"]["seed"] == 3


def test_parser_rejects_unknown_suite():
    with pytest.raises(SystemExit):
        build_parser().parse_args(["verify", "nonsense"])


def test_missing_settings_file(capsys, tmp_path):
    code, out = run_cli(capsys, "--settings", str(tmp_path / "missing.json"), *ENUMERATE,
                        "--n", "10", "--bound", "0+", "--count-only")
    assert code == 2
    assert out == ""


def test_malformed_settings_file(capsys, tmp_path):
    path = tmp_path / "settings.json"
    path.write_text("{not json", encoding="utf-8")
    code, _ = run_cli(capsys, "--settings", str(path), *ENUMERATE, "--n", "10", "--bound", "0+", "--count-only")
    assert code == 2
    path.write_text("[1, 2]", encoding="utf-8")
    code, _ = run_cli(capsys, "--settings", str(path), *ENUMERATE, "--n", "10", "--bound", "0+", "--count-only")
    assert code == 2


def test_settings_file_is_applied(capsys, tmp_path):
    path = tmp_path / "settings.json"
    save_json({"workers": 2, "strategy": "rightmost"}, str(path))
    code, out = run_cli(capsys, "--format", "json", "--settings", str(path), *ENUMERATE,
                        "--n", "10", "--bound", "0+", "--count-only")
    payload = json.loads(out)
    assert code == 0
    assert payload["count"] == 11
    assert payload["run"]["settings"]["workers"] == 2
    assert payload["run"]["settings"]["strategy"] == "rightmost"
