import csv
import io
import json
import subprocess
import sys

import pytest

from cornerheat import cli
from cornerheat.errors import ConfigError


def run(argv):
    out = io.StringIO()
    code = cli.main(argv, out=out)
    return code, out.getvalue()


def read_csv(path):
    text = path.read_text()
    lines = text.splitlines()
    assert lines[0] == f"# {cli.CSV_VERSION}"
    return list(csv.DictReader(lines[1:]))


def test_parse_angle():
    v, turns = cli.parse_angle("2pi/3")
    assert turns is not None and float(turns) == pytest.approx(2 / 3)
    assert cli.parse_angle("pi")[1] == 1  # multiples of pi
    v, turns = cli.parse_angle("1.25")
    assert v == 1.25 and turns is None
    with pytest.raises(ConfigError):
        cli.parse_angle("two pi")


def test_coeffs_text():
    code, text = run(["coeffs", "--K0", "1", "--k", "2", "--phi", "pi"])
    assert code == 0
    assert "corner k=2" in text and "exact (1/16, 1/32, 1/64)" in text
    assert "cone k=2" in text and "exact (1/8, 1/16, 1/32)" in text
    assert "rotation phi=pi" in text and "exact (1/4, 1/8, 1/16)" in text


def test_coeffs_json():
    code, text = run(["coeffs", "--K0", "0", "--lapK", "1", "--k", "3", "--gamma", "pi/2",
                      "--format", "json"])
    assert code == 0
    data = json.loads(text)
    labels = [e["label"] for e in data["entries"]]
    assert labels == ["corner k=3", "cone k=3", "corner gamma=pi/2"]
    conj = data["entries"][2]
    assert conj["source"] == "conjecture"
    assert conj["values"][0] == pytest.approx(1 / 16)


def test_coeffs_needs_an_entry():
    code, _ = run(["coeffs", "--K0", "1"])
    assert code == 2


def test_verify_fast_suites_pass(tmp_path):
    code, text = run(["verify", "trig", "--kmax", "30"])
    assert code == 0 and "3/3 checks passed" in text  # one row per power m
    out = tmp_path / "c.csv"
    code, text = run(["verify", "consistency", "--kmax", "6", "--output", str(out)])
    assert code == 0
    rows = read_csv(out)
    assert len(rows) == 10
    assert all(r["pass"] == "true" for r in rows)


def test_report_rows_and_json(tmp_path):
    code, _ = run(["report", "--suites", "consistency", "--kmax", "5", "--output", str(tmp_path)])
    assert code == 0
    rows = read_csv(tmp_path / "report.csv")
    assert len(rows) == 8
    data = json.loads((tmp_path / "report.json").read_text())
    assert data["all_pass"] is True
    assert len(data["checks"]) == 8
    assert data["config"]["task"]["kmax"] == 5
    for r, c in zip(rows, data["checks"]):
        assert float(r["measured"]) == c["measured"]


def test_report_with_no_suites_writes_header(tmp_path):
    code, _ = run(["report", "--suites", "", "--output", str(tmp_path)])
    assert code == 0
    lines = (tmp_path / "report.csv").read_text().splitlines()
    assert lines == [f"# {cli.CSV_VERSION}", ",".join(cli.CSV_COLUMNS)]
    assert json.loads((tmp_path / "report.json").read_text())["checks"] == []


def test_report_is_byte_deterministic(tmp_path):
    outputs = []
    for _ in range(2):
        assert run(["report", "--suites", "consistency,trig", "--kmax", "6", "--seed", "3",
                    "--output", str(tmp_path)])[0] == 0
        outputs.append([(tmp_path / n).read_bytes() for n in ("report.csv", "report.json")])
    assert outputs[0] == outputs[1]


def test_config_roundtrip():
    cfg = cli.RunConfig.from_dict({"surface": {"kind": "sphere", "K": 1.0},
                                   "task": {"phi": "2pi/3", "R": 1.0}, "seed": 4})
    again = cli.RunConfig.from_json(cfg.to_json())
    assert again == cfg
    assert again.to_json() == cfg.to_json()


def test_config_errors():
    with pytest.raises(ConfigError, match="line 1, column"):
        cli.RunConfig.from_json('{"surface": ')
    with pytest.raises(ConfigError, match="unknown"):
        cli.RunConfig.from_dict({"surfce": {}})
    with pytest.raises(ConfigError, match="coeffs"):
        cli.RunConfig.from_dict({"surface": {"kind": "poly_odd", "coeffs": ["x"]}})
    with pytest.raises(ConfigError, match="t_min"):
        cli.RunConfig.from_dict({"task": {"t_min": 0.1, "t_max": 0.01}})
    with pytest.raises(ConfigError, match="task.k"):
        cli.RunConfig.from_dict({"task": {"k": 1}})


def test_flags_override_config_file(tmp_path):
    path = tmp_path / "cfg.json"
    path.write_text(json.dumps({"task": {"kmax": 40}, "seed": 1}))
    args = cli.build_parser().parse_args(["verify", "trig", "--config", str(path), "--kmax", "7"])
    cfg = cli.config_from_args(args)
    assert cfg.task["kmax"] == 7 and cfg.seed == 1
    out = tmp_path / "r.json"
    code, _ = run(["verify", "trig", "--config", str(path), "--kmax", "7", "--format", "json",
                   "--output", str(out)])
    assert code == 0
    data = json.loads(out.read_text())
    assert data["config"]["task"]["kmax"] == 7
    assert {c["params"]["kmax"] for c in data["checks"]} == {7}


def test_exit_code_config_errors(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert run(["verify", "trig", "--config", str(bad)])[0] == 2
    assert run(["verify", "trig", "--config", str(tmp_path / "missing.json")])[0] == 2
    assert run(["verify", "nosuch"])[0] == 2
    assert run(["verify", "b", "--profile", "poly_odd", "--coeffs", "1/0"])[0] == 2
    assert run(["verify", "trig", "--tol", "nonsense=1"])[0] == 2


def test_exit_code_infeasible():
    assert run(["verify", "b", "--t-min", "1e-9", "--t-max", "1e-8"])[0] == 3
    assert run(["verify", "b", "--phi", "pi/2", "--t-min", "0.01", "--t-max", "0.5"])[0] == 3


def test_exit_code_failing_checks():
    # an impossible tolerance makes every trig row fail
    assert run(["verify", "trig", "--kmax", "5", "--tol", "trig=0"])[0] == 1


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "cornerheat", "coeffs", "--k", "4"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert "corner k=4" in proc.stdout
