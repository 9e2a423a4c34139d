import json
import os
import subprocess
import sys

import pytest

from koenigs_shift import cli
from koenigs_shift.errors import ParseError, ValidationError

XLOG = {"command": "classify", "domain": {"type": "graph", "family": "xlog", "eps": 0.5}}
STEP_NONE = {"command": "classify", "domain": {"type": "step", "a": [0, 1], "b": [1]},
             "tail": {"type": "none"}}
SPEEDS = {"command": "speeds", "model": {"type": "halfplane"},
          "tGrid": {"start": 1, "stop": 1e4, "num": 100, "spacing": "log"}}


def config(obj):
    return json.dumps(obj).encode()


def run_cli(tmp_path, obj, *extra, name="cfg.json"):
    path = tmp_path / name
    path.write_bytes(config(obj))
    return subprocess.run([sys.executable, "-m", "koenigs_shift.cli", obj["command"],
                           "--config", str(path), *extra], capture_output=True, timeout=120)


def test_parse_examples():
    cfg = cli.parse_config(config(XLOG))
    assert cfg.command == "classify" and cfg.options["tol"] == 1e-8
    assert cfg.options["Jmax"] == 100_000 and cfg.options["Rmax"] == 1e4
    assert cli.parse_config(config(STEP_NONE)).options["tail"] == {"type": "none"}
    with pytest.raises(ValidationError) as info:
        cli.parse_config(config({"command": "classify",
                                 "domain": {"type": "step", "a": [1, 0], "b": [1]}}))
    assert info.value.key == "domain.a"


@pytest.mark.parametrize("bad,key", [
    ({**XLOG, "colour": 1}, "colour"),
    ({**XLOG, "domain": {"type": "graph", "family": "xlog", "eps": 0.5, "x": 1}}, "domain.x"),
    ({"command": "classify"}, "domain"),
    ({**XLOG, "tol": -1}, "tol"),
    ({**SPEEDS, "model": {"type": "disc"}}, "model.type"),
    ({"command": "fly"}, "command"),
])
def test_validation_names_the_key(bad, key):
    with pytest.raises(ValidationError) as info:
        cli.parse_config(config(bad))
    assert info.value.key == key


def test_parse_error_position():
    with pytest.raises(ParseError) as info:
        cli.parse_config(b'{"command": "classify",\n "domain": {"type": "halfplane"},}')
    assert info.value.line == 2 and info.value.column is not None
    with pytest.raises(ParseError):
        cli.parse_config(b"\xff\xfe")


def test_echo_round_trip():
    for obj in (XLOG, STEP_NONE, SPEEDS):
        cfg = cli.parse_config(config(obj))
        again = cli.parse_config(cli.to_json(cfg.echo()).encode())
        assert again == cfg


def test_run_classify_xlog_zero():
    cfg = cli.parse_config(config({**XLOG, "domain": {"type": "graph", "family": "xlog", "eps": 0}}))
    report, code = cli.run(cfg)
    assert code == 0 and report["result"].decision.value == "InfiniteShift"


def test_run_step_without_tail_exits_two(tmp_path):
    proc = run_cli(tmp_path, STEP_NONE)
    assert proc.returncode == 2
    assert json.loads(proc.stdout)["result"]["decision"] == "Inconclusive"


def test_speeds_csv_shape(tmp_path):
    proc = run_cli(tmp_path, SPEEDS, "--format", "csv")
    assert proc.returncode == 0
    text = proc.stdout.decode()
    lines = text.split("\n")
    assert lines[0] == "t,re,im,v,vO,vT,rho,theta"
    assert lines[-1] == "" and len(lines) - 2 == 100
    assert "\r" not in text
    assert all(len(line.split(",")) == 8 for line in lines[1:-1])


def test_csv_rejected_for_reports(tmp_path):
    proc = run_cli(tmp_path, XLOG, "--format", "csv")
    assert proc.returncode == 1
    assert json.loads(proc.stdout)["error"]["key"] == "format"


def test_error_payload_and_exit_code(tmp_path):
    proc = run_cli(tmp_path, {"command": "classify", "domain": {"type": "step", "a": [1, 0], "b": [1]}})
    assert proc.returncode == 1
    err = json.loads(proc.stdout)["error"]
    assert err["type"] == "ValidationError" and err["key"] == "domain.a"


def test_determinism(tmp_path):
    outputs = {run_cli(tmp_path, obj).stdout for obj in (XLOG, XLOG)}
    assert len(outputs) == 1
    tables = {run_cli(tmp_path, SPEEDS, "--format", "csv").stdout for _ in range(2)}
    assert len(tables) == 1


def test_out_is_written_atomically(tmp_path):
    out = tmp_path / "report.json"
    out.write_text("stale")
    proc = run_cli(tmp_path, SPEEDS, "--out", str(out))
    assert proc.returncode == 0 and proc.stdout == b""
    report = json.loads(out.read_text())
    assert report["command"] == "speeds" and len(report["result"]["rows"]) == 100
    assert sorted(os.listdir(tmp_path)) == ["cfg.json", "report.json"]


def test_float_format_and_sorted_keys():
    text = cli.to_json({"b": 0.1, "a": float("inf"), "c": [1, 2.5]})
    assert text == '{"a":"inf","b":0.10000000000000001,"c":[1,2.5]}'


def test_timing_flag_adds_wall_time(tmp_path):
    proc = run_cli(tmp_path, SPEEDS, "--timing")
    assert "wallTime" in json.loads(proc.stdout)
    assert "wallTime" not in json.loads(run_cli(tmp_path, SPEEDS).stdout)


@pytest.mark.parametrize("obj", [
    {"command": "eta", "domain": {"type": "step", "a": [0, 1, 2], "b": [1, 3]},
     "radii": [1.5, 2, 3]},
    {"command": "delta", "domain": {"type": "halfplane"}, "point": [1, 0],
     "tGrid": {"start": 1, "stop": 100, "num": 10, "spacing": "log"}},
    {"command": "series", "domain": {"type": "graph", "family": "xlog", "eps": 1}, "Jmax": 2000},
    {"command": "integral", "domain": {"type": "graph", "family": "xlog", "eps": 1}, "Rmax": 1000},
    {"command": "orbit", "model": {"type": "sector", "p": [1, 0], "alpha": 0.5}, "z": [0.2, 0.1],
     "tGrid": [0, 1, 2]},
])
def test_other_commands(obj):
    report, code = cli.run(cli.parse_config(config(obj)))
    assert code == 0
    json.loads(cli.render(report, "json"))
