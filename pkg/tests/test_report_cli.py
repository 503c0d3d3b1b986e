import json

import pytest

from miop import cli, report
from miop.exact_core import Poly
from miop.report import ConfigError, dumps, emit, load_report, parse_config, run

BASE = {
    "model": "mp",
    "parameters": {"a": 2, "circle": [3, 4, 5]},
    "index_set": [2],
    "y_poly": ["1"],
    "n_max": 5,
}


def _cfg(**changes):
    cfg = dict(BASE)
    cfg.update(changes)
    return cfg


def _suite(rep, name):
    return next(s for s in rep["suites"] if s["name"] == name)


# -- configuration -----------------------------------------------------------------


@pytest.mark.parametrize(
    "bad",
    [
        "not a dict",
        _cfg(model="xx"),
        _cfg(extra=1),
        _cfg(parameters={"a": 2, "phi": 1}),
        _cfg(parameters={"a": 2.5}),
        _cfg(parameters={"a": 2, "circle": [1, 1, 1]}),
        _cfg(index_set=[1, 1]),
        _cfg(index_set=[-1]),
        _cfg(y_poly=[]),
        _cfg(y_poly=["0"]),
        _cfg(y_poly=["x"]),
        _cfg(n_max=-1),
        _cfg(n_max=True),
        _cfg(suites=["bogus"]),
        {"model": "ch", "parameters": {"a1": "1+i"}},
        {"model": "ch", "parameters": {"a1": "1+i", "a2": 2}, "index_set": [1]},
        {"model": "ch", "parameters": {"a1": {"re": 1, "imag": 2}, "a2": 2}},
    ],
)
def test_config_errors(bad):
    with pytest.raises(ConfigError):
        parse_config(bad)


def test_config_parsing():
    cfg = parse_config(_cfg(suites=["zeros", "rr-const"], parameters={"a": "5/2", "circle": [5, 12, 13]}))
    assert cfg.suites == ("rr-const", "zeros")
    assert cfg.params.a == report.Fraction(5, 2)
    ch = parse_config({"model": "ch", "parameters": {"a1": {"re": 3, "im": 1}, "a2": "7/4"},
                       "index_set": {"typeI": [1], "typeII": []}})
    assert ch.params.a1 == report.as_gaussian("3+i")
    assert ch.D.first == (1,)


# -- runs ---------------------------------------------------------------------------


def test_empty_suite_list():
    rep = run(parse_config(_cfg()))
    assert rep["suites"] == [] and rep["config"] == BASE
    assert rep["version"] == report.SCHEMA_VERSION


def test_rr_const_report_contains_known_coefficient():
    rep = run(parse_config(_cfg(suites=["rr-const"], n_max=8)))
    body = _suite(rep, "rr-const")
    assert body["status"] == "pass"
    assert {"n": 0, "k": 3, "r": "5/24"} in body["cases"]
    assert {"n": 3, "k": -3, "r": "50/3"} in body["cases"]


def test_empty_set_passes_everything():
    rep = run(parse_config(_cfg(index_set=[], suites=[s for s in report.SUITES if s != "golden"])))
    assert all(s["status"] == "pass" for s in rep["suites"]), [(s["name"], s["status"]) for s in rep["suites"]]


def test_non_orthogonal_set():
    rep = run(parse_config(_cfg(index_set=[1], suites=["rr-var", "rr-const", "ortho", "zeros"])))
    status = {s["name"]: s["status"] for s in rep["suites"]}
    assert status == {"rr-var": "pass", "rr-const": "pass", "ortho": "skipped", "zeros": "observed"}


def test_report_is_deterministic_apart_from_timing():
    cfg = parse_config(_cfg(suites=["construct", "rr-const", "fit-iz"]))
    a, b = run(cfg), run(cfg)
    a.pop("timing"), b.pop("timing")
    assert dumps(a) == dumps(b)


def test_emit_round_trip(tmp_path):
    rep = run(parse_config(_cfg(suites=["rr-var", "fit-iz"])))
    path = tmp_path / "r.json"
    emit(rep, path)
    assert load_report(path) == json.loads(dumps(rep))


def test_failure_payload_from_corrupted_X(monkeypatch):
    monkeypatch.setattr(report, "build_X", lambda system, Y: Poly.x())
    rep = run(parse_config(_cfg(suites=["rr-const"])))
    body = _suite(rep, "rr-const")
    assert body["status"] == "fail"
    fail = body["residual_failures"][0]
    assert set(fail) == {"n", "residual"} and fail["residual"]


def test_degenerate_point_reports_error():
    rep = run(parse_config(_cfg(index_set=[3], suites=["construct"])))
    body = _suite(rep, "construct")
    assert body["status"] == "error" and "ConstructionError" in body["error"]


def test_golden_suite():
    body = report.golden_suite()
    assert body["status"] == "pass"


# -- command line -----------------------------------------------------------------


def test_cli_suite_to_stdout(capsys):
    assert cli.main(["rr-const", "--a", "2", "--circle", "3,4,5", "--d", "2", "--nmax", "4"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert _suite(out, "rr-const")["status"] == "pass"


def test_cli_ch_and_out_file(tmp_path):
    out = tmp_path / "ch.json"
    code = cli.main(["construct", "--model", "ch", "--a1", "3+i", "--a2", "7/4", "--d1", "1", "--nmax", "3", "--out", str(out)])
    assert code == 0
    assert _suite(load_report(out), "construct")["status"] == "pass"


def test_cli_run_config(tmp_path, capsys):
    path = tmp_path / "cfg.json"
    path.write_text(json.dumps(_cfg(suites=["rr-var"])))
    assert cli.main(["run", "--config", str(path)]) == 0
    assert _suite(json.loads(capsys.readouterr().out), "rr-var")["status"] == "pass"


def test_cli_errors(tmp_path, capsys):
    assert cli.main(["construct", "--model", "ch", "--a1", "1"]) == 2
    assert cli.main(["construct", "--a", "abc"]) == 2
    assert cli.main(["run", "--config", str(tmp_path / "missing.json")]) == 2
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"model": "mp", "oops": 1}))
    assert cli.main(["run", "--config", str(bad)]) == 2
    assert "error" in capsys.readouterr().err


def test_cli_golden(capsys):
    assert cli.main(["golden"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["suites"][0]["status"] == "pass"
