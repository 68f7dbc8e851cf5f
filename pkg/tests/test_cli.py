import json
import warnings

import numpy as np
import pytest

from cqedlab import __version__
from cqedlab.cli import SCENARIOS, main, read_csv


def _run(args, tmp_path, name="out.csv"):
    out = tmp_path / name
    code = main(args + ["--output", str(out)])
    return code, out


def _write_config(tmp_path, doc, name="cfg.json"):
    path = tmp_path / name
    path.write_text(json.dumps(doc))
    return str(path)


def test_header_block_is_exact(tmp_path):
    code, out = _run(["rabi", "--rabi-g", "0.25", "--t-grid", "0", "1", "3"], tmp_path)
    assert code == 0
    lines = out.read_text().splitlines()
    assert lines[:6] == [
        f"# cqed-lab {__version__}",
        "# scenario: rabi",
        "# frequency_unit: 1.0",
        "# param: delta=0.0",
        "# param: gamma=0.0",
        "# param: rabi_g=0.25",
    ]
    assert lines[7] == "t,rho_gg"
    assert len(lines) == 11


@pytest.mark.parametrize("name", sorted(SCENARIOS))
def test_every_scenario_runs_and_is_deterministic(name, tmp_path):
    args = [name]
    if name == "eit":
        args += ["--delta-grid", "-1", "1", "11"]
    if name == "cpb-bands":
        args += ["--ng-grid", "0", "1", "11"]
    if name == "stirap":
        args += ["--n-times", "41"]
    c1, o1 = _run(args, tmp_path, "a.csv")
    c2, o2 = _run(args, tmp_path, "b.csv")
    assert c1 == c2 == 0
    assert o1.read_bytes() == o2.read_bytes()


@pytest.mark.parametrize("name", [n for n, s in SCENARIOS.items() if s.cross_check])
def test_cross_check_residuals_are_small(name, tmp_path):
    grids = {"eit": ["--delta-grid", "-2", "2", "9"], "polariton": ["--x-grid", "1", "3", "3"],
             "jc-dressed": ["--delta-grid", "-0.1", "0.1", "5"], "rabi": ["--t-grid", "0", "10", "11"],
             "susceptibility": ["--delta-grid", "-3", "3", "7"]}
    code, out = _run([name, "--cross-check", *grids[name]], tmp_path)
    assert code == 0
    _, cols, data = read_csv(out.read_text())
    res = data[:, [i for i, c in enumerate(cols) if c.startswith("residual")]]
    ref = data[:, [i for i, c in enumerate(cols) if c.startswith(("chi_", "rho_gg", "E_", "omega_21", "omega_43"))
                   and "numeric" not in c]]
    assert np.abs(res).max() <= 1e-2 * np.abs(ref).max()


def test_jobs_do_not_change_output(tmp_path):
    args = ["eit", "--cross-check", "--delta-grid", "-2", "2", "13"]
    _, a = _run(args + ["--jobs", "1"], tmp_path, "a.csv")
    _, b = _run(args + ["--jobs", "4"], tmp_path, "b.csv")
    assert a.read_bytes() == b.read_bytes()


def test_csv_round_trip(tmp_path):
    _, out = _run(["eit", "--delta-grid", "-5", "5", "41"], tmp_path)
    text = out.read_text()
    _, cols, data = read_csv(text)
    body = [ln for ln in text.splitlines() if not ln.startswith("#")][1:]
    for line, row in zip(body, data):
        assert ",".join(repr(float(v)) for v in row) == line
    assert cols == ["delta", "chi_re", "chi_im"]


def test_cpb_bands_three_ratios(tmp_path):
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        code, out = _run(["cpb-bands"], tmp_path)
    assert code == 0
    _, cols, data = read_csv(out.read_text())
    assert cols == ["ratio", "ng", "band", "energy"]
    assert sorted(set(data[:, 0])) == [1.0, 10.0, 50.0]
    assert len(data) == 3 * 201 * 3
    assert data[:, 3].min() == 0.0


def test_eit_transparency_dip(tmp_path):
    code, out = _run(["eit", "--omega-c", "0.2", "--gamma21", "0.001"], tmp_path)
    assert code == 0
    _, cols, data = read_csv(out.read_text())
    delta, im = data[:, 0], data[:, cols.index("chi_im")]
    centre = np.argmin(np.abs(delta))
    assert im[centre] < 0.1 * im.max()


def test_stirap_with_and_without_cd(tmp_path):
    _, plain = _run(["stirap", "--omega-p-peak", "2", "--omega-s-peak", "2"], tmp_path, "p.csv")
    _, cd = _run(["stirap", "--omega-p-peak", "2", "--omega-s-peak", "2", "--cd"], tmp_path, "c.csv")
    p = read_csv(plain.read_text())[2]
    c = read_csv(cd.read_text())[2]
    assert p[-1, 2] < 0.9 and c[-1, 2] > 0.999
    np.testing.assert_array_equal(p[:, 0], c[:, 0])


def test_config_file_and_flag_override(tmp_path):
    cfg = _write_config(tmp_path, {
        "scenario": "eit", "frequency_unit": 2.0,
        "parameters": {"omega_c": 0.5},
        "grid": {"delta": {"start": -1, "stop": 1, "count": 3}},
        "output": {"format": "json"},
    })
    out = tmp_path / "o.json"
    assert main(["eit", "--config", cfg, "--omega-c", "0.3", "--output", str(out)]) == 0
    doc = json.loads(out.read_text())
    assert doc["parameters"]["omega_c"] == 0.3
    assert doc["frequency_unit"] == 2.0
    assert doc["columns"] == ["delta", "chi_re", "chi_im"]
    assert len(doc["rows"]) == 3


def test_unknown_parameter_lists_accepted_keys(tmp_path, capsys):
    cfg = _write_config(tmp_path, {"scenario": "rabi", "parameters": {"omega": 1.0}})
    assert main(["rabi", "--config", cfg]) == 2
    err = capsys.readouterr().err
    assert "omega" in err and "['delta', 'gamma', 'rabi_g']" in err


@pytest.mark.parametrize("doc", [
    {"scenario": "rabi", "extra": 1},
    {"scenario": "rabi", "frequency_unit": -1.0},
    {"scenario": "rabi", "grid": {"t": {"start": 0, "stop": 1, "count": 1}}},
    {"scenario": "rabi", "grid": {"tau": {"start": 0, "stop": 1, "count": 5}}},
    {"scenario": "rabi", "output": {"format": "xml"}},
    {"scenario": "eit"},
])
def test_config_errors_exit_2(tmp_path, doc):
    assert main(["rabi", "--config", _write_config(tmp_path, doc)]) == 2


def test_parse_error_reports_position(tmp_path, capsys):
    path = tmp_path / "bad.json"
    path.write_text('{\n  "scenario": "rabi",\n  "parameters": {oops}\n}')
    assert main(["validate", str(path)]) == 2
    assert "line 3 column 18" in capsys.readouterr().err


def test_cross_check_needs_a_pair(tmp_path):
    assert _run(["lc", "--cross-check"], tmp_path)[0] == 2


def test_solver_error_exit_3(tmp_path, capsys):
    code, _ = _run(["susceptibility", "--gamma", "0"], tmp_path)
    assert code == 3
    assert "solver error" in capsys.readouterr().err


def test_physics_parameter_error_exit_2(tmp_path):
    assert _run(["lc", "--l=-1e-9"], tmp_path)[0] == 2


def _validate(tmp_path, capsys, doc):
    code = main(["validate", _write_config(tmp_path, doc)])
    return code, capsys.readouterr().out


def test_validate_dispersive_warning(tmp_path, capsys):
    code, out = _validate(tmp_path, capsys, {"scenario": "polariton",
                                             "parameters": {"omega_r": 7.0, "omega_q": 6.0, "g": 0.3}})
    assert code == 0
    assert "dispersive approximation unreliable" in out


def test_validate_nesting_window(tmp_path, capsys):
    code, out = _validate(tmp_path, capsys, {"scenario": "polariton",
                                             "grid": {"x": {"start": 0.5, "stop": 2.0, "count": 5}}})
    assert code == 0
    assert "nesting" in out and "5.9925" in out and "5.9975" in out
    code, out = _validate(tmp_path, capsys, {"scenario": "polariton",
                                             "grid": {"x": {"start": 1.5, "stop": 2.5, "count": 5}}})
    assert "warning" not in out


def test_validate_weak_probe(tmp_path, capsys):
    code, out = _validate(tmp_path, capsys, {"scenario": "eit", "parameters": {"omega_p": 0.1}})
    assert code == 0 and "weak-probe bound" in out


def test_validate_negative_rate_is_an_error(tmp_path, capsys):
    code, out = _validate(tmp_path, capsys, {"scenario": "eit", "parameters": {"gamma21": -0.1}})
    assert code == 2
    assert "error: decay rate gamma21" in out


def test_validate_clean_config(tmp_path, capsys):
    code, out = _validate(tmp_path, capsys, {"scenario": "stirap"})
    assert code == 0 and out.strip() == "ok"


CONFIG_DIR = __import__("pathlib").Path(__file__).resolve().parents[1] / "configs"


@pytest.mark.parametrize("path", sorted(CONFIG_DIR.glob("*.json")), ids=lambda p: p.stem)
def test_shipped_configs_validate_and_run(path, tmp_path, capsys):
    assert main(["validate", str(path)]) == 0
    assert "warning" not in capsys.readouterr().out
    doc = json.loads(path.read_text())
    assert main([doc["scenario"], "--config", str(path), "--output", str(tmp_path / "o.csv")]) == 0
