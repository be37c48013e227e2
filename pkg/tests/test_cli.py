import csv
import io
import json
import os
import subprocess
import sys

import pytest

from taperqpe.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out


def test_design_dpss_json(capsys):
    code, out = run(capsys, "design", "--ell", "3", "--m", "3", "--taper", "dpss")
    obj = json.loads(out)
    assert code == 0 and obj["N"] == 64 and len(obj["re"]) == 64


def test_design_tophat_equal_entries(capsys):
    _, out = run(capsys, "design", "--taper", "tophat")
    re = json.loads(out)["re"]
    assert max(re) == pytest.approx(min(re))


def test_design_csv_several(capsys, tmp_path):
    path = tmp_path / "d.csv"
    code = main(["design", "--taper", "sine", "--taper", "cosine", "--format", "csv", "--out", str(path)])
    assert code == 0
    assert path.read_text().splitlines()[0] == "kind,x,sine,cosine"


def test_unknown_taper_exit_2():
    with pytest.raises(SystemExit) as info:
        main(["design", "--taper", "kaiser"])
    assert info.value.code == 2


def test_bad_grid_exit_1(capsys):
    code, _ = run(capsys, "design", "--ell", "0")
    assert code == 1


def sweep_rows(out):
    return list(csv.DictReader(io.StringIO(out)))


def test_sweep_small_window_shape(capsys):
    _, out = run(capsys, "sweep", "--ell", "3", "--m", "1", "--K", "0",
                 "--taper", "tophat", "--taper", "sine", "--taper", "dpss", "--points", "11")
    rows = sweep_rows(out)
    assert float(rows[0]["tophat"]) == pytest.approx(1)
    assert float(rows[-1]["sine"]) > float(rows[-1]["tophat"])


def test_sweep_n32_endpoints(capsys):
    _, out = run(capsys, "sweep", "--ell", "5", "--m", "0", "--measure", "nearest", "--range", "full",
                 "--taper", "tophat", "--taper", "sine", "--taper", "cosine", "--taper", "dpss")
    last = sweep_rows(out)[-1]
    assert float(last["sine"]) == pytest.approx(0.5, abs=1e-10)
    assert float(last["cosine"]) == pytest.approx(0.5, abs=1e-10)


def test_sweep_deterministic(tmp_path):
    paths = [tmp_path / "a.csv", tmp_path / "b.csv"]
    for i, p in enumerate(paths):
        main(["sweep", "--measure", "all", "--threads", str(1 + 3 * i), "--out", str(p)])
    assert paths[0].read_bytes() == paths[1].read_bytes()


def test_sweep_json(capsys):
    _, out = run(capsys, "sweep", "--format", "json", "--points", "3", "--taper", "tophat")
    rows = json.loads(out)
    assert len(rows) == 3 and set(rows[0]) == {"Delta", "tophat"}


def test_bounds_goldens(capsys):
    code, out = run(capsys, "bounds", "--eps", "0.1")
    vals = {r["name"]: r["value"] for r in json.loads(out)}
    assert code == 0
    assert vals["required_m_nonasymptotic"] == 14 and vals["cleve_m"] == 3


def test_bounds_with_register(capsys):
    _, out = run(capsys, "bounds", "--eps", "0.01", "--N", "64", "--K", "3")
    names = [r["name"] for r in json.loads(out)]
    assert "karnik_lower_bound" in names and "required_m_zhu" in names


def test_simulate_sums_to_one(capsys):
    _, out = run(capsys, "simulate", "--ell", "3", "--m", "2", "--theta", "0.3", "--taper", "dpss")
    obj = json.loads(out)
    assert obj["total"] == pytest.approx(1, abs=1e-10)
    assert len(obj["distribution"]) == 32


def test_simulate_shots_need_seed_for_repeat(capsys):
    argv = ["simulate", "--theta", "0.1", "--theta", "0.6", "--shots", "50", "--seed", "3"]
    _, a = run(capsys, *argv)
    _, b = run(capsys, *argv)
    assert json.loads(a)["shots"] == json.loads(b)["shots"]


def test_prep_json_and_csv(capsys):
    _, out = run(capsys, "prep", "--ell", "3", "--m", "3", "--nprime", "7")
    rep = json.loads(out)
    assert rep["N_prime"] == 7 and rep["distance"] < 1e-3
    _, out = run(capsys, "prep", "--ell", "3", "--m", "3", "--nprime", "7", "--format", "csv")
    assert out.splitlines()[0] == "bin,exact,approx" and len(out.splitlines()) == 65


def test_prep_even_count_fails(capsys):
    code, _ = run(capsys, "prep", "--nprime", "6")
    assert code == 1


def test_verify_quick(capsys):
    code, out = run(capsys, "verify", "--quick")
    assert code == 0
    assert out.count("PASS") >= 20 and "FAIL" not in out


def test_verify_failure_exit(monkeypatch, capsys):
    from taperqpe import checks
    monkeypatch.setattr(checks, "check_goldens", lambda: (False, "forced"))
    code, out = run(capsys, "verify", "--quick")
    assert code == 1 and "FAIL  bound goldens" in out


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "taperqpe", "bounds", "--eps", "0.5"],
                          capture_output=True, text=True, env={**os.environ, "TAPERQPE_LOG": "info"})
    assert proc.returncode == 0
    assert json.loads(proc.stdout)[0]["value"] >= 2
    bad = subprocess.run([sys.executable, "-m", "taperqpe", "nope"], capture_output=True, text=True)
    assert bad.returncode == 2
