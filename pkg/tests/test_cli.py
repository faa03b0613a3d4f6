import json
import subprocess
import sys

import pytest

from repfield.cli import main

MORD = ('{"n": 4, "modulus": 4, "classes": [0, 2, 3], "is_group": false, "generated": [0, 1, 2, 3], '
        '"stabilizer": [0], "certified": true, "depth": 1}')


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_image_golden(capsys):
    code, out, _ = run(capsys, "image", "mord.order")
    assert code == 0
    assert out.strip() == MORD


@pytest.mark.parametrize("fixture,classes", [
    ("eichler3.order", [0, 2]), ("maximal4.order", [0]), ("full3.order", [0]), ("block4.order", [0, 2]),
])
def test_image_fixtures(capsys, fixture, classes):
    code, out, _ = run(capsys, "image", fixture)
    assert code == 0 and json.loads(out)["classes"] == classes


def test_image_out_file_and_byte_stability(capsys, tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    run(capsys, "image", "eichler3.order", "--out", str(a))
    run(capsys, "image", "eichler3.order", "--out", str(b))
    assert a.read_bytes() == b.read_bytes()
    assert json.loads(a.read_text())["classes"] == [0, 2]


def test_residual(capsys):
    code, out, _ = run(capsys, "residual", "mord.order")
    assert code == 0
    assert json.loads(out) == {"n": 4, "p": 2, "d": 1, "dimension": 5, "dims": [1, 2], "t": 1, "uniform": False}
    code, out, _ = run(capsys, "residual", "mord.order", "--ext-degree", "2")
    assert json.loads(out)["dims"] == [1]


def test_scenario(capsys):
    code, out, _ = run(capsys, "scenario", "thm3.scenario")
    d = json.loads(out)
    assert code == 0 and d["defined"] is False and d["upper_field"] == [4] and d["lower_field"] == []
    code, out, _ = run(capsys, "scenario", "tinvariant.scenario")
    assert json.loads(out) == {"group": [4], "lower": [[0], [2]], "lower_field": [2]}


@pytest.mark.parametrize("argv", [
    ["image", "/no/such/file.order"],
    ["image", "mord.order", "--depth", "5"],
    ["image", "mord.order", "--cap", "10"],
    ["residual", "mord.order", "--ext-degree", "9"],
])
def test_config_errors_exit_1(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 1 and "config error" in err


def test_usage_error_exits_1(capsys):
    with pytest.raises(SystemExit) as e:
        main(["frobnicate"])
    assert e.value.code == 1


def test_resource_exit_2(capsys):
    code, _, err = run(capsys, "image", "mord3.order", "--cap", "256")
    assert code == 2 and err


def test_verify_single_case(capsys, tmp_path):
    out = tmp_path / "v.json"
    code, text, err = run(capsys, "verify-paper", "--case", "mord", "--out", str(out))
    assert code == 0 and "PASS" in err
    assert json.loads(out.read_text())["passed"] == 1


def test_console_script_entry():
    r = subprocess.run([sys.executable, "-m", "repfield.cli", "image", "mord.order"],
                       capture_output=True, text=True, check=False)
    assert r.returncode == 0 and r.stdout.strip() == MORD
