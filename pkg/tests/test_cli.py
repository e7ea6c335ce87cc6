import json
import subprocess
import sys

import pytest

from su3fr import catalog as C
from su3fr import engine as En
from su3fr.cli import main


def run(*args, env=None):
    return subprocess.run([sys.executable, "-m", "su3fr.cli", *args], capture_output=True, text=True, env=env)


def test_group_report(capsys):
    assert main(["group", "--name", "fr162x4", "--json"]) == 0
    rep = json.loads(capsys.readouterr().out)
    assert rep["order"] == 648 and rep["two_sylow_type"] == "D4"
    assert rep["sylow"]["2"]["count"] == 9 and rep["sylow"]["3"]["count"] == 4
    syl3 = next(s for s in rep["subgroups"] if s["subgroup"] == "sylows.3")
    assert syl3 == {"subgroup": "sylows.3", "order": 324, "index": 2, "normal": True}


def test_group_sigma(capsys):
    assert main(["group", "--name", "sigma216x3"]) == 0
    out = capsys.readouterr().out
    assert "order\t648" in out and "two_sylow_type\tQ8" in out


def test_group_from_generator_file(tmp_path, capsys):
    path = tmp_path / "gens.json"
    path.write_text(json.dumps([m.to_json() for m in C.c_group(9, 1, 1).generators]))
    assert main(["group", "--gens", str(path), "--json"]) == 0
    assert json.loads(capsys.readouterr().out)["order"] == 81


@pytest.mark.parametrize("argv", [
    ["group", "--name", "nope"],
    ["verify", "--suite", "eq999"],
    ["group", "--name", "fr162", "--conductor", "7"],
    ["group", "--name", "fr162", "--cap", "0"],
    ["import", "/nonexistent/file.json"],
])
def test_usage_errors(argv, capsys):
    assert main(argv) == 2
    assert "error" in capsys.readouterr().err


def test_argparse_errors_exit_2():
    assert run("group").returncode == 2
    assert run("frobnicate").returncode == 2


def test_cap_exit_code(monkeypatch, capsys):
    assert main(["group", "--name", "fr162x4", "--cap", "100"]) == 1
    monkeypatch.setenv("SU3_CAP", "50")
    assert main(["group", "--name", "fr162"]) == 1


def test_verify_exit_codes(capsys):
    assert main(["verify", "--suite", "thm1.order"]) == 0
    out = capsys.readouterr().out
    assert out.startswith("thm1.order\tpass") and out.endswith("# 1/1 passed\n")
    assert main(["verify", "--suite", "thm14.iii"]) == 1


def test_verify_output_is_deterministic():
    a = run("verify", "--suite", "thm1")
    b = run("verify", "--suite", "thm1")
    assert a.returncode == 0 and a.stdout == b.stdout


def test_export_import_round_trip(tmp_path, capsys):
    path = tmp_path / "fr162.json"
    assert main(["export", "--name", "fr162", "--out", str(path)]) == 0
    assert json.loads(path.read_text())["order"] == 162
    assert main(["import", str(path)]) == 0
    assert "valid\tyes" in capsys.readouterr().out


def test_import_rejects_bad_files(tmp_path, capsys):
    bad = tmp_path / "empty.json"
    bad.write_text("{}")
    assert main(["import", str(bad)]) == 2
    data = En.group_to_json(En.generate(C.c_group(2, 0, 1).generators, name="c2"))
    data["elements"][3] = data["elements"][0]
    broken = tmp_path / "broken.json"
    broken.write_text(json.dumps(data))
    assert main(["import", str(broken)]) == 1
    assert "invariant failure" in capsys.readouterr().err


def test_catalog_list(capsys):
    assert main(["catalog", "list", "--json"]) == 0
    sets = json.loads(capsys.readouterr().out)
    assert [s["name"] for s in sets] == list(C.STANDARD_NAMES)
    assert all(s["generators"] for s in sets)


def test_fusion_commands(capsys):
    assert main(["fusion", "--derive-fum"]) == 0
    assert "equals_fum\tyes" in capsys.readouterr().out
    assert main(["fusion", "--symbols"]) == 0
    out = capsys.readouterr().out
    assert "tet[2 2 2; 2 2 2]\t0\t" in out and "Delta(1)" in out
