import io
import json
import subprocess
import sys
from fractions import Fraction

import pytest

from massdual import (
    ClassFunction,
    MassPair,
    MonomialMatrix,
    Q,
    bhargava_masses,
    group_closure,
    group_to_json,
    kedlaya_masses,
    perm_from_cycles,
    resolution_to_json,
)
from massdual.cli import run
from massdual.stringy import builtin_resolution

F = Fraction


def run_cli(capsys, *argv):
    code = run(list(argv))
    out = capsys.readouterr().out
    return code, out


def test_formula_bhargava_json(capsys):
    code, out = run_cli(capsys, "formula", "bhargava", "--n", "3", "--report", "json")
    assert code == 0
    doc = json.loads(out)
    assert doc["strong"] is True
    assert MassPair.from_json(doc) == bhargava_masses(3)


def test_formula_text_output(capsys):
    code, out = run_cli(capsys, "formula", "kedlaya", "--n", "1")
    assert code == 0
    assert "mass_v = 1 + Q^-1" in out
    assert "mass_w = Q + 1" in out


def test_formula_eval_flag(capsys):
    code, out = run_cli(
        capsys, "formula", "kedlaya", "--n", "2", "--eval", "3", "1"
    )
    assert code == 0
    assert "mass_v(3,1) = 17/9" in out


def test_formula_hilbert(capsys):
    code, out = run_cli(capsys, "formula", "hilbert", "--n", "2", "--report", "json")
    assert code == 0
    doc = json.loads(out)
    assert ClassFunction.from_json(doc["hilb_plane"]) == Q**4 + Q**3
    assert ClassFunction.from_json(doc["fiber"]) == kedlaya_masses(2).mass_w


def test_profile_divergent_exit_code(capsys):
    code, out = run_cli(
        capsys, "profile", "--builtin", "quad_char2_sigma", "--n", "1",
        "--report", "json",
    )
    assert code == 3
    doc = json.loads(out)
    assert doc["divergent"] is True
    assert doc["reason"]


def test_profile_builtin_masses(capsys):
    code, out = run_cli(
        capsys, "profile", "--builtin", "quad_char2_upsilon", "--m", "1", "--n", "1",
        "--q-symbolic", "--report", "json",
    )
    assert code == 0
    masses = MassPair.from_json(json.loads(out))
    assert masses.mass_v == ClassFunction.constant(2)
    assert masses.mass_w == 2 * Q


def test_profile_from_scenario_file(tmp_path, capsys):
    inner = {
        "group_order": 1,
        "strata": [{"count": (Q + 1).to_json(), "v": "1/2", "w": "0"}],
        "families": [],
    }
    path = tmp_path / "profile.json"
    path.write_text(json.dumps({"kind": "profile", "payload": inner}))
    code, out = run_cli(capsys, "profile", "--file", str(path), "--report", "json")
    assert code == 0
    masses = MassPair.from_json(json.loads(out))
    assert masses.mass_v == (Q + 1) * ClassFunction.monomial(F(-1, 2))


def test_wrong_scenario_kind_is_an_input_error(tmp_path, capsys):
    path = tmp_path / "oops.json"
    path.write_text(json.dumps({"kind": "stringy", "payload": {}}))
    code = run(["profile", "--file", str(path)])
    assert code == 2
    assert "kind" in capsys.readouterr().err


def z3_group_file(tmp_path):
    z = perm_from_cycles(3, [[1, 2, 3]])
    group, rep = group_closure([z], [MonomialMatrix((0, 1), (1, 1), 3)])
    path = tmp_path / "z3.json"
    path.write_text(json.dumps(group_to_json(group, rep)))
    return path


def test_tame_subcommand(tmp_path, capsys):
    path = z3_group_file(tmp_path)
    code, out = run_cli(
        capsys, "tame", "--group", str(path), "--q", "7",
        "--check-involution", "--report", "json",
    )
    assert code == 0
    doc = json.loads(out)
    assert doc["involution"] is True
    masses = MassPair.from_json(doc)
    assert masses.mass_v == ClassFunction.poly({0: 1, F(-2, 3): 1, F(-4, 3): 1})


def test_tame_threads_do_not_change_bytes(tmp_path, capsys):
    path = z3_group_file(tmp_path)
    base = run_cli(capsys, "tame", "--group", str(path), "--q", "2", "--report", "json")
    threaded = run_cli(
        capsys, "tame", "--group", str(path), "--q", "2", "--threads", "3",
        "--report", "json",
    )
    assert base == threaded
    assert base[0] == 0


def test_tame_not_tame_is_input_error(tmp_path, capsys):
    path = z3_group_file(tmp_path)
    code = run(["tame", "--group", str(path), "--q", "3"])
    assert code == 2
    assert "divides" in capsys.readouterr().err


def test_repeat_runs_are_byte_identical(capsys):
    a = run_cli(capsys, "formula", "bhargava", "--n", "7", "--report", "json")
    b = run_cli(capsys, "formula", "bhargava", "--n", "7", "--report", "json")
    assert a == b


def test_stringy_builtin_checks(capsys):
    code, out = run_cli(
        capsys, "stringy", "--builtin", "a1_cone", "--check-gm", "--d", "2",
        "--report", "json",
    )
    assert code == 0
    doc = json.loads(out)
    assert doc["gm"] is True
    assert ClassFunction.from_json(doc["count_total"]) == Q**2 + Q


def test_stringy_failed_check_exits_1(capsys):
    # the cone itself is not proper, so its total count is not palindromic
    code, out = run_cli(
        capsys, "stringy", "--builtin", "a1_cone",
        "--check-poincare", "--check-gm", "--d", "2", "--report", "json",
    )
    assert code == 1
    doc = json.loads(out)
    assert doc["poincare"] is False
    assert doc["gm"] is True


def test_stringy_single_file(tmp_path, capsys):
    data = builtin_resolution("a1_cone")["total"]
    path = tmp_path / "res.json"
    path.write_text(json.dumps(resolution_to_json(data)))
    code, out = run_cli(capsys, "stringy", "--file", str(path), "--report", "json")
    assert code == 0
    assert ClassFunction.from_json(json.loads(out)["count_total"]) == Q**2 + Q


def test_stringy_divergent_file(tmp_path, capsys):
    doc = {
        "dim": 2,
        "mode": "open",
        "horizontal": [{"c": "-1"}],
        "strata": {"[1]": (Q + 1).to_json()},
    }
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(doc))
    code, out = run_cli(capsys, "stringy", "--file", str(path))
    assert code == 3
    assert "divergent" in out


def test_stringy_gm_needs_origin(tmp_path, capsys):
    data = builtin_resolution("a1_cone")["total"]
    path = tmp_path / "res.json"
    path.write_text(json.dumps(resolution_to_json(data)))
    code = run(["stringy", "--file", str(path), "--check-gm", "--d", "2"])
    assert code == 2
    assert "origin" in capsys.readouterr().err


def test_duality_pipeline_via_stdin(capsys, monkeypatch):
    code, piped = run_cli(
        capsys, "formula", "bhargava", "--n", "4", "--report", "json"
    )
    assert code == 0
    monkeypatch.setattr(sys, "stdin", io.StringIO(piped))
    code, out = run_cli(capsys, "duality", "--mv", "-", "--mw", "-", "--d", "8")
    assert code == 0
    assert "strong = True" in out
    assert "weak = True" in out


def test_duality_failure_exit_code(tmp_path, capsys):
    mv = tmp_path / "mv.json"
    mw = tmp_path / "mw.json"
    mv.write_text(json.dumps(ClassFunction.constant(2).to_json()))
    mw.write_text(json.dumps((2 * Q).to_json()))
    code, out = run_cli(
        capsys, "duality", "--mv", str(mv), "--mw", str(mw), "--d", "4",
        "--report", "json",
    )
    assert code == 1
    doc = json.loads(out)
    assert doc["strong"] is False and doc["weak"] is False
    residual = ClassFunction.from_json(doc["weak_residual"])
    assert residual == 2 * Q**4 - 2 * Q**3 - 2 * Q + 2


def test_duality_infinite_mass_exits_3(tmp_path, capsys):
    mv = tmp_path / "mv.json"
    mv.write_text(json.dumps({"mass_v": "infinite", "mass_w": "infinite"}))
    code, out = run_cli(
        capsys, "duality", "--mv", str(mv), "--mw", str(mv), "--d", "2"
    )
    assert code == 3
    assert "divergent" in out


def test_verify_suite(capsys):
    code, out = run_cli(capsys, "verify", "--suite", "partitions")
    assert code == 0
    lines = [line for line in out.splitlines() if line.strip()]
    assert len(lines) == 2
    assert all(line.startswith("PASS") for line in lines)


def test_verify_suite_json(capsys):
    code, out = run_cli(capsys, "verify", "--suite", "stringy", "--report", "json")
    assert code == 0
    doc = json.loads(out)
    assert doc["suite"] == "stringy"
    assert all(entry["passed"] for entry in doc["results"])


def test_usage_errors_exit_2(capsys):
    assert run(["formula", "bhargava"]) == 2  # missing --n
    capsys.readouterr()
    assert run(["no-such-command"]) == 2
    capsys.readouterr()
    assert run(["verify", "--suite", "bogus"]) == 2
    capsys.readouterr()
    assert run(["profile", "--builtin", "quad_char0_sigma"]) == 2  # missing n
    capsys.readouterr()
    assert run(["tame", "--group", "/nonexistent.json", "--q", "3"]) == 2
    capsys.readouterr()


def test_console_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "massdual.cli", "formula", "bhargava", "--n", "2"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert "mass_v = 1 + Q^-1" in proc.stdout
