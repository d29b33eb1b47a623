import json
import subprocess
import sys
from pathlib import Path

import pytest

from pointedbraid.cli import COMMANDS, Flags, main, run
from pointedbraid.presentation import load_sample, parse_presentation, sample_dir

ROOT = Path(__file__).resolve().parents[1]
sys.path.insert(0, str(ROOT / "scripts"))
import regen_golden  # noqa: E402


def S(name) -> str:
    return str(sample_dir() / f"{name}.toml")


def _main(argv, capsys):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.mark.parametrize("case", regen_golden.CASES, ids=lambda c: regen_golden.case_name(*c)[:-5])
def test_golden(case):
    code, text = regen_golden.run_case(*case)
    expected = (regen_golden.GOLDEN / regen_golden.case_name(*case)).read_text(encoding="utf-8")
    assert text == expected
    assert code == {"pass": 0, "fail": 1, "undecided": 2, "error": 3}[json.loads(text)["status"]]


@pytest.mark.parametrize("command", [c for c in COMMANDS if c not in ("equiv", "double")])
def test_every_command_passes_on_e2_mixed(command, capsys):
    code, out, _ = _main([command, "--input", S("e2_mixed")], capsys)
    assert code == 0
    assert json.loads(out)["status"] == "pass"


def test_equiv_exit_codes(capsys):
    assert _main(["equiv", "--input", S("e2_zero"), "--against", S("e2_symplectic")], capsys)[0] == 1
    code, out, _ = _main(["equiv", "--input", S("e2_mixed"), "--against", S("e2_symplectic")], capsys)
    assert code == 0
    payload = json.loads(out)["payload"]
    assert payload["functoriality"]["status"] == "pass"
    assert payload["witness"]["f"] == [["1", "0"], ["0", "1/2"]]


def test_equiv_needs_against(capsys):
    code, out, err = _main(["equiv", "--input", S("e1")], capsys)
    assert code == 3
    assert "--against" in err


def test_undecided_exit_code(capsys):
    code, out, _ = _main(["verify-cqt", "--input", S("e3_mixed"), "--bound-dim", "4"], capsys)
    assert code == 2
    assert "undecided at bound" in json.loads(out)["payload"]["reason"]
    code, out, _ = _main(["equiv", "--input", S("z2cube_pair"), "--against", S("z2cube_pair"),
                          "--bound-group", "1"], capsys)
    assert code == 2


def test_input_error_exit_code(tmp_path, capsys):
    bad = tmp_path / "bad.toml"
    bad.write_text('[group]\ninvariants = [2]\n[r0]\ntable = [["-1"]]\n[[generator]]\ng = [1]\nchi = [0]\n')
    code, out, err = _main(["verify-hopf", "--input", str(bad)], capsys)
    assert code == 3
    assert "bad.toml:5:" in err
    assert json.loads(out)["status"] == "error"


def test_double_requires_self_duality(capsys):
    code, out, err = _main(["double", "--input", S("z4_single")], capsys)
    assert code == 3
    assert "self-duality required" in err


def test_report_all_skips_double_when_not_self_dual(capsys):
    code, out, _ = _main(["report-all", "--input", S("z4_single")], capsys)
    assert code == 0
    assert json.loads(out)["payload"]["double"]["status"] == "skipped"


def test_determinism_and_timing(capsys):
    argv = ["report-all", "--input", S("e2_mixed")]
    _, a, _ = _main(argv, capsys)
    _, b, _ = _main(argv, capsys)
    assert a == b
    _, c, _ = _main(argv + ["--timing"], capsys)
    da, dc = json.loads(a), json.loads(c)
    assert set(dc) - set(da) == {"timing_seconds"}
    dc.pop("timing_seconds")
    assert da == dc


def test_json_and_emit_outputs(tmp_path, capsys):
    out_json = tmp_path / "r.json"
    emitted = tmp_path / "d.toml"
    code, out, _ = _main(["double", "--input", S("e2_zero"), "--json", str(out_json), "--emit", str(emitted)], capsys)
    assert code == 0
    assert out_json.read_text() == out
    d = parse_presentation(emitted)
    assert d.n == 4
    code, _, _ = _main(["report-all", "--input", str(emitted)], capsys)
    assert code == 0


def test_normalize_emit_round_trip(tmp_path, capsys):
    emitted = tmp_path / "n.toml"
    _main(["normalize", "--input", S("e2_mixed"), "--emit", str(emitted)], capsys)
    p = parse_presentation(emitted)
    assert p.r1.to_strings() == [["0", "1/2"], ["-1/2", "0"]]


def test_seed_recorded(capsys):
    _, out, _ = _main(["h2inv", "--input", S("e1"), "--seed", "17"], capsys)
    assert json.loads(out)["seed"] == 17


def test_autbr_matrix_rejected(capsys):
    code, out, _ = _main(["autbr", "--input", S("e2_symplectic"), "--matrix", '[["2", "0"], ["0", "1"]]'], capsys)
    assert code == 0
    assert json.loads(out)["payload"]["stabilizer_test"]["accepted"] is False
    code, _, err = _main(["autbr", "--input", S("e2_symplectic"), "--matrix", "not json"], capsys)
    assert code == 3


def test_run_api():
    rep = run("cocycles", load_sample("e3_symmetric"), Flags())
    assert rep.status == "pass" and rep.payload["dimension"] == 6


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "pointedbraid.cli", "h2inv", "--input", S("e3_mixed")],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["payload"]["alt_dim"] == 3
