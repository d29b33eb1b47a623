"""Regenerate the CLI golden reports in tests/golden/.

Run after an intentional change to a report format:

    python scripts/regen_golden.py
"""
import contextlib
import io
import sys

from pathlib import Path

from pointedbraid.cli import main
from pointedbraid.presentation import sample_dir

ROOT = Path(__file__).resolve().parents[1]
GOLDEN = ROOT / "tests" / "golden"

# (command, sample, extra argv)
CASES = [
    ("verify-hopf", "e2_symplectic", []),
    ("build-rform", "z4_pair", []),
    ("verify-cqt", "e2_mixed", ["--mode", "h1"]),
    ("braid", "z2z2_pair", []),
    ("ribbon", "z2z2_single", []),
    ("sym-center", "e3_mixed", []),
    ("normalize", "e2_mixed", []),
    ("equiv", "e2_zero", ["--against", "e2_symplectic"]),
    ("equiv", "e2_mixed", ["--against", "e2_symplectic"]),
    ("cocycles", "z4_pair", []),
    ("h2inv", "z2cube_pair", []),
    ("autbr", "e2_symplectic", ["--matrix", '[["1", "1"], ["0", "1"]]']),
    ("double", "e1", []),
    ("double", "z4_single", []),
] + [("report-all", name, []) for name in sorted(p.stem for p in sample_dir().glob("*.toml"))]


def case_name(command, sample, extra) -> str:
    tag = "_".join(x for x in extra if not x.startswith("-") and not x.startswith("["))
    return f"{command}__{sample}" + (f"__{tag}" if tag else "") + ".json"


def argv_for(command, sample, extra) -> list:
    out = [command, "--input", str(sample_dir() / f"{sample}.toml")]
    it = iter(extra)
    for x in it:
        if x == "--against":
            out += [x, str(sample_dir() / f"{next(it)}.toml")]
        else:
            out.append(x)
    return out


def run_case(command, sample, extra) -> tuple:
    buf = io.StringIO()
    with contextlib.redirect_stdout(buf):
        with contextlib.redirect_stderr(io.StringIO()):
            code = main(argv_for(command, sample, extra))
    return code, buf.getvalue()


def regen() -> None:
    GOLDEN.mkdir(parents=True, exist_ok=True)
    for case in CASES:
        code, text = run_case(*case)
        (GOLDEN / case_name(*case)).write_text(text, encoding="utf-8")
        print(f"{case_name(*case)}: exit {code}")


if __name__ == "__main__":
    sys.exit(regen())
