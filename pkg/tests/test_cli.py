import subprocess
import sys

import pytest

from mzeta.cli import COMMANDS, main, run
from mzeta.datasets import CORPUS_DIR

A = str(CORPUS_DIR / "example_A_2.json")
CUSP = str(CORPUS_DIR / "cusp.json")


def test_verify_example():
    result = run("verify", [A])
    assert result.code == 0
    assert result.stdout.splitlines()[-1] == "INVARIANT: equal"


def test_twisted_prints_function_of_s():
    result = run("twisted", ["--order", "2", CUSP])
    assert result.code == 0
    assert result.stdout == "(2*s + 3)/(6*s^2 + 11*s + 5)\n"


def test_missing_file():
    result = run("zeta", ["missing.json"])
    assert result.code == 2
    assert "missing.json" in result.stderr


def test_domain_error_exit_code():
    assert run("twisted", ["--order", "0", CUSP]).code == 1


def test_schema_error_exit_code(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text('{"ambient_dim": 1, "components": [{"id": "E1", "m": 0, "nu": 0}], "strata": []}')
    result = run("validate", [str(path)])
    assert result.code == 2
    assert "finite-type" in result.stdout
    assert run("zeta", [str(path)]).code == 2


def test_validate_ok():
    assert run("validate", [A]).stdout == "valid\n"


def test_higher_order_pole(tmp_path):
    path = tmp_path / "pole.json"
    path.write_text('{"ambient_dim": 2, "components": [{"id": "E1", "m": 1, "nu": 1},'
                    ' {"id": "E2", "m": 2, "nu": 2}],'
                    ' "strata": [{"components": ["E1", "E2"], "cover": "1", "geom": "1"}]}')
    result = run("stringy", [str(path)])
    assert result.code == 1 and "higher-order pole" in result.stderr


def test_poles_and_limit():
    out = run("poles", [CUSP]).stdout
    assert out.splitlines()[-1] == "s-poles: {-1, -5/6}"
    limit = run("limit", [A])
    assert limit.code == 0 and "LIMIT RELATION: holds" in limit.stdout


def test_selection_override():
    full = run("zeta", [A]).stdout
    only = run("zeta", ["--selection", "E2", A]).stdout
    assert "W1 * " in full and "W1 * " not in only
    assert run("zeta", ["--selection", "E9", A]).code == 2


def test_output_file(tmp_path):
    target = tmp_path / "out.txt"
    result = run("zeta", ["--output", str(target), A])
    assert result.code == 0 and result.stdout == ""
    assert target.read_text() == run("zeta", [A]).stdout


def test_blowup_output_is_a_document():
    from mzeta.io import parse_config

    doc = parse_config(run("blowup", [A]).stdout)
    assert "E*" in doc.config.by_id and doc.blowups == ()


def test_random_campaign():
    result = run("verify", ["--random", "20", "--seed", "3"])
    assert result.code == 0
    assert "corrupted nu_* detected: 20/20" in result.stdout
    assert result.stdout == run("verify", ["--random", "20", "--seed", "3", "--jobs", "2"]).stdout


@pytest.mark.parametrize("command", [c for c in COMMANDS if c != "twisted"])
def test_every_command_is_deterministic(command):
    args = [CUSP] if command not in ("verify", "blowup") else [A]
    first, second = run(command, args), run(command, args)
    assert first == second
    assert first.code == 0, first.stderr


def test_main_and_module_entry_point():
    assert main(["validate", A]) == 0
    assert main([]) == 2
    proc = subprocess.run([sys.executable, "-m", "mzeta", "verify", A],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and "INVARIANT: equal" in proc.stdout
