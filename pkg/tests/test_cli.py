import io
import json
import subprocess
import sys

import pytest

from subfieldlattice.cli import SCHEMA, read_result, run_cli
from subfieldlattice.polyarith import parse_poly


def cli(*argv):
    out = io.StringIO()
    code = run_cli(list(argv), out)
    return code, out.getvalue()


def test_prime_degree_text():
    code, text = cli("--poly", "x^3-2")
    assert code == 0
    assert "no subfields" in text and "LLL calls: 0" in text


def test_x4_plus_1_json_roundtrip():
    code, text = cli("--poly", "x^4+1", "--format", "json")
    assert code == 0
    doc = json.loads(text)
    assert doc["schema"] == SCHEMA and doc["lll_calls"] == 1
    assert len(doc["subfields"]) == 3
    f, subs = read_result(text)
    assert f == parse_poly("x^4+1") and len(subs) == 3


def test_read_result_rejects_tampering():
    _, text = cli("--poly", "x^4+1", "--format", "json")
    doc = json.loads(text)
    doc["subfields"][0]["g"] = [3, 0, 1]
    with pytest.raises(ValueError):
        read_result(json.dumps(doc))


def test_json_is_byte_identical():
    a = cli("--poly", "x^8-40*x^6+352*x^4-960*x^2+576", "--format", "json")
    b = cli("--poly", "x^8-40*x^6+352*x^4-960*x^2+576", "--format", "json")
    assert a == b and a[0] == 0


def test_poly_file(tmp_path):
    p = tmp_path / "f.txt"
    p.write_text("x^6+3\n")
    code, text = cli("--poly-file", str(p), "--mode", "generating-only")
    assert code == 0 and "x^6 + 3" in text


def test_f18_run():
    code, text = cli("--poly", "x^18+9*x^9+27", "--format", "json")
    assert code == 0
    doc = json.loads(text)
    assert sorted(s["degree"] for s in doc["subfields"]) == [2, 3, 6]
    assert doc["group"]["order"] == 559872


def test_starting_group_mode():
    code, text = cli("--poly", "x^8-40*x^6+352*x^4-960*x^2+576", "--mode", "starting-group", "--format", "json")
    assert code == 0
    assert json.loads(text)["starting_group"]["group"]["order"] == 8


def test_simulate_mode():
    code, text = cli("--mode", "simulate", "--group-spec", "c2^3-regular", "--format", "json")
    assert code == 0
    doc = json.loads(text)
    assert doc["oracle_calls"] <= 3


@pytest.mark.parametrize("argv,code", [
    (["--poly", "x^4-1"], 1),
    (["--poly", "x^^2"], 1),
    (["--poly-file", "/nonexistent/file"], 1),
    (["--mode", "simulate", "--group-spec", "nonsense"], 1),
    (["--poly", "x^4+1", "--precision-cap", "2"], 2),
])
def test_exit_codes(argv, code):
    assert cli(*argv)[0] == code


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "subfieldlattice", "--poly", "x^5-x-1"],
                       capture_output=True, text=True, timeout=120)
    assert r.returncode == 0 and "no subfields" in r.stdout
