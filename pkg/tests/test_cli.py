import io
import json
import os
import subprocess
import sys

import pytest

from genkoszul.cli import main
from cli_corpus import CORPUS, fx

SRC = os.path.join(os.path.dirname(__file__), "..", "src")


def run(argv, stdin_text=None):
    out = io.StringIO()
    code = main(argv, stdin=io.StringIO(stdin_text or ""), stdout=out)
    return code, out.getvalue()


def run_json(argv, stdin_text=None):
    code, text = run(argv + ["--json"], stdin_text)
    return code, json.loads(text)


@pytest.mark.parametrize("argv,expected", CORPUS, ids=[" ".join(a[:1] + a[2:]) for a, _ in CORPUS])
def test_corpus_exit_codes_and_round_trip(argv, expected, tmp_path):
    code, cert = run_json(argv)
    assert code == expected, cert
    assert all("identity" in c and c["status"] in ("pass", "fail") for c in cert["checks"])
    assert (cert["status"] == "pass") == (expected == 0)
    path = tmp_path / "cert.json"
    path.write_text(json.dumps(cert))
    vcode, vcert = run_json(["verify", str(path)])
    # a certificate reproduces itself; failing certificates reproduce their failure
    assert vcert["checks"][0]["status"] == "pass" and vcert["checks"][1]["status"] == "pass"
    assert vcode == expected


def test_be_check_rows():
    code, cert = run_json(["be-check", fx("koszul_xy.json"), "--name", "K"])
    assert code == 0
    assert cert["result"]["rows"] == [{"i": 1, "r": 1, "grade": 2}, {"i": 2, "r": 1, "grade": 2}]


def test_broken_square_names_indices():
    code, cert = run_json(["validate-cube", fx("broken_cube.json")])
    assert code == 1
    assert cert["result"]["violation"] == {"kind": "non-commuting square", "T": "11", "j": 1, "k": 2}
    assert "T={1,2}, j=1, k=2" in cert["checks"][0]["witness"]


def test_resolve_reproduces_worked_cube():
    code, cert = run_json(["resolve-wt2", fx("wt2_modules.json"), "--f", "f", "--g", "g", "--module", "Mxy"])
    assert code == 0
    b = cert["result"]["cube"]["boundaries"]
    assert b["10:1"] == [["x", "0"], ["0", "1"]]
    assert b["11:1"] == [["1", "0"], ["0", "x"]]
    assert b["01:2"] == [["0", "y"], ["1", "1"]]
    assert b["11:2"] == [["0", "y"], ["1", "x"]]
    dets = [c for c in cert["checks"] if c["identity"].startswith("det Ubar")]
    assert dets[0]["witness"] == "det Ubar = -y"


def test_certificate_cube_revalidates(tmp_path):
    _, cert = run_json(["resolve-wt2", fx("graded_cube.json"), "--f", "f", "--g", "g", "--module", "M"])
    doc = {"ring": cert["ring"], "cubes": {"c": cert["result"]["cube"]}, "sequences": {"fg": ["x", "y"]}}
    code, text = run(["validate-cube", "-", "--sequence", "fg"], json.dumps(doc))
    assert code == 0, text
    code, _ = run(["spherical", "-", "--n", "0"], json.dumps(doc))
    assert code == 0


def test_stdin_input():
    doc = json.dumps({"ring": {"variables": ["x", "y"]}, "sequences": {"s": ["x+y", "x-y"]}})
    code, cert = run_json(["gb", "-"], doc)
    assert code == 0 and cert["result"]["basis"] == ["x", "y"]


@pytest.mark.parametrize("doc", [
    "not json",
    json.dumps([1, 2]),
    json.dumps({"sequences": {}}),
    json.dumps({"ring": {"variables": ["x"]}, "sequences": {"s": ["x+"]}}),
    json.dumps({"ring": {"variables": ["x"]}, "matrices": {"A": [["x"], ["x", "1"]]}}),
    json.dumps({"ring": {"variables": ["x"]}, "cubes": {"c": {"dims": [1], "ranks": {"0": 1}}}}),
])
def test_parse_errors_exit_2(doc):
    code, text = run(["gb", "-"], doc)
    assert code == 2
    assert text.startswith("input error")


def test_missing_object_exit_2():
    code, _ = run(["resolve-wt2", fx("wt2_modules.json"), "--f", "f", "--g", "g", "--module", "nope"])
    assert code == 2
    code, _ = run(["resolve-wt2", fx("wt2_modules.json"), "--module", "Mxy"])
    assert code == 2


def test_unknown_command_exit_2():
    code, _ = run(["frobnicate", fx("koszul_xy.json")])
    assert code == 2


def test_human_readable_lists_checks():
    code, text = run(["be-check", fx("koszul_xy.json"), "--name", "K"])
    assert code == 0
    assert "PASS  grade I_1(d_1) >= 1  (r=1, grade=2)" in text
    assert text.rstrip().endswith("status: pass")


def test_tampered_certificate_fails_verify(tmp_path):
    _, cert = run_json(["be-check", fx("koszul_xy.json"), "--name", "K"])
    cert["result"]["rows"][0]["grade"] = 7
    path = tmp_path / "c.json"
    path.write_text(json.dumps(cert))
    code, v = run_json(["verify", str(path)])
    assert code == 1
    assert v["checks"][0]["status"] == "fail"


def test_console_entry_point_subprocess():
    env = dict(os.environ, PYTHONPATH=SRC, PYTHONHASHSEED="123")
    p = subprocess.run([sys.executable, "-m", "genkoszul.cli", "be-check", fx("koszul_xy.json"), "--name", "K",
                        "--json"], capture_output=True, text=True, env=env)
    assert p.returncode == 0
    assert json.loads(p.stdout)["status"] == "pass"
