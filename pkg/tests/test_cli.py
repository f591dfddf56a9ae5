import io
import json
import os
from pathlib import Path

import pytest

from psbck import fixtures
from psbck.cli import main
from psbck.io import load_algebra

GOLDEN = Path(__file__).parent / "golden"
UPDATE = os.environ.get("PSBCK_UPDATE_GOLDEN") == "1"


def fx(name):
    return str(fixtures.path(name))


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main([str(a) for a in argv], stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


CASES = {
    "check_a6": (0, ["check", fx("a6")]),
    "check_a6_relational": (0, ["check", fx("a6"), "--system", "relational"]),
    "check_a4l_printed": (1, ["check", fx("a4l_printed")]),
    "classify_a6": (0, ["classify", fx("a6")]),
    "classify_a4c": (0, ["classify", fx("a4c")]),
    "classify_a4l_printed": (0, ["classify", fx("a4l_printed")]),
    "ds_a6": (0, ["ds", fx("a6")]),
    "ds_a6_normal": (0, ["ds", fx("a6"), "--normal"]),
    "ds_a6_commutative": (0, ["ds", fx("a6"), "--commutative"]),
    "ds_a6_generated": (0, ["ds", fx("a6"), "--generated", "d"]),
    "quotient_a6": (0, ["quotient", fx("a6"), "--ds", "a,b,c,d,1"]),
    "quotient_a6_not_normal": (1, ["quotient", fx("a6"), "--ds", "c,d,1"]),
    "states_a6": (0, ["states", fx("a6")]),
    "states_a6_type2": (0, ["states", fx("a6"), "--kind", "type2"]),
    "states_a6_sm": (0, ["states", fx("a6"), "--kind", "sm"]),
    "hoop_hg3_wajsberg": (1, ["hoop", fx("hg3"), "--level", "wajsberg"]),
    "hoop_hl3_basic": (0, ["hoop", fx("hl3"), "--level", "basic"]),
    "enumerate_3_iso": (0, ["enumerate", "--size", "3", "--up-to-iso"]),
    "enumerate_4_count": (0, ["enumerate", "--size", "4", "--count-only"]),
}


@pytest.mark.parametrize("case", sorted(CASES))
def test_golden_output(case):
    want_code, argv = CASES[case]
    code, out, _ = run(*argv)
    assert code == want_code
    path = GOLDEN / f"{case}.txt"
    if UPDATE:
        path.write_text(out, encoding="utf-8")
    assert out == path.read_text(encoding="utf-8")


def test_json_check_failure():
    code, out, _ = run("check", fx("a4l_printed"), "--json")
    assert code == 1
    data = json.loads(out)
    c = next(c for c in data["clauses"] if c["name"] == "psBCK3'")
    assert c["witness"] == {"x": "a"} and not c["passed"]


def test_json_classify_and_ds():
    data = json.loads(run("classify", fx("a4c"), "--json")[1])
    assert data["agree"] and all(data["verdicts"].values()) and len(data["verdicts"]) == 9
    data = json.loads(run("ds", fx("a6"), "--commutative", "--json")[1])
    assert data["systems"] == [["a", "b", "c", "d", "1"], ["0", "a", "b", "c", "d", "1"]]


def test_json_quotient_error():
    code, out, _ = run("quotient", fx("a6"), "--ds", "c,d,1", "--json")
    assert code == 1
    data = json.loads(out)
    assert data["error"] == "not-normal" and data["witness"] == ["b", "a"]


def test_states_single_map(tmp_path):
    m = tmp_path / "mu.map"
    m.write_text(fixtures.A4L_MAP + "\n")
    code, out, _ = run("states", fx("a4l_corrected"), "--map", m)
    assert code == 0
    assert "type1: yes" in out and "state_morphism: no" in out
    code, out, _ = run("states", fx("a4l_corrected"), "--map", m, "--kind", "sm", "--json")
    assert code == 1
    data = json.loads(out)
    assert data["type1"] and not data["state_morphism"] and data["is4"]


def test_measure_command(tmp_path):
    good = tmp_path / "good.m"
    good.write_text("0 1\na 0\nb 0\nc 0\nd 0\n1 0\n")
    code, out, _ = run("measure", fx("a6"), good)
    assert code == 0 and "kernel: {a, b, c, d, 1}" in out
    bad = tmp_path / "bad.m"
    bad.write_text("0 1\n1 1\n")
    code, out, _ = run("measure", fx("a2"), bad, "--json")
    assert code == 1
    c = json.loads(out)["clauses"][1]
    assert c["witness"] == {"x": "0", "y": "0"}


def test_product_round_trip(tmp_path):
    dest = tmp_path / "p.pbck"
    code, out, _ = run("product", fx("a2"), fx("a4c"), "-o", dest)
    assert code == 0 and "wrote 8-element algebra" in out
    P = load_algebra(dest)
    assert P.n == 8 and P.is_pseudo_bck
    code, out, _ = run("classify", dest)
    assert code == 0 and "not commutative" not in out
    code, out, _ = run("check", dest)
    assert code == 0


def test_enumerate_output_reparses(tmp_path):
    code, out, _ = run("enumerate", "--size", "3", "--commutative")
    assert code == 0
    chunks = [c for c in out.split("\n\n") if c.strip()]
    assert len(chunks) == 3
    for k, chunk in enumerate(chunks):
        f = tmp_path / f"m{k}.pbck"
        f.write_text(chunk)
        assert run("check", f)[0] == 0


@pytest.mark.parametrize("argv,code,msg", [
    (["check", "missing.pbck"], 2, "cannot read"),
    (["ds", fx("a6"), "--generated", "z"], 2, "no element named"),
    (["enumerate", "--size", "9"], 2, "size must be"),
    (["enumerate", "--size", "4", "--node-budget", "5"], 1, "exceeded"),
    (["ds", fx("a4l_printed")], 1, "requires a pseudo BCK-algebra"),
    (["hoop", fx("a6")], 2, "prod"),
])
def test_error_exit_codes(argv, code, msg):
    got, _, err = run(*argv)
    assert got == code
    assert msg in err


def test_format_error_reports_position(tmp_path):
    f = tmp_path / "bad.pbck"
    f.write_text("pbck 2\nelements a 1\ntop 1\narrow\n1 1\na q\n")
    code, _, err = run("check", f)
    assert code == 2
    assert f"{f}:6:3: unknown element 'q'" in err


def test_argparse_errors_exit_two():
    assert run()[0] == 2
    assert run("check")[0] == 2
    assert run("bogus")[0] == 2
