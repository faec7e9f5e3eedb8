import json
from importlib import resources

import pytest

from conormal_lab.cli import SCHEMA, emit_report, make_document, parse_session_text, run_session
from conormal_lab.cli.main import main
from conormal_lab.errors import ParseError

CUBIC_SESSION = resources.files("conormal_lab").joinpath("sessions/twisted_cubic.session")
MINORS_SESSION = resources.files("conormal_lab").joinpath("sessions/four_minors.session")


def run_cli(tmp_path, text, *flags):
    path = tmp_path / "s.session"
    path.write_text(text)
    out = tmp_path / "out.json"
    code = main(["run", str(path), "-o", str(out), *flags])
    return code, (out.read_bytes() if out.exists() else b"")


def test_shipped_twisted_cubic_session_parses():
    s = parse_session_text(CUBIC_SESSION.read_text())
    assert s.ring.names == ("u", "v", "t", "w")
    assert "p" in s.ideals and "Gbar" in s.closures
    assert [c.name for c in s.commands][:2] == ["gb", "dim"]


def test_empty_session():
    s = parse_session_text("")
    assert s.commands == [] and run_session(s) == []
    doc = json.loads(emit_report(make_document()))
    assert doc == {"schema": SCHEMA, "tool_version": doc["tool_version"], "results": []}


def test_undefined_reference_is_named():
    with pytest.raises(ParseError) as info:
        parse_session_text("ring x y over QQ;\nrun gb q;\n")
    assert "'q'" in str(info.value) and info.value.line == 2 and info.value.column == 8


def test_duplicate_name_and_syntax_errors():
    with pytest.raises(ParseError, match="duplicate"):
        parse_session_text("ring x y over QQ;\nideal p = x;\nideal p = y;\n")
    with pytest.raises(ParseError) as info:
        parse_session_text("ring x y over QQ;\nideal p = x +* y;\n")
    assert info.value.line == 2 and info.value.column == 14
    with pytest.raises(ParseError, match="missing ';'"):
        parse_session_text("ring x y over QQ")
    with pytest.raises(ParseError, match="unknown command"):
        parse_session_text("ring x y over QQ;\nideal p = x;\nrun frobnicate p;")


def test_round_trip():
    s = parse_session_text(CUBIC_SESSION.read_text())
    again = parse_session_text(s.format())
    assert s.equivalent(again)
    assert again.format() == s.format()


def test_gb_of_single_generator_is_monic():
    s = parse_session_text("ring x y over QQ;\nideal f = 3*x^2 - 6*y;\nrun gb f;\n")
    (frag,) = run_session(s)
    assert frag["result"]["groebner_basis"] == ["x^2 - 2*y"]


def test_twisted_cubic_session_report(tmp_path):
    code, data = run_cli(tmp_path, CUBIC_SESSION.read_text())
    assert code == 1  # the normality criterion fails
    doc = json.loads(data)
    by = {r["command"]: r for r in doc["results"]}
    assert by["normality-criterion p"]["verdict"] == "fails"
    assert by["normality-criterion p"]["result"]["witnesses"]["prime"] == "m"
    assert by["closedness-pipeline p"]["verdict"] == "not_integrally_closed"
    assert by["verify-closure Gbar mG"]["result"]["equals_named"] is True
    assert by["component 2 p"]["result"]["nu"] == 6


def test_determinism(tmp_path):
    _, a = run_cli(tmp_path, CUBIC_SESSION.read_text())
    _, b = run_cli(tmp_path, CUBIC_SESSION.read_text())
    assert a == b


def test_text_rendering(tmp_path):
    code, data = run_cli(tmp_path, CUBIC_SESSION.read_text(), "--format", "text")
    text = data.decode()
    assert "verdict: not_integrally_closed" in text and "conormal-lab/1" in text


def test_exit_codes(tmp_path):
    ok = "ring x y over QQ;\nideal p = x, y;\nrun dim p;\n"
    assert run_cli(tmp_path, ok)[0] == 0
    assert run_cli(tmp_path, "ring x y over QQ;\nrun gb q;\n")[0] == 2
    over = "ring x y over QQ;\nideal p = x, y;\nrun component 7 p;\n"
    assert run_cli(tmp_path, over)[0] == 3
    heavy = "ring a b c d over QQ;\nideal p = a^3 - b*c*d, b^3 - a*c*d, c^3 - a*b*d;\nrun gb p;\n"
    assert run_cli(tmp_path, heavy, "--step-limit", "2")[0] == 3
    assert main(["run", str(tmp_path / "missing.session")]) == 2


def test_wrong_argument_count(tmp_path):
    code, _ = run_cli(tmp_path, "ring x y over QQ;\nideal p = x;\nrun gb p p p;\n")
    assert code == 2


def test_minors_ideal_and_named_results():
    s = parse_session_text(
        "ring x y z over GF(101);\nmatrix A = [x, y; y, z];\nideal d = minors(2, A);\n"
        "run dim d;\nrun conormal d as E;\nrun bidual E;\n"
    )
    frags = run_session(s)
    assert frags[0]["result"] == {"dimension": 2, "height": 1}
    assert frags[2]["result"]["reflexive"] is True


@pytest.mark.slow
def test_component_nu_on_four_minors_session():
    s = parse_session_text(
        MINORS_SESSION.read_text().split("run dim")[0] + "run component 2 p as G2;\n"
    )
    (frag,) = run_session(s)
    assert frag["result"]["nu"] == 10
