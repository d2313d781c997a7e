import json
from pathlib import Path

import pytest

from affsys.catalog import chain, lukasiewicz, two
from affsys.cli import main
from affsys.documents import dumps, load, load_kind, loads, resolve_L, save, to_document
from affsys.errors import ParseError, SchemaError, ValidationError
from affsys.spaces import sierpinski_space
from affsys.systems import identity_morphism, sierpinski_system

DATA = Path(__file__).resolve().parent.parent / "data"


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


# ---------------------------------------------------------------- documents


@pytest.mark.parametrize("name", sorted(p.name for p in DATA.glob("*.json")))
def test_fixtures_round_trip_byte_identically(name):
    text = (DATA / name).read_text()
    kind, obj = loads(text)
    assert dumps(to_document(obj)) == text


@pytest.mark.parametrize(
    "obj",
    [chain(3), lukasiewicz(3), two("set"), sierpinski_space(chain(3)), sierpinski_system(two("cbalg"))],
)
def test_objects_round_trip(obj):
    text = dumps(to_document(obj))
    _, back = loads(text)
    assert dumps(to_document(back)) == text


def test_morphism_round_trip(tmp_path):
    m = identity_morphism(sierpinski_system(two()))
    path = tmp_path / "m.json"
    save(m, str(path))
    kind, back = load(str(path))
    assert kind == "morphism" and back.f == m.f and back.phi.map == m.phi.map


def test_loader_errors():
    with pytest.raises(ParseError):
        loads("{not json")
    with pytest.raises(SchemaError):
        loads(json.dumps({"kind": "widget", "version": "1", "payload": {}}))
    with pytest.raises(SchemaError):
        loads(json.dumps({"kind": "algebra", "version": "2", "payload": {}}))
    with pytest.raises(SchemaError):
        loads(json.dumps({"kind": "algebra", "version": "1", "payload": {"elements": ["a", "a"], "variety": "frame"}}))
    with pytest.raises(SchemaError):
        load_kind(str(DATA / "two.json"), "system")


def test_loaded_systems_share_L():
    a = load_kind(str(DATA / "sierpinski-frame-2.json"), "system")
    b = load_kind(str(DATA / "sierpinski-frame-2.json"), "system")
    assert a.L is b.L
    assert resolve_L("two", "frame") is resolve_L(str(DATA / "two.json"))


def test_resolve_L_builtins():
    assert resolve_L("lukasiewicz3", "uquant").n == 3
    assert resolve_L("lukasiewicz3.json", "uquant") is resolve_L("lukasiewicz3", "uquant")
    with pytest.raises(ValidationError):
        resolve_L("no-such-algebra")


# ---------------------------------------------------------------- cli


def test_cli_sierpinski_system(capsys):
    code, out = run(capsys, "sierpinski", "--system", "--L", str(DATA / "two.json"))
    assert code == 0
    doc = json.loads(out)
    assert doc["kind"] == "system"
    assert doc["payload"]["kappa"] == {
        "bot": {"0": "0", "1": "0"},
        "c": {"0": "0", "1": "1"},
        "top": {"0": "1", "1": "1"},
    }


def test_cli_check_and_exit_codes(capsys, tmp_path):
    sys_file = str(DATA / "sierpinski-frame-2.json")
    assert run(capsys, "check", "t0", sys_file)[0] == 0
    assert run(capsys, "check", "sober", sys_file)[0] == 0
    assert run(capsys, "check", "t0", str(DATA / "sierpinski-space-frame-2.json"))[0] == 0
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"kind": "algebra", "version": "1", "payload": {
        "variety": "frame", "elements": ["a", "b"], "le": [["a", "b"], ["b", "a"]]}}))
    code, out = run(capsys, "validate", str(bad))
    assert code == 2 and json.loads(out)["payload"]["error"] == "NotAPartialOrder"
    assert run(capsys, "validate", str(tmp_path / "missing.json"))[0] == 2


def test_cli_refutation_exit_code(capsys):
    code, out = run(capsys, "verify", "cor2", "--variety", "uquant")
    assert code == 1
    failure = json.loads(out)["payload"]["failures"][0]
    assert failure["witness"] == {"A1": [0, 1], "A2": [0]}


def test_cli_budget_exit_code(capsys):
    f = str(DATA / "three-chain.json")
    code, out = run(capsys, "coproduct", *[f] * 6)
    assert code == 3 and json.loads(out)["payload"]["error"] == "budget"


def test_cli_misc_commands(capsys):
    two_f, c3 = str(DATA / "two.json"), str(DATA / "three-chain.json")
    sys_f = str(DATA / "sierpinski-frame-2.json")
    code, out = run(capsys, "points", "--algebra", c3, "--into", two_f)
    assert code == 0 and json.loads(out)["payload"]["count"] == 2
    code, out = run(capsys, "coproduct", c3, c3)
    assert json.loads(out)["payload"]["size"] == 6
    code, out = run(capsys, "homs", sys_f, sys_f)
    assert json.loads(out)["payload"]["count"] == 3
    code, out = run(capsys, "product", sys_f, sys_f)
    assert len(json.loads(out)["payload"]["points"]) == 4
    code, out = run(capsys, "canonical", sys_f, "--materialize-powers")
    assert code == 0 and json.loads(out)["payload"]["in_M"] is True
    code, out = run(capsys, "spatialize", sys_f)
    assert json.loads(out)["kind"] == "space"
    code, out = run(capsys, "embed", str(DATA / "sierpinski-space-frame-2.json"))
    assert json.loads(out)["kind"] == "system"
    code, out = run(capsys, "--format", "text", "verify", "prop2", "--instances", "3")
    assert code == 0 and "PASS" in out
    code, out = run(capsys, "sierpinski", "--system", "--L", "lukasiewicz3", "--variety", "uquant", "--format", "text")
    assert code == 0 and "evaluator" in out
