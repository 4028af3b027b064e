import json
import subprocess
import sys
from importlib.resources import files

import pytest
from jsonschema import Draft202012Validator
from referencing import Registry, Resource

from lotkit.cli import SCHEMAS, main, run

CORPUS = files("lotkit.data.corpus")


def corpus(name):
    return str(CORPUS / name)


def _registry():
    resources = []
    for path in files("lotkit.schemas").iterdir():
        if path.name.endswith(".schema.json"):
            schema = json.loads(path.read_text())
            resources.append((schema["$id"], Resource.from_contents(schema)))
    return Registry().with_resources(resources)


REGISTRY = _registry()


def validate(report):
    def check(name, instance):
        schema = REGISTRY.get_or_retrieve(f"lotkit/{name}.schema.json").value.contents
        errors = list(Draft202012Validator(schema, registry=REGISTRY).iter_errors(instance))
        assert not errors, [e.message for e in errors]

    check("report", report)
    if "result" in report and report["command"] in SCHEMAS:
        check(SCHEMAS[report["command"]], report["result"])


def cli_json(argv, capsys):
    code = main(argv + ["--json"])
    out = capsys.readouterr().out
    report = json.loads(out)
    validate(report)
    assert report["exit_code"] == code
    return code, report


COMMANDS = [
    ["validate", corpus("small_lot.lot")],
    ["presentation", corpus("small_lot.lot")],
    ["coxeterize", corpus("small_lot.lot")],
    ["from-coxeter", corpus("x3y3z.cox"), "--prime"],
    ["artin-log", corpus("x3y3z.cox")],
    ["forge", "--rank", "2"],
    ["certify", corpus("label_separated.lot")],
    ["certify", corpus("small_lot.lot")],
    ["certify", corpus("long_edges_m7.lot")],
    ["side-inject", corpus("hat_m7.pres"), "--a", "a", "--b", "b"],
    ["side-inject", corpus("artin3.pres"), "--a", "a", "--b", "b"],
    ["sc-check", corpus("sc_mixed.pres"), "--lambda", "1/6", "--lambda", "1/4", "--t4"],
    ["dehn", corpus("torsion3.pres"), "a b a b"],
    ["wp", "--coxeter", corpus("x3y3z.cox"), "x y x y x y"],
    ["tc", corpus("delta332.pres")],
    ["abelianize", corpus("delta332.pres")],
    ["freeness", "--factors", "x:2,y:5", "--gens", "x y x y,y^-1 x y x", "--bound", "4"],
    ["freeness", "--factors", "a:0,y:2", "--gens", "a^2,(y a^-1)^2,a (y a^-1)^2 a^-1", "--index"],
    ["complex", corpus("small_lot.lot"), "--kind", "L"],
    ["ball", corpus("x3y3z.cox"), "--radius", "2"],
]


@pytest.mark.parametrize("argv", COMMANDS, ids=lambda a: " ".join(a[:1] + a[2:3]))
def test_commands_emit_valid_reports(argv, capsys):
    code, report = cli_json(argv, capsys)
    assert code == 0 and "result" in report


def test_certify_verdicts(capsys):
    _, report = cli_json(["certify", corpus("label_separated.lot")], capsys)
    assert report["result"]["verdict"] == "ASPHERICAL"
    _, report = cli_json(["certify", corpus("small_lot.lot")], capsys)
    # UNKNOWN is a computed answer, not an error
    assert report["result"]["verdict"] == "UNKNOWN" and report["exit_code"] == 0


def test_input_error_exit_code(tmp_path, capsys):
    bad = tmp_path / "bad.lot"
    bad.write_text("x -[y z]> y\n")
    code, report = cli_json(["validate", str(bad)], capsys)
    assert code == 1 and report["error"]["type"] == "input"
    code, report = cli_json(["validate", str(tmp_path / "missing.lot")], capsys)
    assert code == 1


def test_budget_exit_code(capsys):
    code, report = cli_json(["tc", corpus("free_a_y2.pres"), "--max-cosets", "50"], capsys)
    assert code == 2 and report["error"]["type"] == "budget"


def test_corpus_golden_failure_exit_code(capsys):
    code, report = cli_json(["corpus", "run", "--only", "2"], capsys)
    assert code == 3 and report["result"]["passed"] is False


def test_corpus_pass_exit_code(capsys):
    code, report = cli_json(["corpus", "run", "--only", "1,7"], capsys)
    assert code == 0 and report["result"]["passed"]


def test_input_digest_tracks_file_contents(tmp_path, capsys):
    f = tmp_path / "a.lot"
    f.write_text("x -[y]-> y\n")
    _, r1 = cli_json(["validate", str(f)], capsys)
    f.write_text("x -[y x]-> y\n")
    _, r2 = cli_json(["validate", str(f)], capsys)
    assert r1["input_digest"] != r2["input_digest"]


def test_json_is_byte_stable():
    argv = [sys.executable, "-m", "lotkit.cli", "certify", corpus("small_lot.lot"), "--json"]
    runs = [subprocess.run(argv, capture_output=True, check=True, env={"LOT_COLOR": "0", "PATH": ""}).stdout
            for _ in range(2)]
    assert runs[0] == runs[1] and runs[0].endswith(b"\n")


def test_json_to_file(tmp_path, capsys):
    out = tmp_path / "report.json"
    assert main(["certify", corpus("gamma0.lot"), "--json", str(out)]) == 0
    validate(json.loads(out.read_text()))
    assert "ASPHERICAL" in capsys.readouterr().out


def test_no_color_when_disabled(monkeypatch, capsys):
    monkeypatch.setenv("LOT_COLOR", "0")
    main(["certify", corpus("label_separated.lot")])
    assert "\033[" not in capsys.readouterr().out


def test_tc_csv(tmp_path, capsys):
    out = tmp_path / "table.csv"
    assert main(["tc", corpus("delta332.pres"), "--csv", str(out)]) == 0
    rows = out.read_text().splitlines()
    assert rows[0] == "coset,x,y,z" and len(rows) == 25


def test_ball_dot(tmp_path, capsys):
    out = tmp_path / "ball.dot"
    assert main(["ball", corpus("x3y3z.cox"), "--radius", "2", "--dot", str(out)]) == 0
    assert out.read_text().startswith("graph") or out.read_text().startswith("digraph")


def test_complex_dot(capsys):
    assert main(["complex", corpus("small_lot.lot"), "--format", "dot"]) == 0
    assert "digraph" in capsys.readouterr().out


def test_run_returns_text():
    code, report, text = run(["coxeterize", corpus("small_lot.lot")])
    assert code == 0 and "x -3- y" in text


def test_usage_error_is_input_error(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["wp", "--coxeter", corpus("x3y3z.cox"), "x", "y"])
    assert exc.value.code == 1
    with pytest.raises(SystemExit) as exc:
        main(["no-such-command"])
    assert exc.value.code == 1
