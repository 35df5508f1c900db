import json

from catnorm.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_validate_empty(capsys, data_dir):
    code, _, err = run(capsys, "validate", str(data_dir / "empty.json"))
    assert code == 0
    assert "0 objects" in err


def test_validate_bad_input(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"objects": [{"name": "A", "kind": "nope"}]}')
    code, _, err = run(capsys, "validate", str(bad))
    assert code == 1 and "nope" in err


def test_validate_missing_file(capsys, tmp_path):
    code, _, err = run(capsys, "validate", str(tmp_path / "nothing.json"))
    assert code == 1


def test_closure_roundtrippable(capsys, data_dir, tmp_path):
    code, _, _ = run(capsys, "closure", str(data_dir / "fig5.json"),
                     "--out-dir", str(tmp_path))
    assert code == 0
    from catnorm import parse_schema
    graph, deps = parse_schema((tmp_path / "fig5.closure.json").read_text())
    assert ("D", "B") in graph.arrow_pairs()
    doc = json.loads((tmp_path / "fig5.closure.json").read_text())
    assert any(p.get("rule") == "fd-closure" for p in doc["provenance"])


def test_reduce_emit_relational(capsys, data_dir, tmp_path):
    code, _, err = run(capsys, "reduce", "--level", "1",
                       "--emit", "relational",
                       "--out-dir", str(tmp_path),
                       str(data_dir / "fig5.json"))
    assert code == 0
    sql = (tmp_path / "fig5.sql").read_text()
    assert "CREATE TABLE D" in sql and "PRIMARY KEY (A, E)" in sql
    assert "3 relations" in err


def test_reduce_emit_dtd_fig6(capsys, data_dir, tmp_path):
    code, _, _ = run(capsys, "reduce", "--level", "2", "--emit", "dtd",
                     "--out-dir", str(tmp_path),
                     str(data_dir / "fig6.json"))
    assert code == 0
    dtd = (tmp_path / "fig6.dtd").read_text()
    assert "<!ELEMENT root (A+, B+, X1+, X2+)>" in dtd
    assert "<!ATTLIST X1 B_ID IDREF #REQUIRED>" in dtd


def test_reduce_writes_schema_and_trace(capsys, data_dir, tmp_path):
    code, _, _ = run(capsys, "reduce", "--level", "2", "--trace",
                     "--out-dir", str(tmp_path),
                     str(data_dir / "fig6.json"))
    assert code == 0
    trace = json.loads((tmp_path / "fig6.trace.json").read_text())
    assert any(e["event"] == "decomposed-object" for e in trace)
    schema = json.loads((tmp_path / "fig6.2rr.json").read_text())
    assert {o["name"] for o in schema["objects"]} >= {"X1", "X2"}


def test_emit_stdout(capsys, data_dir):
    code, out, _ = run(capsys, "emit", "--emit", "pg", "--stdout",
                       str(data_dir / "fig5.json"))
    assert code == 0
    doc = json.loads(out)
    # unreduced input: B has no outgoing arrows yet, so only A and D emit
    assert {v["label"] for v in doc["vertices"]} == {"A", "D"}


def test_emit_requires_target(capsys, data_dir):
    code, _, err = run(capsys, "emit", str(data_dir / "fig5.json"))
    assert code == 1 and "--emit" in err


def test_check_violation_exit_code(capsys, data_dir, tmp_path):
    code, _, _ = run(capsys, "check", "--level", "0", "--check", "bcnf",
                     "--out-dir", str(tmp_path),
                     str(data_dir / "fig5.json"))
    assert code == 3
    report = json.loads((tmp_path / "fig5.report.json").read_text())
    assert any(r["verdict"] == "violated" for r in report)


def test_check_clean_pipeline(capsys, data_dir, tmp_path):
    code, _, err = run(capsys, "check", "--level", "1",
                       "--check", "bcnf,improved-bcnf,xmlnf",
                       "--out-dir", str(tmp_path),
                       str(data_dir / "fig5.json"))
    assert code == 0
    assert "satisfied" in err


def test_check_4nf_level2(capsys, data_dir, tmp_path):
    code, _, _ = run(capsys, "check", "--level", "2", "--check", "4nf",
                     "--out-dir", str(tmp_path),
                     str(data_dir / "fig6.json"))
    assert code == 0


def test_hybrid_subcommand(capsys, data_dir, tmp_path):
    assignment = tmp_path / "assign.json"
    assignment.write_text(json.dumps(
        {"D": "graph", "E": "graph", "A": "relational", "B": "relational",
         "C": "relational"}))
    code, _, _ = run(capsys, "hybrid", "--assignment", str(assignment),
                     "--out-dir", str(tmp_path),
                     str(data_dir / "fig5.json"))
    assert code == 0
    doc = json.loads((tmp_path / "fig5.hybrid.json").read_text())
    assert {p["partition"] for p in doc} == {"graph", "relational"}


def test_hybrid_requires_assignment(capsys, data_dir):
    code, _, err = run(capsys, "hybrid", str(data_dir / "fig5.json"))
    assert code == 1 and "assignment" in err


def test_deterministic_output(capsys, data_dir, tmp_path):
    a, b = tmp_path / "a", tmp_path / "b"
    for out in (a, b):
        run(capsys, "reduce", "--level", "2", "--emit", "relational,dtd,pg",
            "--out-dir", str(out), str(data_dir / "fig6.json"))
    for name in ("fig6.sql", "fig6.dtd", "fig6.pg.json"):
        assert (a / name).read_bytes() == (b / name).read_bytes()
