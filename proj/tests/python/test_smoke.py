import os
from pathlib import Path

import pytest

import buml

DATA = Path(os.environ.get("BUML_TEST_DATA", Path(__file__).resolve().parents[1]))


def read(rel):
    return (DATA / rel).read_text()


@pytest.fixture(scope="module")
def dpp():
    return read("fixtures/dpp/dpp.buml.puml"), read("fixtures/dpp/dpp.objs"), read("fixtures/dpp/dpp.ocl")


def test_dpp_model_is_valid_and_conformant(dpp):
    model, objects, _ = dpp
    assert buml.validate_model(model) == []
    assert buml.check_conformance(model, objects) == []


def test_dpp_constraints_all_true(dpp):
    rows = buml.check_constraints(*dpp)
    assert rows
    assert all(verdict == "true" for _, _, verdict, _ in rows)


def test_failing_constraint_names_the_object(dpp):
    model, objects, ocl = dpp
    rows = buml.check_constraints(model, objects.replace('"DPP-001"', '""'), ocl)
    assert ("hasCode", "p1") in [(c, o) for c, o, v, _ in rows if v != "true"]


def test_generate_matches_golden(dpp):
    files = buml.generate(dpp[0], "sql")
    assert files == {"schema.sql": read("golden/dpp/sql/schema.sql")}
    assert buml.generators() == ["classes", "sql"]
    with pytest.raises(buml.ModelError):
        buml.generate(dpp[0], "bogus")


def test_parse_errors_raise_input_error():
    with pytest.raises(buml.InputError):
        buml.check_conformance("@startuml\nclass\n", "")
    with pytest.raises(ValueError):
        buml.check_constraints(read("fixtures/dpp/dpp.buml.puml"), read("fixtures/dpp/dpp.objs"), "context A inv x: 1 +")


def test_cycle_diagnostic_fields():
    diags = buml.validate_model("@startuml\nclass A\nclass B\nA <|-- B\nB <|-- A\n@enduml\n")
    assert [d.code for d in diags] == ["gen-cycle"]
    assert diags[0].severity == "error"
    assert str(diags[0]).startswith("error gen-cycle ")


def test_fsm_greeting_replay():
    trace = buml.run_fsm(read("fixtures/fsm/greeting.fsm"), read("fixtures/fsm/greeting.scenario"))
    assert trace == read("fixtures/fsm/greeting.trace").splitlines()


def test_infer_then_enforce_round_trip(dpp):
    _, objects, _ = dpp
    inferred, _warnings = buml.infer(objects)
    assert buml.check_conformance(inferred, objects) == []
    pruned, removed, residual = buml.enforce(inferred, objects)
    assert removed == [] and residual == []
    assert buml.enforce(inferred, pruned)[0] == pruned


def test_cli_in_process(dpp):
    code, out, err = buml.run_cli(["validate", "--model", str(DATA / "fixtures/dpp/dpp.buml.puml")])
    assert (code, out) == (0, "")
    assert buml.run_cli(["frobnicate"])[0] == 2
