#!/usr/bin/env python3
"""Testy dokumentów JSON i poleceń wiersza poleceń (kody wyjścia end-to-end)"""

import json
import re
from pathlib import Path

import pytest

from chain_complex import ChainComplex, cone, disk, k2, sphere
from cli_io import (
    EXIT_FAILED, EXIT_OK, EXIT_USAGE, SCHEMA_VERSION, Document, DocumentError, load, log_message,
    run, store,
)
from exact_linalg import GF2, ZZ, ExactMatrix, PresentedGroup
from frobenius_model import pi_group
from hovey_checker import Verdict
from stable_keps import KEpsModule, free_envelope

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"


def fx(name: str) -> str:
    return str(FIXTURES / name)


def _write(tmp_path, data, name="doc.json") -> Path:
    path = tmp_path / name
    path.write_text(data if isinstance(data, str) else json.dumps(data), encoding="utf-8")
    return path


def _complex_doc(ranks, differentials, min_degree=0, version=SCHEMA_VERSION):
    return {"schema_version": version, "ring": "Z", "kind": "complex",
            "payload": {"min_degree": min_degree, "ranks": ranks, "differentials": differentials}}


# ===== dokumenty =====

@pytest.mark.parametrize("path", sorted(FIXTURES.glob("*.json")), ids=lambda p: p.stem)
def test_fixture_round_trip(path, tmp_path):
    doc = load(path)
    store(doc, tmp_path / path.name)
    assert load(tmp_path / path.name) == doc


def test_fixtures_match_constructed_complexes():
    assert load(fx("D1.json")).value == disk()
    assert load(fx("K2.json")).value == k2()
    assert load(fx("S1.json")).value == sphere(ZZ, 1)
    assert load(fx("incl_S0_D1.json")).value == cone(sphere().identity())[1]


def test_store_then_load_disk(tmp_path):
    doc = Document.of(disk())
    store(doc, tmp_path / "D1.json")
    assert load(tmp_path / "D1.json") == doc


def test_group_document_has_invariant_factors(tmp_path):
    group = pi_group(k2(), k2()).group
    store(Document.of(group), tmp_path / "pi.json")
    data = json.loads((tmp_path / "pi.json").read_text(encoding="utf-8"))
    assert data["kind"] == "group"
    assert data["payload"]["torsion"] == ["2"]
    assert load(tmp_path / "pi.json").value == group


def test_big_integers_are_decimal_strings(tmp_path):
    big = 10 ** 30
    x = ChainComplex.from_matrices(ZZ, {1: ExactMatrix.from_rows(ZZ, [[big]])})
    store(Document.of(x), tmp_path / "big.json")
    text = (tmp_path / "big.json").read_text(encoding="utf-8")
    assert f'"{big}"' in text
    assert load(tmp_path / "big.json").value == x


def test_keps_and_verdict_documents_round_trip(tmp_path):
    j = free_envelope(KEpsModule.trivial()).i
    verdict = Verdict(counterexamples=[(7, 3, "Ext¹ = Z ≠ 0")], samples_run=5, notes=["uwaga"])
    for k, value in enumerate((j, j.target, verdict)):
        doc = Document.of(value)
        store(doc, tmp_path / f"{k}.json")
        assert load(tmp_path / f"{k}.json") == doc
    assert Document.of(j).ring == GF2


def test_malformed_differential_shape_names_degree(tmp_path):
    path = _write(tmp_path, _complex_doc([1, 1], {"1": [["-1", "0"]]}))
    with pytest.raises(DocumentError) as err:
        load(path)
    assert err.value.path == "payload.differentials.1"
    assert not err.value.invariant


def test_nonzero_square_is_invariant_violation(tmp_path):
    path = _write(tmp_path, _complex_doc([1, 1, 1], {"1": [["1"]], "2": [["1"]]}))
    with pytest.raises(DocumentError) as err:
        load(path)
    assert err.value.invariant
    assert err.value.path == "payload.differentials.1"
    assert "stopień 1" in str(err.value)


def test_non_commuting_map_is_invariant_violation(tmp_path):
    data = json.loads(Path(fx("incl_S0_D1.json")).read_text(encoding="utf-8"))
    data["payload"]["source"] = data["payload"]["target"]
    data["payload"]["components"] = {"0": [["1"]], "1": [["0"]]}
    with pytest.raises(DocumentError) as err:
        load(_write(tmp_path, data))
    assert err.value.invariant


def test_json_syntax_error_reports_line_and_column(tmp_path):
    path = _write(tmp_path, '{\n  "schema_version": "1.0",\n  "ring": Z\n}')
    with pytest.raises(DocumentError) as err:
        load(path)
    assert (err.value.line, err.value.column) == (3, 11)


def test_unknown_schema_version(tmp_path):
    with pytest.raises(DocumentError) as err:
        load(_write(tmp_path, _complex_doc([1], {}, version="0.9")))
    assert err.value.path == "schema_version"


def test_missing_field_and_bad_entry(tmp_path):
    with pytest.raises(DocumentError) as err:
        load(_write(tmp_path, {"schema_version": SCHEMA_VERSION, "ring": "Z", "kind": "complex",
                               "payload": {"ranks": [1]}}))
    assert err.value.path == "payload.min_degree"
    with pytest.raises(DocumentError):
        load(_write(tmp_path, _complex_doc([1, 1], {"1": [["dwa"]]})))


def test_non_nilpotent_eps_rejected(tmp_path):
    data = {"schema_version": SCHEMA_VERSION, "ring": "F_2", "kind": "keps_module",
            "payload": {"dim": 1, "eps": [["1"]]}}
    with pytest.raises(DocumentError) as err:
        load(_write(tmp_path, data))
    assert err.value.invariant


def _group_doc(torsion, free_rank, ring="Z"):
    return {"schema_version": SCHEMA_VERSION, "ring": ring, "kind": "group",
            "payload": {"torsion": torsion, "free_rank": free_rank}}


def test_negative_free_rank_is_rejected(tmp_path):
    path = _write(tmp_path, _group_doc(["2"], -1))
    with pytest.raises(DocumentError) as err:
        load(path)
    assert err.value.path == "payload.free_rank"
    assert run(["validate", str(path)]) == EXIT_USAGE
    with pytest.raises(ValueError):
        PresentedGroup(ZZ, (), -1)


def test_torsion_over_prime_field_is_invariant_violation(tmp_path):
    with pytest.raises(DocumentError) as err:
        load(_write(tmp_path, _group_doc(["2"], 0, ring="F_2")))
    assert err.value.invariant
    assert err.value.path == "payload.torsion"


def _malformed_payloads():
    incl = json.loads(Path(fx("incl_S0_D1.json")).read_text(encoding="utf-8"))
    no_source = json.loads(json.dumps(incl))
    no_source["payload"]["source"] = []
    bad_components = json.loads(json.dumps(incl))
    bad_components["payload"]["components"] = "x"
    bad_ranks = json.loads(json.dumps(incl))
    bad_ranks["payload"]["target"]["ranks"] = {"0": 1}
    verdict = {"schema_version": SCHEMA_VERSION, "ring": "Z", "kind": "verdict",
               "payload": {"counterexamples": [], "samples_run": 3, "notes": 5}}
    return {
        "source": (no_source, "payload.source"),
        "components": (bad_components, "payload.components"),
        "ranks": (bad_ranks, "payload.target.ranks"),
        "notes": (verdict, "payload.notes"),
    }


@pytest.mark.parametrize("case", ["source", "components", "ranks", "notes"])
def test_malformed_nested_payload_is_usage_error(case, tmp_path, capsys):
    data, field = _malformed_payloads()[case]
    path = _write(tmp_path, data)
    with pytest.raises(DocumentError) as err:
        load(path)
    assert err.value.path == field
    assert run(["validate", str(path)]) == EXIT_USAGE
    assert field in capsys.readouterr().err
    if data["kind"] == "chain_map":
        assert run(["cone", str(path)]) == EXIT_USAGE


def test_log_message_goes_to_stderr_with_timestamp(capsys):
    log_message("✅ gotowe")
    captured = capsys.readouterr()
    assert captured.out == ""
    assert re.match(r"\[\d\d:\d\d:\d\d\] ✅ gotowe", captured.err)


# ===== polecenia =====

def test_validate(tmp_path, capsys):
    assert run(["validate", fx("D1.json")]) == EXIT_OK
    assert "✅" in capsys.readouterr().out
    bad = _write(tmp_path, _complex_doc([1, 1, 1], {"1": [["1"]], "2": [["1"]]}))
    assert run(["validate", str(bad)]) == EXIT_FAILED
    assert run(["validate", str(tmp_path / "brak.json")]) == EXIT_USAGE


def test_contractible(capsys):
    assert run(["contractible", fx("D1.json")]) == EXIT_OK
    assert "h_0" in capsys.readouterr().out
    assert run(["contractible", fx("S0.json")]) == EXIT_FAILED
    assert capsys.readouterr().out.strip() == "NONE"


def test_pi_of_k2(capsys):
    assert run(["pi", fx("K2.json"), fx("K2.json")]) == EXIT_OK
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "Z/2"
    assert lines[1].startswith("generator 0")


def test_homotopy(capsys):
    assert run(["homotopy", fx("zero_K2.json"), fx("two_K2.json")]) == EXIT_OK
    assert "h_0" in capsys.readouterr().out
    assert run(["homotopy", fx("two_S0.json"), fx("two_S0.json")]) == EXIT_OK
    assert run(["homotopy", fx("zero_K2.json"), fx("two_S0.json")]) == EXIT_USAGE


def test_ext(capsys):
    assert run(["ext", "1", fx("S1.json"), fx("S0.json")]) == EXIT_OK
    assert capsys.readouterr().out.strip() == "Z"
    assert run(["ext", "1", fx("S0.json"), fx("S0.json")]) == EXIT_OK
    assert capsys.readouterr().out.strip() == "0"
    assert run(["ext", "-1", fx("S0.json"), fx("S0.json")]) == EXIT_USAGE


def test_cone_shift_sum_with_out_dir(tmp_path):
    out = str(tmp_path / "wyniki")
    assert run(["--out-dir", out, "cone", fx("incl_S0_D1.json")]) == EXIT_OK
    assert run(["--out-dir", out, "shift", fx("S0.json"), "2"]) == EXIT_OK
    assert run(["--out-dir", out, "sum", fx("S0.json"), fx("S1.json")]) == EXIT_OK
    assert load(tmp_path / "wyniki" / "shift.json").value == sphere(ZZ, 2)
    assert load(tmp_path / "wyniki" / "sum.json").value.ranks == (1, 1)
    assert load(tmp_path / "wyniki" / "cone.json").value.total_rank == 3


def test_wrong_document_kind_is_usage_error():
    assert run(["cone", fx("S0.json")]) == EXIT_USAGE


def test_classify(capsys):
    assert run(["classify", fx("incl_S0_D1.json")]) == EXIT_OK
    out = capsys.readouterr().out
    assert "is_cofibration: tak" in out
    assert "is_weak_equivalence: nie" in out
    assert run(["classify", fx("two_S0.json")]) == EXIT_OK
    assert "tak" not in capsys.readouterr().out


@pytest.mark.parametrize("mode", ["trivcof-fib", "cof-trivfib"])
def test_factor(mode, tmp_path):
    out = tmp_path / "f"
    assert run(["--out-dir", str(out), "factor", fx("two_S0.json"), "--mode", mode]) == EXIT_OK
    i, p = load(out / "factor_i.json").value, load(out / "factor_p.json").value
    assert p @ i == load(fx("two_S0.json")).value


def test_path_object(tmp_path):
    assert run(["--out-dir", str(tmp_path), "path-object", fx("S0.json")]) == EXIT_OK
    i, p = load(tmp_path / "path_i.json").value, load(tmp_path / "path_p.json").value
    assert (p @ i).target == ChainComplex.concentrated(ZZ, 0, 2)


def test_ses_class(capsys):
    assert run(["ses-class", fx("incl_S0_D1.json"), fx("proj_D1_S1.json")]) == EXIT_OK
    out = capsys.readouterr().out
    assert "Ext¹ = Z" in out
    assert re.search(r"klasa = \[-?1\]", out)
    assert run(["ses-class", fx("two_S0.json"), fx("two_S0.json")]) == EXIT_FAILED


def test_class_ses(tmp_path):
    assert run(["--out-dir", str(tmp_path), "class-ses", fx("id_S1.json")]) == EXIT_OK
    i, p = load(tmp_path / "class_ses_i.json").value, load(tmp_path / "class_ses_p.json").value
    assert (p @ i).is_zero()
    assert i.target.total_rank == 2


def test_keps_commands(capsys):
    assert run(["keps", "decompose", fx("k_eps.json")]) == EXIT_OK
    assert capsys.readouterr().out.strip() == "k^0 ⊕ k[ε]^1"
    assert run(["keps", "stablehom", fx("k.json"), fx("k.json")]) == EXIT_OK
    assert capsys.readouterr().out.splitlines()[0] == "F_2"
    assert run(["keps", "ext1", fx("k.json"), fx("k_eps.json"), "--presentation", "cover"]) == EXIT_OK
    assert capsys.readouterr().out.strip() == "0"
    assert run(["keps", "stablehom", fx("k.json")]) == EXIT_USAGE


def test_check_axioms():
    assert run(["check", "axioms", "--ring", "Z", "--seed", "1", "--samples", "50"]) == EXIT_OK


def test_check_commands(tmp_path):
    assert run(["check", "cotorsion", "--seed", "7", "--samples", "20"]) == EXIT_OK
    assert run(["check", "cotorsion", "--instance", "keps", "--left", "trivial", "--right", "all",
                "--seed", "7", "--samples", "20"]) == EXIT_OK
    assert run(["check", "thick", "--seed", "7", "--samples", "20"]) == EXIT_OK
    assert run(["check", "hereditary", "--left", "zero", "--right", "all", "--seed", "7",
                "--samples", "10"]) == EXIT_OK
    assert run(["--out-dir", str(tmp_path), "check", "submodel", "--seed", "7", "--samples", "5"]) == EXIT_OK
    assert load(tmp_path / "check_submodel.json").value.passed


def test_check_failure_with_fixture_classes(tmp_path):
    code = run(["--out-dir", str(tmp_path), "check", "cotorsion", "--left", fx("S1.json"),
                "--right", fx("S0.json"), "--seed", "7", "--samples", "3"])
    assert code == EXIT_FAILED
    verdict = load(tmp_path / "check_cotorsion.json").value
    assert not verdict.passed and verdict.counterexamples[0][:2] == (7, 0)


def test_usage_errors():
    assert run(["check", "thick"]) == EXIT_USAGE
    assert run(["nieznane"]) == EXIT_USAGE
    assert run([]) == EXIT_USAGE
    assert run(["check", "cotorsion", "--instance", "keps", "--ring", "Z", "--seed", "1"]) == EXIT_USAGE
