import io
import json
import subprocess
import sys

import pytest

from hamcert.catalog import instances, instantiate
from hamcert.cli import main
from hamcert.document import (DocumentError, dump_document, parse_document, profile_document)


def run(argv):
    out = io.StringIO()
    import hamcert.cli as cli
    args = cli.build_parser().parse_args(argv)
    code = args.func(args, out)
    return code, out.getvalue()


def structured(argv):
    code, text = run(argv + ["--format", "structured"])
    return code, json.loads(text)


def test_catalog_type1_sample_has_equal_gaps():
    code, doc = structured(["catalog", "--type", "1"])
    assert code == 0
    assert doc["sample"]["t0"] == doc["sample"]["t1"]
    assert doc["golden"]["match"]


def test_catalog_type3_shows_relation():
    code, text = run(["catalog", "--type", "3", "--k", "2"])
    assert code == 0
    assert "alpha0 - 3*t0 - t1 = 0" in text


def test_catalog_type5_equalities():
    code, doc = structured(["catalog", "--type", "5"])
    assert code == 0
    assert {"alpha0 - t0 = 0", "t0 - t2 = 0", "-t0 + alpha_max = 0"} <= set(doc["equalities"])


def test_catalog_6a_obstructed_cites_representability():
    code, doc = structured(["catalog", "--type", "6a", "--g", "1", "--g1", "1"])
    assert code == 2
    assert any("representability" in tag for tag in doc["certificate"]["obstructions"])


def test_empty_profile_exit_2(tmp_path):
    path = tmp_path / "empty.json"
    path.write_text(json.dumps({"min": {"kind": "point"}, "walls": [], "max": {"kind": "point"}}))
    assert run(["verify", str(path)])[0] == 2


@pytest.mark.parametrize("doc, message", [
    ({"min": {"kind": "point"}, "max": {"kind": "point"}, "extra": 1}, "unknown field"),
    ({"min": {"kind": "point"}, "walls": [{"index": 2, "kind": "point", "colour": 1}], "max": {"kind": "point"}}, "unknown field"),
    ({"min": {"kind": "surface", "genus": 0}, "max": {"kind": "point"}}, "normal_chern"),
    ({"min": {"kind": "point"}, "max": {"kind": "surface", "genus": 0, "normal_chern": 1}}, "derived"),
    ({"min": {"kind": "point"}, "max": {"kind": "point"}, "fixed": {"zz": 1}}, "unknown parameter"),
    ({"min": {"kind": "point"}, "walls": [{"index": 2, "kind": "surface", "genus": 0, "dual_class": [1.5]}], "max": {"kind": "point"}}, "integer"),
])
def test_malformed_documents(doc, message):
    with pytest.raises(DocumentError, match=message):
        parse_document(doc)


def test_malformed_exit_1(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text("{not json")
    assert run(["verify", str(path)])[0] == 1
    path.write_text(json.dumps({"min": {"kind": "point"}, "walls": [{"index": 4, "kind": "point"}],
                                "max": {"kind": "point"}}))
    code, doc = structured(["verify", str(path)])
    assert code == 1 and "index-4 point" in doc["message"]


def test_emit_round_trip_every_instance(tmp_path):
    for tid, params, variant in instances(include_variants=True):
        profile = instantiate(tid, params, variant)
        assert parse_document(json.loads(dump_document(profile))) == profile


def test_emit_then_verify_gives_identical_report(tmp_path):
    path = tmp_path / "6b.json"
    code, direct = structured(["catalog", "--type", "6b", "--k", "0", "--emit", str(path)])
    code2, again = structured(["verify", str(path)])
    direct.pop("golden")
    again.pop("path")
    assert (code, direct) == (code2, again)


def test_batch_directory(tmp_path):
    for i, tid in enumerate(["1", "2", "5"]):
        (tmp_path / f"p{i}.json").write_text(dump_document(instantiate(tid)))
    code, doc = structured(["verify", str(tmp_path)])
    assert code == 0 and len(doc["results"]) == 3
    (tmp_path / "p9.json").write_text(dump_document(instantiate("6a", {"g": 2})))
    assert run(["verify", str(tmp_path), "--jobs", "2"])[0] == 2


def test_no_normalize_and_custom_normalization():
    _, doc = structured(["catalog", "--type", "1", "--no-normalize"])
    assert doc["normalization"] == {}
    _, doc = structured(["catalog", "--type", "1", "--normalize", "t0=3/2"])
    assert doc["sample"] == {"t0": "3/2", "t1": "3/2"}


def test_explain_appends_text():
    _, text = run(["catalog", "--type", "1", "--explain"])
    assert "--" in text


def test_structured_report_has_every_field():
    _, doc = structured(["catalog", "--type", "3", "--k", "1"])
    for key in ("intervals", "walls", "b_max", "twist", "constraints", "equalities", "sample", "certificate"):
        assert key in doc
    assert all(isinstance(v, str) for v in doc["sample"].values())


def test_list_and_module_entry_point():
    code, text = run(["catalog", "--list"])
    assert code == 0 and "6b" in text
    proc = subprocess.run([sys.executable, "-m", "hamcert", "catalog", "--type", "4"], capture_output=True, text=True)
    assert proc.returncode == 0 and "twisted" in proc.stdout


def test_main_returns_exit_code():
    assert main(["catalog", "--type", "6a", "--g", "3", "--format", "structured"]) == 2
