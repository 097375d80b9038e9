import io
import json
import os
import shutil

import pytest

from galcohom.cli import fmt_group, main, run
from galcohom.datum import DATA_DIR, builder_paper_example, serialize_datum
from galcohom.groups import FiniteGroup
from galcohom.modules import GammaModule, PlaceOrbit, PlaceSet
from galcohom.datum import ArithmeticDatum


def call(*argv):
    out = io.StringIO()
    code, rep = run(list(argv), out)
    return code, out.getvalue(), rep


def data(name):
    return os.path.join(DATA_DIR, name)


@pytest.fixture
def uncovered_file(tmp_path):
    G = FiniteGroup.klein()
    a = G.generated([1])
    d = ArithmeticDatum(G, GammaModule.trivial(G, [0]), PlaceSet(G, [PlaceOrbit(G, a, "finite", "v")]),
                        "number", name="klein-uncovered")
    path = tmp_path / "klein-uncovered.json"
    path.write_text(serialize_datum(d), encoding="utf-8")
    return str(path)


# ---------------------------------------------------------------- required outputs

def test_example_sha1_line():
    code, text, _ = call("example", "paper-8.6", "--run", "sha1")
    assert code == 0
    assert "Sha¹ ≅ Z/2, generator 4·η₈, cross-check: OK" in text


def test_sha2_klein_line():
    code, text, _ = call("sha2", data("klein-sansuc.json"))
    assert code == 0
    assert "Sha² ≅ Z/2 (predicted n/l = 2): match" in text


def test_tate_s3_line():
    code, text, _ = call("tate", "--degree", "-2", "--datum", data("s3-trivial.json"))
    assert code == 0
    assert "H^{−2}(S₃, Z) ≅ Z/2" in text


def test_main_returns_exit_code():
    assert main(["validate", data("paper-8.6.json"), "--format", "json"]) == 0


# ---------------------------------------------------------------- exit codes

def test_usage_errors_exit_two():
    assert call()[0] == 2
    assert call("frobnicate")[0] == 2
    assert call("sha1", "/nonexistent/file.json")[0] == 2
    assert call("example")[0] == 2


def test_uncovered_datum_exits_one_and_names_class(uncovered_file):
    for cmd in ("sha1", "sha2"):
        code, text, rep = call(cmd, uncovered_file)
        assert code == 1
        assert "<b>" in text
        assert "<b>" in rep["result"]["uncovered"]


def test_uncovered_datum_validate_exits_one(uncovered_file):
    code, text, _ = call("validate", uncovered_file)
    assert code == 1 and "uncovered" in text


def test_malformed_datum_exits_one(tmp_path):
    p = tmp_path / "bad.json"
    p.write_text("{not json", encoding="utf-8")
    code, text, rep = call("sha1", str(p))
    assert code == 1 and "malformed JSON" in text
    assert rep["exit_code"] == 1


# ---------------------------------------------------------------- JSON reports

@pytest.mark.parametrize("argv", [
    ("sha1", "paper-8.6.json"),
    ("sha2", "klein-sansuc.json"),
    ("tate", "--degree", "-2", "--datum", "s3-trivial.json"),
    ("validate", "paper-8.6.json"),
    ("h1", "paper-8.6.json"),
])
def test_json_is_byte_deterministic(argv):
    argv = list(argv) + ["--format", "json"]
    first = call(*argv)[1]
    second = call(*argv)[1]
    assert first == second
    rep = json.loads(first)
    assert rep["schema"] == 1 and rep["argv"] == argv and rep["exit_code"] == 0
    assert len(rep["input_digest"]) == 64


def test_json_matches_text_sha1():
    _, text, _ = call("sha1", "paper-8.6.json")
    _, js, _ = call("sha1", "paper-8.6.json", "--format", "json")
    rep = json.loads(js)["result"]
    s = rep["sha1"]
    assert "Sha¹ ≅ %s" % fmt_group(s["kernel"]) in text
    assert s["kernel"] == s["cokernel"] == [2] and s["cross_check"]
    assert s["generators"][0]["expression"] == "4·η₈"
    assert s["generators"][0]["canonical"] == [0, 4]
    cert = rep["summand"]["certificate"]
    assert rep["summand"]["verdict"] == "not-summand"
    assert "p = %d, b = %s" % (cert["p"], cert["b_expression"]) in text


def test_input_digest_tracks_file_bytes(tmp_path):
    p = tmp_path / "paper.json"
    text = serialize_datum(builder_paper_example())
    p.write_text(text, encoding="utf-8")
    a = json.loads(call("validate", str(p), "--format", "json")[1])["input_digest"]
    b = json.loads(call("validate", "paper-8.6.json", "--format", "json")[1])["input_digest"]
    assert a == b


# ---------------------------------------------------------------- other commands

@pytest.mark.parametrize("argv", [
    ("h1ab", "paper-8.6.json"),
    ("h2ab", "klein-sansuc.json"),
    ("local", "paper-8.6.json"),
    ("validate", "s3-trivial.json"),
    ("example", "paper-8.6"),
])
def test_other_commands_succeed(argv):
    code, text, _ = call(*argv)
    assert code == 0 and text.strip()


# ---------------------------------------------------------------- batch mode

def test_batch_over_shipped_data(tmp_path):
    for f in ("paper-8.6.json", "klein-sansuc.json", "s3-trivial.json"):
        shutil.copy(data(f), tmp_path / f)
    code, text, rep = call("validate", "--all", str(tmp_path))
    assert code == 0
    assert [f["file"] for f in rep["files"]] == ["klein-sansuc.json", "paper-8.6.json", "s3-trivial.json"]
    js1 = call("validate", "--all", str(tmp_path), "--format", "json")[1]
    js2 = call("validate", "--all", str(tmp_path), "--format", "json")[1]
    assert js1 == js2


def test_batch_reports_worst_exit_code(tmp_path, uncovered_file):
    # the fixture already wrote klein-uncovered.json into tmp_path
    shutil.copy(data("paper-8.6.json"), tmp_path / "paper-8.6.json")
    code, text, rep = call("sha1", "--all", str(tmp_path))
    assert code == 1
    codes = {f["file"]: f["exit_code"] for f in rep["files"]}
    assert codes == {"klein-uncovered.json": 1, "paper-8.6.json": 0}


def test_batch_needs_directory():
    assert call("validate", "--all", "/nonexistent")[0] == 2


def test_sansuc_example_with_comma_labels():
    code, text, _ = call("example", "sansuc", "--group", "c2xc4", "--classes", "(1,0),(0,2),(1,2)", "--run", "sha2")
    assert code == 0
    assert "Sha² ≅ Z/2 (predicted n/l = 2): match" in text


def test_sansuc_example_unknown_label_is_usage_error():
    assert call("example", "sansuc", "--group", "klein", "--classes", "a,zz")[0] == 2


def test_hinich_command_reports_exactness():
    code, text, rep = call("hinich", "--datum", data("s3-trivial.json"), "--vector", "2", "--format", "json")
    assert code == 0 and rep["result"]["all_exact"]
    assert [n["value"] for n in rep["result"]["nodes"]][:3] == ["Z/2", "Z/2", "Z/2"]
