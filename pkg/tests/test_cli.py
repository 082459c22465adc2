import io
import json
from importlib import resources

import pytest

from charvar.cli import run, run_corpus
from charvar.obstructions import ObstructionReport


def corpus_path(name):
    return str(resources.files("charvar") / "corpus" / f"{name}.json")


def call(args, stdin=""):
    out, err = io.StringIO(), io.StringIO()
    code = run(args, stdin=io.StringIO(stdin), stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


def doc(**blocks):
    return json.dumps(dict(schema="charvar-input/1", **blocks))


F2 = {"generators": ["a", "b"], "relators": []}


def test_dim_examples():
    code, out, _ = call(["dim", "--format", "machine"], doc(presentation=F2, characters={"x": ["1/5", "4/5"]}))
    assert code == 0 and json.loads(out)["dim"] == 1
    code, out, _ = call(["dim", "-c", "one", "--format", "machine"],
                        doc(presentation=F2, characters={"x": ["1/5", "4/5"], "one": ["0", "0"]}))
    assert json.loads(out)["dim"] == 2 and json.loads(out)["sigma"] == [1, 2]
    code, out, _ = call(["dim", "-i", corpus_path("orbifold_line_2_3")])
    assert code == 0 and "dim H^1 = 1" in out


def test_scan_examples():
    code, out, _ = call(["scan", "-i", corpus_path("artin_2_4_4"), "--order", "4", "--depth", "2",
                         "--format", "machine"])
    rows = json.loads(out)["rows"]
    assert code == 0 and rows == [{"values": ["0", "0", "1/2"], "order": 2, "dim": 2}]
    code, out, _ = call(["scan", "--order", "12", "--format", "machine"],
                        doc(presentation={"generators": ["t"], "relators": []}))
    assert json.loads(out)["rows"] == []
    code, out, _ = call(["scan", "-i", corpus_path("orbifold_line_2_3"), "--order", "6", "--format", "machine"])
    assert [r["values"] for r in json.loads(out)["rows"]] == [["1/2", "1/3"], ["1/2", "2/3"]]


def test_output_is_deterministic():
    a = call(["scan", "-i", corpus_path("artin_2_4_4"), "--order", "8", "--format", "machine"])
    b = call(["scan", "-i", corpus_path("artin_2_4_4"), "--order", "8", "--format", "machine"])
    assert a == b


def test_orbifold_sigma():
    code, out, _ = call(["orbifold-sigma", "-i", corpus_path("fermat_pencil_3"), "--format", "machine"])
    r = json.loads(out)
    assert code == 0 and len(r["labels"]) == 2 and not r["contains_trivial"]
    code, out, _ = call(["orbifold-sigma", "--depth", "2", "--format", "machine"],
                        doc(orbifold={"compact": False, "rank": 2}))
    r = json.loads(out)
    assert r["contains_trivial"] and r["labels"] == []
    code, out, _ = call(["orbifold-sigma", "--depth", "3", "--format", "machine"],
                        doc(orbifold={"compact": True, "genus": 1}))
    r = json.loads(out)
    assert not r["contains_trivial"] and r["labels"] == []
    code, _, err = call(["orbifold-sigma"], doc(orbifold={"compact": True, "genus": 0, "multiplicities": [1]}))
    assert code == 3


def test_generic_dim_and_intersect():
    code, out, _ = call(["generic-dim", "-i", corpus_path("artin_2_4_4"), "--format", "machine"])
    assert json.loads(out)["generic_dims"] == {"V1": 1, "V2": 1, "V3": 1}
    code, out, _ = call(["intersect", "-i", corpus_path("synthetic_sum_rule_violation"), "--format", "machine"])
    r = json.loads(out)
    assert r["dim"] == 0 and [p["values"] for p in r["points"]] == [["0", "0"], ["1/2", "1/2"]]


def test_obstruct_exit_codes_and_roundtrip():
    code, out, _ = call(["obstruct", "-i", corpus_path("artin_2_4_4"), "--format", "machine"])
    assert code == 0
    rep = ObstructionReport.from_dict(json.loads(out))
    assert json.loads(rep.to_json()) == json.loads(out)
    code, out, _ = call(["obstruct", "-i", corpus_path("synthetic_sum_rule_violation")])
    assert code == 1 and "[VIOLATED] sum-rule" in out
    code, out, _ = call(["obstruct"], doc(presentation=F2))
    assert code == 0 and out.startswith("overall: satisfied")


@pytest.mark.parametrize("text", ["{", "[]", json.dumps({"schema": "other/9"}),
                                  doc(presentation={"generators": ["a"], "relators": ["b"]}),
                                  doc(presentation=F2, characters={"x": ["1/2"]}),
                                  doc(presentation=F2, components={"V": {"translation": [0, 0]}})])
def test_parse_errors(text):
    assert call(["dim"], text)[0] == 2


def test_semantic_errors():
    bad_char = doc(presentation={"generators": ["a"], "relators": ["a^2"]}, characters={"x": ["1/3"]})
    assert call(["dim"], bad_char)[0] == 3
    bad_comp = doc(presentation={"generators": ["a"], "relators": ["a^2"]},
                   components={"V": {"translation": ["1/3"], "exponents": [[]]}})
    assert call(["generic-dim"], bad_comp)[0] == 3


def test_cap_exit_code():
    code, _, err = call(["scan", "-i", corpus_path("artin_2_4_4"), "--order", "60", "--cap", "1000"])
    assert code == 4 and "216000" in err


def test_missing_file_is_parse_error():
    assert call(["dim", "-i", "/nonexistent/doc.json"])[0] == 2


def test_corpus_all_pass(monkeypatch):
    monkeypatch.setenv("CHARVAR_THREADS", "3")
    outcomes = run_corpus()
    assert {o.name for o in outcomes} >= {"sextic_nine_cusps", "torus_knot_2_5", "artin_2_4_4"}
    assert all(o.passed for o in outcomes), [(o.name, o.checks) for o in outcomes if not o.passed]
    code, out, _ = call(["corpus"])
    assert code == 0 and out.strip().endswith(f"{len(outcomes)}/{len(outcomes)} entries pass")


def test_corpus_failure_is_reported(monkeypatch):
    import charvar.cli as cli

    docs = dict(cli.corpus_documents())
    broken = json.loads(json.dumps(docs["artin_2_4_4"]))
    broken["expect"]["dims"]["xi"] = 3
    monkeypatch.setattr(cli, "corpus_documents", lambda: [("broken", broken)])
    code, out, _ = call(["corpus"])
    assert code == 1 and "FAIL  broken" in out
