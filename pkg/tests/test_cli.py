import io
import json
import random
from collections import Counter

import pytest
from hypothesis import given, settings, strategies as st

from polyspan import poly as pl
from polyspan.cli import main
from polyspan.document import Document, DocumentError, dumps, parse_document, serialize_document
from polyspan.finset import FinSet
from polyspan.sampling import random_general_cell, random_poly, random_span


def run(argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(argv, out, err)
    return code, out.getvalue(), err.getvalue()


def write(tmp_path, raw, name="doc.json"):
    path = tmp_path / name
    path.write_text(json.dumps(raw))
    return str(path)


def m(dom, cod, table):
    return {"dom": dom, "cod": cod, "table": table}


# x + x^2 then 1 + x, both univariate
UNIVARIATE = {
    "sets": {"one": 1},
    "maps": {"bang3": m(3, "one", [0, 0, 0]), "bang1": m(1, "one", [0])},
    "polynomials": {
        "P": {"s": "bang3", "p": m(3, 2, [0, 1, 1]), "t": m(2, "one", [0, 0])},
        "Q": {"s": "bang1", "p": m(1, 2, [1]), "t": m(2, "one", [0, 0])},
        "id": {"s": m(1, 1, [0]), "p": m(1, 1, [0]), "t": m(1, 1, [0])},
    },
    "spans": {"S": {"left": m(2, 1, [0, 0]), "right": m(2, 2, [1, 0])}},
    "families": {"three": {"index": "one", "sizes": [3]}, "pair": {"index": 2, "entries": [["a"], ["b", ["c", 1]]]}},
}


def test_round_trip_example():
    doc = parse_document(UNIVARIATE)
    again = parse_document(json.loads(dumps(doc)))
    assert dumps(again) == dumps(doc)
    assert again.families["pair"].entries == (("a",), ("b", ("c", 1)))


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**32))
def test_round_trip_random(seed):
    rng = random.Random(seed)
    X, Y = FinSet(rng.randint(1, 3)), FinSet(rng.randint(1, 3))
    cell = random_general_cell(rng, X, Y, 2)
    doc = Document(sets={"X": X}, spans={"S": random_span(rng, X, Y, 3)},
                   polynomials={"P": random_poly(rng, X, Y, 3)}, cells={"c": cell})
    raw = serialize_document(doc)
    again = parse_document(json.loads(json.dumps(raw)))
    assert serialize_document(again) == raw
    assert again.cells["c"] == cell


def test_compose_identity_is_bit_identical(tmp_path):
    path = write(tmp_path, UNIVARIATE)
    code, out, _ = run(["compose", "Q", "id", "--in", path])
    assert code == 0
    polys = json.loads(out)["polynomials"]
    assert polys["composite"] == polys["Q"]


def test_compose_univariate_example(tmp_path):
    path = write(tmp_path, UNIVARIATE)
    dot = tmp_path / "c.dot"
    code, out, _ = run(["compose", "P", "Q", "--in", path, "--emit-dot", str(dot)])
    assert code == 0
    doc = parse_document(json.loads(out))
    R = doc.polynomials["composite"]
    assert Counter(R.fiber_sizes()) == Counter([0, 1, 2])
    assert {"dpb.p", "dpb.q", "dpb.r", "pb1.proj1", "pb2.proj2"} <= set(doc.maps)
    text = dot.read_text()
    assert text.startswith("digraph") and all(f"cluster_{c}" in text for c in ("pb1", "dpb", "pb2"))


def test_compose_spans_and_embedded_span(tmp_path):
    path = write(tmp_path, UNIVARIATE)
    code, out, _ = run(["compose", "S", "S", "--kind", "span", "--in", path])
    assert code == 2  # 1 -> 2 cannot follow itself
    code, out, _ = run(["compose", "S", "S", "--kind", "poly", "--in", path])
    assert code == 2
    raw = dict(UNIVARIATE, spans={"S": {"left": m(2, 2, [0, 0]), "right": m(2, 2, [1, 0])}})
    path = write(tmp_path, raw, "square.json")
    code, out, _ = run(["compose", "S", "S", "--kind", "span", "--in", path])
    assert code == 0 and json.loads(out)["spans"]["composite"]["left"]["dom"] == 2
    code, out, _ = run(["compose", "S", "S", "--kind", "poly", "--in", path])
    assert code == 0 and "composite" in json.loads(out)["polynomials"]


def test_malformed_table_reports_field_path(tmp_path):
    raw = json.loads(json.dumps(UNIVARIATE))
    raw["polynomials"]["P"]["p"]["table"][2] = 5
    code, _, err = run(["compose", "P", "Q", "--in", write(tmp_path, raw)])
    assert code == 2 and "polynomials.P.p.table[2]" in err


@pytest.mark.parametrize("raw, path", [
    ({"sets": {"X": -1}}, "sets.X"),
    ({"maps": {"f": m(2, 1, [0])}}, "maps.f.table"),
    ({"maps": {"f": m("Y", 1, [])}}, "maps.f.dom"),
    ({"spans": {"S": {"left": "g", "right": m(0, 1, [])}}}, "spans.S.left"),
    ({"families": {"A": {"index": 2, "sizes": [1]}}}, "families.A.sizes"),
    ({"cells": {"c": {"kind": "weird"}}}, "cells.c.kind"),
    ({"extra": {}}, "$"),
])
def test_document_errors(raw, path):
    with pytest.raises(DocumentError) as exc:
        parse_document(raw)
    assert exc.value.path == path


def test_invalid_json_and_missing_file(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{")
    assert run(["eval", "P", "three", "--in", str(bad)])[0] == 2
    assert run(["eval", "P", "three", "--in", str(tmp_path / "missing.json")])[0] == 2


def test_unknown_names_exit_2(tmp_path):
    path = write(tmp_path, UNIVARIATE)
    assert run(["compose", "P", "nope", "--in", path])[0] == 2
    assert run(["eval", "nope", "three", "--in", path])[0] == 2
    assert run(["eval", "P", "nope", "--in", path])[0] == 2
    assert run(["eval", "S", "three", "--in", path])[0] == 0
    assert run(["eval", "S", "pair", "--in", path])[0] == 2


def test_eval_identity_returns_input(tmp_path):
    path = write(tmp_path, UNIVARIATE)
    code, out, _ = run(["eval", "id", "three", "--in", path])
    assert code == 0
    assert json.loads(out)["families"]["result"] == {"index": 1, "entries": [[0, 1, 2]]}


def test_eval_square(tmp_path):
    raw = {"polynomials": {"sq": {"s": m(2, 1, [0, 0]), "p": m(2, 1, [0, 0]), "t": m(1, 1, [0])}},
           "families": {"three": {"index": 1, "sizes": [3]}}}
    out = tmp_path / "out.json"
    code, _, _ = run(["eval", "sq", "three", "--in", write(tmp_path, raw), "--out", str(out)])
    assert code == 0
    entries = json.loads(out.read_text())["families"]["result"]["entries"]
    assert len(entries[0]) == 9 and len({json.dumps(e) for e in entries[0]}) == 9


def test_eval_univariate_counts(tmp_path):
    raw = json.loads(json.dumps(UNIVARIATE))
    comp = pl.compose_poly(parse_document(raw).polynomials["Q"], parse_document(raw).polynomials["P"])
    raw["polynomials"]["R"] = serialize_document(Document(polynomials={"R": comp}))["polynomials"]["R"]
    counts = []
    for n in range(4):
        raw["families"]["x"] = {"index": 1, "sizes": [n]}
        code, out, _ = run(["eval", "R", "x", "--in", write(tmp_path, raw)])
        assert code == 0
        counts.append(len(json.loads(out)["families"]["result"]["entries"][0]))
    assert counts == [1, 3, 7, 13]


def test_verify_unknown_suite_and_bad_config():
    assert run(["verify", "--suite", "nope"])[0] == 2
    assert run(["verify", "--instance", "nope"])[0] == 2
    assert run(["verify", "--samples", "0"])[0] == 2
    assert run(["verify", "--max-size", "0"])[0] == 2
    assert run(["verify", "--seed", "x"])[0] == 2
    assert run([])[0] == 2


def test_verify_coproduct_distributivity_fails():
    code, out, _ = run(["verify", "--suite", "distributivity", "--instance", "monoidal-coproduct"])
    assert code == 1
    lines = [json.loads(line) for line in out.splitlines()]
    fails = [line for line in lines if line.get("verdict") == "fail"]
    assert fails and all(line["witness"] for line in fails)
    assert lines[-1]["summary"]["failed"] == len(fails)


def test_verify_product_distributivity_passes():
    assert run(["verify", "--suite", "distributivity", "--instance", "monoidal-product"])[0] == 0


def test_verify_skips_are_reported():
    code, out, _ = run(["verify", "--suite", "icons", "--instance", "sub", "--samples", "2"])
    assert code == 0
    assert json.loads(out.splitlines()[0])["verdict"] == "skip"


@pytest.mark.parametrize("suite", ["finset", "span", "mates", "beck", "generic-reduction"])
def test_verify_is_deterministic(suite, tmp_path):
    args = ["verify", "--suite", suite, "--seed", "3", "--samples", "4"]
    first = run(args)
    out = tmp_path / "r.jsonl"
    assert main(args + ["--out", str(out)], io.StringIO(), io.StringIO()) == first[0] == 0
    assert out.read_text() == first[1]
    assert run(args)[1] == first[1]


def test_verify_all_full_run():
    code, out, _ = run(["verify", "--suite", "all", "--instance", "family", "--seed", "42", "--max-size", "3",
                        "--samples", "50"])
    summary = json.loads(out.splitlines()[-1])["summary"]
    assert code == 0, [line for line in out.splitlines() if '"fail"' in line][:2]
    assert summary["failed"] == 0 and summary["verdicts"] > 1000
