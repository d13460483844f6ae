import json

import numpy as np
import pytest

from locc_ops.documents import (
    dumps, graph_from_doc, graph_to_doc, number, protocol_from_json, protocol_to_json,
    read_json, report_document, state_set_from_doc, state_set_to_doc,
)
from locc_ops.errors import InputError
from locc_ops.protocol import Dead, Step, eq11_protocol, simulate
from locc_ops.synthesis import synthesize

from conftest import DOUBLE_CYCLE, graph_from_pairs


def test_number_folds_negative_zero_and_rounds():
    assert str(number(-0.0)) == "0.0"
    assert number(1 / 3, 6) == 0.333333


def test_state_set_document_preserves_amplitudes(eq11):
    doc = json.loads(dumps(state_set_to_doc(eq11)))
    back = state_set_from_doc(doc)
    assert back.labels == eq11.labels
    assert back.tol == eq11.tol
    for s, t in zip(eq11.states, back.states):
        for u, v in zip(s.locals, t.locals):
            assert np.array_equal(u, v)


@pytest.mark.parametrize("mutate, location", [
    (lambda d: d.update(dims=[3, 3, 2]), "states[0][2]"),
    (lambda d: d["states"][1][0].__setitem__(0, [1.0]), "states[1][0][0]"),
    (lambda d: d["states"][2][2].__setitem__(0, [5.0, 0.0]), "states[2][2]"),
    (lambda d: d.update(version="other/9"), "version"),
    (lambda d: d.update(parties=2), "parties"),
])
def test_bad_documents_name_the_location(eq11, mutate, location):
    doc = json.loads(dumps(state_set_to_doc(eq11)))
    mutate(doc)
    with pytest.raises(InputError) as info:
        state_set_from_doc(doc)
    assert info.value.location == location


def test_tol_override_wins(eq11):
    doc = state_set_to_doc(eq11)
    assert state_set_from_doc(doc, tol=1e-6).tol == 1e-6


def test_read_json_reports_position(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text('{"dims": [2,\n')
    with pytest.raises(InputError) as info:
        read_json(path)
    assert info.value.location.startswith(str(path))
    with pytest.raises(InputError):
        read_json(tmp_path / "missing.json")


def test_graph_spec_is_one_based():
    g = graph_from_doc({"states": 5, "parties": 2,
                        "edges": {str(p): [list(e) for e in pairs] for p, pairs in DOUBLE_CYCLE.items()}})
    assert g == graph_from_pairs(5, 2, DOUBLE_CYCLE)
    assert graph_to_doc(g)["edges"]["1"] == [[1, 4], [1, 5], [2, 3], [2, 5], [3, 4]]


@pytest.mark.parametrize("doc", [
    {"states": 3, "parties": 2, "edges": {"3": []}},
    {"states": 3, "parties": 2, "edges": {"1": [[1, 1]]}},
    {"states": 3, "parties": 2, "edges": {"1": [[1, 4]]}},
    {"states": 3, "parties": 2},
])
def test_graph_spec_errors(doc):
    with pytest.raises(InputError):
        graph_from_doc(doc)


def test_protocol_json_survives_a_reload(eq11):
    tree = eq11_protocol()
    doc = json.loads(dumps(protocol_to_json(tree)))
    assert doc["type"] == "step" and doc["party"] == 3
    back = protocol_from_json(doc)
    assert simulate(back, eq11).success == pytest.approx(simulate(tree, eq11).success)


def test_dead_leaf_json():
    assert protocol_to_json(Dead((2, 5), ((2, 5),))) == {"type": "dead", "states": [2, 5], "pairs": [[2, 5]]}


def test_protocol_errors_carry_the_path():
    bad = {"type": "step", "party": 1,
           "outcomes": [{"label": "P", "kraus": [[[1, 0], [0, 0]], [[0, 0], [0, 0]]]}],
           "branches": [{"type": "identified", "state": 1}]}
    with pytest.raises(InputError) as info:
        protocol_from_json(bad)
    assert info.value.location == "protocol"
    with pytest.raises(InputError):
        protocol_from_json({"type": "nope"})


def test_report_document_is_sorted_and_stable(eq11):
    verdict = synthesize(eq11)
    doc = report_document("synthesize", eq11, verdict=verdict.name, protocol=verdict.protocol,
                          simulation=verdict.report)
    text = dumps(doc)
    assert text == dumps(json.loads(text))
    assert doc["relation_vector"] == {"counts": [5, 3, 2], "canonical": [5, 3, 2]}
    assert doc["success"] == pytest.approx([1.0] * 5, abs=1e-9)
    assert doc["local_ranks"] == [3, 2, 3]
    assert doc["edges"]["3"] == [[2, 4], [3, 5]]
    assert isinstance(doc["protocol"], dict) and doc["protocol"]["type"] == "step"


def test_step_from_json_rebuilds_measurement():
    doc = {"type": "step", "party": 2,
           "outcomes": [{"label": "A", "kraus": [[[1, 0], [0, 0]], [[0, 0], [0, 0]]]},
                        {"label": "B", "kraus": [[[0, 0], [0, 0]], [[0, 0], [1, 0]]]}],
           "branches": [{"type": "identified", "state": 1}, {"type": "ambiguous", "states": [2, 3]}]}
    node = protocol_from_json(doc)
    assert isinstance(node, Step)
    assert node.measurement.party == 1
    assert node.measurement.labels == ("A", "B")
