import json
import math

import numpy as np
import pytest
from corpus import composition_corpus, gadget_corpus
from hypothesis import given, settings
from hypothesis import strategies as st

from subwalk.dnc import DigraphInstance, build_dstcon_graph
from subwalk.graphcore import (
    all_assignments,
    complexity,
    decide_exact,
    realize,
    validate,
)
from subwalk.jsonio import (
    GRAPH_SCHEMA,
    SchemaError,
    decode_float,
    decode_matrix,
    digraph_from_json,
    digraph_to_json,
    dumps,
    encode_float,
    encode_matrix,
    graph_from_json,
    graph_to_doc,
    graph_to_json,
    loads,
)


def _graphs():
    for g in gadget_corpus():
        yield g.name, g
    for case in composition_corpus()[:6]:
        yield case.name, case.composed
    yield "dstcon3", build_dstcon_graph(DigraphInstance(3, [], 0, 2))


GRAPHS = list(_graphs())


@pytest.mark.parametrize("name, g", GRAPHS, ids=[n for n, _ in GRAPHS])
def test_graph_round_trip_is_byte_identical(name, g):
    text = graph_to_json(g)
    back = graph_from_json(text)
    assert graph_to_json(back) == text
    assert np.array_equal(back.b_minus, g.b_minus) and back.scaling == g.scaling
    assert validate(back).ok


def test_round_trip_preserves_decisions_and_costs():
    g = gadget_corpus()[0]
    back = graph_from_json(graph_to_json(g))
    for x in all_assignments(g.variables):
        assert decide_exact(realize(back, x)) == decide_exact(realize(g, x))
    assert tuple(complexity(back)) == tuple(complexity(g))


def test_output_is_canonical():
    text = graph_to_json(gadget_corpus()[0])
    assert text.endswith("\n") and "\n" not in text[:-1]
    assert dumps(json.loads(text)) == text


class TestFloats:
    @settings(max_examples=300, deadline=None)
    @given(st.floats(allow_nan=False))
    def test_round_trip(self, x):
        assert decode_float(loads(dumps([encode_float(x)]))[0]) == x

    def test_nonfinite_as_strings(self):
        assert encode_float(math.inf) == "inf" and encode_float(-math.inf) == "-inf"
        assert math.isnan(decode_float(encode_float(math.nan)))

    @pytest.mark.parametrize("bad", ["1.5", True, None, [1]])
    def test_rejects_non_numbers(self, bad):
        with pytest.raises(SchemaError):
            decode_float(bad)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 5), st.integers(0, 5), st.integers(0, 2**32 - 1))
def test_matrix_round_trip(rows, cols, seed):
    rng = np.random.default_rng(seed)
    m = (rng.normal(size=(rows, cols)) + 1j * rng.normal(size=(rows, cols))) * (
        rng.random((rows, cols)) < 0.5
    )
    assert np.array_equal(decode_matrix(loads(dumps(encode_matrix(m))), "m"), m)


class TestSchemaErrors:
    def _doc(self):
        return graph_to_doc(gadget_corpus()[0])

    def test_invalid_json(self):
        with pytest.raises(SchemaError, match="invalid JSON"):
            graph_from_json("{")

    def test_wrong_schema(self):
        doc = self._doc()
        doc["schema"] = "other/1"
        with pytest.raises(SchemaError, match="schema"):
            graph_from_json(dumps(doc))
        assert doc.get("schema") != GRAPH_SCHEMA

    def test_missing_field(self):
        doc = self._doc()
        del doc["edges"]
        with pytest.raises(SchemaError, match="edges"):
            graph_from_json(dumps(doc))

    def test_bad_literal(self):
        doc = self._doc()
        doc["edges"][0]["literal"] = {"var": -1}
        with pytest.raises(SchemaError, match="literal"):
            graph_from_json(dumps(doc))

    def test_matrix_entry_out_of_range(self):
        with pytest.raises(SchemaError, match="out of range"):
            decode_matrix({"shape": [1, 1], "entries": [[3, 0, 1.0, 0.0]]}, "m")

    def test_top_level_must_be_object(self):
        with pytest.raises(SchemaError):
            graph_from_json("[]")


class TestDigraphJson:
    def test_round_trip(self):
        inst = DigraphInstance(4, [(0, 1), (2, 3)], 0, 3)
        text = digraph_to_json(inst)
        assert digraph_from_json(text) == inst
        assert digraph_to_json(digraph_from_json(text)) == text

    def test_schema_is_optional(self):
        inst = digraph_from_json('{"n":2,"edges":[[0,1]],"s":0,"t":1}')
        assert inst.edges == {(0, 1)}

    @pytest.mark.parametrize(
        "text",
        [
            '{"n":2,"edges":[[0,2]],"s":0,"t":1}',
            '{"n":"2","edges":[],"s":0,"t":1}',
            '{"n":2,"edges":[[0]],"s":0,"t":1}',
        ],
    )
    def test_invalid(self, text):
        with pytest.raises(SchemaError):
            digraph_from_json(text)
