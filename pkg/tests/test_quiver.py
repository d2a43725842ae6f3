"""Quiver parsing, validation, classification, reflections."""

import json

import pytest

from ftors.quiver import (
    Arrow,
    QuiverError,
    ValuedQuiver,
    classify_type,
    parse_quiver,
    parse_quiver_json,
    quiver_to_json,
    radical_vector,
    reflect_at,
    subquiver_restrict,
    topological_order,
    underlying_edges,
    valuation_v,
)

A2 = "vertices 2\narrow 1 2\n"
A3 = "vertices 3\narrow 1 2\narrow 2 3\n"
D4 = "vertices 4\narrow 1 2\narrow 1 3\narrow 1 4\n"
KRONECKER = "vertices 2\narrow 1 2\narrow 1 2\n"
CYCLE3 = "vertices 3\narrow 1 2\narrow 2 3\narrow 1 3\n"
TWO_TWO = "vertices 3\narrow 1 2\narrow 1 2\narrow 2 3\narrow 2 3\n"
TWO_ONE = "vertices 3\narrow 1 2\narrow 1 2\narrow 2 3\n"
D4TILDE = "vertices 5\narrow 2 1\narrow 3 1\narrow 4 1\narrow 5 1\n"


def test_parse_text_basic():
    q = parse_quiver(A3)
    assert q.n == 3
    assert q.m == 2
    assert [(a.source, a.target) for a in q.arrows] == [(0, 1), (1, 2)]
    assert q.is_path_algebra()


def test_parse_text_comments_and_valued_arrows():
    q = parse_quiver("# cmt\nvertices 2\narrow 1 2 1 2  # tail\n")
    assert q.arrows[0].a == 1 and q.arrows[0].b == 2
    assert not q.is_path_algebra()


def test_parse_text_errors():
    for text in (
            "arrow 1 2\n",                       # arrow before vertices
            "vertices 2\nvertices 2\n",          # duplicate directive
            "vertices 2\narrow 1\n",             # wrong arity
            "vertices 2\narrow 1 3\n",           # out of range
            "vertices 2\nfoo 1 2\n",             # unknown directive
            "vertices x\n",
            "",
    ):
        with pytest.raises(QuiverError):
            parse_quiver(text)


def test_quiver_validation_errors():
    with pytest.raises(QuiverError):
        ValuedQuiver(2, (Arrow(0, 0),))                       # loop
    with pytest.raises(QuiverError):
        ValuedQuiver(2, (Arrow(0, 1), Arrow(1, 0)))           # oriented cycle
    with pytest.raises(QuiverError):
        ValuedQuiver(4, (Arrow(0, 1), Arrow(2, 3)))           # disconnected
    with pytest.raises(QuiverError):
        ValuedQuiver(2, (Arrow(0, 1, 0, 1),))                 # bad valuation
    with pytest.raises(QuiverError):
        ValuedQuiver(0, ())


def test_json_roundtrip_matches_text():
    q = parse_quiver(CYCLE3)
    q2 = parse_quiver_json(quiver_to_json(q))
    assert q2 == q
    q3 = parse_quiver_json(json.dumps({"vertices": 3, "arrows": [[1, 2], [2, 3], [1, 3]]}))
    assert q3 == q


def test_json_errors():
    with pytest.raises(QuiverError):
        parse_quiver_json("{not json")
    with pytest.raises(QuiverError):
        parse_quiver_json({"vertices": 2})
    with pytest.raises(QuiverError):
        parse_quiver_json({"vertices": 2, "arrows": [[1]]})
    with pytest.raises(QuiverError):
        parse_quiver_json({"vertices": 2, "arrows": [[1, 5]]})


def test_classify_finite_types():
    assert classify_type(parse_quiver("vertices 1\n")).display() == "A1"
    assert classify_type(parse_quiver(A2)).display() == "A2"
    for text in (A3, "vertices 3\narrow 2 1\narrow 2 3\n",
                 "vertices 3\narrow 1 2\narrow 3 2\n"):
        t = classify_type(parse_quiver(text))
        assert t.display() == "A3"
        assert t.representation_finite and not t.tame
    assert classify_type(parse_quiver(D4)).display() == "D4"


def test_classify_tame_types():
    for text, name in ((KRONECKER, "A~1"), (CYCLE3, "A~2"), (D4TILDE, "D~4")):
        t = classify_type(parse_quiver(text))
        assert t.display() == name
        assert t.tame and not t.representation_finite


def test_classify_wild_types():
    for text in (TWO_TWO, TWO_ONE, "vertices 2\narrow 1 2\narrow 1 2\narrow 1 2\n"):
        t = classify_type(parse_quiver(text))
        assert t.family == "wild"
        assert not t.representation_finite and not t.tame


def test_classify_valued_tame():
    # one arrow with valuation (1, 4) symmetrizes to the same form as two
    # parallel arrows, so the type is tame but carries no path algebra letter
    t = classify_type(ValuedQuiver(2, (Arrow(0, 1, 1, 4),)))
    assert t.family == "euclidean" and t.letter is None
    assert "valued" in t.display()


def test_valuation_v_counts_arrow_products():
    q = parse_quiver(KRONECKER)
    assert valuation_v(q, 0, 1) == 4          # (1+1) * (1+1) for the double arrow
    q2 = parse_quiver(A2)
    assert valuation_v(q2, 0, 1) == 1
    assert valuation_v(q2, 1, 0) == 0         # no arrows that way
    vq = ValuedQuiver(2, (Arrow(0, 1, 2, 3),))
    assert valuation_v(vq, 0, 1) == 6


def test_underlying_edges_merge_parallels():
    q = parse_quiver(TWO_TWO)
    assert dict(underlying_edges(q)) == {
        frozenset({0, 1}): (0, 1),
        frozenset({1, 2}): (2, 3),
    }


def test_radical_vector_tame_cases():
    assert radical_vector(parse_quiver(KRONECKER)) == (1, 1)
    assert radical_vector(parse_quiver(CYCLE3)) == (1, 1, 1)
    assert radical_vector(parse_quiver(D4TILDE)) == (2, 1, 1, 1, 1)
    with pytest.raises(QuiverError):
        radical_vector(parse_quiver(A2))


def test_topological_order_respects_arrows():
    q = parse_quiver(CYCLE3)
    order = topological_order(q)
    pos = {v: i for i, v in enumerate(order)}
    assert sorted(order) == [0, 1, 2]
    for a in q.arrows:
        assert pos[a.source] < pos[a.target]


def test_reflect_at_flips_incident_arrows():
    q = parse_quiver(A3)
    r = reflect_at(q, 2)                      # vertex 3 is a sink
    assert [(a.source, a.target) for a in r.arrows] == [(0, 1), (2, 1)]
    rr = reflect_at(r, 2)
    assert rr == q
    with pytest.raises(QuiverError):
        reflect_at(q, 1)                      # interior vertex, neither end


def test_subquiver_restrict():
    q = parse_quiver(D4)
    sub = subquiver_restrict(q, [0, 1])
    assert sub.quiver.n == 2
    assert sub.quiver.m == 1
    # vertex maps are mutually inverse on the kept set
    for small in range(sub.quiver.n):
        assert sub.new_vertex(sub.old_vertex(small)) == small
    assert q.arrows[sub.old_arrow(0)].target == sub.old_vertex(1)
    with pytest.raises(QuiverError):
        subquiver_restrict(q, [1, 2])         # drops the joining vertex
