import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from findim.presentation import (
    FIXTURE_TEXT,
    Document,
    ParseError,
    fixture,
    fixture_document,
    format_document,
    parse,
)
from strategies import documents



@settings(max_examples=1000, deadline=None)
@given(documents())
def test_round_trip(text):
    doc = parse(text)
    again = parse(format_document(doc))
    assert again == doc
    assert format_document(again) == format_document(doc)


@settings(max_examples=300, deadline=None)
@given(st.text(max_size=80))
def test_parse_is_total(text):
    try:
        parse(text)
    except ParseError as exc:
        assert exc.line >= 1 and exc.col >= 1


@pytest.mark.parametrize("name", ["A2", "LOOP2", "LOOP3", "SQUARE"])
def test_fixture_fixed_point(name):
    doc = parse(FIXTURE_TEXT[name])
    assert parse(format_document(doc)) == doc


def test_fixture_shapes():
    a2 = fixture("A2")
    assert len(a2.vertices) == 2 and len(a2.arrows) == 1 and not a2.relations
    loop2 = fixture("LOOP2")
    assert loop2.nilpotency == 2 and len(loop2.relations) == 1


def test_undeclared_vertex_is_semantic_error():
    with pytest.raises(ParseError) as err:
        parse("algebra X { field 7; vertices 1; arrows a: 1 -> 9; nilpotency 2; }")
    assert err.value.kind == "semantic" and "'9'" in str(err.value)
    assert err.value.line == 1


def test_syntax_error_position():
    with pytest.raises(ParseError) as err:
        parse("algebra X {\n  field 7\n  vertices 1; nilpotency 2; }")
    assert (err.value.line, err.value.kind) == (3, "syntax")


def test_relation_printing_uses_explicit_coefficients():
    doc = parse(FIXTURE_TEXT["SQUARE"])
    out = format_document(doc)
    assert "1*c*d - 1*e*f" in out


def test_empty_list_prints_empty_block():
    doc = parse("list L over A2 { }", fixture_document())
    assert "{ }" in format_document(doc)


def test_wrong_matrix_shape_rejected():
    with pytest.raises(ParseError):
        parse("module M over A2 { dims 1=1 2=2; arrow a = [[1, 2]]; }", fixture_document())


def test_document_lookup():
    doc = fixture_document()
    assert isinstance(doc, Document) and doc.get("GLUE2").source == "A2"
