import pytest

from corings.docformat import FIXTURE_NAMES, DocumentError, emit, fixture_document, load, parse, resolve
from corings.exactla import QQ


@pytest.mark.parametrize("name", FIXTURE_NAMES)
def test_fixture_documents_round_trip(name):
    text = emit(fixture_document(name))
    assert emit(parse(text)) == text
    ws = resolve(parse(text))
    assert ws.field == QQ


def test_fixture_reference_lines():
    doc = parse("algebra A = fixture:H4\nalgebra B = fixture:kC2\n")
    ws = resolve(doc)
    assert ws.algebras["A"].dim == 4 and ws.algebras["B"].dim == 2


def test_field_override():
    ws = resolve(fixture_document("E2"), "fp:5")
    assert ws.field.p == 5 and ws.hopfs["Hopf"].field.p == 5


def test_fractions_are_accepted():
    ws = resolve(parse("algebra A dim=1\n  unit 0 -> 2/2\n  (0,0,0) -> 1\nend\n"))
    assert ws.algebras["A"].unit == [1]


@pytest.mark.parametrize("text, line, col, fragment", [
    ("algebra A dim=2\n  (0,0,0) -> x\nend\n", 2, 14, "bad scalar"),
    ("hopf H algebra=Z coalgebra=W\nend\n", 1, 1, "unresolved reference 'Z'"),
    ("algebra A dim=2\n (0,0,0) -> 1\n", 1, 1, "not closed"),
    ("field fp:4\n", 1, 7, "not prime"),
    ("bogus X\nend\n", 1, 1, "unknown block kind"),
    ("algebra A dim=2\n (0,0,5) -> 1\nend\n", 1, 1, "out of range"),
])
def test_errors_carry_positions(text, line, col, fragment):
    with pytest.raises(DocumentError) as err:
        resolve(parse(text))
    assert (err.value.line, err.value.col) == (line, col)
    assert fragment in str(err.value)


def test_unknown_fixture():
    with pytest.raises(DocumentError):
        load("fixture:E9")


def test_load_from_path(tmp_path):
    p = tmp_path / "e4.txt"
    p.write_text(emit(fixture_document("E4")), encoding="utf-8")
    assert emit(load(str(p))) == emit(fixture_document("E4"))
