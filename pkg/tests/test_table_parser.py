import logging

import pytest

from table_parser import TableParseError, parse_table, serialize_table
from tests.conftest import CASE_NAMES, load_bundled

P1_TEXT = """\
name p1
fano_index 2
c1_multiple 2
basis one 0
basis h 1
chev one : 1 q0 h
chev h : 1 q1 one
"""


def test_parse_projective_plane(p2_text):
    table = parse_table(p2_text)
    assert table.name == "p2"
    assert table.description == "projective space P^2"
    assert table.fano_index == 3
    assert table.anticanonical_multiple == 3
    assert table.names == ["one", "h", "h2"]
    assert table.degree_of("h2") == 2
    last = table.rows["h2"][0]
    assert (last.coefficient, last.q_power, last.target) == (1, 1, "one")


def test_comments_and_blank_lines_are_ignored():
    commented = "# header\n\n" + P1_TEXT.replace("chev h : 1 q1 one", "chev h : 1 q1 one  # quantum term") + "\n# the end\n"
    table = parse_table(commented)
    assert table.dimension == 2
    assert table.rows["h"][0].target == "one"


def test_missing_name_defaults():
    table = parse_table(P1_TEXT.replace("name p1\n", ""))
    assert table.name == "unnamed"
    assert table.description is None


@pytest.mark.parametrize("name", CASE_NAMES)
def test_bundled_cases_record_a_witness(name):
    table = load_bundled(name)
    assert table.witness is not None
    assert table.witness[0] == table.witness[-1]


def test_duplicate_basis_name_reports_line():
    text = P1_TEXT.replace("basis h 1\n", "basis h 1\nbasis h 2\n")
    with pytest.raises(TableParseError) as error:
        parse_table(text)
    assert error.value.line_number == 6
    assert "duplicate basis name" in str(error.value)


def test_unknown_target():
    with pytest.raises(TableParseError, match="unknown target"):
        parse_table(P1_TEXT.replace("1 q1 one", "1 q1 zeta"))


def test_unknown_chev_source():
    with pytest.raises(TableParseError, match="unknown element"):
        parse_table(P1_TEXT + "chev zeta : 1 q0 h\n")


def test_duplicate_chev_row():
    with pytest.raises(TableParseError, match="duplicate chev row"):
        parse_table(P1_TEXT + "chev h : 1 q1 one\n")


def test_duplicate_target_in_one_row():
    with pytest.raises(TableParseError, match="appears twice"):
        parse_table(P1_TEXT.replace("chev one : 1 q0 h", "chev one : 1 q0 h, 2 q0 h"))


@pytest.mark.parametrize("header", ["fano_index 2\n", "c1_multiple 2\n"])
def test_missing_required_header(header):
    with pytest.raises(TableParseError, match="missing"):
        parse_table(P1_TEXT.replace(header, ""))


def test_non_positive_fano_index():
    with pytest.raises(TableParseError, match="positive integer"):
        parse_table(P1_TEXT.replace("fano_index 2", "fano_index 0"))


def test_degree_zero_element_must_be_identity():
    text = P1_TEXT.replace("basis one 0", "basis unit 0").replace("one", "unit")
    with pytest.raises(TableParseError, match="must be named 'one'"):
        parse_table(text)


def test_two_degree_zero_elements():
    with pytest.raises(TableParseError, match="more than one degree-0"):
        parse_table(P1_TEXT.replace("basis h 1\n", "basis h 1\nbasis e 0\n"))


def test_hyperplane_class_required():
    text = P1_TEXT.replace("basis h 1", "basis x 1").replace(" h", " x")
    with pytest.raises(TableParseError, match="hyperplane"):
        parse_table(text)


def test_malformed_term():
    with pytest.raises(TableParseError, match="malformed term"):
        parse_table(P1_TEXT.replace("1 q0 h", "q0 h"))


def test_unrecognized_line():
    with pytest.raises(TableParseError, match="unrecognized line") as error:
        parse_table(P1_TEXT + "basis\n")
    assert error.value.line_number == 8


def test_missing_row_becomes_empty(caplog):
    caplog.set_level(logging.WARNING)
    table = parse_table(P1_TEXT.replace("chev h : 1 q1 one\n", ""))
    assert table.rows["h"] == ()
    assert "No chev line for 'h'" in caplog.text


def test_witness_must_be_closed():
    with pytest.raises(TableParseError, match="start and end"):
        parse_table(P1_TEXT + "witness one h\n")


def test_witness_with_unknown_name():
    with pytest.raises(TableParseError, match="unknown element"):
        parse_table(P1_TEXT + "witness one zeta one\n")


def test_serialized_case_parses_back_unchanged():
    table = load_bundled("case5")
    assert parse_table(serialize_table(table)) == table
