import logging

import pytest

from chevalley_operator import (
    GradingError, build_c1hat, check_nonnegative, expected_q_power, require_graded, validate_grading
)
from table_parser import parse_table
from tests.conftest import CASE_NAMES, PROJECTIVE_NAMES, load_bundled
from tests.oracles import REFERENCE_MATRICES

EXPECTED_HISTOGRAMS = {
    "case1_n3": (1, 1, 2, 3, 3, 3, 3, 2, 1, 1),
    "case2": (1, 1, 1, 2, 2, 2, 2, 1, 1, 1),
    "case5": (1, 1, 2, 2, 2, 2, 1, 1),
}


@pytest.mark.parametrize("source_degree, target_degree, r, expected", [
    (0, 1, 2, 0),
    (1, 0, 2, 1),
    (9, 0, 5, 2),
    (3, 1, 2, "non-integral"),
    (1, 5, 3, "negative"),
])
def test_expected_q_power(source_degree, target_degree, r, expected):
    assert expected_q_power(source_degree, target_degree, r) == expected


@pytest.mark.parametrize("name", CASE_NAMES + PROJECTIVE_NAMES)
def test_bundled_tables_are_graded(name):
    report = validate_grading(load_bundled(name))
    assert report.ok
    assert report.violations == ()
    assert report.poincare_symmetric


@pytest.mark.parametrize("name", CASE_NAMES)
def test_degree_histograms(name):
    assert validate_grading(load_bundled(name)).degree_histogram == EXPECTED_HISTOGRAMS[name]


@pytest.mark.parametrize("name", CASE_NAMES)
def test_c1hat_matches_reference_transcription(name):
    matrix = build_c1hat(load_bundled(name))
    assert [list(row) for row in matrix.entries] == REFERENCE_MATRICES[name]
    assert check_nonnegative(matrix)


@pytest.mark.parametrize("name", CASE_NAMES + PROJECTIVE_NAMES)
def test_c1hat_column_sums_are_multiples_of_m(name):
    table = load_bundled(name)
    matrix = build_c1hat(table)
    for i in range(matrix.dim):
        assert sum(matrix.column(i)) % table.anticanonical_multiple == 0


def test_c1hat_column_of_hyperplane_class():
    matrix = build_c1hat(load_bundled("case1_n3"))
    column = dict(zip(matrix.labels, matrix.column(1)))
    assert column["a1"] == 10
    assert column["a2"] == 5
    assert sum(column.values()) == 15


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_projective_space_is_scaled_cyclic_shift(n):
    matrix = build_c1hat(load_bundled(f"p{n}"))
    size = n + 1
    for j in range(size):
        for i in range(size):
            expected = size if j == (i + 1) % size else 0
            assert matrix.entries[j][i] == expected
    assert matrix.trace() == 0


def test_wrong_q_power_is_reported_and_rejected():
    text = (
        "name broken\nfano_index 2\nc1_multiple 2\n"
        "basis one 0\nbasis h 1\n"
        "chev one : 1 q0 h\nchev h : 1 q0 one\n"
    )
    table = parse_table(text)
    report = validate_grading(table)
    assert not report.ok
    assert len(report.violations) == 1
    violation = report.violations[0]
    assert (violation.source, violation.target, violation.q_power, violation.expected) == ("h", "one", 0, 1)

    with pytest.raises(GradingError) as error:
        require_graded(table)
    assert error.value.report == report
    assert "h->one: wrote q0, expected 1" in str(error.value)


def test_non_integral_q_power():
    text = (
        "name odd\nfano_index 2\nc1_multiple 2\n"
        "basis one 0\nbasis h 1\nbasis x 2\n"
        "chev one : 1 q0 h\nchev h : 1 q0 x\nchev x : 1 q1 one\n"
    )
    table = parse_table(text)
    report = validate_grading(table)
    assert [v.expected for v in report.violations] == ["non-integral"]
    with pytest.raises(GradingError, match="x->one: wrote q1, expected non-integral"):
        require_graded(table)


def test_check_nonnegative_on_plain_rows():
    assert check_nonnegative([[0, 1], [2, 0]])
    assert not check_nonnegative([[0, -1], [2, 0]])


def test_empty_row_gives_zero_column(caplog):
    caplog.set_level(logging.WARNING)
    text = (
        "name sink\nfano_index 2\nc1_multiple 2\n"
        "basis one 0\nbasis h 1\n"
        "chev one : 1 q0 h\nchev h :\n"
    )
    matrix = build_c1hat(parse_table(text))
    assert matrix.column(1) == (0, 0)
    assert "zero" in caplog.text
