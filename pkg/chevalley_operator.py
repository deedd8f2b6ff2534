import logging
from typing import List, Sequence, Union

from config import config
from models import ChevalleyTable, GradingReport, GradingViolation, OperatorMatrix

logging.basicConfig(level=config.LOG_LEVEL)
logger = logging.getLogger(__name__)


class GradingError(ValueError):
    """Raised when a table is required to be graded and is not"""

    def __init__(self, report: GradingReport):
        self.report = report
        details = "; ".join(
            f"{v.source}->{v.target}: wrote q{v.q_power}, expected {v.expected}" for v in report.violations
        )
        super().__init__(f"{len(report.violations)} grading violation(s): {details}")


def expected_q_power(
    source_degree: int,
    target_degree: int,
    fano_index: int
) -> Union[int, str]:
    """q-power forced by deg(target) = deg(source) + 1 - r * d"""
    shift = source_degree + 1 - target_degree
    if shift < 0:
        return "negative"
    if shift % fano_index:
        return "non-integral"
    return shift // fano_index


def validate_grading(table: ChevalleyTable) -> GradingReport:
    """
    Check every term of the table against the q-grading

    Args:
        table: Structurally valid Chevalley table

    Returns:
        GradingReport; violations are data, never raised
    """
    degrees = {element.name: element.degree for element in table.basis}
    violations: List[GradingViolation] = []
    for source in table.names:
        for term in table.rows[source]:
            expected = expected_q_power(degrees[source], degrees[term.target], table.fano_index)
            if expected != term.q_power:
                violations.append(GradingViolation(
                    source=source,
                    target=term.target,
                    q_power=term.q_power,
                    expected=expected
                ))

    top = max(degrees.values())
    histogram = [0] * (top + 1)
    for degree in degrees.values():
        histogram[degree] += 1
    symmetric = histogram == histogram[::-1]

    if violations:
        logger.warning(f"Table '{table.name}' has {len(violations)} grading violation(s)")
    if not symmetric:
        logger.warning(f"Degree histogram of '{table.name}' is not palindromic: {histogram}")

    return GradingReport(
        ok=not violations,
        violations=tuple(violations),
        degree_histogram=tuple(histogram),
        poincare_symmetric=symmetric
    )


def require_graded(table: ChevalleyTable) -> GradingReport:
    report = validate_grading(table)
    if not report.ok:
        raise GradingError(report)
    return report


def build_c1hat(table: ChevalleyTable) -> OperatorMatrix:
    """
    Build the matrix of c1-hat = m * (h * -)|_{q=1}

    Args:
        table: Table whose grading has been validated

    Returns:
        OperatorMatrix with entries[j][i] = m * sum of coefficients of alpha_j in h * alpha_i
    """
    n = table.dimension
    position = {name: index for index, name in enumerate(table.names)}
    entries = [[0] * n for _ in range(n)]
    for i, source in enumerate(table.names):
        terms = table.rows[source]
        if not terms:
            logger.warning(f"Column '{source}' of c1-hat is zero; the graph cannot be strongly connected")
        for term in terms:
            entries[position[term.target]][i] += table.anticanonical_multiple * term.coefficient

    logger.info(f"Built {n}x{n} c1-hat for '{table.name}'")
    return OperatorMatrix(
        dim=n,
        entries=tuple(tuple(row) for row in entries),
        labels=tuple(table.names)
    )


def check_nonnegative(matrix: Union[OperatorMatrix, Sequence[Sequence[int]]]) -> bool:
    """Condition (1) of the graph criterion: every entry of c1-hat is >= 0"""
    rows = matrix.entries if isinstance(matrix, OperatorMatrix) else matrix
    negative = [(j, i) for j, row in enumerate(rows) for i, value in enumerate(row) if value < 0]
    if negative:
        logger.info(f"Matrix has {len(negative)} negative entries, first at {negative[0]}")
        return False
    logger.info("Matrix is nonnegative")
    return True
