import re
import logging
from typing import Dict, Iterable, List, Optional, Tuple, Union

from pydantic import ValidationError

from config import config
from models import BasisElement, ChevalleyTable, QTerm

logging.basicConfig(level=config.LOG_LEVEL)
logger = logging.getLogger(__name__)

IDENTITY_NAME = "one"
HYPERPLANE_NAME = "h"

_NAME = r"[A-Za-z_][A-Za-z0-9_]*"
_HEADER_PATTERN = re.compile(r"^(name|fano_index|c1_multiple|description)\s+(.+)$")
_BASIS_PATTERN = re.compile(rf"^basis\s+({_NAME})\s+(\d+)$")
_CHEV_PATTERN = re.compile(rf"^chev\s+({_NAME})\s*:\s*(.*)$")
_TERM_PATTERN = re.compile(rf"^(\d+)\s+q(\d+)\s+({_NAME})$")
_WITNESS_PATTERN = re.compile(rf"^witness((?:\s+{_NAME})+)$")


class TableParseError(ValueError):
    """Raised when a Chevalley table file is malformed"""

    def __init__(self, message: str, line_number: Optional[int] = None):
        self.line_number = line_number
        prefix = f"line {line_number}: " if line_number is not None else ""
        super().__init__(f"{prefix}{message}")


class TableParser:
    """Parser for the line-based Chevalley table format"""

    def parse(self, text: Union[str, Iterable[str]]) -> ChevalleyTable:
        """
        Parse a Chevalley table

        Args:
            text: Whole file contents, or an iterable of lines

        Returns:
            ChevalleyTable with basis order preserved from the file

        Raises:
            TableParseError: on syntax errors, duplicate or unknown names,
                missing headers, or a missing identity/hyperplane element
        """
        lines = text.splitlines() if isinstance(text, str) else list(text)

        headers: Dict[str, Tuple[str, int]] = {}
        basis: List[BasisElement] = []
        seen_names: Dict[str, int] = {}
        chev_lines: List[Tuple[int, str, str]] = []
        witness: Optional[Tuple[str, ...]] = None
        witness_line = 0

        for line_number, raw in enumerate(lines, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue

            basis_match = _BASIS_PATTERN.match(line)
            if basis_match:
                name, degree = basis_match.group(1), int(basis_match.group(2))
                if name in seen_names:
                    raise TableParseError(
                        f"duplicate basis name '{name}' (first declared on line {seen_names[name]})",
                        line_number
                    )
                seen_names[name] = line_number
                basis.append(BasisElement(name=name, degree=degree))
                continue

            chev_match = _CHEV_PATTERN.match(line)
            if chev_match:
                chev_lines.append((line_number, chev_match.group(1), chev_match.group(2).strip()))
                continue

            witness_match = _WITNESS_PATTERN.match(line)
            if witness_match:
                if witness is not None:
                    raise TableParseError("duplicate witness line", line_number)
                witness = tuple(witness_match.group(1).split())
                witness_line = line_number
                continue

            header_match = _HEADER_PATTERN.match(line)
            if header_match:
                key, value = header_match.group(1), header_match.group(2).strip()
                if key in headers:
                    raise TableParseError(f"duplicate '{key}' header", line_number)
                headers[key] = (value, line_number)
                continue

            raise TableParseError(f"unrecognized line '{line}'", line_number)

        fano_index = self._positive_header(headers, "fano_index")
        multiple = self._positive_header(headers, "c1_multiple")
        self._check_distinguished(basis, seen_names)

        rows = self._parse_rows(chev_lines, seen_names)
        for element in basis:
            if element.name not in rows:
                logger.warning(f"No chev line for '{element.name}'; treating its row as empty")
                rows[element.name] = ()
            elif not rows[element.name]:
                logger.warning(f"Row '{element.name}' is empty; c1-hat has a zero column")

        if witness is not None:
            for name in witness:
                if name not in seen_names:
                    raise TableParseError(f"witness names unknown element '{name}'", witness_line)
            if len(witness) < 2 or witness[0] != witness[-1]:
                raise TableParseError("witness must start and end at the same element", witness_line)

        try:
            table = ChevalleyTable(
                name=headers.get("name", ("unnamed", 0))[0],
                description=headers.get("description", (None, 0))[0],
                basis=tuple(basis),
                fano_index=fano_index,
                anticanonical_multiple=multiple,
                rows=rows,
                witness=witness
            )
        except ValidationError as e:
            raise TableParseError(str(e)) from e

        logger.info(f"Parsed table '{table.name}' with {table.dimension} basis elements")
        return table

    def _positive_header(self, headers: Dict[str, Tuple[str, int]], key: str) -> int:
        if key not in headers:
            raise TableParseError(f"missing '{key}' header")
        value, line_number = headers[key]
        if not value.isdigit() or int(value) < 1:
            raise TableParseError(f"'{key}' must be a positive integer, got '{value}'", line_number)
        return int(value)

    def _check_distinguished(self, basis: List[BasisElement], seen_names: Dict[str, int]):
        degree_zero = [element for element in basis if element.degree == 0]
        if not degree_zero:
            raise TableParseError("no degree-0 basis element")
        if len(degree_zero) > 1:
            names = ", ".join(element.name for element in degree_zero)
            raise TableParseError(f"more than one degree-0 basis element: {names}")
        if degree_zero[0].name != IDENTITY_NAME:
            raise TableParseError(
                f"degree-0 element must be named '{IDENTITY_NAME}'", seen_names[degree_zero[0].name]
            )
        hyperplane = [element for element in basis if element.name == HYPERPLANE_NAME]
        if not hyperplane:
            raise TableParseError(f"no degree-1 hyperplane element '{HYPERPLANE_NAME}'")
        if hyperplane[0].degree != 1:
            raise TableParseError(
                f"'{HYPERPLANE_NAME}' must have degree 1", seen_names[HYPERPLANE_NAME]
            )

    def _parse_rows(
        self,
        chev_lines: List[Tuple[int, str, str]],
        seen_names: Dict[str, int]
    ) -> Dict[str, Tuple[QTerm, ...]]:
        rows: Dict[str, Tuple[QTerm, ...]] = {}
        for line_number, source, body in chev_lines:
            if source not in seen_names:
                raise TableParseError(f"chev row for unknown element '{source}'", line_number)
            if source in rows:
                raise TableParseError(f"duplicate chev row for '{source}'", line_number)

            terms: List[QTerm] = []
            targets = set()
            if body:
                for chunk in body.split(","):
                    term_match = _TERM_PATTERN.match(chunk.strip())
                    if not term_match:
                        raise TableParseError(
                            f"malformed term '{chunk.strip()}', expected 'C qD TARGET'", line_number
                        )
                    coefficient = int(term_match.group(1))
                    q_power = int(term_match.group(2))
                    target = term_match.group(3)
                    if coefficient < 1:
                        raise TableParseError("coefficients must be positive", line_number)
                    if target not in seen_names:
                        raise TableParseError(f"unknown target name '{target}'", line_number)
                    if target in targets:
                        raise TableParseError(
                            f"target '{target}' appears twice in row '{source}'", line_number
                        )
                    targets.add(target)
                    terms.append(QTerm(coefficient=coefficient, q_power=q_power, target=target))
            rows[source] = tuple(terms)
        return rows

    def serialize(self, table: ChevalleyTable) -> str:
        """
        Render a table in canonical file form

        Args:
            table: Table to render

        Returns:
            Text that parses back to an equal table
        """
        width = max(len(name) for name in table.names)
        lines = [f"name        {table.name}"]
        if table.description:
            lines.append(f"description {table.description}")
        lines.append(f"fano_index  {table.fano_index}")
        lines.append(f"c1_multiple {table.anticanonical_multiple}")
        for element in table.basis:
            lines.append(f"basis {element.name} {element.degree}")
        for name in table.names:
            terms = ", ".join(
                f"{term.coefficient} q{term.q_power} {term.target}" for term in table.rows[name]
            )
            lines.append(f"chev {name.ljust(width)} : {terms}".rstrip())
        if table.witness:
            lines.append("witness " + " ".join(table.witness))
        return "\n".join(lines) + "\n"


_parser = TableParser()


def parse_table(text: Union[str, Iterable[str]]) -> ChevalleyTable:
    return _parser.parse(text)


def serialize_table(table: ChevalleyTable) -> str:
    return _parser.serialize(table)
