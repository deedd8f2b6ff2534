import logging
import time
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple

from pydantic import ValidationError

from config import config
from models import ChevalleyTable
from table_parser import TableParseError
from dataset_handler import DatasetHandler, DatasetNotFoundError
from chevalley_operator import GradingError, build_c1hat, require_graded
from bruhat_graph import (
    GraphError, build_graph, export_dot, is_valid_cycle, period, strongly_connected
)
from graph_models import DotOptions
from spectral import (
    ConvergenceError, MultiplicityMismatchError, ReducibleMatrixError,
    char_poly, nearest_circle_point, roots
)
from spectral_models import Eigenvalue
from property_o import RouteDisagreementError, verify_property_o
from report_schemas import (
    DatasetOutcome, EigenvalueRow, EigenvalueTable, LemmaSection, SpectralSection,
    TableStats, VerificationReport
)

logging.basicConfig(level=config.LOG_LEVEL)
logger = logging.getLogger(__name__)

EXIT_HOLDS = 0
EXIT_FAILS = 1
EXIT_INVALID_INPUT = 2
EXIT_NUMERICAL_FAILURE = 3

INVALID_INPUT_ERRORS = (
    TableParseError, GradingError, DatasetNotFoundError, GraphError, ValidationError
)
NUMERICAL_FAILURE_ERRORS = (
    RouteDisagreementError, ConvergenceError, MultiplicityMismatchError, ReducibleMatrixError
)


def exit_code_for(error: BaseException) -> int:
    """Map a verification exception to the exit-code contract; unknown errors are re-raised"""
    if isinstance(error, INVALID_INPUT_ERRORS):
        return EXIT_INVALID_INPUT
    if isinstance(error, NUMERICAL_FAILURE_ERRORS):
        return EXIT_NUMERICAL_FAILURE
    raise error


class PropertyOSystem:
    """Main system tying table loading, both verification routes and reporting together"""

    def __init__(self, datasets_path: Optional[str] = None):
        """Initialize all components"""
        try:
            if datasets_path is None:
                config.validate()
            self.dataset_handler = DatasetHandler(datasets_path)
            logger.info(
                f"Property O verifier initialized with {self.dataset_handler.count_datasets()} bundled dataset(s)"
            )
        except Exception as e:
            logger.error(f"Failed to initialize system: {e}")
            raise

    def load_table(self, source: str) -> Tuple[str, ChevalleyTable]:
        """
        Load a table from bundled:NAME or a path

        Args:
            source: Table source

        Returns:
            (label, table)
        """
        return self.dataset_handler.load_table(source)

    @staticmethod
    def _override_fano_index(table: ChevalleyTable, fano_index_override: Optional[int]) -> ChevalleyTable:
        if fano_index_override is None:
            return table
        logger.warning(
            f"Overriding Fano index of '{table.name}': {table.fano_index} -> {fano_index_override}"
        )
        return table.with_fano_index(fano_index_override)

    def _graded_table(self, source: str, fano_index_override: Optional[int]) -> ChevalleyTable:
        _, table = self.load_table(source)
        require_graded(table)
        return self._override_fano_index(table, fano_index_override)

    def verify(
        self,
        source: str,
        tol: Optional[float] = None,
        fano_index_override: Optional[int] = None
    ) -> VerificationReport:
        """
        Verify Property O for one table

        Args:
            source: bundled:NAME or a path
            tol: Relative spectral tolerance (defaults to config)
            fano_index_override: Replace r after grading validation (negative controls)

        Returns:
            VerificationReport

        Raises:
            TableParseError, DatasetNotFoundError: unreadable input
            GradingError: q-powers disagree with the degrees
            ValidationError: non-positive Fano index override
            RouteDisagreementError, ConvergenceError: numerical trouble
        """
        if tol is None:
            tol = config.TOLERANCE
        timings: Dict[str, float] = {}
        try:
            started = time.perf_counter()
            _, table = self.load_table(source)
            timings["parse"] = time.perf_counter() - started

            started = time.perf_counter()
            grading = require_graded(table)
            timings["grading"] = time.perf_counter() - started

            table = self._override_fano_index(table, fano_index_override)

            started = time.perf_counter()
            verdict = verify_property_o(table, tol)
            timings["verify"] = time.perf_counter() - started

            graph = build_graph(table)
            witness_valid = is_valid_cycle(graph, table.witness) if table.witness else None
            if witness_valid is False:
                logger.warning(f"Recorded witness of '{table.name}' is not a closed walk of its graph")

            lemma = verdict.lemma_route
            spectral = verdict.spectral_route
            report = VerificationReport(
                tool_version=config.TOOL_VERSION,
                dataset=table.name,
                source=source,
                tolerance=tol,
                fano_index_override=fano_index_override,
                grading_ok=grading.ok,
                table=TableStats(
                    dimension=table.dimension,
                    fano_index=table.fano_index,
                    anticanonical_multiple=table.anticanonical_multiple,
                    degree_histogram=grading.degree_histogram,
                    poincare_symmetric=grading.poincare_symmetric,
                    edge_count=len(graph.edges)
                ),
                lemma_route=LemmaSection(
                    nonnegative=lemma.nonnegative,
                    strongly_connected=lemma.strongly_connected,
                    component_count=lemma.component_count,
                    r_cycle=lemma.r_cycle,
                    period=lemma.period,
                    published_witness_valid=witness_valid,
                    holds=lemma.holds
                ),
                spectral_route=SpectralSection(
                    delta0=spectral.delta0,
                    delta0_multiplicity=spectral.delta0_multiplicity,
                    eigenvalues=spectral.spectrum.eigenvalues,
                    max_residual=max(spectral.spectrum.residuals),
                    circle_classification=spectral.circle_classification,
                    perron=spectral.perron,
                    holds=spectral.holds
                ),
                holds=verdict.holds,
                timings=timings
            )
            logger.info(f"Verified {source}: holds = {report.holds}")
            return report

        except Exception as e:
            logger.error(f"Error verifying {source}: {e}")
            raise

    def verify_all(
        self,
        tol: Optional[float] = None,
        max_workers: Optional[int] = None
    ) -> List[DatasetOutcome]:
        """
        Verify every bundled dataset, in parallel

        Args:
            tol: Relative spectral tolerance
            max_workers: Thread pool size (defaults to config)

        Returns:
            One DatasetOutcome per bundled dataset, in name order
        """
        names = self.dataset_handler.list_datasets()

        def run(name: str) -> DatasetOutcome:
            try:
                report = self.verify(f"bundled:{name}", tol)
                return DatasetOutcome(
                    dataset=name,
                    exit_code=EXIT_HOLDS if report.holds else EXIT_FAILS,
                    holds=report.holds,
                    report=report
                )
            except (INVALID_INPUT_ERRORS + NUMERICAL_FAILURE_ERRORS) as e:
                return DatasetOutcome(dataset=name, exit_code=exit_code_for(e), error=str(e))

        with ThreadPoolExecutor(max_workers=max_workers or config.VERIFY_WORKERS) as executor:
            outcomes = list(executor.map(run, names))
        logger.info(f"Verified {len(outcomes)} bundled dataset(s)")
        return outcomes

    def graph_dot(
        self,
        source: str,
        highlight: Sequence[str] = (),
        show_weights: bool = False
    ) -> str:
        """
        DOT rendering of a table's quantum Bruhat graph

        Args:
            source: bundled:NAME or a path
            highlight: Closed walk v0,...,v0 to draw bold
            show_weights: Label edges with their c1-hat entries

        Returns:
            DOT text
        """
        table = self._graded_table(source, None)
        graph = build_graph(table)
        return export_dot(graph, DotOptions(highlight=tuple(highlight), show_weights=show_weights))

    def graph_summary(self, source: str) -> List[str]:
        """
        Human-readable summary of a table's graph

        Args:
            source: bundled:NAME or a path

        Returns:
            Output lines
        """
        table = self._graded_table(source, None)
        graph = build_graph(table)
        connectivity = strongly_connected(graph)
        lines = [
            f"graph {graph.name}: {len(graph.vertices)} vertices, {len(graph.edges)} edges",
            f"strongly connected: {connectivity.strongly_connected} "
            f"({connectivity.component_count} component(s))"
        ]
        if connectivity.strongly_connected and graph.edges:
            result = period(graph)
            lines.append(f"period: {result.period} (Fano index {graph.fano_index})")
        for edge in graph.edges:
            lines.append(f"  {edge.source} -> {edge.target}  weight {edge.weight}  q^{edge.q_power}")
        return lines

    def eigenvalue_table(
        self,
        source: str,
        tol: Optional[float] = None,
        fano_index_override: Optional[int] = None
    ) -> EigenvalueTable:
        """
        Eigenvalues of c1-hat with the nearest delta0 * exp(2 pi i k / r)

        Args:
            source: bundled:NAME or a path
            tol: Relative tolerance for the on-circle flag

        Returns:
            EigenvalueTable, largest modulus first
        """
        if tol is None:
            tol = config.TOLERANCE
        table = self._graded_table(source, fano_index_override)
        spectrum = roots(char_poly(build_c1hat(table)))
        delta0 = spectrum.delta0
        rows = []
        for value in spectrum.values():
            k, point = nearest_circle_point(value, delta0, table.fano_index)
            rows.append(EigenvalueRow(
                eigenvalue=Eigenvalue.of(value),
                modulus=abs(value),
                nearest_k=k,
                nearest_circle_point=Eigenvalue.of(point),
                on_circle=abs(abs(value) - delta0) <= tol * delta0
            ))
        return EigenvalueTable(
            dataset=table.name,
            fano_index=table.fano_index,
            delta0=delta0,
            rows=rows
        )

    def dump_dataset(self, name: str, output_dir: str) -> List[Path]:
        """
        Write bundled datasets to disk

        Args:
            name: Dataset name, or 'all'
            output_dir: Destination directory

        Returns:
            Written paths
        """
        names = self.dataset_handler.list_datasets() if name == "all" else [name]
        return [self.dataset_handler.dump(item, output_dir) for item in names]
