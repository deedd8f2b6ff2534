import logging
from typing import Optional

from config import config
from models import ChevalleyTable
from spectral_models import LemmaRoute, PropertyOVerdict, SpectralRoute
from chevalley_operator import build_c1hat, check_nonnegative
from bruhat_graph import build_graph, find_cycle_of_length, period, strongly_connected
from spectral import (
    char_poly, classify_spectral_circle, delta0_multiplicity, power_iteration, roots
)

logging.basicConfig(level=config.LOG_LEVEL)
logger = logging.getLogger(__name__)


class RouteDisagreementError(RuntimeError):
    """The graph criterion and the direct spectral check reached different answers"""

    def __init__(self, message: str, lemma_route: LemmaRoute, spectral_route: Optional[SpectralRoute] = None):
        self.lemma_route = lemma_route
        self.spectral_route = spectral_route
        super().__init__(message)


def verify_property_o(table: ChevalleyTable, tol: Optional[float] = None) -> PropertyOVerdict:
    """
    Decide Property O for a table by two independent routes

    The lemma route checks nonnegativity of c1-hat, strong connectivity of the
    quantum Bruhat graph and the existence of a closed walk of length r. The
    spectral route checks that delta0 is a simple root of the characteristic
    polynomial and that every eigenvalue on the spectral circle is delta0 times
    an r-th root of unity.

    Args:
        table: Graded Chevalley table (grading already validated)
        tol: Relative tolerance for the spectral route

    Returns:
        PropertyOVerdict with witnesses from both routes

    Raises:
        RouteDisagreementError: if the routes disagree, or power iteration and
            the characteristic polynomial disagree about delta0
        RootFindingError: if the root finder does not converge
    """
    if tol is None:
        tol = config.TOLERANCE
    r = table.fano_index

    matrix = build_c1hat(table)
    graph = build_graph(table)

    nonnegative = check_nonnegative(matrix)
    connectivity = strongly_connected(graph)
    r_cycle = find_cycle_of_length(graph, r)
    period_result = period(graph) if connectivity.strongly_connected and graph.edges else None
    lemma = LemmaRoute(
        nonnegative=nonnegative,
        strongly_connected=connectivity.strongly_connected,
        component_count=connectivity.component_count,
        r_cycle=r_cycle,
        period=period_result,
        holds=nonnegative and connectivity.strongly_connected and r_cycle is not None
    )

    poly = char_poly(matrix)
    spectrum = roots(poly)
    multiplicity = delta0_multiplicity(poly, spectrum, tol)
    circle = classify_spectral_circle(spectrum, r, tol)

    perron = None
    if nonnegative and connectivity.strongly_connected:
        perron = power_iteration(matrix)
        gap = abs(perron.perron_value - spectrum.delta0)
        if gap > tol * max(spectrum.delta0, 1.0):
            raise RouteDisagreementError(
                f"Power iteration gives {perron.perron_value:.15g} but the largest root has "
                f"modulus {spectrum.delta0:.15g}",
                lemma
            )

    spectral_route = SpectralRoute(
        delta0=spectrum.delta0,
        delta0_multiplicity=multiplicity,
        delta0_simple=multiplicity == 1,
        spectrum=spectrum,
        circle_classification=circle,
        perron=perron,
        holds=multiplicity == 1 and all(point.matched for point in circle)
    )

    if lemma.holds != spectral_route.holds:
        logger.error(
            f"Routes disagree for '{table.name}': lemma={lemma.holds}, spectral={spectral_route.holds}"
        )
        raise RouteDisagreementError(
            f"Lemma route says {lemma.holds}, spectral route says {spectral_route.holds}",
            lemma,
            spectral_route
        )

    logger.info(f"Property O for '{table.name}' (r = {r}): {lemma.holds}")
    return PropertyOVerdict(
        fano_index=r,
        lemma_route=lemma,
        spectral_route=spectral_route,
        holds=lemma.holds
    )
