import cmath
import logging
import math
from typing import List, Optional, Sequence, Tuple

import numpy as np
import numpy.polynomial.polynomial as P
import sympy as sp

from config import config
from models import OperatorMatrix
from spectral_models import CharPoly, CirclePoint, Eigenvalue, PerronResult, Spectrum
from chevalley_operator import check_nonnegative
from bruhat_graph import graph_from_matrix, strongly_connected

logging.basicConfig(level=config.LOG_LEVEL)
logger = logging.getLogger(__name__)

_EPS = float(np.finfo(float).eps)


class ConvergenceError(RuntimeError):
    """An iterative method hit its iteration cap"""

    def __init__(self, message: str, partial: Optional[Sequence[complex]] = None):
        self.partial = list(partial) if partial is not None else []
        super().__init__(message)


class RootFindingError(ConvergenceError):
    """Aberth-Ehrlich iteration did not converge; partial holds the last iterates"""
    pass


class ReducibleMatrixError(ValueError):
    """Power iteration needs a nonnegative irreducible matrix"""
    pass


class MultiplicityMismatchError(RuntimeError):
    """Root clustering and the derivative test disagree about the multiplicity of delta0"""
    pass


def char_poly(matrix: OperatorMatrix) -> CharPoly:
    """
    Exact characteristic polynomial by the Faddeev-LeVerrier recurrence

    M_k = A M_{k-1} + c_{n-k+1} I and c_{n-k} = -tr(A M_k) / k, all in Python ints.

    Args:
        matrix: Square integer matrix

    Returns:
        Monic CharPoly with coefficients c_0 .. c_n
    """
    n = matrix.dim
    exact = matrix.as_exact()
    identity = np.array([[int(i == j) for j in range(n)] for i in range(n)], dtype=object)
    coefficients = [0] * (n + 1)
    coefficients[n] = 1

    product = np.zeros((n, n), dtype=object)
    for k in range(1, n + 1):
        auxiliary = product + coefficients[n - k + 1] * identity
        product = exact.dot(auxiliary)
        quotient, remainder = divmod(-int(np.trace(product)), k)
        if remainder:
            raise ArithmeticError(f"Faddeev-LeVerrier division by {k} is not exact")
        coefficients[n - k] = quotient

    logger.info(f"Characteristic polynomial of degree {n} computed exactly")
    return CharPoly(degree=n, coefficients=tuple(coefficients))


def _initial_radius(ascending: np.ndarray) -> float:
    """Smaller of the Cauchy and Fujiwara root bounds of a monic polynomial"""
    degree = len(ascending) - 1
    magnitudes = np.abs(ascending)
    cauchy = 1.0 + float(magnitudes[:-1].max())
    terms = [magnitudes[degree - k] ** (1.0 / k) for k in range(1, degree)]
    terms.append((magnitudes[0] / 2.0) ** (1.0 / degree))
    fujiwara = 2.0 * float(max(terms))
    radius = min(cauchy, fujiwara)
    return radius if radius > 0 else 1.0


def aberth(
    coefficients: Sequence[float],
    max_iterations: Optional[int] = None,
    step_tolerance: Optional[float] = None,
    phase_offset: Optional[float] = None
) -> Tuple[List[complex], int]:
    """
    Simultaneous Aberth-Ehrlich iteration with Gauss-Seidel updates

    Args:
        coefficients: Ascending coefficients c_0 .. c_d with c_d != 0
        max_iterations: Sweep cap
        step_tolerance: Relative step size counted as converged
        phase_offset: Angle of the first initial guess

    Returns:
        (roots, sweeps used)

    Raises:
        RootFindingError: on hitting the sweep cap
    """
    if max_iterations is None:
        max_iterations = config.ROOT_MAX_ITERATIONS
    if step_tolerance is None:
        step_tolerance = config.ROOT_STEP_TOLERANCE
    phase_offset = config.ROOT_PHASE_OFFSET if phase_offset is None else phase_offset

    ascending = np.asarray(coefficients, dtype=float)
    ascending = ascending / ascending[-1]
    degree = len(ascending) - 1
    if degree == 1:
        return [complex(-ascending[0])], 0

    derivative = P.polyder(ascending)
    magnitudes = np.abs(ascending)
    radius = _initial_radius(ascending)
    z = [
        radius * cmath.exp(1j * (2 * math.pi * k / degree + phase_offset))
        for k in range(degree)
    ]

    for sweep in range(1, max_iterations + 1):
        settled = True
        for i in range(degree):
            value = complex(P.polyval(z[i], ascending))
            rounding = 4 * degree * _EPS * float(P.polyval(abs(z[i]), magnitudes))
            if abs(value) <= rounding:
                continue
            slope = complex(P.polyval(z[i], derivative))
            if slope == 0:
                slope = complex(_EPS)
            newton = value / slope
            repulsion = sum(1 / (z[i] - z[j]) for j in range(degree) if j != i and z[i] != z[j])
            step = newton / (1 - newton * repulsion)
            z[i] -= step
            if abs(step) > step_tolerance * (1 + abs(z[i])):
                settled = False
        if settled:
            return z, sweep

    raise RootFindingError(
        f"Aberth iteration did not converge in {max_iterations} sweeps (degree {degree})", z
    )


def roots(poly: CharPoly, max_iterations: Optional[int] = None) -> Spectrum:
    """
    All complex roots of a characteristic polynomial

    The polynomial is split exactly into square-free factors; each factor is
    solved by Aberth-Ehrlich and its roots repeated by multiplicity.

    Args:
        poly: Monic integer polynomial of degree >= 1
        max_iterations: Sweep cap per factor

    Returns:
        Spectrum with n eigenvalues, delta0 and per-root residuals
    """
    x = sp.Symbol("x")
    _, factors = sp.Poly(poly.descending(), x).sqf_list()

    values: List[complex] = []
    sweeps = 0
    for factor, multiplicity in factors:
        ascending = [float(int(c)) for c in reversed(factor.all_coeffs())]
        try:
            found, used = aberth(ascending, max_iterations=max_iterations)
        except RootFindingError as e:
            partial = values + [root for root in e.partial for _ in range(multiplicity)]
            raise RootFindingError(str(e), partial) from e
        sweeps = max(sweeps, used)
        values.extend(root for root in found for _ in range(multiplicity))

    values.sort(key=lambda value: (-abs(value), cmath.phase(value) % (2 * math.pi)))
    residuals = []
    for value in values:
        scale = poly.scale_at(abs(value))
        residual = abs(poly.evaluate(value))
        residuals.append(residual / scale if scale > 0 else residual)

    delta0 = max(abs(value) for value in values)
    logger.info(
        f"Found {len(values)} roots in {len(factors)} square-free factor(s); "
        f"delta0 = {delta0:.12g}, max residual = {max(residuals):.3e}"
    )
    return Spectrum(
        eigenvalues=tuple(Eigenvalue.of(value) for value in values),
        delta0=delta0,
        residuals=tuple(residuals),
        iterations=sweeps
    )


def power_iteration(
    matrix: OperatorMatrix,
    max_iterations: Optional[int] = None,
    tolerance: Optional[float] = None
) -> PerronResult:
    """
    Perron root and vector by power iteration on M + I

    The shift makes the matrix primitive, so periodic matrices converge.
    Iteration stops once the Collatz-Wielandt bracket min/max of (Ax)_i / x_i
    is narrower than tolerance relative to its upper end.

    Args:
        matrix: Nonnegative irreducible matrix
        max_iterations: Iteration cap
        tolerance: Relative bracket width

    Returns:
        PerronResult with the Perron value of M and its unit-max positive vector

    Raises:
        ReducibleMatrixError: if M has a negative entry or is reducible
        ConvergenceError: on hitting the iteration cap
    """
    if max_iterations is None:
        max_iterations = config.POWER_MAX_ITERATIONS
    if tolerance is None:
        tolerance = config.POWER_TOLERANCE

    if not check_nonnegative(matrix):
        raise ReducibleMatrixError("Power iteration needs a nonnegative matrix")
    if not strongly_connected(graph_from_matrix(matrix)).strongly_connected:
        raise ReducibleMatrixError("Power iteration needs an irreducible matrix")

    shifted = matrix.as_float() + np.eye(matrix.dim)
    vector = np.ones(matrix.dim)
    for iteration in range(1, max_iterations + 1):
        image = shifted @ vector
        ratios = image / vector
        low, high = float(ratios.min()), float(ratios.max())
        vector = image / image.max()
        if high - low <= tolerance * high:
            value = (low + high) / 2 - 1
            logger.info(f"Power iteration converged in {iteration} steps: {value:.12g}")
            return PerronResult(
                perron_value=value,
                perron_vector=tuple(float(entry) for entry in vector),
                iterations=iteration
            )

    raise ConvergenceError(f"Power iteration did not converge in {max_iterations} steps")


def delta0_multiplicity(poly: CharPoly, spectrum: Spectrum, tol: Optional[float] = None) -> int:
    """
    Algebraic multiplicity of the real number delta0 as a root

    Args:
        poly: Characteristic polynomial
        spectrum: Its roots
        tol: Relative clustering tolerance

    Returns:
        Number of roots within tol * delta0 of delta0 (0 if delta0 is not a root)

    Raises:
        MultiplicityMismatchError: if the cluster count and the test on p'(delta0) disagree
    """
    if tol is None:
        tol = config.TOLERANCE
    delta0 = spectrum.delta0
    cluster = sum(1 for value in spectrum.values() if abs(value - delta0) <= tol * delta0)
    if cluster == 0:
        logger.info(f"delta0 = {delta0:.12g} is not itself an eigenvalue")
        return 0

    slope = abs(poly.derivative_at(delta0))
    simple_by_derivative = slope > tol * poly.derivative_scale_at(delta0)
    if (cluster == 1) != simple_by_derivative:
        raise MultiplicityMismatchError(
            f"{cluster} root(s) cluster at delta0 but |p'(delta0)| = {slope:.3e} says "
            f"{'simple' if simple_by_derivative else 'multiple'}"
        )
    return cluster


def nearest_circle_point(value: complex, delta0: float, fano_index: int) -> Tuple[int, complex]:
    """Nearest point delta0 * exp(2 pi i k / r) to value, as (k, point)"""
    angle = cmath.phase(value) % (2 * math.pi)
    k = int(round(angle * fano_index / (2 * math.pi))) % fano_index
    return k, delta0 * cmath.exp(2j * math.pi * k / fano_index)


def classify_spectral_circle(
    spectrum: Spectrum,
    fano_index: int,
    tol: Optional[float] = None
) -> Tuple[CirclePoint, ...]:
    """
    Match every eigenvalue with |lambda| >= delta0 (1 - tol) to the nearest delta0 * exp(2 pi i k / r)

    Args:
        spectrum: Computed spectrum
        fano_index: r
        tol: Relative tolerance

    Returns:
        One CirclePoint per max-modulus eigenvalue, sorted by k
    """
    if tol is None:
        tol = config.TOLERANCE
    delta0 = spectrum.delta0
    points = []
    for value in spectrum.values():
        if abs(value) < delta0 * (1 - tol):
            continue
        k, target = nearest_circle_point(value, delta0, fano_index)
        distance = abs(value - target)
        points.append(CirclePoint(
            eigenvalue=Eigenvalue.of(value),
            k=k,
            distance=distance,
            matched=distance <= tol * delta0
        ))
    points.sort(key=lambda point: (point.k, point.distance))
    return tuple(points)
