"""Certified enclosures of the Perron root of A(G) and Q(G) = D(G) + A(G)

Both matrices are symmetric and entrywise nonnegative. For any positive
vector x the Rayleigh quotient x'Mx / x'x is a lower bound on the largest
eigenvalue and the Collatz-Wielandt ratio max_i (Mx)_i / x_i is an upper
bound, so power iteration on the positive iterate yields an interval that
shrinks onto the Perron root. The iteration runs on M + I so bipartite
components, whose spectrum is symmetric about zero, still converge.

Floating-point rounding is not tracked; at 64 vertices it is orders of
magnitude below the default tolerance.
"""

import logging
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Callable, Optional

import numpy as np

from core.errors import ConvergenceError, SpectralError
from core.graph import Graph, components, degree_profile, has_regular_component
from core.graph6 import to_graph6
from core.report import Enclosure, Evidence, LawId, LawReport

logger = logging.getLogger("spectral-engine")

DEFAULT_TOLERANCE = 1e-9
DEFAULT_MAX_ITERATIONS = 10**6
# Deterministic tilt of the all-ones start vector
_PERTURBATION = 2.0**-20


class MatrixKind(str, Enum):
    ADJACENCY = "adjacency"
    SIGNLESS_LAPLACIAN = "signless-laplacian"


@dataclass(frozen=True)
class SpectralInterval(Enclosure):
    matrix_kind: MatrixKind = MatrixKind.ADJACENCY


def adjacency_matrix(g: Graph) -> np.ndarray:
    matrix = np.zeros((g.n, g.n))
    for u, v in g.edges():
        matrix[u, v] = matrix[v, u] = 1.0
    return matrix


def signless_laplacian(g: Graph) -> np.ndarray:
    matrix = adjacency_matrix(g)
    matrix[np.diag_indices(g.n)] = [g.degree(v) for v in range(g.n)]
    return matrix


def perron_enclosure(
    matrix: np.ndarray,
    tol: float,
    max_iter: int,
    trace: Optional[Callable[[float, float], None]] = None,
) -> tuple[float, float]:
    """Encloses the largest eigenvalue of a symmetric nonnegative matrix in [lo, hi] with hi - lo <= tol

    lo never decreases and hi never increases; trace receives every (lo, hi) pair.
    """

    size = matrix.shape[0]
    if size == 0 or not matrix.any():
        return 0.0, 0.0

    x = np.ones(size) + _PERTURBATION * np.arange(size)
    lo, hi = -np.inf, np.inf

    for iteration in range(max_iter):
        y = matrix @ x
        # Rounding may cross the two bounds; clamp without undoing monotonicity
        hi = max(min(hi, float(np.max(y / x))), lo)
        lo = min(max(lo, float(x @ y) / float(x @ x)), hi)
        if trace is not None:
            trace(lo, hi)
        if hi - lo <= tol:
            logger.debug(f"Converged after {iteration + 1} iterations: [{lo}, {hi}]")
            return lo, hi

        x = y + x
        x /= x.max()

    raise ConvergenceError(
        f"Power iteration did not reach width {tol} within {max_iter} iterations "
        f"(last interval [{lo}, {hi}])"
    )


def _component_interval(
    g: Graph, kind: MatrixKind, tol: float, max_iter: int
) -> SpectralInterval:
    if tol <= 0:
        raise SpectralError(f"Tolerance must be positive, got {tol}")
    if g.n == 0:
        raise SpectralError("Spectral radius of the null graph is undefined")

    scale = 2 if kind is MatrixKind.SIGNLESS_LAPLACIAN else 1
    lo = hi = 0.0
    for _, part in components(g):
        if part.is_regular():
            # Connected d-regular: the Perron root is exactly d (2d for Q)
            value = float(scale * part.degree(0))
            part_lo = part_hi = value
        else:
            matrix = (
                signless_laplacian(part)
                if kind is MatrixKind.SIGNLESS_LAPLACIAN
                else adjacency_matrix(part)
            )
            part_lo, part_hi = perron_enclosure(matrix, tol, max_iter)
        lo, hi = max(lo, part_lo), max(hi, part_hi)

    return SpectralInterval(lo, hi, kind)


def lambda1(
    g: Graph, tol: float = DEFAULT_TOLERANCE, max_iter: int = DEFAULT_MAX_ITERATIONS
) -> SpectralInterval:
    return _component_interval(g, MatrixKind.ADJACENCY, tol, max_iter)


def q1(
    g: Graph, tol: float = DEFAULT_TOLERANCE, max_iter: int = DEFAULT_MAX_ITERATIONS
) -> SpectralInterval:
    return _component_interval(g, MatrixKind.SIGNLESS_LAPLACIAN, tol, max_iter)


def check_sandwich(
    g: Graph,
    tol: float = DEFAULT_TOLERANCE,
    spectrum: SpectralInterval | None = None,
) -> LawReport:
    "2m/n <= lambda1 <= max degree; equality cases decided from the structure, not the numbers"

    lam = spectrum if spectrum is not None else lambda1(g, tol)
    if lam.width > tol:
        raise SpectralError(f"Enclosure [{lam.lo}, {lam.hi}] is wider than {tol}")
    _, top, m = degree_profile(g)
    average = Fraction(2 * m, g.n)

    lower_ok = average <= lam.hi + tol
    upper_ok = lam.lo <= top + tol
    holds = lower_ok and upper_ok

    lower_equality = g.is_regular()
    upper_equality = has_regular_component(g, top) is not None

    evidence = None
    if not holds:
        detail = (
            f"2m/n = {float(average)} above lambda1 <= {lam.hi}"
            if not lower_ok
            else f"lambda1 >= {lam.lo} above max degree {top}"
        )
        evidence = Evidence(to_graph6(g), detail)

    return LawReport(
        law=LawId.SANDWICH,
        holds=holds,
        lhs=average,
        rhs=Fraction(top),
        equality=lower_equality and upper_equality,
        n=g.n,
        m=m,
        evidence=evidence,
        lower_equality=lower_equality,
        upper_equality=upper_equality,
    )
