import math

import numpy as np
import pytest
from hypothesis import given
from strategies import graphs

from core.enumerator import enumerate_graphs
from core.errors import ConvergenceError, SpectralError
from core.graph import complete, components, cycle, empty, path, star
from core.spectral import (
    MatrixKind,
    SpectralInterval,
    adjacency_matrix,
    check_sandwich,
    lambda1,
    perron_enclosure,
    q1,
    signless_laplacian,
)

TOL = 1e-9
# Float rounding allowance when comparing against a dense eigensolve
ROUNDING = 1e-12


def _largest(matrix: np.ndarray) -> float:
    if matrix.shape[0] == 0:
        return 0.0
    return float(np.linalg.eigvalsh(matrix)[-1])


@pytest.mark.parametrize(
    "name, value",
    [("K4", 3.0), ("C7", 2.0), ("P3", math.sqrt(2)), ("K8", 7.0), ("3K2", 1.0)],
)
def test_lambda1_examples(named, name, value):
    lam = lambda1(named[name], TOL)
    assert lam.matrix_kind is MatrixKind.ADJACENCY
    assert lam.width <= TOL
    assert lam.contains(value, ROUNDING)


@pytest.mark.parametrize("name, value", [("K4", 6.0), ("3K2", 2.0), ("C5", 4.0), ("K8", 14.0)])
def test_q1_examples(named, name, value):
    q = q1(named[name], TOL)
    assert q.matrix_kind is MatrixKind.SIGNLESS_LAPLACIAN
    assert q.width <= TOL
    assert q.contains(value, ROUNDING)


def test_c5_is_exact(named):
    lam = lambda1(named["C5"], TOL)
    assert lam.lo == lam.hi == 2.0


def test_edgeless_graph():
    lam = lambda1(empty(3))
    assert (lam.lo, lam.hi) == (0.0, 0.0)


def test_bounds_for_graphs_with_edges():
    for g in (path(5), cycle(6), complete(3)):
        lam = lambda1(g, TOL)
        top = max(g.degree(v) for v in range(g.n))
        assert 1 <= lam.lo
        assert lam.hi <= top + TOL


def test_invalid_arguments(named):
    with pytest.raises(SpectralError):
        lambda1(named["P3"], 0)
    with pytest.raises(SpectralError):
        lambda1(empty(0))
    with pytest.raises(ConvergenceError):
        lambda1(named["P3"], TOL, max_iter=1)


def test_perron_enclosure_of_a_dense_matrix():
    matrix = np.array([[2.0, 1.0], [1.0, 2.0]])
    lo, hi = perron_enclosure(matrix, TOL, 1000)
    assert lo - ROUNDING <= 3.0 <= hi + ROUNDING


def test_matrices(named):
    g = named["P3"]
    assert adjacency_matrix(g).sum() == 4
    assert list(np.diag(signless_laplacian(g))) == [1.0, 2.0, 1.0]


@pytest.mark.parametrize("n", range(1, 8))
def test_enclosures_contain_the_dense_eigenvalue(n):
    for g in enumerate_graphs(n):
        lam = lambda1(g, TOL)
        q = q1(g, TOL)
        assert lam.contains(_largest(adjacency_matrix(g)), ROUNDING)
        assert q.contains(_largest(signless_laplacian(g)), ROUNDING)
        # 2 lambda1 <= q1
        assert q.lo >= 2 * lam.hi - 2 * TOL - ROUNDING


@given(graphs(min_n=1, max_n=12))
def test_regular_graphs_use_their_degree(g):
    if not g.is_regular():
        return
    d = g.degree(0)
    assert lambda1(g).contains(d)
    assert q1(g).contains(2 * d)


def test_sandwich_on_a_cycle(named):
    report = check_sandwich(named["C5"])
    assert report.holds
    assert report.lower_equality and report.upper_equality
    assert report.equality


def test_sandwich_upper_equality_only(named):
    report = check_sandwich(named["K3+K2"])
    assert report.holds
    assert report.upper_equality
    assert not report.lower_equality
    assert not report.equality


def test_sandwich_on_a_path(named):
    report = check_sandwich(named["P3"])
    assert report.holds
    assert not report.lower_equality and not report.upper_equality
    assert float(report.lhs) == pytest.approx(4 / 3)
    assert report.rhs == 2


def _trace(matrix: np.ndarray) -> list[tuple[float, float]]:
    steps: list[tuple[float, float]] = []
    perron_enclosure(matrix, TOL, 10**5, trace=lambda lo, hi: steps.append((lo, hi)))
    return steps


def _assert_monotone(steps):
    assert steps
    for (lo, hi), (next_lo, next_hi) in zip(steps, steps[1:]):
        assert next_lo >= lo
        assert next_hi <= hi
    assert all(lo <= hi for lo, hi in steps)


@pytest.mark.parametrize("g", [path(3), star(3), path(6)])
def test_enclosure_only_shrinks(g):
    for matrix in (adjacency_matrix(g), signless_laplacian(g)):
        steps = _trace(matrix)
        _assert_monotone(steps)
        assert steps[-1][1] - steps[-1][0] <= TOL


@given(graphs(min_n=2, max_n=12))
def test_enclosure_only_shrinks_on_random_components(g):
    for _, part in components(g):
        if part.m == 0 or part.is_regular():
            continue
        _assert_monotone(_trace(adjacency_matrix(part)))
        _assert_monotone(_trace(signless_laplacian(part)))


def test_sandwich_refuses_a_wide_spectrum(named):
    with pytest.raises(SpectralError):
        check_sandwich(named["C5"], TOL, SpectralInterval(1.9, 2.1))

    report = check_sandwich(named["C5"], TOL, SpectralInterval(2.0, 2.0))
    assert report.holds
