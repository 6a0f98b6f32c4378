import logging
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Iterator, NamedTuple, Optional

from core.errors import CoverError
from core.functions import bits
from core.graph import Graph, degree_profile
from core.graph6 import to_graph6
from core.report import Evidence, LawId, LawReport, require_critical

logger = logging.getLogger("cover-solver")

BRUTE_FORCE_LIMIT = 24
SURANYI_CAP = 14
INDEPENDENT_SET_LIMIT = 14


class CoverResult(NamedTuple):
    size: int
    witness: int


@dataclass(frozen=True)
class TauCertificate:
    """Transversal number of a graph together with everything needed to re-check it

    Attributes:
        tau (int): Minimum cover size
        cover (int): Bitmask of a minimum cover
        critical (bool): Whether the graph is tau-critical
        edge_witnesses (tuple): ((u, v), mask) pairs, a cover of G - uv of size tau - 1, one per edge when critical
        failing_edge (tuple | None): First edge whose removal keeps tau, when not critical
        isolated_vertex (int | None): First isolated vertex, when not critical
    """

    tau: int
    cover: int
    critical: bool
    edge_witnesses: tuple[tuple[tuple[int, int], int], ...] = field(default_factory=tuple)
    failing_edge: Optional[tuple[int, int]] = None
    isolated_vertex: Optional[int] = None

    @property
    def reason(self) -> str:
        if self.critical:
            return "tau-critical"
        if self.isolated_vertex is not None:
            return f"vertex {self.isolated_vertex} is isolated"
        if self.failing_edge is not None:
            u, v = self.failing_edge
            return f"removing edge {u}-{v} keeps tau = {self.tau}"
        return "graph has no edges"


class _CoverSearch:
    "Branch and bound on the highest-degree vertex with degree-0 and degree-1 reductions"

    def __init__(self, adj: tuple[int, ...], bound: int, target: int) -> None:
        self.adj = adj
        self.best_size = bound
        self.best: Optional[int] = None
        self.target = target

    def run(self, alive: int) -> Optional[CoverResult]:
        self._branch(alive, 0, 0)
        if self.best is None:
            return None
        return CoverResult(self.best_size, self.best)

    def _branch(self, alive: int, chosen: int, size: int) -> None:
        if self.best is not None and self.best_size <= self.target:
            return

        adj = self.adj
        reduced = True
        while reduced:
            reduced = False
            for v in bits(alive):
                if not alive >> v & 1:
                    continue
                neighbours = adj[v] & alive
                if not neighbours:
                    alive &= ~(1 << v)
                elif not neighbours & (neighbours - 1):
                    # Degree one: the neighbour covers this edge at least as well as v
                    chosen |= neighbours
                    size += 1
                    alive &= ~(neighbours | 1 << v)
                    reduced = True

        if size >= self.best_size:
            return

        pivot, top, degree_sum = -1, 0, 0
        for v in bits(alive):
            degree = (adj[v] & alive).bit_count()
            degree_sum += degree
            if degree > top:
                pivot, top = v, degree

        if degree_sum == 0:
            self.best_size, self.best = size, chosen
            return

        edges = degree_sum // 2
        if size + -(-edges // top) >= self.best_size:
            return

        self._branch(alive & ~(1 << pivot), chosen | 1 << pivot, size + 1)

        neighbours = adj[pivot] & alive
        self._branch(
            alive & ~(neighbours | 1 << pivot), chosen | neighbours, size + neighbours.bit_count()
        )


def _find_cover(g: Graph, bound: int, target: int = 0) -> Optional[CoverResult]:
    "Smallest cover of size < bound (stopping early once one of size <= target is found)"

    return _CoverSearch(g.adj, bound, target).run(g.vertex_mask)


def is_cover(g: Graph, mask: int) -> bool:
    return all(mask >> v & 1 or not (g.adj[v] & ~mask) for v in range(g.n))


def min_vertex_cover(g: Graph) -> CoverResult:
    result = _find_cover(g, g.n + 1)
    assert result is not None
    return result


def brute_force_cover(g: Graph) -> int:
    if g.n > BRUTE_FORCE_LIMIT:
        raise CoverError(
            f"Exhaustive cover search is limited to {BRUTE_FORCE_LIMIT} vertices, got {g.n}"
        )

    edge_masks = [1 << u | 1 << v for u, v in g.edges()]
    for k in range(g.n + 1):
        for chosen in combinations(range(g.n), k):
            mask = sum(1 << v for v in chosen)
            if all(e & mask for e in edge_masks):
                return k
    return g.n


def alpha(g: Graph) -> int:
    "Independence number through Gallai's identity alpha = n - tau"

    return g.n - min_vertex_cover(g).size


def independent_sets(g: Graph, cap: Optional[int] = INDEPENDENT_SET_LIMIT) -> Iterator[int]:
    "Yields every non-empty independent set as a bitmask"

    if cap is not None and g.n > cap:
        raise CoverError(f"Independent-set enumeration is limited to {cap} vertices, got {g.n}")

    def extend(v: int, chosen: int, blocked: int) -> Iterator[int]:
        if v == g.n:
            if chosen:
                yield chosen
            return
        yield from extend(v + 1, chosen, blocked)
        if not blocked >> v & 1:
            yield from extend(v + 1, chosen | 1 << v, blocked | g.adj[v])

    return extend(0, 0, 0)


def brute_force_alpha(g: Graph) -> int:
    return max((s.bit_count() for s in independent_sets(g)), default=0)


def certify_tau_critical(g: Graph) -> TauCertificate:
    tau, cover = min_vertex_cover(g)

    isolated = g.isolated_vertices()
    if isolated:
        return TauCertificate(tau, cover, False, isolated_vertex=isolated[0])
    if tau == 0:
        return TauCertificate(tau, cover, False)

    witnesses = []
    for u, v in g.edges():
        result = _find_cover(g.remove_edge(u, v), tau, tau - 1)
        if result is None:
            logger.debug(f"Edge {u}-{v} is not critical (tau={tau})")
            return TauCertificate(tau, cover, False, failing_edge=(u, v))
        witnesses.append(((u, v), result.witness))

    return TauCertificate(tau, cover, True, tuple(witnesses))


def check_hajnal(g: Graph, cert: TauCertificate) -> LawReport:
    require_critical(cert)

    degrees, top, m = degree_profile(g)
    bound = 2 * cert.tau + 1 - g.n
    holds = top <= bound

    evidence = None
    if not holds:
        vertex = degrees.index(top)
        evidence = Evidence(
            to_graph6(g), f"vertex {vertex} has degree {top} > {bound}", vertex=vertex
        )

    return LawReport(
        law=LawId.HAJNAL,
        holds=holds,
        lhs=Fraction(top),
        rhs=Fraction(bound),
        equality=top == bound,
        n=g.n,
        m=m,
        t=cert.tau,
        evidence=evidence,
    )


def check_suranyi(g: Graph, cert: TauCertificate, cap: int = SURANYI_CAP) -> LawReport:
    require_critical(cert)
    if g.n > cap:
        raise CoverError(f"Suranyi sweep is limited to {cap} vertices, got {g.n}")

    degrees = [row.bit_count() for row in g.adj]
    worst: Optional[tuple[int, int, int, int]] = None  # slack, subset, vertex, bound

    for subset in independent_sets(g, cap):
        neighbourhood = 0
        for v in bits(subset):
            neighbourhood |= g.adj[v]
        bound = neighbourhood.bit_count() - subset.bit_count() + 1

        vertex = max(bits(subset), key=lambda v: (degrees[v], -v))
        slack = bound - degrees[vertex]
        if worst is None or slack < worst[0]:
            worst = (slack, subset, vertex, bound)

    assert worst is not None
    slack, subset, vertex, bound = worst

    evidence = None
    if slack < 0:
        evidence = Evidence(
            to_graph6(g),
            f"independent set {sorted(bits(subset))}: d({vertex}) = {degrees[vertex]} > {bound}",
            vertex=vertex,
            subset=subset,
        )

    return LawReport(
        law=LawId.SURANYI,
        holds=slack >= 0,
        lhs=Fraction(degrees[vertex]),
        rhs=Fraction(bound),
        equality=slack == 0,
        n=g.n,
        m=g.m,
        t=cert.tau,
        evidence=evidence,
    )
