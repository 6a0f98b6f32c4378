from dataclasses import dataclass
from typing import Iterable, Iterator, NamedTuple, Optional

from core.errors import GraphError
from core.functions import bits, lowest_bit

MAX_ORDER = 64


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on at most 64 vertices

    Attributes:
        n (int): Number of vertices, labelled 0..n-1
        adj (tuple[int, ...]): Neighbour bitmask of every vertex

    Example:
        >>> g = Graph.from_edges(3, [(0, 1), (1, 2)])
        >>> g.m
        2
    """

    n: int
    adj: tuple[int, ...]

    def __post_init__(self) -> None:
        if not 0 <= self.n <= MAX_ORDER:
            raise GraphError(f"Order must be between 0 and {MAX_ORDER}, got {self.n}")
        if len(self.adj) != self.n:
            raise GraphError(f"Expected {self.n} adjacency rows, got {len(self.adj)}")

        full = (1 << self.n) - 1
        for v, row in enumerate(self.adj):
            if row & ~full:
                raise GraphError(f"Vertex {v} has a neighbour outside 0..{self.n - 1}")
            if row >> v & 1:
                raise GraphError(f"Vertex {v} has a loop")
            for u in bits(row):
                if not self.adj[u] >> v & 1:
                    raise GraphError(f"Edge {v}-{u} is not symmetric")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        if not 0 <= n <= MAX_ORDER:
            raise GraphError(f"Order must be between 0 and {MAX_ORDER}, got {n}")

        rows = [0] * n
        for u, v in edges:
            if u == v:
                raise GraphError(f"Loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"Edge {u}-{v} outside 0..{n - 1}")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return cls(n, tuple(rows))

    @property
    def vertex_mask(self) -> int:
        return (1 << self.n) - 1

    @property
    def m(self) -> int:
        return sum(row.bit_count() for row in self.adj) // 2

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def edges(self) -> list[tuple[int, int]]:
        "Edges (i, j) with i < j in graph6 order: (0,1), (0,2), (1,2), (0,3), ..."

        return [(i, j) for j in range(self.n) for i in bits(self.adj[j] & ((1 << j) - 1))]

    def remove_edge(self, u: int, v: int) -> "Graph":
        if not self.has_edge(u, v):
            raise GraphError(f"No edge {u}-{v}")

        rows = list(self.adj)
        rows[u] &= ~(1 << v)
        rows[v] &= ~(1 << u)
        return Graph(self.n, tuple(rows))

    def induced(self, mask: int) -> "Graph":
        "Subgraph induced by the vertices of mask, relabelled in increasing order"

        vertices = list(bits(mask & self.vertex_mask))
        position = {v: i for i, v in enumerate(vertices)}
        rows = []
        for v in vertices:
            row = 0
            for u in bits(self.adj[v] & mask):
                row |= 1 << position[u]
            rows.append(row)
        return Graph(len(vertices), tuple(rows))

    def relabel(self, perm: list[int]) -> "Graph":
        "Moves vertex v to position perm[v]"

        if sorted(perm) != list(range(self.n)):
            raise GraphError("Relabelling must be a permutation of the vertices")

        rows = [0] * self.n
        for v, row in enumerate(self.adj):
            target = 0
            for u in bits(row):
                target |= 1 << perm[u]
            rows[perm[v]] = target
        return Graph(self.n, tuple(rows))

    def is_regular(self) -> bool:
        return len({row.bit_count() for row in self.adj}) <= 1

    def isolated_vertices(self) -> list[int]:
        return [v for v, row in enumerate(self.adj) if row == 0]

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


class DegreeProfile(NamedTuple):
    degrees: list[int]
    max_degree: int
    edges: int


@dataclass(frozen=True)
class ComponentSplit:
    "Maximal connected parts as (vertex mask, induced graph) pairs, ordered by lowest vertex"

    parts: tuple[tuple[int, Graph], ...]

    def __len__(self) -> int:
        return len(self.parts)

    def __iter__(self) -> Iterator[tuple[int, Graph]]:
        return iter(self.parts)

    def sizes(self) -> list[int]:
        return [part.n for _, part in self.parts]


def empty(n: int) -> Graph:
    return Graph(n, (0,) * n)


def complete(k: int) -> Graph:
    if k < 1:
        raise GraphError(f"complete() needs k >= 1, got {k}")
    if k > MAX_ORDER:
        raise GraphError(f"complete() needs k <= {MAX_ORDER}, got {k}")

    full = (1 << k) - 1
    return Graph(k, tuple(full & ~(1 << v) for v in range(k)))


def cycle(k: int) -> Graph:
    if k < 3:
        raise GraphError(f"cycle() needs k >= 3, got {k}")

    return Graph.from_edges(k, [(v, (v + 1) % k) for v in range(k)])


def path(k: int) -> Graph:
    if k < 1:
        raise GraphError(f"path() needs k >= 1, got {k}")

    return Graph.from_edges(k, [(v, v + 1) for v in range(k - 1)])


def star(leaves: int) -> Graph:
    if leaves < 1:
        raise GraphError(f"star() needs at least one leaf, got {leaves}")

    return Graph.from_edges(leaves + 1, [(0, v) for v in range(1, leaves + 1)])


def matching(t: int) -> Graph:
    if t < 0:
        raise GraphError(f"matching() needs t >= 0, got {t}")

    return Graph.from_edges(2 * t, [(2 * i, 2 * i + 1) for i in range(t)])


def disjoint_union(a: Graph, b: Graph) -> Graph:
    if a.n + b.n > MAX_ORDER:
        raise GraphError(f"Union has {a.n + b.n} vertices, limit is {MAX_ORDER}")

    return Graph(a.n + b.n, a.adj + tuple(row << a.n for row in b.adj))


def union_all(graphs: Iterable[Graph]) -> Graph:
    result = empty(0)
    for g in graphs:
        result = disjoint_union(result, g)
    return result


def component_masks(g: Graph) -> list[int]:
    masks = []
    remaining = g.vertex_mask
    while remaining:
        reached = frontier = 1 << lowest_bit(remaining)
        while frontier:
            grown = 0
            for v in bits(frontier):
                grown |= g.adj[v]
            frontier = grown & ~reached
            reached |= frontier
        masks.append(reached)
        remaining &= ~reached
    return masks


def components(g: Graph) -> ComponentSplit:
    return ComponentSplit(tuple((mask, g.induced(mask)) for mask in component_masks(g)))


def degree_profile(g: Graph) -> DegreeProfile:
    degrees = [row.bit_count() for row in g.adj]
    return DegreeProfile(degrees, max(degrees, default=0), sum(degrees) // 2)


def has_regular_component(g: Graph, d: int) -> Optional[int]:
    "Vertex mask of the first component whose vertices all have degree d, if any"

    if d < 0:
        raise GraphError(f"Degree must be non-negative, got {d}")

    for mask in component_masks(g):
        if all(g.adj[v].bit_count() == d for v in bits(mask)):
            return mask
    return None
