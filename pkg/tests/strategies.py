import networkx as nx
from hypothesis import strategies as st

from core.graph import Graph


@st.composite
def graphs(draw, min_n: int = 0, max_n: int = 10) -> Graph:
    n = draw(st.integers(min_value=min_n, max_value=max_n))
    pairs = [(i, j) for j in range(n) for i in range(j)]
    chosen = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return Graph.from_edges(n, [pair for pair, keep in zip(pairs, chosen) if keep])


@st.composite
def relabelled(draw, min_n: int = 0, max_n: int = 8) -> tuple[Graph, list[int]]:
    g = draw(graphs(min_n=min_n, max_n=max_n))
    perm = draw(st.permutations(range(g.n)))
    return g, list(perm)


def to_networkx(g: Graph) -> nx.Graph:
    graph = nx.Graph()
    graph.add_nodes_from(range(g.n))
    graph.add_edges_from(g.edges())
    return graph
