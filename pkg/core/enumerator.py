import hashlib
import logging
import os
from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations
from pathlib import Path
from typing import Iterable, Iterator, Optional, TextIO, Union

import numpy as np
import requests
import termcolor

from core.cover import TauCertificate, certify_tau_critical
from core.errors import CorpusError, EnumerationError, GraphError
from core.functions import bits
from core.graph import Graph
from core.graph6 import parse_graph6, to_graph6

logger = logging.getLogger("enumerator")

NATIVE_ORDER_LIMIT = 7
CANONICAL_ORDER_LIMIT = 10


@dataclass(frozen=True, order=True)
class CanonicalKey:
    """Minimum upper-triangle bit string over all degree-sorted relabellings

    Bits follow graph6 order (0,1), (0,2), (1,2), (0,3), ..., the first pair
    being the most significant bit of the big-endian byte string.
    """

    n: int
    data: bytes

    @property
    def value(self) -> int:
        return int.from_bytes(self.data, "big")


def _pair_count(n: int) -> int:
    return n * (n - 1) // 2


def _key_bytes(n: int, value: int) -> bytes:
    return value.to_bytes(-(-_pair_count(n) // 8), "big")


def graph_from_key(key: CanonicalKey) -> Graph:
    pairs = _pair_count(key.n)
    value = key.value
    edges = []
    k = pairs - 1
    for j in range(1, key.n):
        for i in range(j):
            if value >> k & 1:
                edges.append((i, j))
            k -= 1
    return Graph.from_edges(key.n, edges)


def _twin_representatives(g: Graph, candidates: int) -> list[int]:
    "One vertex per class of candidates that only a transposition fixing the placed prefix separates"

    chosen: list[int] = []
    for v in bits(candidates):
        for u in chosen:
            pair = 1 << u | 1 << v
            if (g.adj[u] & ~pair) == (g.adj[v] & ~pair):
                break
        else:
            chosen.append(v)
    return chosen


def canonical_form(g: Graph) -> tuple[CanonicalKey, Graph]:
    """Key and canonically relabelled copy of g

    Vertices are placed in order of non-decreasing degree; position j adds
    the column (0,j), ..., (j-1,j) of the key, so the search keeps, level by
    level, every partial placement whose prefix is minimal so far. Twins
    (u, v adjacent to the same other vertices) are interchangeable and only
    one of them is branched on.
    """

    if g.n > CANONICAL_ORDER_LIMIT:
        raise EnumerationError(
            f"Canonical keys are limited to {CANONICAL_ORDER_LIMIT} vertices, got {g.n}"
        )

    degrees = [row.bit_count() for row in g.adj]
    slots = sorted(degrees)

    # (placed vertices in order, key prefix)
    frontier: list[tuple[tuple[int, ...], int]] = [((), 0)]
    for position in range(g.n):
        wanted = slots[position]
        best: Optional[int] = None
        grown: list[tuple[tuple[int, ...], int]] = []

        for placed, prefix in frontier:
            placed_mask = sum(1 << v for v in placed)
            unplaced = g.vertex_mask & ~placed_mask
            candidates = sum(1 << v for v in bits(unplaced) if degrees[v] == wanted)

            for v in _twin_representatives(g, candidates):
                column = 0
                for u in placed:
                    column = column << 1 | (g.adj[v] >> u & 1)
                value = prefix << position | column
                if best is None or value < best:
                    best, grown = value, [(placed + (v,), value)]
                elif value == best:
                    grown.append((placed + (v,), value))

        frontier = grown

    placed, value = frontier[0] if frontier else ((), 0)
    perm = [0] * g.n
    for position, v in enumerate(placed):
        perm[v] = position

    return CanonicalKey(g.n, _key_bytes(g.n, value)), g.relabel(perm)


def canonical_key(g: Graph) -> CanonicalKey:
    return canonical_form(g)[0]


@lru_cache(maxsize=None)
def _relabel_weights(n: int) -> np.ndarray:
    "weights[p, k]: key bit of pair k's image under the p-th permutation"

    pairs = [(i, j) for j in range(1, n) for i in range(j)]
    index = {pair: k for k, pair in enumerate(pairs)}
    top = len(pairs) - 1

    perms = list(permutations(range(n)))
    weights = np.zeros((len(perms), len(pairs)), dtype=np.int64)
    for p, perm in enumerate(perms):
        for k, (i, j) in enumerate(pairs):
            a, b = sorted((perm[i], perm[j]))
            weights[p, k] = 1 << (top - index[(a, b)])
    return weights


def enumerate_graphs(n: int) -> Iterator[Graph]:
    """One canonical representative per isomorphism class of order n, sorted by key

    Every edge set is visited; the first unseen one starts a new class and
    marks all of its relabellings as seen.
    """

    if n < 0:
        raise EnumerationError(f"Order must be non-negative, got {n}")
    if n > NATIVE_ORDER_LIMIT:
        raise EnumerationError(
            f"Native enumeration is limited to n <= {NATIVE_ORDER_LIMIT}; "
            f"generate larger orders externally and use ingest_graph6"
        )

    pairs = _pair_count(n)
    weights = _relabel_weights(n)
    seen = np.zeros(1 << pairs, dtype=np.uint8)
    view = memoryview(seen)

    keys: list[CanonicalKey] = []
    for mask in range(1 << pairs):
        if view[mask]:
            continue

        columns = [k for k in range(pairs) if mask >> (pairs - 1 - k) & 1]
        seen[weights[:, columns].sum(axis=1)] = 1

        key, _ = canonical_form(graph_from_key(CanonicalKey(n, _key_bytes(n, mask))))
        keys.append(key)

    logger.debug(f"Order {n}: {len(keys)} isomorphism classes")
    for key in sorted(keys):
        yield graph_from_key(key)


def enumerate_tau_critical(
    n: Optional[int] = None, graphs: Optional[Iterable[Graph]] = None
) -> Iterator[tuple[Graph, TauCertificate]]:
    "Filters natively enumerated graphs of order n, or the given graphs, down to the tau-critical ones"

    if graphs is None:
        if n is None:
            raise EnumerationError("Pass an order or a graph stream")
        graphs = enumerate_graphs(n)

    for g in graphs:
        cert = certify_tau_critical(g)
        if cert.critical:
            yield g, cert


def ingest_graph6(path: Union[str, os.PathLike], fail_fast: bool = True) -> Iterator[Graph]:
    "Streams a file of newline-separated graph6 records in input order"

    with open(path, "r", encoding="ascii", errors="replace") as f:
        for line_number, line in enumerate(f, start=1):
            record = line.strip()
            if not record:
                continue
            try:
                yield parse_graph6(record)
            except GraphError as e:
                if fail_fast:
                    raise CorpusError(str(e), line_number) from e
                logger.error(f"{path}:{line_number}: skipping record: {e}")


def write_graph6(graphs: Iterable[Graph], stream: TextIO) -> int:
    count = 0
    for g in graphs:
        stream.write(to_graph6(g) + "\n")
        count += 1
    return count


def corpus_digest(path: Union[str, os.PathLike]) -> str:
    digest = hashlib.sha256()
    with open(path, "rb") as f:
        for chunk in iter(lambda: f.read(1 << 16), b""):
            digest.update(chunk)
    return digest.hexdigest()


def fetch_corpus(url: str, folder: Union[str, os.PathLike] = "corpora") -> Path:
    "Downloads a graph6 corpus over http(s) unless it is already present"

    target = Path(folder) / Path(url.split("?", 1)[0]).name
    if target.exists():
        logger.debug(f"Using cached corpus {target}")
        return target

    logger.info(termcolor.colored(f"Downloading corpus {url}", "yellow"))
    try:
        response = requests.get(url, timeout=60)
        response.raise_for_status()
    except requests.RequestException as e:
        raise CorpusError(f"Could not download {url}: {e}") from e

    os.makedirs(target.parent, exist_ok=True)
    with open(target, "wb") as f:
        f.write(response.content)

    logger.info(termcolor.colored(f"Downloaded {target}", "green"))
    return target
