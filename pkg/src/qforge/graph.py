"""Simple undirected graphs and the handful of constructions the rest of the
package builds on: complete and octahedral graphs, cycle rank, connectivity-
preserving edge deletion, and 2-fold interlacement."""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable

Edge = tuple[int, int]

GRAPH_FORMAT = "qforge-graph/1"


class FormatError(ValueError):
    """A JSON document does not match the expected on-disk format."""


# ============================================================
# Core type
# ============================================================


@dataclass(frozen=True)
class Graph:
    """Immutable simple undirected graph on vertices 0..vertex_count-1.

    Edges are stored as ordered pairs (i, j) with i < j; no loops, no
    duplicates.  All operations in this module are pure.
    """

    vertex_count: int
    edges: frozenset[Edge]

    def __post_init__(self) -> None:
        if self.vertex_count < 0:
            raise ValueError("vertex_count must be non-negative")
        for i, j in self.edges:
            if i == j:
                raise ValueError(f"loop edge ({i}, {j}) not allowed")
            if not 0 <= i < j < self.vertex_count:
                raise ValueError(f"edge ({i}, {j}) out of range or not ordered")

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def has_edge(self, u: int, v: int) -> bool:
        return (min(u, v), max(u, v)) in self.edges

    def sorted_edges(self) -> list[Edge]:
        return sorted(self.edges)

    def adjacency(self) -> list[list[int]]:
        """Neighbor lists in ascending order, indexed by vertex."""
        adj: list[list[int]] = [[] for _ in range(self.vertex_count)]
        for i, j in self.edges:
            adj[i].append(j)
            adj[j].append(i)
        for row in adj:
            row.sort()
        return adj


def make_graph(vertex_count: int, edges: Iterable[tuple[int, int]]) -> Graph:
    """Build a Graph from possibly unordered edge pairs, rejecting duplicates."""
    normalized: set[Edge] = set()
    for u, v in edges:
        if u == v:
            raise ValueError(f"loop edge ({u}, {v}) not allowed")
        edge = (u, v) if u < v else (v, u)
        if edge in normalized:
            raise ValueError(f"duplicate edge {edge}")
        normalized.add(edge)
    return Graph(vertex_count, frozenset(normalized))


# ============================================================
# Constructions
# ============================================================


def complete_graph(p: int) -> Graph:
    """The complete graph on p vertices."""
    if p < 1:
        raise ValueError("complete graph needs at least 1 vertex")
    return Graph(p, frozenset((i, j) for i in range(p) for j in range(i + 1, p)))


def octahedral_graph(p: int) -> Graph:
    """The complete graph on 2p vertices minus the perfect matching that
    pairs vertex 2k with 2k+1; this is also the interlacement of K_p."""
    if p < 2:
        raise ValueError("octahedral graph needs p >= 2")
    edges = set()
    for i in range(2 * p):
        for j in range(i + 1, 2 * p):
            if j == i + 1 and i % 2 == 0:
                continue
            edges.add((i, j))
    return Graph(2 * p, frozenset(edges))


def _connected(vertex_count: int, edges: Iterable[Edge]) -> bool:
    if vertex_count == 0:
        return True
    adj: list[list[int]] = [[] for _ in range(vertex_count)]
    for i, j in edges:
        adj[i].append(j)
        adj[j].append(i)
    seen = [False] * vertex_count
    seen[0] = True
    queue = deque([0])
    reached = 1
    while queue:
        v = queue.popleft()
        for w in adj[v]:
            if not seen[w]:
                seen[w] = True
                reached += 1
                queue.append(w)
    return reached == vertex_count


def is_connected(graph: Graph) -> bool:
    """True when the graph has a single connected component.

    The empty graph counts as connected by convention.
    """
    return _connected(graph.vertex_count, graph.edges)


def betti(graph: Graph) -> int:
    """Cycle rank |E| - |V| + 1 of a non-empty connected graph."""
    if graph.vertex_count == 0:
        raise ValueError("cycle rank is undefined for the empty graph")
    if not is_connected(graph):
        raise ValueError("cycle rank is defined for connected graphs only")
    return graph.edge_count - graph.vertex_count + 1


def delete_edges_connected(graph: Graph, m: int) -> Graph:
    """Remove exactly m edges while keeping the graph connected.

    Edges are scanned in lexicographic order and removed greedily whenever
    removal keeps the graph connected, i.e. current bridges are skipped; the
    scan restarts if a full pass removed fewer than requested.  The rule is
    fully deterministic.  Raises ValueError when m exceeds the cycle rank,
    since no connected result exists then.
    """
    if m < 0:
        raise ValueError("number of edges to delete must be non-negative")
    rank = betti(graph)
    if m > rank:
        raise ValueError(f"cannot delete {m} edges and stay connected; cycle rank is {rank}")
    remaining = set(graph.edges)
    removed = 0
    while removed < m:
        progress = False
        for edge in sorted(remaining):
            if removed == m:
                break
            trial = remaining - {edge}
            if _connected(graph.vertex_count, trial):
                remaining = trial
                removed += 1
                progress = True
        if removed < m and not progress:
            raise RuntimeError("no removable edge found although the cycle rank allows it")
    return Graph(graph.vertex_count, frozenset(remaining))


def interlace(graph: Graph) -> Graph:
    """Split every vertex v into the pair 2v, 2v+1 and join both copies of u
    with both copies of v for each original edge (u, v).

    Copies of the same vertex stay non-adjacent, so the result has 2|V|
    vertices and 4|E| edges.  The fixed labeling makes the interlacement of
    the complete graph literally equal to octahedral_graph(p), not merely
    isomorphic to it.
    """
    doubled: set[Edge] = set()
    for u, v in graph.edges:
        for a in (2 * u, 2 * u + 1):
            for b in (2 * v, 2 * v + 1):
                doubled.add((min(a, b), max(a, b)))
    return Graph(2 * graph.vertex_count, frozenset(doubled))


# ============================================================
# File format
# ============================================================


def canonical_json(doc: dict) -> str:
    """Serialize a document with sorted keys, no whitespace, one trailing
    newline; identical content yields identical bytes."""
    return json.dumps(doc, sort_keys=True, separators=(",", ":")) + "\n"


def graph_to_document(graph: Graph) -> dict:
    return {
        "format": GRAPH_FORMAT,
        "vertex_count": graph.vertex_count,
        "edges": [list(edge) for edge in graph.sorted_edges()],
    }


def graph_from_document(doc: object) -> Graph:
    """Parse and strictly validate a graph document.

    Duplicate, unordered, or out-of-range edges are rejected.
    """
    if not isinstance(doc, dict) or doc.get("format") != GRAPH_FORMAT:
        raise FormatError(f"expected a {GRAPH_FORMAT} document")
    vertex_count = doc.get("vertex_count")
    if not isinstance(vertex_count, int) or isinstance(vertex_count, bool) or vertex_count < 0:
        raise FormatError("vertex_count must be a non-negative integer")
    raw_edges = doc.get("edges")
    if not isinstance(raw_edges, list):
        raise FormatError("edges must be a list")
    edges: set[Edge] = set()
    for item in raw_edges:
        if (
            not isinstance(item, list)
            or len(item) != 2
            or not all(isinstance(x, int) and not isinstance(x, bool) for x in item)
        ):
            raise FormatError(f"bad edge entry {item!r}")
        i, j = item
        if not 0 <= i < j < vertex_count:
            raise FormatError(f"edge [{i}, {j}] out of range or not ordered")
        if (i, j) in edges:
            raise FormatError(f"duplicate edge [{i}, {j}]")
        edges.add((i, j))
    return Graph(vertex_count, frozenset(edges))


def save_graph(graph: Graph, path: str | Path) -> None:
    Path(path).write_text(canonical_json(graph_to_document(graph)), encoding="utf-8")


def load_graph(path: str | Path) -> Graph:
    try:
        doc = json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise FormatError(f"not valid JSON: {exc}") from exc
    return graph_from_document(doc)
