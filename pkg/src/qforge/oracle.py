"""Exhaustive search for quadrangulations of a given order and genus.

Euler's equation forces the edge count of any quadrangulation, and near the
minimum order that count sits close to the complete graph, so candidate
graphs are enumerated as complements of a few missing edges.  For each
candidate the search assembles quad faces dart by dart, growing the
rotation at every vertex incrementally and abandoning a branch as soon as a
face would close at the wrong length or revisit a vertex.

Verdicts are deterministic and independent of traversal order.  Running out
of node or time budget raises BudgetExhausted instead of answering; that
outcome is never collapsed into "no".
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from itertools import combinations

from .embedding import RotationSystem, validate_quadrangulation
from .formulas import order_lower_bound, spinal_min_order
from .graph import Graph, _connected

__all__ = [
    "SearchBudget",
    "BudgetExhausted",
    "MinOrderWitness",
    "quad_edge_count",
    "search_quadrangulation",
    "exists_quadrangulation",
    "min_order_bruteforce",
]


class BudgetExhausted(RuntimeError):
    """The search hit its node or time budget before reaching a verdict."""


@dataclass(frozen=True)
class SearchBudget:
    """Caps on the backtracking search; the defaults fit a desk-scale run."""

    max_nodes: int = 100_000_000
    time_cap: float = 900.0

    def __post_init__(self) -> None:
        if self.max_nodes <= 0:
            raise ValueError("max_nodes must be positive")
        if self.time_cap <= 0:
            raise ValueError("time_cap must be positive")


class _Ticker:
    """Counts search nodes against a budget; checks the clock sparsely."""

    __slots__ = ("budget", "nodes", "start")

    def __init__(self, budget: SearchBudget) -> None:
        self.budget = budget
        self.nodes = 0
        self.start = time.monotonic()

    def __call__(self) -> None:
        self.nodes += 1
        if self.nodes > self.budget.max_nodes:
            raise BudgetExhausted(f"node budget {self.budget.max_nodes} exhausted")
        if self.nodes % 4096 == 0 and time.monotonic() - self.start > self.budget.time_cap:
            raise BudgetExhausted(f"time cap {self.budget.time_cap}s exhausted")


def quad_edge_count(n: int, genus: int) -> int | None:
    """Edge count 2(n-2+2g) forced on any n-vertex quadrangulation of genus
    g, or None when no connected simple graph can carry that count."""
    if genus < 0:
        raise ValueError("genus must be non-negative")
    if n < 3 or (genus == 0 and n < 4):
        raise ValueError("order too small for a quadrangulation of this genus")
    edges = 2 * (n - 2 + 2 * genus)
    if edges > n * (n - 1) // 2:
        return None
    if edges < n - 1:
        return None
    return edges


def _candidate_adjacencies(n: int, edge_target: int, min_degree: int):
    """All connected labeled graphs on n vertices with the target edge count
    and minimum degree, as sorted adjacency lists, in a fixed order.

    Enumeration runs over the complement: lexicographic combinations of the
    missing edges.  Near the minimum order very few edges are missing, so
    this is exponentially smaller than enumerating edge subsets directly.
    """
    pairs = list(combinations(range(n), 2))
    missing = len(pairs) - edge_target
    for removed in combinations(range(len(pairs)), missing):
        deficit = [0] * n
        for k in removed:
            i, j = pairs[k]
            deficit[i] += 1
            deficit[j] += 1
        if any(n - 1 - d < min_degree for d in deficit):
            continue
        removed_set = set(removed)
        edges = [pairs[k] for k in range(len(pairs)) if k not in removed_set]
        if not _connected(n, edges):
            continue
        adjacency: list[list[int]] = [[] for _ in range(n)]
        for i, j in edges:
            adjacency[i].append(j)
            adjacency[j].append(i)
        yield adjacency


class _FaceAssembler:
    """Backtracking assembly of quad faces over one candidate graph.

    State is a partial successor map at every vertex (the rotation under
    construction, as "w follows u at v") plus the set of darts already
    placed into a face.  The rotation at one maximum-degree vertex is
    pre-fixed to ascending order: every embedding of every isomorph can be
    relabeled to respect that, and all labelings are enumerated by the
    caller, so no witness is lost while the symmetry factor drops out.
    """

    def __init__(self, n: int, adjacency: list[list[int]], ticker: _Ticker) -> None:
        self.n = n
        self.adjacency = adjacency
        self.neighbor_sets = [set(row) for row in adjacency]
        self.degree = [len(row) for row in adjacency]
        self.succ: list[dict[int, int]] = [{} for _ in range(n)]
        self.pred: list[dict[int, int]] = [{} for _ in range(n)]
        self.used: set[tuple[int, int]] = set()
        self.darts = sorted((u, v) for u in range(n) for v in adjacency[u])
        self.ticker = ticker
        anchor = min(range(n), key=lambda v: (-self.degree[v], v))
        ring = adjacency[anchor]
        for i, u in enumerate(ring):
            self._assign(anchor, u, ring[(i + 1) % len(ring)])

    # ---- successor-map bookkeeping ----

    def _creates_short_cycle(self, v: int, u: int, w: int) -> bool:
        """Would assigning "w follows u at v" close a rotation cycle that
        misses some neighbor of v?  Completing the rotation is allowed."""
        if len(self.succ[v]) + 1 == self.degree[v]:
            return False
        x = w
        while True:
            if x == u:
                return True
            nxt = self.succ[v].get(x)
            if nxt is None:
                return False
            x = nxt

    def _can_assign(self, v: int, u: int, w: int) -> bool:
        if u in self.succ[v] or w in self.pred[v]:
            return False
        if u == w and self.degree[v] > 1:
            return False
        return not self._creates_short_cycle(v, u, w)

    def _assign(self, v: int, u: int, w: int) -> None:
        self.succ[v][u] = w
        self.pred[v][w] = u

    def _unassign(self, v: int, u: int) -> None:
        w = self.succ[v].pop(u)
        del self.pred[v][w]

    # ---- face assembly ----

    def search(self) -> tuple[tuple[int, ...], ...] | None:
        """Complete rotations with all faces of length 4, or None."""
        if self._extend():
            return tuple(self._rotation_of(v) for v in range(self.n))
        return None

    def _rotation_of(self, v: int) -> tuple[int, ...]:
        start = self.adjacency[v][0]
        out = [start]
        while len(out) < self.degree[v]:
            out.append(self.succ[v][out[-1]])
        return tuple(out)

    def _first_unused_dart(self) -> tuple[int, int] | None:
        for dart in self.darts:
            if dart not in self.used:
                return dart
        return None

    def _extend(self) -> bool:
        dart = self._first_unused_dart()
        if dart is None:
            return True
        a, b = dart
        for c in self._corner_options(b, a, forbidden=(a, b)):
            for d in self._corner_options(c, b, forbidden=(a, b, c)):
                self.ticker()
                if a not in self.neighbor_sets[d]:
                    continue
                if self._try_face(a, b, c, d):
                    return True
        return False

    def _corner_options(self, at: int, from_vertex: int, forbidden: tuple[int, ...]):
        """Continuations of a face walk arriving at ``at`` from
        ``from_vertex``: the forced successor if one exists, else every
        assignable neighbor, ascending."""
        forced = self.succ[at].get(from_vertex)
        if forced is not None:
            if forced not in forbidden and (at, forced) not in self.used:
                yield forced
            return
        for w in self.adjacency[at]:
            if w in forbidden:
                continue
            if self._can_assign(at, from_vertex, w):
                yield w

    def _try_face(self, a: int, b: int, c: int, d: int) -> bool:
        """Close the face (a, b, c, d), recurse, undo on failure."""
        constraints = ((b, a, c), (c, b, d), (d, c, a), (a, d, b))
        newly = []
        ok = True
        for v, u, w in constraints:
            current = self.succ[v].get(u)
            if current is not None:
                if current != w:
                    ok = False
                    break
                continue
            if not self._can_assign(v, u, w):
                ok = False
                break
            self._assign(v, u, w)
            newly.append((v, u))
        if ok:
            face_darts = ((a, b), (b, c), (c, d), (d, a))
            if any(fd in self.used for fd in face_darts):
                ok = False
        if ok:
            self.used.update(face_darts)
            if self._extend():
                return True
            self.used.difference_update(face_darts)
        for v, u in reversed(newly):
            self._unassign(v, u)
        return False


def search_quadrangulation(
    n: int, genus: int, budget: SearchBudget | None = None, _ticker: _Ticker | None = None
) -> RotationSystem | None:
    """Find a quadrangulation with the given order and genus, or prove that
    none exists.  Returns a verified witness embedding, or None."""
    if genus < 0:
        raise ValueError("genus must be non-negative")
    if n < 4:
        return None  # every quad face needs four distinct vertices
    edge_target = quad_edge_count(n, genus)
    if edge_target is None:
        return None
    ticker = _ticker if _ticker is not None else _Ticker(budget or SearchBudget())
    min_degree = 2 if genus == 0 else 3
    for adjacency in _candidate_adjacencies(n, edge_target, min_degree):
        ticker()
        rotations = _FaceAssembler(n, adjacency, ticker).search()
        if rotations is None:
            continue
        graph = Graph(n, frozenset((u, v) for u in range(n) for v in adjacency[u] if u < v))
        system = RotationSystem(graph, rotations)
        report = validate_quadrangulation(system)
        if not report.is_quadrangulation or report.genus != genus:
            raise RuntimeError("assembler produced an invalid witness; search defect")
        return system
    return None


def exists_quadrangulation(
    n: int,
    genus: int,
    budget: SearchBudget | None = None,
    witness: RotationSystem | None = None,
) -> bool:
    """Decide whether any n-vertex quadrangulation of genus g exists.

    An injected witness short-circuits the search after being verified; an
    injected witness that fails verification raises ValueError.
    """
    if witness is not None:
        report = validate_quadrangulation(witness)
        if (
            witness.graph.vertex_count != n
            or not report.is_quadrangulation
            or report.genus != genus
        ):
            raise ValueError("injected witness does not match the claimed order and genus")
        return True
    return search_quadrangulation(n, genus, budget) is not None


@dataclass(frozen=True)
class MinOrderWitness:
    """Result of a minimum-order scan: the order found, a verified witness,
    and the number of search nodes spent."""

    genus: int
    order: int
    witness: RotationSystem
    nodes: int


def min_order_bruteforce(
    genus: int, budget: SearchBudget | None = None, max_order: int | None = None
) -> MinOrderWitness:
    """Scan orders upward until a quadrangulation of the genus exists.

    The scan starts at the arithmetic lower bound (order 4 for the sphere)
    and can stop at the spinal order, where existence is guaranteed.  Genus
    above 2 requires an explicit budget, as a guard against accidentally
    launching a monster search.  The budget spans the whole scan.
    """
    if genus < 0:
        raise ValueError("genus must be non-negative")
    if genus > 2 and budget is None:
        raise ValueError("genus above 2 requires an explicit SearchBudget")
    ticker = _Ticker(budget or SearchBudget())
    start = 4 if genus == 0 else order_lower_bound(genus)
    stop = spinal_min_order(genus)
    cap = stop if max_order is None else min(stop, max_order)
    for n in range(start, cap + 1):
        system = search_quadrangulation(n, genus, _ticker=ticker)
        if system is not None:
            return MinOrderWitness(genus, n, system, ticker.nodes)
    if cap < stop:
        raise BudgetExhausted(f"scan capped at order {cap} before reaching a verdict")
    raise RuntimeError("no quadrangulation found up to the guaranteed spinal order; search defect")
