"""Incremental construction of spinal quadrangulations.

Given a connected spine graph G, the builder grows an oriented embedding of
the interlaced graph (two copies of every spine vertex) one spine edge at a
time: a tree edge extends the surface without changing its genus, while a
chord splices in a handle, raising the genus by one.  After the last edge
the embedding is a quadrangulation whose genus equals the cycle rank of G
and whose face count is twice the spine's edge count.

Surgery happens inside witness faces: quads carrying both copies of a spine
vertex as opposite corners.  Each step consumes witnesses and creates fresh
ones, and every step re-traces and re-validates the whole embedding.  If a
step would leave some vertex without any witness, the driver backtracks
over witness choices and then over chord insertion order; backtrack counts
are reported rather than assumed to be zero.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, replace
from typing import Mapping, Sequence

from .embedding import RotationSystem, _rotate_to_min, trace_faces, validate_quadrangulation
from .formulas import certified_minimal
from .graph import Edge, Graph, betti, complete_graph, delete_edges_connected, interlace, is_connected

Quad = tuple[int, int, int, int]


class WitnessConflict(RuntimeError):
    """A surgery step would leave some spine vertex with no witness face."""


class BuildError(RuntimeError):
    """The builder exhausted its search space or broke an invariant; a
    spinal quadrangulation always exists, so this indicates a defect."""


def _copies(vertex: int) -> tuple[int, int]:
    """The two embedding vertices carrying a spine vertex."""
    return 2 * vertex, 2 * vertex + 1


def _align_quad(face: Quad, corner: int) -> Quad:
    """Rotate a quad's corner cycle so it starts at the given corner."""
    i = face.index(corner)
    return face[i:] + face[:i]


def _insert_after(rotation: tuple[int, ...], after: int, items: tuple[int, ...]) -> tuple[int, ...]:
    """Insert items into a cyclic rotation immediately after one entry."""
    i = rotation.index(after)
    return rotation[: i + 1] + items + rotation[i + 1 :]


@dataclass(frozen=True)
class BuildState:
    """A partial spinal embedding: the spine grown so far, the rotation map
    of its interlacement, the current quad faces, and the witness table.

    Faces are canonical corner 4-tuples (rotated to start at the smallest
    corner, orientation kept).  The witness table maps each spine vertex to
    the ascending list of faces holding its two copies as opposite corners;
    by construction every spine vertex has at least one.
    """

    spine_vertices: frozenset[int]
    spine_edges: frozenset[Edge]
    rotations: dict[int, tuple[int, ...]]
    faces: tuple[Quad, ...]
    witnesses: dict[int, tuple[Quad, ...]]

    @property
    def spine_rank(self) -> int:
        return len(self.spine_edges) - len(self.spine_vertices) + 1

    @property
    def face_count(self) -> int:
        return len(self.faces)

    def spine_graph(self) -> Graph:
        """The spine as a Graph value; needs contiguous vertex ids from 0."""
        if self.spine_vertices != frozenset(range(len(self.spine_vertices))):
            raise ValueError("spine vertex ids are not contiguous from 0")
        return Graph(len(self.spine_vertices), self.spine_edges)

    def embedding(self) -> RotationSystem:
        """The current embedding; needs contiguous spine vertex ids."""
        graph = interlace(self.spine_graph())
        return RotationSystem(
            graph, tuple(self.rotations[v] for v in range(2 * len(self.spine_vertices)))
        )


def _traced_state(
    spine_vertices: set[int] | frozenset[int],
    spine_edges: set[Edge] | frozenset[Edge],
    rotations: Mapping[int, tuple[int, ...]],
) -> BuildState:
    """Re-trace a rotation map, verify the invariant, and rebuild the state.

    The embedding vertices are compacted to 0..k-1 for validation (spine ids
    need not be contiguous mid-build), then faces are mapped back.  Raises
    BuildError if the embedding is not a quadrangulation of the expected
    genus, WitnessConflict if some spine vertex lost its last witness.
    """
    ids = sorted(rotations)
    index = {vertex: k for k, vertex in enumerate(ids)}
    edges = {
        (min(index[v], index[u]), max(index[v], index[u]))
        for v, rotation in rotations.items()
        for u in rotation
    }
    system = RotationSystem(
        Graph(len(ids), frozenset(edges)),
        tuple(tuple(index[u] for u in rotations[v]) for v in ids),
    )
    report = validate_quadrangulation(system)
    rank = len(spine_edges) - len(spine_vertices) + 1
    if not report.is_quadrangulation:
        raise BuildError(f"surgery broke the quadrangulation: {'; '.join(report.failures[:3])}")
    if report.genus != rank:
        raise BuildError(f"surgery genus {report.genus} does not match spine rank {rank}")
    faces = sorted(
        _rotate_to_min(tuple(ids[k] for k in walk.vertices())) for walk in trace_faces(system)
    )
    witnesses: dict[int, list[Quad]] = {w: [] for w in spine_vertices}
    for face in faces:
        a, b, c, d = face
        for x, y in ((a, c), (b, d)):
            if x ^ 1 == y:  # opposite corners are the two copies of x // 2
                witnesses[x >> 1].append(face)
    orphans = sorted(w for w, table in witnesses.items() if not table)
    if orphans:
        raise WitnessConflict(f"spine vertices {orphans} would lose their last witness face")
    return BuildState(
        frozenset(spine_vertices),
        frozenset(spine_edges),
        {v: tuple(rotations[v]) for v in ids},
        tuple(faces),
        {w: tuple(table) for w, table in witnesses.items()},
    )


# ============================================================
# Surgery steps
# ============================================================


def init_base(u: int, v: int) -> BuildState:
    """Start a build from the single spine edge (u, v): a 4-cycle embedded
    in the sphere whose two quad faces each witness both endpoints."""
    if u == v:
        raise ValueError("spine edge endpoints must differ")
    if u < 0 or v < 0:
        raise ValueError("vertex ids must be non-negative")
    u0, u1 = _copies(u)
    v0, v1 = _copies(v)
    rotations = {u0: (v0, v1), u1: (v0, v1), v0: (u0, u1), v1: (u0, u1)}
    return _traced_state({u, v}, {(min(u, v), max(u, v))}, rotations)


def _tree_surgery(state: BuildState, u: int, v: int, face: Quad) -> BuildState:
    u0, u1 = _copies(u)
    v0, v1 = _copies(v)
    aligned = _align_quad(face, u0)
    _, x, mid, y = aligned
    if mid != u1:
        raise ValueError(f"face {face} does not hold {u0} and {u1} as opposite corners")
    rotations = dict(state.rotations)
    rotations[u0] = _insert_after(rotations[u0], after=y, items=(v1, v0))
    rotations[u1] = _insert_after(rotations[u1], after=x, items=(v0, v1))
    rotations[v0] = (u0, u1)
    rotations[v1] = (u0, u1)
    return _traced_state(
        state.spine_vertices | {v},
        state.spine_edges | {(min(u, v), max(u, v))},
        rotations,
    )


def tree_add(state: BuildState, u: int, v: int, witness: Quad | None = None) -> BuildState:
    """Grow the spine by a new leaf v attached to u.

    The two copies of v land inside a witness face of u, splitting it into
    three quads; the genus is unchanged and the face count rises by two.
    With witness=None the smallest witness face that keeps every vertex
    witnessed is chosen; the backtracking driver forces specific faces.
    """
    if u not in state.spine_vertices:
        raise ValueError(f"vertex {u} is not in the spine")
    if v in state.spine_vertices:
        raise ValueError(f"vertex {v} is already in the spine")
    if v < 0:
        raise ValueError("vertex ids must be non-negative")
    if witness is not None and witness not in state.witnesses[u]:
        raise ValueError(f"face {witness} is not a witness of vertex {u}")
    candidates = (witness,) if witness is not None else state.witnesses[u]
    conflict: WitnessConflict | None = None
    for face in candidates:
        try:
            return _tree_surgery(state, u, v, face)
        except WitnessConflict as exc:
            conflict = exc
    assert conflict is not None  # the witness table is never empty
    raise conflict


def _chord_surgery(state: BuildState, u: int, v: int, face_u: Quad, face_v: Quad) -> BuildState:
    u0, u1 = _copies(u)
    v0, v1 = _copies(v)
    _, a, _, b = _align_quad(face_u, u0)
    _, c, _, d = _align_quad(face_v, v0)
    rotations = dict(state.rotations)
    rotations[u0] = _insert_after(rotations[u0], after=b, items=(v1, v0))
    rotations[u1] = _insert_after(rotations[u1], after=a, items=(v0, v1))
    rotations[v0] = _insert_after(rotations[v0], after=d, items=(u1, u0))
    rotations[v1] = _insert_after(rotations[v1], after=c, items=(u0, u1))
    return _traced_state(
        state.spine_vertices,
        state.spine_edges | {(min(u, v), max(u, v))},
        rotations,
    )


def chord_add(
    state: BuildState,
    u: int,
    v: int,
    witness_u: Quad | None = None,
    witness_v: Quad | None = None,
) -> BuildState:
    """Join two spine vertices already present, splicing a handle between a
    witness face of u and one of v; the genus rises by one.

    The two faces are cut open and rejoined by the four new edges between
    the copies of u and the copies of v, turning two quads into four.  The
    witness faces are automatically distinct while the spine edge is absent.
    As with tree_add, explicit faces may be forced; otherwise pairs are
    tried smallest-first until one keeps every vertex witnessed.
    """
    for w in (u, v):
        if w not in state.spine_vertices:
            raise ValueError(f"vertex {w} is not in the spine")
    if u == v:
        raise ValueError("chord endpoints must differ")
    if (min(u, v), max(u, v)) in state.spine_edges:
        raise ValueError(f"spine edge ({u}, {v}) is already present")
    if witness_u is not None and witness_u not in state.witnesses[u]:
        raise ValueError(f"face {witness_u} is not a witness of vertex {u}")
    if witness_v is not None and witness_v not in state.witnesses[v]:
        raise ValueError(f"face {witness_v} is not a witness of vertex {v}")
    candidates_u = (witness_u,) if witness_u is not None else state.witnesses[u]
    candidates_v = (witness_v,) if witness_v is not None else state.witnesses[v]
    conflict: WitnessConflict | None = None
    for face_u in candidates_u:
        for face_v in candidates_v:
            try:
                return _chord_surgery(state, u, v, face_u, face_v)
            except WitnessConflict as exc:
                conflict = exc
    assert conflict is not None
    raise conflict


# ============================================================
# Driver
# ============================================================


@dataclass
class BuildStats:
    backtracks: int = 0


@dataclass(frozen=True)
class BuildReport:
    """A finished build: the verified embedding plus search statistics.

    ``minimal`` is the minimality certificate where one applies (complete
    spine minus m edges); None means no certificate was evaluated.
    """

    embedding: RotationSystem
    spine: Graph
    order: int
    genus: int
    face_count: int
    backtracks: int
    minimal: bool | None = None


def _bfs_plan(graph: Graph) -> tuple[list[tuple[int, int]], list[Edge]]:
    """Tree edges (parent, child) in breadth-first discovery order from
    vertex 0, plus the remaining chords in lexicographic order."""
    adjacency = graph.adjacency()
    seen = [False] * graph.vertex_count
    seen[0] = True
    queue = deque([0])
    tree: list[tuple[int, int]] = []
    while queue:
        v = queue.popleft()
        for w in adjacency[v]:
            if not seen[w]:
                seen[w] = True
                tree.append((v, w))
                queue.append(w)
    tree_set = {(min(u, v), max(u, v)) for u, v in tree}
    chords = sorted(graph.edges - tree_set)
    return tree, chords


def _search(
    state: BuildState,
    tree_steps: Sequence[tuple[int, int]],
    chords: Sequence[Edge],
    stats: BuildStats,
) -> BuildState | None:
    """Depth-first completion of the build, backtracking over witness
    choices first and chord insertion order second."""
    if tree_steps:
        u, v = tree_steps[0]
        for face in state.witnesses[u]:
            try:
                grown = tree_add(state, u, v, witness=face)
            except WitnessConflict:
                stats.backtracks += 1
                continue
            result = _search(grown, tree_steps[1:], chords, stats)
            if result is not None:
                return result
            stats.backtracks += 1
        return None
    if not chords:
        return state
    for k in range(len(chords)):
        u, v = chords[k]
        rest = list(chords[:k]) + list(chords[k + 1 :])
        for face_u in state.witnesses[u]:
            for face_v in state.witnesses[v]:
                try:
                    grown = chord_add(state, u, v, witness_u=face_u, witness_v=face_v)
                except WitnessConflict:
                    stats.backtracks += 1
                    continue
                result = _search(grown, (), rest, stats)
                if result is not None:
                    return result
                stats.backtracks += 1
    return None


def build_spinal_report(graph: Graph) -> BuildReport:
    """Build and verify a spinal quadrangulation of the given connected
    spine, returning the embedding together with search statistics."""
    if graph.vertex_count < 2:
        raise ValueError("spine needs at least 2 vertices")
    if not is_connected(graph):
        raise ValueError("spine must be connected")
    tree_steps, chords = _bfs_plan(graph)
    stats = BuildStats()
    base = init_base(*tree_steps[0])
    final = _search(base, tree_steps[1:], chords, stats)
    if final is None:
        raise BuildError("witness search exhausted without completing the spine")
    system = final.embedding()
    if system.graph != interlace(graph):
        raise BuildError("finished embedding is not on the interlaced spine")
    if final.face_count != 2 * graph.edge_count:
        raise BuildError(
            f"face count {final.face_count} differs from twice the spine edge count"
        )
    return BuildReport(
        embedding=system,
        spine=graph,
        order=2 * graph.vertex_count,
        genus=betti(graph),
        face_count=final.face_count,
        backtracks=stats.backtracks,
    )


def build_spinal(graph: Graph) -> RotationSystem:
    """A verified quadrangulation of the interlaced spine whose genus equals
    the spine's cycle rank; deterministic for identical spines."""
    return build_spinal_report(graph).embedding


def build_instance(p: int, m: int) -> BuildReport:
    """Spinal quadrangulation over the spine K_p minus m edges, with the
    minimality certificate evaluated."""
    if p < 2:
        raise ValueError("spine needs at least 2 vertices")
    spine = delete_edges_connected(complete_graph(p), m)
    report = build_spinal_report(spine)
    return replace(report, minimal=certified_minimal(p, m))


def build_for_genus(genus: int, p: int) -> BuildReport:
    """Spinal quadrangulation of the given genus with order 2p, for any p
    whose complete graph has cycle rank at least the genus."""
    if genus < 0:
        raise ValueError("genus must be non-negative")
    if p < 2:
        raise ValueError("spine needs at least 2 vertices")
    rank = (p - 1) * (p - 2) // 2
    if genus > rank:
        raise ValueError(f"genus {genus} exceeds the cycle rank {rank} of a {p}-vertex spine")
    return build_instance(p, rank - genus)
