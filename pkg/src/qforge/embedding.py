"""Rotation systems on connected simple graphs: face tracing, Euler
characteristic and genus, quadrangulation validation, and a canonical JSON
file format.

A rotation system fixes a cyclic neighbor order at every vertex and thereby
an oriented cellular embedding.  Rotations are read counterclockwise; the
face-tracing successor of a dart (u, v) is (v, w) where w is the neighbor
after u in the rotation at v.  Any consistent convention would do; this one
is fixed so face lists are reproducible.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import NamedTuple, Sequence

from .graph import FormatError, Graph, canonical_json, is_connected

EMBEDDING_FORMAT = "qforge-embedding/1"


class GenusMismatchError(ValueError):
    """A document's declared genus disagrees with the traced embedding."""


class Dart(NamedTuple):
    """One orientation of an edge."""

    tail: int
    head: int


def _rotate_to_min(cycle: Sequence[int]) -> tuple[int, ...]:
    """Rotate a cyclic sequence so it starts at its smallest element."""
    pivot = min(range(len(cycle)), key=cycle.__getitem__)
    return tuple(cycle[pivot:]) + tuple(cycle[:pivot])


@dataclass(frozen=True)
class RotationSystem:
    """A cyclic neighbor order at every vertex of a connected simple graph.

    Construction checks that each rotation is a permutation of the vertex's
    neighborhood and that the graph is connected with at least one edge.
    Each rotation is then stored starting from the vertex's smallest
    neighbor, so equal embeddings compare and serialize identically.
    Instances are immutable; tracing and validation are pure.
    """

    graph: Graph
    rotations: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        if self.graph.edge_count == 0:
            raise ValueError("rotation system needs a graph with at least one edge")
        if not is_connected(self.graph):
            raise ValueError("rotation system needs a connected graph")
        if len(self.rotations) != self.graph.vertex_count:
            raise ValueError("exactly one rotation per vertex required")
        adjacency = self.graph.adjacency()
        canonical = []
        for v, rotation in enumerate(self.rotations):
            if sorted(rotation) != adjacency[v]:
                raise ValueError(f"rotation at vertex {v} is not a permutation of its neighbors")
            canonical.append(_rotate_to_min(tuple(rotation)))
        object.__setattr__(self, "rotations", tuple(canonical))


@dataclass(frozen=True)
class FaceWalk:
    """A closed face boundary: the full orbit of one dart under the
    face-tracing successor map."""

    darts: tuple[Dart, ...]

    @property
    def length(self) -> int:
        return len(self.darts)

    def vertices(self) -> tuple[int, ...]:
        """Corner vertices in walk order (the tails of the darts)."""
        return tuple(dart.tail for dart in self.darts)


@dataclass(frozen=True)
class EmbeddingReport:
    """Outcome of quadrangulation validation plus the embedding's counts."""

    vertex_count: int
    edge_count: int
    face_count: int
    euler_characteristic: int
    genus: int
    is_quadrangulation: bool
    failures: tuple[str, ...]


def trace_faces(system: RotationSystem) -> list[FaceWalk]:
    """Partition all 2|E| darts into face boundary walks.

    Each orbit of the successor map is reported exactly once, started at its
    lexicographically smallest dart, and orbits are listed in ascending order
    of their starting dart, so identical inputs give identical output.
    """
    successor: list[dict[int, int]] = []
    for rotation in system.rotations:
        degree = len(rotation)
        successor.append({u: rotation[(i + 1) % degree] for i, u in enumerate(rotation)})
    all_darts = sorted(Dart(u, v) for i, j in system.graph.edges for u, v in ((i, j), (j, i)))
    seen: set[Dart] = set()
    faces: list[FaceWalk] = []
    for start in all_darts:
        if start in seen:
            continue
        walk = []
        dart = start
        while True:
            walk.append(dart)
            seen.add(dart)
            dart = Dart(dart.head, successor[dart.head][dart.tail])
            if dart == start:
                break
        faces.append(FaceWalk(tuple(walk)))
    return faces


def _euler(system: RotationSystem, face_count: int) -> tuple[int, int]:
    chi = system.graph.vertex_count - system.graph.edge_count + face_count
    if chi % 2 or chi > 2:
        raise RuntimeError(f"impossible Euler characteristic {chi} for an oriented embedding")
    return chi, (2 - chi) // 2


def euler_genus(system: RotationSystem) -> tuple[int, int]:
    """Euler characteristic |V| - |E| + |F| and genus (2 - chi) / 2 of the
    closed orientable surface the rotation system describes."""
    return _euler(system, len(trace_faces(system)))


def validate_quadrangulation(system: RotationSystem) -> EmbeddingReport:
    """Check that every face of the embedding is a genuine 4-cycle.

    A face passes when its boundary walk has length exactly four and visits
    four distinct vertices and four distinct edges.  Two distinct faces may
    share all four edges; that genuinely happens on the sphere at order 4.
    The underlying graph is simple and connected by construction.
    Violations are reported per face, never raised.
    """
    faces = trace_faces(system)
    failures: list[str] = []
    for index, face in enumerate(faces):
        label = "-".join(str(v) for v in face.vertices())
        if face.length != 4:
            failures.append(f"face {index} ({label}) has length {face.length}, not 4")
            continue
        if len(set(face.vertices())) != 4:
            failures.append(f"face {index} ({label}) revisits a vertex")
            continue
        edge_set = {frozenset(dart) for dart in face.darts}
        if len(edge_set) != 4:
            failures.append(f"face {index} ({label}) repeats an edge")
    chi, genus = _euler(system, len(faces))
    return EmbeddingReport(
        vertex_count=system.graph.vertex_count,
        edge_count=system.graph.edge_count,
        face_count=len(faces),
        euler_characteristic=chi,
        genus=genus,
        is_quadrangulation=not failures,
        failures=tuple(failures),
    )


# ============================================================
# File format
# ============================================================


def embedding_to_document(system: RotationSystem, declared_genus: int | None = None) -> dict:
    doc: dict = {
        "format": EMBEDDING_FORMAT,
        "vertex_count": system.graph.vertex_count,
        "rotations": [list(rotation) for rotation in system.rotations],
    }
    if declared_genus is not None:
        doc["declared_genus"] = declared_genus
    return doc


def embedding_from_document(doc: object) -> RotationSystem:
    """Parse an embedding document, rebuilding the graph from the rotations.

    The rotations must be mutually symmetric (u listed at v exactly when v
    is listed at u) and every rotation-system invariant is re-checked.  If
    the document declares a genus, it is compared against the traced genus
    and a mismatch raises GenusMismatchError.
    """
    if not isinstance(doc, dict) or doc.get("format") != EMBEDDING_FORMAT:
        raise FormatError(f"expected a {EMBEDDING_FORMAT} document")
    vertex_count = doc.get("vertex_count")
    if not isinstance(vertex_count, int) or isinstance(vertex_count, bool) or vertex_count < 0:
        raise FormatError("vertex_count must be a non-negative integer")
    raw = doc.get("rotations")
    if not isinstance(raw, list) or len(raw) != vertex_count:
        raise FormatError("rotations must list one neighbor cycle per vertex")
    rotations: list[tuple[int, ...]] = []
    for v, row in enumerate(raw):
        if not isinstance(row, list) or not all(
            isinstance(x, int) and not isinstance(x, bool) for x in row
        ):
            raise FormatError(f"rotation at vertex {v} must be a list of vertex ids")
        if any(not 0 <= x < vertex_count for x in row):
            raise FormatError(f"rotation at vertex {v} mentions an out-of-range vertex")
        if len(set(row)) != len(row):
            raise FormatError(f"rotation at vertex {v} repeats a neighbor")
        if v in row:
            raise FormatError(f"rotation at vertex {v} lists the vertex itself")
        rotations.append(tuple(row))
    for v, row in enumerate(rotations):
        for u in row:
            if v not in rotations[u]:
                raise FormatError(f"rotation asymmetry: {u} listed at {v} but not {v} at {u}")
    edges = {(min(u, v), max(u, v)) for v, row in enumerate(rotations) for u in row}
    try:
        system = RotationSystem(Graph(vertex_count, frozenset(edges)), tuple(rotations))
    except ValueError as exc:
        raise FormatError(str(exc)) from exc
    declared = doc.get("declared_genus")
    if declared is not None:
        if not isinstance(declared, int) or isinstance(declared, bool) or declared < 0:
            raise FormatError("declared_genus must be a non-negative integer")
        _, genus = euler_genus(system)
        if genus != declared:
            raise GenusMismatchError(f"declared genus {declared} but traced genus is {genus}")
    return system


def save_embedding(
    system: RotationSystem, path: str | Path, declared_genus: int | None = None
) -> None:
    Path(path).write_text(
        canonical_json(embedding_to_document(system, declared_genus)), encoding="utf-8"
    )


def load_embedding(path: str | Path) -> RotationSystem:
    try:
        doc = json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise FormatError(f"not valid JSON: {exc}") from exc
    return embedding_from_document(doc)
