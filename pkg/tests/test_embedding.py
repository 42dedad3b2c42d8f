from __future__ import annotations

import json
import random

import pytest

from qforge.embedding import (
    EMBEDDING_FORMAT,
    Dart,
    GenusMismatchError,
    RotationSystem,
    embedding_from_document,
    embedding_to_document,
    euler_genus,
    load_embedding,
    save_embedding,
    trace_faces,
    validate_quadrangulation,
)
from qforge.graph import FormatError, Graph, complete_graph, make_graph


def _system(n, edges, rotations):
    return RotationSystem(make_graph(n, edges), tuple(tuple(r) for r in rotations))


def _shuffled_system(graph: Graph, rng: random.Random) -> RotationSystem:
    rotations = []
    for neighbors in graph.adjacency():
        row = list(neighbors)
        rng.shuffle(row)
        rotations.append(tuple(row))
    return RotationSystem(graph, tuple(rotations))


def test_rotation_canonical_start():
    system = _system(3, [(0, 1), (0, 2), (1, 2)], [(2, 1), (0, 2), (1, 0)])
    assert system.rotations == ((1, 2), (0, 2), (0, 1))


def test_rotation_system_rejections():
    triangle = make_graph(3, [(0, 1), (0, 2), (1, 2)])
    with pytest.raises(ValueError):
        RotationSystem(triangle, ((1, 2), (0, 2)))  # one rotation short
    with pytest.raises(ValueError):
        RotationSystem(triangle, ((1, 1), (0, 2), (0, 1)))  # repeated neighbor
    with pytest.raises(ValueError):
        RotationSystem(triangle, ((1, 2), (0, 2), (0, 3)))  # 3 is not adjacent
    with pytest.raises(ValueError):
        RotationSystem(Graph(2, frozenset()), ((), ()))  # no edge at all
    two_edges = make_graph(4, [(0, 1), (2, 3)])
    with pytest.raises(ValueError):
        RotationSystem(two_edges, ((1,), (0,), (3,), (2,)))  # disconnected


def test_trace_triangle_sphere():
    system = _system(3, [(0, 1), (0, 2), (1, 2)], [(1, 2), (0, 2), (0, 1)])
    faces = trace_faces(system)
    assert [f.vertices() for f in faces] == [(0, 1, 2), (0, 2, 1)]
    assert faces[0].darts == (Dart(0, 1), Dart(1, 2), Dart(2, 0))
    assert euler_genus(system) == (2, 0)


def test_trace_k4_ascending_is_torus():
    graph = complete_graph(4)
    system = RotationSystem(graph, tuple(tuple(row) for row in graph.adjacency()))
    faces = trace_faces(system)
    assert [f.vertices() for f in faces] == [(0, 1, 2, 3), (0, 2, 1, 3, 2, 0, 3, 1)]
    assert euler_genus(system) == (0, 1)


def test_face_orbits_cover_all_darts():
    rng = random.Random(23)
    for _ in range(25):
        n = rng.randint(2, 9)
        tree = [(rng.randrange(v), v) for v in range(1, n)]
        pool = [(i, j) for i in range(n) for j in range(i + 1, n) if (i, j) not in tree]
        extra = rng.sample(pool, min(len(pool), rng.randint(0, 6)))
        graph = make_graph(n, tree + extra)
        system = _shuffled_system(graph, rng)
        faces = trace_faces(system)
        darts = [d for f in faces for d in f.darts]
        assert len(darts) == 2 * graph.edge_count
        assert len(set(darts)) == len(darts)
        chi, genus = euler_genus(system)
        assert chi == graph.vertex_count - graph.edge_count + len(faces)
        assert genus >= 0


def test_quadrangulation_square():
    system = _system(4, [(0, 1), (1, 2), (2, 3), (0, 3)], [(1, 3), (0, 2), (1, 3), (0, 2)])
    report = validate_quadrangulation(system)
    assert report.is_quadrangulation
    assert report.failures == ()
    assert (report.vertex_count, report.edge_count, report.face_count) == (4, 4, 2)
    assert (report.euler_characteristic, report.genus) == (2, 0)


def test_quadrangulation_rejects_triangle_faces():
    system = _system(3, [(0, 1), (0, 2), (1, 2)], [(1, 2), (0, 2), (0, 1)])
    report = validate_quadrangulation(system)
    assert not report.is_quadrangulation
    assert report.failures == (
        "face 0 (0-1-2) has length 3, not 4",
        "face 1 (0-2-1) has length 3, not 4",
    )


def test_quadrangulation_rejects_degenerate_walk():
    # A path on three vertices has a single closed walk of length four, but
    # it pinches at the middle vertex and reuses both edges.
    system = _system(3, [(0, 1), (1, 2)], [(1,), (0, 2), (1,)])
    report = validate_quadrangulation(system)
    faces = trace_faces(system)
    assert [f.vertices() for f in faces] == [(0, 1, 2, 1)]
    assert report.failures == ("face 0 (0-1-2-1) revisits a vertex",)


def test_quadrangulation_repeated_edge_detected():
    # Two vertices joined by one edge: the walk 0-1-0-1 has length four and
    # hits only two vertices, so the vertex check fires first; a genuinely
    # 4-distinct-vertex walk with a repeated edge cannot occur in a simple
    # graph, which is why the edge check is a backstop, not dead code.
    system = _system(2, [(0, 1)], [(1,), (0,)])
    faces = trace_faces(system)
    assert faces[0].vertices() == (0, 1)
    report = validate_quadrangulation(system)
    assert report.failures == ("face 0 (0-1) has length 2, not 4",)


def test_opposite_faces_may_share_all_edges():
    # The order-4 sphere quadrangulation: both faces use the same four edges.
    system = _system(4, [(0, 1), (1, 2), (2, 3), (0, 3)], [(1, 3), (0, 2), (1, 3), (0, 2)])
    faces = trace_faces(system)
    first = {frozenset(d) for d in faces[0].darts}
    second = {frozenset(d) for d in faces[1].darts}
    assert first == second
    assert validate_quadrangulation(system).is_quadrangulation


# ============================================================
# File format
# ============================================================


def _square_system():
    return _system(4, [(0, 1), (1, 2), (2, 3), (0, 3)], [(1, 3), (0, 2), (1, 3), (0, 2)])


def test_document_round_trip(tmp_path):
    system = _square_system()
    doc = embedding_to_document(system, declared_genus=0)
    assert doc["format"] == EMBEDDING_FORMAT
    assert doc["declared_genus"] == 0
    assert embedding_from_document(doc) == system

    path = tmp_path / "square.json"
    save_embedding(system, path, declared_genus=0)
    loaded = load_embedding(path)
    assert loaded == system
    twice = tmp_path / "square2.json"
    save_embedding(loaded, twice, declared_genus=0)
    assert path.read_bytes() == twice.read_bytes()


def test_document_omits_genus_when_not_declared(tmp_path):
    path = tmp_path / "plain.json"
    save_embedding(_square_system(), path)
    doc = json.loads(path.read_text())
    assert "declared_genus" not in doc
    assert load_embedding(path) == _square_system()


def test_save_is_canonical_bytes(tmp_path):
    path = tmp_path / "square.json"
    save_embedding(_square_system(), path, declared_genus=0)
    assert path.read_text(encoding="utf-8") == (
        '{"declared_genus":0,"format":"qforge-embedding/1",'
        '"rotations":[[1,3],[0,2],[1,3],[0,2]],"vertex_count":4}\n'
    )


def test_declared_genus_mismatch(tmp_path):
    path = tmp_path / "wrong.json"
    save_embedding(_square_system(), path, declared_genus=3)
    with pytest.raises(GenusMismatchError, match="declared genus 3 but traced genus is 0"):
        load_embedding(path)


def test_document_rejections():
    good = embedding_to_document(_square_system())

    def broken(**changes):
        doc = dict(good)
        doc.update(changes)
        return doc

    with pytest.raises(FormatError):
        embedding_from_document(broken(format="qforge-graph/1"))
    with pytest.raises(FormatError):
        embedding_from_document([])
    with pytest.raises(FormatError):
        embedding_from_document(broken(vertex_count=-1))
    with pytest.raises(FormatError):
        embedding_from_document(broken(vertex_count=True))
    with pytest.raises(FormatError):
        embedding_from_document(broken(vertex_count=5))  # row count mismatch
    with pytest.raises(FormatError):
        embedding_from_document(broken(rotations="nope"))
    with pytest.raises(FormatError):
        embedding_from_document(broken(rotations=[[1, 3], [0, 2], [1, 3], [0, "2"]]))
    with pytest.raises(FormatError):
        embedding_from_document(broken(rotations=[[1, 3], [0, 2], [1, 3], [0, 9]]))
    with pytest.raises(FormatError):
        embedding_from_document(broken(rotations=[[1, 1], [0, 2], [1, 3], [0, 2]]))
    with pytest.raises(FormatError):
        embedding_from_document(broken(rotations=[[0, 3], [0, 2], [1, 3], [0, 2]]))
    with pytest.raises(FormatError, match="asymmetry"):
        embedding_from_document(broken(rotations=[[1, 3, 2], [0, 2], [1, 3], [0, 2]]))
    with pytest.raises(FormatError):
        embedding_from_document(broken(declared_genus="zero"))
    with pytest.raises(FormatError):
        # Symmetric rotations but a disconnected graph.
        embedding_from_document(
            {
                "format": EMBEDDING_FORMAT,
                "vertex_count": 4,
                "rotations": [[1], [0], [3], [2]],
            }
        )


def test_load_rejects_malformed_json(tmp_path):
    path = tmp_path / "broken.json"
    path.write_text("{not json", encoding="utf-8")
    with pytest.raises(FormatError, match="not valid JSON"):
        load_embedding(path)
