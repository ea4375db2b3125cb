"""Qudit Kitaev models on oriented graphs embedded in closed surfaces.

The surface is described combinatorially: each face is a boundary walk of
(edge, side) entries, and every edge must occur exactly once on each side
across all faces.  Vertex operators act by X on entering arrows and X^-1
on leaving ones; face operators act by Z where the face lies on the right
of the arrow and Z^-1 where it lies on the left.

Shifts and twists modify only the vertex side: designated vertex
operators are removed and replaced by powers A^a together with powers
S^Z(t)^b of path operators, with d | a*b (equality for shifts).
"""

from __future__ import annotations

import warnings
from collections import deque
from dataclasses import dataclass
from typing import Mapping, Sequence

from .errors import (
    BadSplit,
    BadSurface,
    Disconnected,
    NotADualPath,
    NotAPath,
    OddEuler,
    PathMismatch,
)
from .pauli import PauliElement, multiply, power
from .stabilizer import CharacterMap, StabilizerGroup, validate, validate_character


class DegenerateModelWarning(UserWarning):
    """Loops or same-face-both-sides edges give identity operator factors."""


LEFT = "L"
RIGHT = "R"
_SIDE_ALIASES = {"L": LEFT, "LEFT": LEFT, "R": RIGHT, "RIGHT": RIGHT}


def _freeze(x):
    """JSON arrays become tuples so ids stay hashable across round trips."""
    return tuple(_freeze(y) for y in x) if isinstance(x, list) else x


@dataclass(frozen=True)
class Edge:
    id: object
    tail: object
    head: object


PathStep = tuple[object, bool]  # (edge id, reverse?)


class SurfaceGraph:
    """Oriented graph with a face structure describing a closed surface."""

    def __init__(self, vertices: Sequence, edges: Sequence[Edge], faces: Sequence[Sequence[tuple]]):
        self.vertices = tuple(vertices)
        self.edges = tuple(edges)
        self.edge_index = {e.id: i for i, e in enumerate(self.edges)}
        if len(self.edge_index) != len(self.edges):
            raise BadSurface("duplicate edge ids")
        by_id = {e.id: e for e in self.edges}
        vset = set(self.vertices)
        if len(vset) != len(self.vertices):
            raise BadSurface("duplicate vertex ids")
        for e in self.edges:
            if e.tail not in vset or e.head not in vset:
                raise BadSurface(f"edge {e.id} touches an unknown vertex")
        norm_faces = []
        seen: dict[tuple, int] = {}
        for fi, walk in enumerate(faces):
            norm = []
            for eid, side in walk:
                side = _SIDE_ALIASES.get(str(side).upper())
                if side is None:
                    raise BadSurface(f"unknown side marker in face {fi}")
                if eid not in by_id:
                    raise BadSurface(f"face {fi} uses unknown edge {eid}")
                key = (eid, side)
                if key in seen:
                    raise BadSurface(f"edge {eid} appears twice with side {side}")
                seen[key] = fi
                norm.append((eid, side))
            norm_faces.append(tuple(norm))
        self.faces = tuple(norm_faces)
        for e in self.edges:
            if (e.id, LEFT) not in seen or (e.id, RIGHT) not in seen:
                raise BadSurface(f"edge {e.id} does not have both sides covered")
        self._side_face = seen
        self._check_connected()
        if self.euler_characteristic % 2:
            raise OddEuler(f"Euler characteristic {self.euler_characteristic} is odd")
        if self.genus < 0:
            raise BadSurface("negative genus")
        for e in self.edges:
            if e.tail == e.head:
                warnings.warn(f"loop edge {e.id} contributes identity to its vertex operator",
                              DegenerateModelWarning, stacklevel=2)
            if self._side_face[(e.id, LEFT)] == self._side_face[(e.id, RIGHT)]:
                warnings.warn(f"edge {e.id} has the same face on both sides",
                              DegenerateModelWarning, stacklevel=2)

    @classmethod
    def from_json_dict(cls, obj: Mapping) -> "SurfaceGraph":
        edges = [Edge(_freeze(e["id"]), _freeze(e["tail"]), _freeze(e["head"])) for e in obj["edges"]]
        faces = [[(_freeze(step["edge"]), step["side"]) for step in walk] for walk in obj["faces"]]
        return cls([_freeze(v) for v in obj["vertices"]], edges, faces)

    def to_json_dict(self) -> dict:
        return {
            "vertices": list(self.vertices),
            "edges": [{"id": e.id, "tail": e.tail, "head": e.head} for e in self.edges],
            "faces": [[{"edge": eid, "side": side} for eid, side in walk] for walk in self.faces],
        }

    def _check_connected(self):
        if not self.vertices:
            raise Disconnected("empty graph")
        adj: dict[object, list] = {v: [] for v in self.vertices}
        for e in self.edges:
            adj[e.tail].append(e.head)
            adj[e.head].append(e.tail)
        seen = {self.vertices[0]}
        queue = deque([self.vertices[0]])
        while queue:
            v = queue.popleft()
            for w in adj[v]:
                if w not in seen:
                    seen.add(w)
                    queue.append(w)
        if len(seen) != len(self.vertices):
            raise Disconnected("graph is not connected")

    @property
    def euler_characteristic(self) -> int:
        return len(self.vertices) - len(self.edges) + len(self.faces)

    @property
    def genus(self) -> int:
        return (2 - self.euler_characteristic) // 2

    def left_face(self, eid) -> int:
        return self._side_face[(eid, LEFT)]

    def right_face(self, eid) -> int:
        return self._side_face[(eid, RIGHT)]


def genus(graph: SurfaceGraph) -> int:
    return graph.genus


@dataclass(frozen=True)
class ChargeConfiguration:
    """Electric charges per vertex and magnetic charges per face, mod d."""

    electric: dict
    magnetic: dict


class KitaevModel:
    """Vertex/face operators and the stabiliser they generate."""

    def __init__(self, graph: SurfaceGraph, d: int):
        self.graph = graph
        self.d = d
        n = len(graph.edges)
        self.n = n
        self.vertex_ops: dict[object, PauliElement] = {}
        for s in graph.vertices:
            a = [0] * n
            for i, e in enumerate(graph.edges):
                if e.head == s:
                    a[i] += 1
                if e.tail == s:
                    a[i] -= 1
            self.vertex_ops[s] = PauliElement(d, n, 0, tuple(a), (0,) * n)
        self.face_ops: dict[int, PauliElement] = {}
        for fi, walk in enumerate(graph.faces):
            b = [0] * n
            for eid, side in walk:
                i = graph.edge_index[eid]
                b[i] += 1 if side == RIGHT else -1
            self.face_ops[fi] = PauliElement(d, n, 0, (0,) * n, tuple(b))
        gens = [self.vertex_ops[s] for s in graph.vertices] + [
            self.face_ops[fi] for fi in range(len(graph.faces))
        ]
        prod_a = PauliElement.identity(d, n)
        for s in graph.vertices:
            prod_a = multiply(prod_a, self.vertex_ops[s])
        prod_b = PauliElement.identity(d, n)
        for fi in range(len(graph.faces)):
            prod_b = multiply(prod_b, self.face_ops[fi])
        if prod_a != PauliElement.identity(d, n) or prod_b != PauliElement.identity(d, n):
            raise BadSurface("vertex or face operators do not multiply to the identity")
        self.stabilizer: StabilizerGroup = validate(d, n, gens)
        expected_rank = len(graph.vertices) + len(graph.faces) - 2
        if self.stabilizer.tau_image.invariant_factors != (d,) * expected_rank:
            raise BadSurface("stabiliser is not free of rank #S + #F - 2")

    @property
    def generator_labels(self) -> list:
        return [("A", s) for s in self.graph.vertices] + [
            ("B", fi) for fi in range(len(self.graph.faces))
        ]


def build_model(graph: SurfaceGraph, d: int) -> KitaevModel:
    return KitaevModel(graph, d)


def _normalize_steps(steps: Sequence) -> list[PathStep]:
    out = []
    for step in steps:
        if isinstance(step, Mapping):
            out.append((_freeze(step["edge"]), bool(step.get("reverse", False))))
        else:
            eid, rev = step
            out.append((_freeze(eid), bool(rev)))
    return out


def path_endpoints(graph: SurfaceGraph, steps: Sequence[PathStep]) -> tuple:
    """(start, end) vertices of an edge path; raises NotAPath on breaks."""
    cur = None
    start = None
    for eid, rev in steps:
        if eid not in graph.edge_index:
            raise NotAPath(f"unknown edge {eid}")
        e = graph.edges[graph.edge_index[eid]]
        a, b = (e.head, e.tail) if rev else (e.tail, e.head)
        if cur is None:
            start, cur = a, b
        elif a != cur:
            raise NotAPath(f"step on edge {eid} does not start at {cur}")
        else:
            cur = b
    return (start, cur)


def path_operator(model: KitaevModel, steps: Sequence) -> PauliElement:
    """Z-type transport operator: Z on agreeing edges, Z^-1 otherwise."""
    steps = _normalize_steps(steps)
    path_endpoints(model.graph, steps)
    b = [0] * model.n
    for eid, rev in steps:
        i = model.graph.edge_index[eid]
        b[i] += -1 if rev else 1
    return PauliElement(model.d, model.n, 0, (0,) * model.n, tuple(b))


def dual_path_endpoints(graph: SurfaceGraph, steps: Sequence[PathStep]) -> tuple:
    """(start, end) faces of a dual path; forward crosses right -> left."""
    cur = None
    start = None
    for eid, rev in steps:
        if eid not in graph.edge_index:
            raise NotADualPath(f"unknown edge {eid}")
        fr, to = graph.right_face(eid), graph.left_face(eid)
        if rev:
            fr, to = to, fr
        if cur is None:
            start, cur = fr, to
        elif fr != cur:
            raise NotADualPath(f"crossing {eid} does not start at face {cur}")
        else:
            cur = to
    return (start, cur)


def dual_path_operator(model: KitaevModel, steps: Sequence) -> PauliElement:
    """X-type transport operator along a path in the dual graph.

    A forward step crosses its edge from the right face to the left face
    and applies X; a reversed step applies X^-1.
    """
    steps = _normalize_steps(steps)
    dual_path_endpoints(model.graph, steps)
    a = [0] * model.n
    for eid, rev in steps:
        i = model.graph.edge_index[eid]
        a[i] += -1 if rev else 1
    return PauliElement(model.d, model.n, 0, tuple(a), (0,) * model.n)


def charge_configuration(model: KitaevModel, chi: CharacterMap) -> ChargeConfiguration:
    """Read charges from a character of the model stabiliser.

    Character values follow the generator order (all A_s, then all B_f);
    total electric and total magnetic charge vanish mod d.
    """
    validate_character(model.stabilizer, chi)
    d = model.d
    ns = len(model.graph.vertices)
    electric = {s: chi.values[i] % d for i, s in enumerate(model.graph.vertices)}
    magnetic = {fi: chi.values[ns + fi] % d for fi in range(len(model.graph.faces))}
    if sum(electric.values()) % d or sum(magnetic.values()) % d:
        raise AssertionError("charges do not sum to zero")
    return ChargeConfiguration(electric, magnetic)


def _sort_key(x):
    return (str(type(x)), str(x))


def _spanning_tree_paths(nodes, links):
    """BFS tree from the smallest node; links are (key, node_a, node_b).

    Returns (paths, tree_keys): paths[v] is the step list (key, reverse)
    from the root to v, where forward means a -> b.
    """
    adj: dict[object, list] = {v: [] for v in nodes}
    for key, a, b in links:
        adj[a].append((key, b, False))
        adj[b].append((key, a, True))
    for v in adj:
        adj[v].sort(key=lambda t: (_sort_key(t[0]), t[2]))
    root = min(nodes, key=_sort_key)
    paths = {root: []}
    tree_keys = set()
    queue = deque([root])
    while queue:
        v = queue.popleft()
        for key, w, rev in adj[v]:
            if w not in paths:
                paths[w] = paths[v] + [(key, rev)]
                tree_keys.add(key)
                queue.append(w)
    return paths, tree_keys


def normalizer_generators(model: KitaevModel) -> list[PauliElement]:
    """Loop and dual-loop operators from deterministic cycle bases."""
    graph = model.graph
    out: list[PauliElement] = []
    links = [(e.id, e.tail, e.head) for e in graph.edges]
    paths, tree = _spanning_tree_paths(graph.vertices, links)
    for e in graph.edges:
        if e.id in tree:
            continue
        steps = paths[e.tail] + [(e.id, False)] + [(k, not r) for k, r in reversed(paths[e.head])]
        out.append(path_operator(model, steps))
    dual_links = [(e.id, graph.right_face(e.id), graph.left_face(e.id)) for e in graph.edges]
    dpaths, dtree = _spanning_tree_paths(range(len(graph.faces)), dual_links)
    for e in graph.edges:
        if e.id in dtree:
            continue
        fr, to = graph.right_face(e.id), graph.left_face(e.id)
        steps = dpaths[fr] + [(e.id, False)] + [(k, not r) for k, r in reversed(dpaths[to])]
        out.append(dual_path_operator(model, steps))
    return out


@dataclass(frozen=True)
class ShiftPair:
    vertex: object
    a: int
    b: int
    path: tuple[PathStep, ...]

    @classmethod
    def from_json_dict(cls, obj: Mapping) -> "ShiftPair":
        return cls(_freeze(obj["vertex"]), int(obj["a"]), int(obj["b"]),
                   tuple(_normalize_steps(obj["path"])))


def _modified_group(
    model: KitaevModel, source, pairs: Sequence[ShiftPair], twisted: bool
) -> StabilizerGroup:
    d = model.d
    graph = model.graph
    removed = {source}
    new_gens: list[PauliElement] = []
    for pair in pairs:
        if pair.a < 1 or pair.b < 1 or (pair.a * pair.b) % d:
            raise BadSplit(f"need d | a*b, got a={pair.a} b={pair.b}")
        if not twisted and pair.a * pair.b != d:
            raise BadSplit(f"shift needs a*b = d, got a={pair.a} b={pair.b}")
        steps = _normalize_steps(pair.path)
        start, end = path_endpoints(graph, steps)
        if start != source or end != pair.vertex:
            raise PathMismatch(
                f"path runs {start} -> {end}, expected {source} -> {pair.vertex}"
            )
        removed.add(pair.vertex)
    for s in graph.vertices:
        if s not in removed:
            new_gens.append(model.vertex_ops[s])
    for pair in pairs:
        if pair.a % d:
            new_gens.append(power(model.vertex_ops[pair.vertex], pair.a))
        if pair.b % d:
            new_gens.append(power(path_operator(model, pair.path), pair.b))
    for fi in range(len(graph.faces)):
        new_gens.append(model.face_ops[fi])
    return validate(d, model.n, new_gens)


def apply_shift(model: KitaevModel, source, pairs: Sequence[ShiftPair]) -> StabilizerGroup:
    """Replace A at the designated vertices by A^a and S^Z(t)^b with a*b = d."""
    return _modified_group(model, source, pairs, twisted=False)


def apply_twist(model: KitaevModel, source, pairs: Sequence[ShiftPair]) -> StabilizerGroup:
    """Like apply_shift but only d | a*b; the defect c = a*b/d adds small qudits."""
    return _modified_group(model, source, pairs, twisted=True)


# deterministic example surfaces, used by tests and the CLI docs

def face_from_vertex_cycle(edges: Sequence[Edge], cycle: Sequence) -> list[tuple]:
    """(edge, side) walk of a face whose boundary visits the given vertices.

    The face is kept on the left of the walking direction: a forward
    traversal contributes (edge, L), a backward one (edge, R).  Parallel
    edges are disambiguated by first unused match.
    """
    used = set()
    walk = []
    m = len(cycle)
    for i in range(m):
        a, b = cycle[i], cycle[(i + 1) % m]
        match = None
        for e in edges:
            if e.id in used:
                continue
            if (e.tail, e.head) == (a, b):
                match = (e.id, LEFT)
                break
            if (e.tail, e.head) == (b, a):
                match = (e.id, RIGHT)
                break
        if match is None:
            raise BadSurface(f"no unused edge from {a} to {b}")
        used.add(match[0])
        walk.append(match)
    return walk


def tetrahedron_graph() -> SurfaceGraph:
    """Sphere: 4 vertices, 6 edges, 4 faces, genus 0."""
    vs = [0, 1, 2, 3]
    pairs = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]
    edges = [Edge(f"e{a}{b}", a, b) for a, b in pairs]
    cycles = [(0, 1, 2), (0, 2, 3), (0, 3, 1), (1, 3, 2)]
    faces = [face_from_vertex_cycle(edges, c) for c in cycles]
    return SurfaceGraph(vs, edges, faces)


def torus_grid_graph(rows: int, cols: int) -> SurfaceGraph:
    """rows x cols square lattice with periodic boundary, genus 1."""
    vs = [(i, j) for i in range(rows) for j in range(cols)]
    edges = []
    for i in range(rows):
        for j in range(cols):
            edges.append(Edge(("h", i, j), (i, j), (i, (j + 1) % cols)))
            edges.append(Edge(("v", i, j), (i, j), ((i + 1) % rows, j)))
    faces = []
    for i in range(rows):
        for j in range(cols):
            # plaquette between rows i, i+1 and columns j, j+1
            faces.append([
                (("h", i, j), RIGHT),
                (("v", i, (j + 1) % cols), RIGHT),
                (("h", (i + 1) % rows, j), LEFT),
                (("v", i, j), LEFT),
            ])
    return SurfaceGraph(vs, edges, faces)


def genus2_bouquet_graph() -> SurfaceGraph:
    """One vertex, four loop edges, one octagon face: genus 2.

    Degenerate as a model (all operators are the identity) but exercises
    the genus bookkeeping; the degeneracy warnings are silenced here.
    """
    vs = [0]
    edges = [Edge(k, 0, 0) for k in ("a", "b", "c", "d")]
    face = [("a", LEFT), ("b", LEFT), ("a", RIGHT), ("b", RIGHT),
            ("c", LEFT), ("d", LEFT), ("c", RIGHT), ("d", RIGHT)]
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", DegenerateModelWarning)
        return SurfaceGraph(vs, edges, [face])
