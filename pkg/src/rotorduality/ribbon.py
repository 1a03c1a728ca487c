"""Ribbon graphs (rotation systems), face tracing, genus and planar duality.

A ribbon graph is a connected loopless multigraph together with a cyclic
order of the edges at every vertex.  Every edge ``e = (u, v)`` contributes two
darts, ``Dart(e, u)`` and ``Dart(e, v)``; ``alpha`` swaps them and ``sigma``
advances a dart to the next one around its tail.  The rotation lists passed
in are read as *clockwise* orders.

Faces are the orbits of ``alpha . sigma`` (apply ``sigma`` first).  The orbit
of a dart ``d`` is the face lying to the right of ``d``: the face swept when
turning from ``d`` to ``sigma(d)`` at ``tail(d)``.
"""

from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Dict, FrozenSet, Iterable, List, Mapping, NamedTuple, Optional, Tuple

from .errors import (
    Disconnected,
    DuplicateId,
    HasBridge,
    InternalParity,
    LoopEdge,
    NotASpanningTree,
    NotPlanar,
    RotationMismatch,
    UnknownDart,
    UnknownVertex,
)

SpanningTree = FrozenSet[str]


class Dart(NamedTuple):
    """An edge together with a chosen tail endpoint."""

    edge: str
    tail: str

    def __str__(self):
        return f"{self.edge}@{self.tail}"

    @property
    def id(self) -> str:
        return str(self)


class RibbonGraph:
    """Immutable, validated ribbon graph.

    Parameters
    ----------
    vertices : iterable of str
    edges : mapping or iterable
        Either ``{edge_id: (tail, head)}`` or an iterable of
        ``(edge_id, tail, head)`` triples.  The pair order fixes the reference
        orientation of the edge.
    rotations : mapping
        ``{vertex: [edge_id, ...]}``, the clockwise cyclic order at each vertex.
    """

    def __init__(self, vertices, edges, rotations, name=None):
        vertices = list(vertices)
        if len(set(vertices)) != len(vertices):
            raise DuplicateId(f"duplicate vertex ids in {vertices}")
        if isinstance(edges, Mapping):
            triples = [(e, uv[0], uv[1]) for e, uv in edges.items()]
        else:
            triples = [tuple(t) for t in edges]
        ends: Dict[str, Tuple[str, str]] = {}
        for e, u, v in triples:
            if e in ends:
                raise DuplicateId(f"duplicate edge id {e!r}")
            if u == v:
                raise LoopEdge(f"edge {e!r} is a loop at {u!r}")
            for w in (u, v):
                if w not in vertices:
                    raise UnknownVertex(f"edge {e!r} uses unknown vertex {w!r}")
            ends[e] = (u, v)

        incident: Dict[str, List[str]] = {v: [] for v in vertices}
        for e, (u, v) in ends.items():
            incident[u].append(e)
            incident[v].append(e)

        rot: Dict[str, Tuple[str, ...]] = {}
        for v in vertices:
            order = tuple(rotations.get(v, ()))
            if sorted(order) != sorted(incident[v]):
                raise RotationMismatch(
                    f"rotation at {v!r} is {list(order)}, expected a permutation of {sorted(incident[v])}"
                )
            rot[v] = order
        for v in rotations:
            if v not in incident:
                raise UnknownVertex(f"rotation given for unknown vertex {v!r}")

        self.name = name
        self._vertices = tuple(vertices)
        self._ends = ends
        self._rot = rot
        self._sigma: Dict[Dart, Dart] = {}
        self._sigma_inv: Dict[Dart, Dart] = {}
        for v, order in rot.items():
            k = len(order)
            for i, e in enumerate(order):
                d, nxt = Dart(e, v), Dart(order[(i + 1) % k], v)
                self._sigma[d] = nxt
                self._sigma_inv[nxt] = d

        if not vertices:
            raise Disconnected("graph has no vertices")
        seen = self._reachable(vertices[0], ends)
        if len(seen) != len(vertices):
            missing = sorted(set(vertices) - seen)
            raise Disconnected(f"vertices {missing} are not reachable from {vertices[0]!r}")

    def _reachable(self, start, edge_ends):
        adj = {v: [] for v in self._vertices}
        for u, v in edge_ends.values():
            adj[u].append(v)
            adj[v].append(u)
        seen = {start}
        queue = deque([start])
        while queue:
            u = queue.popleft()
            for w in adj[u]:
                if w not in seen:
                    seen.add(w)
                    queue.append(w)
        return seen

    # -- basic structure -------------------------------------------------

    @property
    def vertices(self) -> Tuple[str, ...]:
        return self._vertices

    @property
    def edges(self) -> Tuple[str, ...]:
        return tuple(self._ends)

    @property
    def darts(self) -> Tuple[Dart, ...]:
        return tuple(self._sigma)

    def endpoints(self, e) -> Tuple[str, str]:
        """Reference orientation ``(tail, head)`` of edge ``e``."""
        return self._ends[e]

    def rotation(self, v) -> Tuple[str, ...]:
        return self._rot[v]

    def reference_dart(self, e) -> Dart:
        return Dart(e, self._ends[e][0])

    def dart(self, e, tail) -> Dart:
        d = Dart(e, tail)
        if d not in self._sigma:
            raise UnknownDart(f"no dart of edge {e!r} with tail {tail!r}")
        return d

    def head(self, d: Dart) -> str:
        u, v = self._ends[d.edge]
        return v if d.tail == u else u

    def alpha(self, d: Dart) -> Dart:
        return Dart(d.edge, self.head(d))

    def sigma(self, d: Dart) -> Dart:
        try:
            return self._sigma[d]
        except KeyError:
            raise UnknownDart(f"unknown dart {d}") from None

    def sigma_inv(self, d: Dart) -> Dart:
        try:
            return self._sigma_inv[d]
        except KeyError:
            raise UnknownDart(f"unknown dart {d}") from None

    def darts_at(self, v) -> Tuple[Dart, ...]:
        """Outgoing darts at ``v`` in clockwise order."""
        if v not in self._rot:
            raise UnknownVertex(v)
        return tuple(Dart(e, v) for e in self._rot[v])

    def degree(self, v) -> int:
        if v not in self._rot:
            raise UnknownVertex(v)
        return len(self._rot[v])

    def neighbours(self, v) -> Dict[str, int]:
        """Map from neighbour ``w`` to the number of edges ``n(v, w)``."""
        out: Dict[str, int] = {}
        for d in self.darts_at(v):
            w = self.head(d)
            out[w] = out.get(w, 0) + 1
        return out

    @cached_property
    def adjacency(self) -> Dict[str, Dict[str, int]]:
        """``{v: {w: n(v, w)}}`` for all vertices."""
        return {v: self.neighbours(v) for v in self._vertices}

    def check_vertex(self, v):
        if v not in self._rot:
            raise UnknownVertex(f"unknown vertex {v!r}")

    def check_dart(self, d):
        if d not in self._sigma:
            raise UnknownDart(f"unknown dart {d}")

    def __repr__(self):
        label = f" {self.name!r}" if self.name else ""
        return f"<RibbonGraph{label} V={len(self._vertices)} E={len(self._ends)}>"

    def __eq__(self, other):
        if not isinstance(other, RibbonGraph):
            return NotImplemented
        return (
            self._vertices == other._vertices
            and self._ends == other._ends
            and self._rot == other._rot
        )

    def __hash__(self):
        return hash((self._vertices, tuple(sorted(self._ends.items()))))

    def to_dict(self) -> dict:
        """The JSON-ready description accepted by :func:`build_ribbon_graph`."""
        return {
            "vertices": list(self._vertices),
            "edges": [[e, u, v] for e, (u, v) in self._ends.items()],
            "rotations": {v: list(r) for v, r in self._rot.items()},
        }


def build_ribbon_graph(doc: Mapping, name=None) -> RibbonGraph:
    """Build a :class:`RibbonGraph` from a parsed graph description.

    ``doc`` has keys ``vertices``, ``edges`` (``[id, tail, head]`` triples)
    and ``rotations``.
    """
    return RibbonGraph(doc["vertices"], [tuple(t) for t in doc["edges"]], doc["rotations"], name=name)


# -- faces and genus ------------------------------------------------------


@dataclass(frozen=True)
class FaceSet:
    faces: Dict[str, Tuple[Dart, ...]]
    face_of_dart: Dict[Dart, str]

    def __len__(self):
        return len(self.faces)

    def __iter__(self):
        return iter(self.faces)

    def right(self, d: Dart) -> str:
        """Id of the face to the right of ``d``."""
        return self.face_of_dart[d]


def face_step(g: RibbonGraph, d: Dart) -> Dart:
    """Next dart along the face to the right of ``d``."""
    return g.alpha(g.sigma(d))


def faces(g: RibbonGraph) -> FaceSet:
    faces_: Dict[str, Tuple[Dart, ...]] = {}
    face_of: Dict[Dart, str] = {}
    for start in sorted(g.darts):
        if start in face_of:
            continue
        # sorted iteration: the first unvisited dart is the least of its orbit
        fid = str(start)
        orbit = [start]
        d = face_step(g, start)
        while d != start:
            orbit.append(d)
            d = face_step(g, d)
        for d in orbit:
            face_of[d] = fid
        faces_[fid] = tuple(orbit)
    return FaceSet(faces_, face_of)


def euler_characteristic(g: RibbonGraph) -> int:
    return len(g.vertices) - len(g.edges) + len(faces(g))


def genus(g: RibbonGraph) -> int:
    twice = 2 - euler_characteristic(g)
    if twice % 2 or twice < 0:
        raise InternalParity(f"2 - V + E - F = {twice} on {g!r}")
    return twice // 2


# -- spanning trees -------------------------------------------------------


def is_spanning_tree(g: RibbonGraph, edges: Iterable[str]) -> bool:
    edges = set(edges)
    if len(edges) != len(g.vertices) - 1 or not edges <= set(g.edges):
        return False
    parent = {v: v for v in g.vertices}

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for e in edges:
        a, b = (find(x) for x in g.endpoints(e))
        if a == b:
            return False
        parent[a] = b
    return True


def check_spanning_tree(g: RibbonGraph, t) -> SpanningTree:
    t = frozenset(t)
    if not is_spanning_tree(g, t):
        raise NotASpanningTree(f"{sorted(t)} is not a spanning tree of {g!r}")
    return t


def tree_darts_towards(g: RibbonGraph, t: SpanningTree, root) -> Dict[str, Dart]:
    """For each vertex ``v != root`` the dart of ``t`` leaving ``v`` towards ``root``."""
    g.check_vertex(root)
    t = check_spanning_tree(g, t)
    out: Dict[str, Dart] = {}
    seen = {root}
    queue = deque([root])
    while queue:
        u = queue.popleft()
        for d in g.darts_at(u):
            if d.edge not in t:
                continue
            w = g.head(d)
            if w not in seen:
                seen.add(w)
                out[w] = g.alpha(d)
                queue.append(w)
    return out


# -- planar duality -------------------------------------------------------


def dual_edge_id(e: str) -> str:
    """``e`` -> ``e*``; a trailing star is removed instead, so ``e** == e``."""
    return e[:-1] if e.endswith("*") else e + "*"


@dataclass(frozen=True)
class DualCorrespondence:
    """A planar ribbon graph, its dual and the maps between them.

    Dual vertex ids are the primal face ids.  Dual edge ``e*`` runs from the
    face to the right of the reference dart of ``e`` to the face on its left.
    The rotation at a dual vertex lists the crossed edges in the order the
    ``alpha . sigma`` orbit of that face meets them; with clockwise primal
    rotations this is counter-clockwise around the dual vertex.
    """

    primal: RibbonGraph
    dual: RibbonGraph
    face_set: FaceSet
    edge_map: Dict[str, str]
    vertex_map: Dict[str, str]
    dual_orientation: Dict[str, Tuple[str, str]]

    @property
    def dual_graph(self) -> RibbonGraph:
        return self.dual

    def dual_dart(self, d: Dart) -> Dart:
        """The dart of ``G*`` crossing ``d`` from right to left."""
        return Dart(self.edge_map[d.edge], self.vertex_map[self.face_set.right(d)])

    def right_face(self, d: Dart) -> str:
        """The dual vertex to the right of primal dart ``d``."""
        return self.vertex_map[self.face_set.right(d)]

    def dual_tree(self, t) -> SpanningTree:
        return dual_tree(self, t)


def _find_bridge(g: RibbonGraph, fs: FaceSet):
    for e in g.edges:
        d = g.reference_dart(e)
        if fs.right(d) == fs.right(g.alpha(d)):
            return e
    return None


def planar_dual(g: RibbonGraph) -> DualCorrespondence:
    fs = faces(g)
    gen = genus(g)
    if gen != 0:
        raise NotPlanar(f"{g!r} has genus {gen}")
    bridge = _find_bridge(g, fs)
    if bridge is not None:
        raise HasBridge(f"edge {bridge!r} is a bridge; its dual would be a loop")

    edge_map = {e: dual_edge_id(e) for e in g.edges}
    vertex_map = {f: f for f in fs.faces}
    orientation = {}
    dual_edges = []
    for e in g.edges:
        d = g.reference_dart(e)
        tail, head = fs.right(d), fs.right(g.alpha(d))
        orientation[e] = (tail, head)
        dual_edges.append((edge_map[e], vertex_map[tail], vertex_map[head]))
    rotations = {
        vertex_map[f]: [edge_map[d.edge] for d in orbit] for f, orbit in fs.faces.items()
    }
    name = f"{g.name}*" if g.name else None
    dual = RibbonGraph(list(vertex_map.values()), dual_edges, rotations, name=name)
    return DualCorrespondence(g, dual, fs, edge_map, vertex_map, orientation)


def dual_tree(corr: DualCorrespondence, t) -> SpanningTree:
    """``T -> T* = {e* : e not in T}``."""
    t = check_spanning_tree(corr.primal, t)
    return frozenset(corr.edge_map[e] for e in corr.primal.edges if e not in t)


def find_isomorphism(g: RibbonGraph, h: RibbonGraph) -> Optional[Dict[str, str]]:
    """Vertex bijection ``g -> h`` preserving edge ids and rotations, or None.

    Edges must join corresponding vertices (orientation ignored) and the
    rotation at each vertex must agree up to a cyclic shift.
    """
    if set(g.edges) != set(h.edges) or len(g.vertices) != len(h.vertices):
        return None

    def cyclic_key(seq):
        if not seq:
            return ()
        i = seq.index(min(seq))
        return tuple(seq[i:] + seq[:i])

    h_by_rot: Dict[tuple, List[str]] = {}
    for v in h.vertices:
        h_by_rot.setdefault(cyclic_key(list(h.rotation(v))), []).append(v)
    mapping: Dict[str, str] = {}
    used = set()

    def consistent(u, cand):
        for e in g.rotation(u):
            a, b = g.endpoints(e)
            other = b if a == u else a
            if other in mapping:
                ha, hb = h.endpoints(e)
                if {ha, hb} != {cand, mapping[other]}:
                    return False
        return True

    order = list(g.vertices)

    def search(i):
        if i == len(order):
            return True
        u = order[i]
        for cand in h_by_rot.get(cyclic_key(list(g.rotation(u))), []):
            if cand in used or not consistent(u, cand):
                continue
            mapping[u] = cand
            used.add(cand)
            if search(i + 1):
                return True
            del mapping[u]
            used.discard(cand)
        return False

    return dict(mapping) if search(0) else None
