"""Brute-force ground truth and the built-in graph corpus.

Nothing here reuses the reduction, routing or determinant code paths it is
meant to check: spanning trees come from deletion-contraction, Jacobian
classes from trying every subset firing, and cut-space membership from an
integer echelon form.
"""

import itertools
import math
import random
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

from .errors import TooLarge
from .ribbon import RibbonGraph, genus, tree_darts_towards
from .sandpile import Divisor, JacobianClass

EdgeVector = Dict[str, int]

TREE_BUDGET = 10_000
CLASS_BUDGET = 10_000


# -- spanning trees -----------------------------------------------------------


def enumerate_spanning_trees(g: RibbonGraph, limit: int = TREE_BUDGET) -> List[frozenset]:
    """All spanning trees by deletion-contraction, sorted.

    Parallel edges are kept distinct; once one of them is contracted the
    others become loops and drop out.
    """
    found: List[frozenset] = []

    def connected(edges, labels, n_comp):
        if n_comp <= 1:
            return True
        adj: Dict[str, List[str]] = {}
        for _, a, b in edges:
            la, lb = labels[a], labels[b]
            adj.setdefault(la, []).append(lb)
            adj.setdefault(lb, []).append(la)
        start = next(iter(set(labels.values())))
        seen = {start}
        stack = [start]
        while stack:
            for w in adj.get(stack.pop(), ()):
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == n_comp

    def rec(edges, labels, chosen, n_comp):
        if n_comp == 1:
            found.append(frozenset(chosen))
            if len(found) > limit:
                raise TooLarge(f"more than {limit} spanning trees")
            return
        live = [t for t in edges if labels[t[1]] != labels[t[2]]]
        if not live:
            return
        (e, a, b), rest = live[0], live[1:]
        old, new = labels[b], labels[a]
        merged = {v: (new if lab == old else lab) for v, lab in labels.items()}
        rec(rest, merged, chosen + [e], n_comp - 1)
        if connected(rest, labels, n_comp):
            rec(rest, labels, chosen, n_comp)

    edges = sorted((e, *g.endpoints(e)) for e in g.edges)
    rec(edges, {v: v for v in g.vertices}, [], len(g.vertices))
    return sorted(found, key=sorted)


# -- Jacobian classes ---------------------------------------------------------


def enumerate_jacobian_classes(g: RibbonGraph, q, limit: int = CLASS_BUDGET) -> List[JacobianClass]:
    """Every q-reduced divisor, found by exhaustive search.

    A candidate is nonnegative and below ``deg(v)`` away from ``q``; it is
    kept when no nonempty subset of ``V - {q}`` can fire without some member
    going negative.
    """
    g.check_vertex(q)
    others = [v for v in g.vertices if v != q]
    caps = [g.degree(v) for v in others]
    if math.prod(caps) > 50 * limit:
        raise TooLarge(f"{math.prod(caps)} candidate configurations")
    index = {v: i for i, v in enumerate(others)}
    adj = g.adjacency
    # for every nonempty subset (bitmask) the out-degree of each member
    demands = []
    for mask in range(1, 1 << len(others)):
        need = []
        for v, i in index.items():
            if mask >> i & 1:
                out = sum(n for w, n in adj[v].items() if w == q or not mask >> index[w] & 1)
                need.append((i, out))
        demands.append(need)

    classes = []
    for config in itertools.product(*(range(c) for c in caps)):
        if any(all(config[i] >= out for i, out in need) for need in demands):
            continue
        chips = dict(zip(others, config))
        chips[q] = -sum(config)
        classes.append(JacobianClass(q, Divisor(chips)))
        if len(classes) > limit:
            raise TooLarge(f"more than {limit} classes")
    return classes


def equivalent_by_search(g: RibbonGraph, d1: Divisor, d2: Divisor, radius: int = 3) -> bool:
    """Is ``d1 - d2`` a combination of lending moves with coefficients in ``[-radius, radius]``?

    Only vertices other than the least one need coefficients, since lending
    at every vertex at once changes nothing.
    """
    target = (d1 - d2).as_dict(g.vertices)
    vs = sorted(g.vertices)[1:]
    adj = g.adjacency
    for coeffs in itertools.product(range(-radius, radius + 1), repeat=len(vs)):
        total = dict.fromkeys(g.vertices, 0)
        for v, c in zip(vs, coeffs):
            if c:
                total[v] -= c * g.degree(v)
                for w, n in adj[v].items():
                    total[w] += c * n
        if all(total[v] + target[v] == 0 for v in g.vertices):
            return True
    return False


# -- cycle and cut spaces ---------------------------------------------------


def incidence_rows(g: RibbonGraph) -> Dict[str, List[int]]:
    """Vertex cut at each vertex, as an integer vector over ``g.edges``."""
    rows = {}
    for v in g.vertices:
        row = []
        for e in g.edges:
            tail, head = g.endpoints(e)
            row.append(1 if tail == v else -1 if head == v else 0)
        rows[v] = row
    return rows


def hermite_rows(rows: List[List[int]]) -> List[Tuple[int, List[int]]]:
    """Integer row echelon form: list of ``(pivot column, row)`` with positive pivots."""
    rows = [list(r) for r in rows if any(r)]
    basis = []
    col = 0
    width = len(rows[0]) if rows else 0
    while rows and col < width:
        with_col = [r for r in rows if r[col]]
        rows = [r for r in rows if not r[col]]
        if not with_col:
            col += 1
            continue
        pivot = with_col[0]
        for r in with_col[1:]:
            # extended Euclid on the two leading entries
            a, b = pivot[col], r[col]
            g, x, y = _egcd(a, b)
            new_pivot = [x * p + y * s for p, s in zip(pivot, r)]
            leftover = [(b // g) * p - (a // g) * s for p, s in zip(pivot, r)]
            pivot = new_pivot
            if any(leftover):
                rows.append(leftover)
        if pivot[col] < 0:
            pivot = [-x for x in pivot]
        basis.append((col, pivot))
        col += 1
    return basis


def _egcd(a, b):
    if b == 0:
        return (abs(a), 1 if a > 0 else -1, 0)
    g, x, y = _egcd(b, a % b)
    return g, y, x - (a // b) * y


def in_row_span(basis, vec: List[int]) -> bool:
    vec = list(vec)
    for col, row in basis:
        if vec[col] % row[col]:
            return False
        k = vec[col] // row[col]
        if k:
            vec = [x - k * y for x, y in zip(vec, row)]
    return not any(vec)


def _as_list(g: RibbonGraph, vec: EdgeVector) -> List[int]:
    unknown = set(vec) - set(g.edges)
    if unknown:
        raise KeyError(f"unknown edges {sorted(unknown)}")
    return [vec.get(e, 0) for e in g.edges]


def is_in_cycle_space(g: RibbonGraph, vec: EdgeVector) -> bool:
    """Kernel of the boundary map; over the integers this is the span of cycles."""
    flat = _as_list(g, vec)
    for row in incidence_rows(g).values():
        if sum(a * b for a, b in zip(row, flat)):
            return False
    return True


def is_in_cut_space(g: RibbonGraph, vec: EdgeVector) -> bool:
    return in_row_span(hermite_rows(list(incidence_rows(g).values())), _as_list(g, vec))


def vertex_cut(g: RibbonGraph, v) -> EdgeVector:
    out: EdgeVector = {}
    for d in g.darts_at(v):
        tail, _ = g.endpoints(d.edge)
        out[d.edge] = out.get(d.edge, 0) + (1 if tail == v else -1)
    return out


def darts_to_vector(g: RibbonGraph, darts) -> EdgeVector:
    out: EdgeVector = {}
    for d in darts:
        sign = 1 if g.endpoints(d.edge)[0] == d.tail else -1
        out[d.edge] = out.get(d.edge, 0) + sign
    return {e: c for e, c in out.items() if c}


def simple_cycles(g: RibbonGraph, trees=None) -> List[EdgeVector]:
    """Every simple cycle, once per orientation class, as a directed edge vector.

    Each simple cycle is the fundamental cycle of one of its edges with
    respect to some spanning tree, so sweeping all trees finds them all.
    """
    if trees is None:
        trees = enumerate_spanning_trees(g)
    seen = set()
    out = []
    for t in trees:
        for e in g.edges:
            if e in t:
                continue
            tail, head = g.endpoints(e)
            towards = tree_darts_towards(g, t, tail)
            darts = [g.reference_dart(e)]
            v = head
            while v != tail:
                darts.append(towards[v])
                v = g.head(towards[v])
            vec = darts_to_vector(g, darts)
            key = frozenset(vec.items())
            neg = frozenset((k, -c) for k, c in vec.items())
            if key not in seen and neg not in seen:
                seen.add(key)
                out.append(vec)
    return out


def search_rotation_systems(g: RibbonGraph, target_genus: int) -> Optional[RibbonGraph]:
    """First rotation system on ``g``'s graph (rotations varied in lexicographic order) with the given genus."""
    choices = []
    for v in g.vertices:
        first, *rest = sorted(g.rotation(v))
        choices.append([[first, *p] for p in itertools.permutations(rest)])
    edges = [(e, *g.endpoints(e)) for e in g.edges]
    for combo in itertools.product(*choices):
        h = RibbonGraph(g.vertices, edges, dict(zip(g.vertices, combo)), name=g.name)
        if genus(h) == target_genus:
            return h
    return None


# -- corpus -------------------------------------------------------------------


def _from_coordinates(name, coords, edges) -> RibbonGraph:
    """Simple graph drawn at ``coords``; rotations are clockwise on the page."""
    rotations = {}
    for v, (x, y) in coords.items():
        around = []
        for e, a, b in edges:
            if v in (a, b):
                wx, wy = coords[b if a == v else a]
                around.append((-math.atan2(wy - y, wx - x), e))
        # clockwise = decreasing angle
        around.sort()
        rotations[v] = [e for _, e in around]
    return RibbonGraph(list(coords), edges, rotations, name=name)


def _grid(rows, cols):
    coords = {f"r{i}c{j}": (j, -i) for i in range(rows) for j in range(cols)}
    edges = []
    for i in range(rows):
        for j in range(cols):
            if j + 1 < cols:
                edges.append((f"h{i}{j}", f"r{i}c{j}", f"r{i}c{j + 1}"))
            if i + 1 < rows:
                edges.append((f"v{i}{j}", f"r{i}c{j}", f"r{i + 1}c{j}"))
    return _from_coordinates(f"grid{rows}x{cols}", coords, edges)


def _wheel(n):
    coords = {"hub": (0.0, 0.0)}
    for k in range(n):
        a = 2 * math.pi * k / n
        coords[f"r{k}"] = (math.cos(a), math.sin(a))
    edges = [(f"s{k}", "hub", f"r{k}") for k in range(n)]
    edges += [(f"c{k}", f"r{k}", f"r{(k + 1) % n}") for k in range(n)]
    return _from_coordinates(f"wheel{n}", coords, edges)


def _cube():
    outer = {"o0": (-2, 2), "o1": (2, 2), "o2": (2, -2), "o3": (-2, -2)}
    inner = {"i0": (-1, 1), "i1": (1, 1), "i2": (1, -1), "i3": (-1, -1)}
    edges = []
    for k in range(4):
        edges.append((f"o{k}o{(k + 1) % 4}", f"o{k}", f"o{(k + 1) % 4}"))
        edges.append((f"i{k}i{(k + 1) % 4}", f"i{k}", f"i{(k + 1) % 4}"))
        edges.append((f"o{k}i{k}", f"o{k}", f"i{k}"))
    return _from_coordinates("cube", {**outer, **inner}, edges)


FIG1 = {
    "vertices": ["x", "y", "z", "w"],
    "edges": [
        ["e_xw", "x", "w"],
        ["e_xy", "x", "y"],
        ["e_xz", "x", "z"],
        ["e_wy", "w", "y"],
        ["e_zy", "z", "y"],
    ],
    "rotations": {
        "x": ["e_xw", "e_xy", "e_xz"],
        "y": ["e_xy", "e_wy", "e_zy"],
        "z": ["e_xz", "e_zy"],
        "w": ["e_xw", "e_wy"],
    },
}

DIGON = {
    "vertices": ["u", "v"],
    "edges": [["e", "u", "v"], ["f", "u", "v"]],
    "rotations": {"u": ["e", "f"], "v": ["e", "f"]},
}

TRIANGLE = {
    "vertices": ["v1", "v2", "v3"],
    "edges": [["e12", "v1", "v2"], ["e23", "v2", "v3"], ["e31", "v3", "v1"]],
    "rotations": {"v1": ["e12", "e31"], "v2": ["e12", "e23"], "v3": ["e23", "e31"]},
}

# triangle with the side ab tripled; rotations from search_rotation_systems(..., 0)
TRIPLE = {
    "vertices": ["a", "b", "c"],
    "edges": [["t1", "a", "b"], ["t2", "a", "b"], ["t3", "a", "b"], ["e_bc", "b", "c"], ["e_ca", "c", "a"]],
    "rotations": {"a": ["t1", "t2", "t3", "e_ca"], "b": ["t1", "e_bc", "t3", "t2"], "c": ["e_bc", "e_ca"]},
}

# K4 with the lexicographically first rotation system of genus 1
K4_GENUS1 = {
    "vertices": ["a", "b", "c", "d"],
    "edges": [
        ["e_ab", "a", "b"],
        ["e_ac", "a", "c"],
        ["e_ad", "a", "d"],
        ["e_bc", "b", "c"],
        ["e_bd", "b", "d"],
        ["e_cd", "c", "d"],
    ],
    "rotations": {
        "a": ["e_ab", "e_ac", "e_ad"],
        "b": ["e_ab", "e_bc", "e_bd"],
        "c": ["e_ac", "e_bc", "e_cd"],
        "d": ["e_ad", "e_bd", "e_cd"],
    },
}


def corpus() -> Dict[str, RibbonGraph]:
    """The fixed test corpus, in a stable order."""
    from .ribbon import build_ribbon_graph

    graphs = [
        build_ribbon_graph(DIGON, "digon"),
        build_ribbon_graph(TRIANGLE, "triangle"),
        build_ribbon_graph(FIG1, "fig1"),
        _wheel(4),
        _wheel(5),
        _grid(2, 3),
        _grid(3, 3),
        _cube(),
        build_ribbon_graph(TRIPLE, "triple"),
        build_ribbon_graph(K4_GENUS1, "k4_genus1"),
    ]
    return {g.name: g for g in graphs}


def planar_corpus() -> Dict[str, RibbonGraph]:
    return {name: g for name, g in corpus().items() if genus(g) == 0}


# -- basepoint (in)dependence -----------------------------------------------------


@dataclass(frozen=True)
class BasepointReport:
    graph: str
    cases: int
    witness: Optional[tuple] = None

    @property
    def independent(self) -> bool:
        return self.witness is None

    def describe(self) -> str:
        if self.witness is None:
            return f"BASEPOINT graph={self.graph} cases={self.cases} Independent"
        d, t, q1, q2, t1, t2 = self.witness
        return (
            f"BASEPOINT graph={self.graph} cases={self.cases} Dependent "
            f"d={d} tree={','.join(sorted(t))} q={q1} -> {','.join(sorted(t1))} "
            f"q'={q2} -> {','.join(sorted(t2))}"
        )


def basepoint_independence_report(
    g: RibbonGraph, max_cases: int = 400, seed: int = 0, trees=None
) -> BasepointReport:
    """Compare the action at every basepoint on generator divisors ``v - w``.

    Runs every (generator, tree) pair when there are at most ``max_cases`` of
    them, otherwise a seeded sample of that size.  Agreement on generators
    implies agreement on the whole group, since each basepoint gives a group
    action.
    """
    from .rotor import rotor_route_action

    if trees is None:
        trees = enumerate_spanning_trees(g)
    gens = [Divisor({v: 1, w: -1}) for v in g.vertices for w in g.vertices if v != w]
    pairs = [(d, t) for t in trees for d in gens]
    if len(pairs) > max_cases:
        pairs = random.Random(seed).sample(pairs, max_cases)
    base = list(g.vertices)
    for d, t in pairs:
        results = [rotor_route_action(g, d, t, q) for q in base]
        for q, r in zip(base[1:], results[1:]):
            if r != results[0]:
                return BasepointReport(g.name or "", len(pairs), (d, t, base[0], q, results[0], r))
    return BasepointReport(g.name or "", len(pairs))
