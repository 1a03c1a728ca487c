"""Angles between darts and between spanning trees, the duality isomorphism
``phi: Jac(G) -> Jac(G*)`` and the commuting-square check for rotor-routing.
"""

from dataclasses import dataclass
from typing import Dict

from .errors import NonzeroDegree, TailMismatch
from .ribbon import Dart, DualCorrespondence, RibbonGraph, SpanningTree, check_spanning_tree, dual_tree
from .rotor import rotor_from_tree, rotor_route_action
from .sandpile import Divisor, JacobianClass, default_base, q_reduce

AngleValue = JacobianClass


def dart_angle_divisor(g: RibbonGraph, e: Dart, e2: Dart) -> Divisor:
    """Sum of boundaries of the darts after ``e`` up to and including ``e2``.

    The darts are visited in rotation order around their common tail.
    """
    g.check_dart(e)
    g.check_dart(e2)
    if e.tail != e2.tail:
        raise TailMismatch(f"{e} and {e2} leave different vertices")
    total: Dict[str, int] = {}
    d = e
    while d != e2:
        d = g.sigma(d)
        head = g.head(d)
        total[head] = total.get(head, 0) + 1
        total[d.tail] = total.get(d.tail, 0) - 1
    return Divisor(total)


def dart_angle(g: RibbonGraph, e: Dart, e2: Dart, q=None) -> AngleValue:
    return q_reduce(g, dart_angle_divisor(g, e, e2), q)


def tree_angle_divisor(g: RibbonGraph, t, t2, v) -> Divisor:
    rho = rotor_from_tree(g, t, v).rho
    rho2 = rotor_from_tree(g, t2, v).rho
    total = Divisor()
    for u in g.vertices:
        if u != v:
            total = total + dart_angle_divisor(g, rho[u], rho2[u])
    return total


def tree_angle(g: RibbonGraph, t, t2, v, q=None) -> AngleValue:
    """Angle from ``t`` to ``t2`` with both trees rooted at ``v``.

    The class is reported reduced at ``q`` (default: least vertex id),
    independently of the root ``v``.
    """
    return q_reduce(g, tree_angle_divisor(g, t, t2, v), q)


# -- the duality isomorphism --------------------------------------------------


def tree_coordinates(g: RibbonGraph, d: Divisor, tree) -> Dict[str, int]:
    """Write degree-zero ``d`` as ``sum c_e * boundary(e)`` over edges of ``tree``.

    Boundaries use the reference orientation.  Leaves are peeled one at a
    time; each leaf fixes the coefficient of its edge.
    """
    tree = check_spanning_tree(g, tree)
    if d.degree != 0:
        raise NonzeroDegree(f"divisor {d} has degree {d.degree}")
    chips = d.as_dict(g.vertices)
    incident: Dict[str, set] = {v: set() for v in g.vertices}
    for e in tree:
        a, b = g.endpoints(e)
        incident[a].add(e)
        incident[b].add(e)
    leaves = sorted(v for v, es in incident.items() if len(es) == 1)
    coeffs: Dict[str, int] = {}
    while leaves:
        v = leaves.pop()
        if not incident[v]:
            continue
        (e,) = incident[v]
        tail, head = g.endpoints(e)
        parent = tail if head == v else head
        coeffs[e] = chips[v] if head == v else -chips[v]
        chips[parent] += chips[v]
        chips[v] = 0
        incident[v].clear()
        incident[parent].discard(e)
        if len(incident[parent]) == 1:
            leaves.append(parent)
    return coeffs


def phi_divisor(corr: DualCorrespondence, d: Divisor, basis_tree=None) -> Divisor:
    """A representative of ``phi([d])`` (not reduced)."""
    g = corr.primal
    if basis_tree is None:
        basis_tree = _first_tree(g)
    out: Dict[str, int] = {}
    for e, c in tree_coordinates(g, d, basis_tree).items():
        if not c:
            continue
        tail, head = corr.dual_orientation[e]
        tail, head = corr.vertex_map[tail], corr.vertex_map[head]
        out[head] = out.get(head, 0) + c
        out[tail] = out.get(tail, 0) - c
    return Divisor(out)


def phi_map(corr: DualCorrespondence, c, q=None, basis_tree=None) -> JacobianClass:
    """Image in Jac(G*) of a class (or divisor) of the primal graph."""
    d = c.reduced if isinstance(c, JacobianClass) else c
    return q_reduce(corr.dual, phi_divisor(corr, d, basis_tree), q)


def _first_tree(g: RibbonGraph) -> SpanningTree:
    # BFS tree from the least vertex, following rotation order
    root = default_base(g)
    seen = {root}
    queue = [root]
    edges = []
    for u in queue:
        for dart in g.darts_at(u):
            w = g.head(dart)
            if w not in seen:
                seen.add(w)
                edges.append(dart.edge)
                queue.append(w)
    return frozenset(edges)


def dual_dart_angle_check(corr: DualCorrespondence, u, e0: Dart, ek: Dart) -> bool:
    """Does ``phi`` send the angle from ``e0`` to ``ek`` at ``u`` to ``[r0 - rk]``?"""
    g = corr.primal
    if e0.tail != u or ek.tail != u:
        raise TailMismatch(f"{e0} and {ek} must both leave {u!r}")
    lhs = phi_map(corr, dart_angle_divisor(g, e0, ek))
    r0, rk = corr.right_face(e0), corr.right_face(ek)
    rhs = q_reduce(corr.dual, Divisor({r0: 1}) - Divisor({rk: 1}))
    return lhs == rhs


# -- main theorem --------------------------------------------------------------


@dataclass(frozen=True)
class DualityCheck:
    """Both sides of the commuting square for one ``(d, t, q)``.

    ``routed_then_dualised`` is ``delta([d] . t)`` and
    ``dualised_then_routed`` is ``phi([d]) . delta(t)``.
    """

    graph: str
    divisor: Divisor
    tree: SpanningTree
    base: str
    dual_base: str
    routed_then_dualised: SpanningTree
    dualised_then_routed: SpanningTree

    @property
    def equal(self) -> bool:
        return self.routed_then_dualised == self.dualised_then_routed

    def describe(self) -> str:
        return (
            f"COUNTEREXAMPLE graph={self.graph} d={self.divisor} "
            f"tree={','.join(sorted(self.tree))} q={self.base} "
            f"lhs={','.join(sorted(self.routed_then_dualised))} "
            f"rhs={','.join(sorted(self.dualised_then_routed))}"
        )


def check_duality_theorem(corr: DualCorrespondence, d: Divisor, t, q, dual_base=None) -> DualityCheck:
    g = corr.primal
    if dual_base is None:
        dual_base = default_base(corr.dual)
    lhs = dual_tree(corr, rotor_route_action(g, d, t, q))
    image = phi_map(corr, d, q=dual_base)
    rhs = rotor_route_action(corr.dual, image.reduced, dual_tree(corr, t), dual_base)
    return DualityCheck(g.name or "", d, frozenset(t), q, dual_base, lhs, rhs)
