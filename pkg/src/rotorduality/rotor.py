"""Rotor configurations and the rotor-routing action of Jac(G) on spanning trees."""

import random
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Mapping, Optional

from .errors import FiringBase, InternalError, NoChip, NonTermination, NonzeroDegree
from .ribbon import Dart, RibbonGraph, SpanningTree, check_spanning_tree, tree_darts_towards
from .sandpile import Divisor, check_support, q_reduce, tree_count_kirchhoff


@dataclass(frozen=True)
class RotorConfiguration:
    """One outgoing dart ``rho[v]`` at every vertex ``v != base``."""

    base: str
    rho: Mapping[str, Dart]

    def edges(self):
        return frozenset(d.edge for d in self.rho.values())


@dataclass
class RoutingState:
    """Mutable state of a single routing run.

    ``trace`` lists every activated dart in firing order.
    """

    base: str
    rho: Dict[str, Dart]
    chips: Dict[str, int]
    trace: List[Dart] = field(default_factory=list)

    @property
    def rotors(self) -> RotorConfiguration:
        return RotorConfiguration(self.base, dict(self.rho))

    def active(self):
        return [v for v, n in self.chips.items() if n > 0 and v != self.base]


def rotor_from_tree(g: RibbonGraph, t, q) -> RotorConfiguration:
    return RotorConfiguration(q, tree_darts_towards(g, t, q))


def tree_from_rotor(g: RibbonGraph, r: RotorConfiguration) -> Optional[SpanningTree]:
    """Undirected edge set of ``r`` if it is a spanning tree, else None."""
    # every non-base vertex has out-degree one, so it is a tree iff
    # following the rotors from anywhere reaches the base
    good = {r.base}
    for start in r.rho:
        path = []
        v = start
        while v not in good:
            if v in path:
                return None
            path.append(v)
            v = g.head(r.rho[v])
        good.update(path)
    return r.edges()


def start_routing(g: RibbonGraph, d: Divisor, rotors: RotorConfiguration) -> RoutingState:
    check_support(g, d)
    return RoutingState(rotors.base, dict(rotors.rho), d.as_dict(g.vertices))


def fire_vertex(g: RibbonGraph, state: RoutingState, v) -> RoutingState:
    """Advance the rotor at ``v`` and send one chip along it (in place)."""
    g.check_vertex(v)
    if v == state.base:
        raise FiringBase(f"cannot fire the basepoint {v!r}")
    if state.chips[v] < 1:
        raise NoChip(f"vertex {v!r} has {state.chips[v]} chips")
    d = g.sigma(state.rho[v])
    state.rho[v] = d
    state.chips[v] -= 1
    state.chips[g.head(d)] += 1
    state.trace.append(d)
    return state


def fire_bound(g: RibbonGraph, chips: Mapping[str, int], base) -> int:
    routed = sum(n for v, n in chips.items() if v != base and n > 0)
    return (routed + 1) * len(g.vertices) * len(g.edges) * tree_count_kirchhoff(g)


def route(
    g: RibbonGraph,
    d: Divisor,
    t,
    q,
    choose: Optional[Callable[[List[str]], str]] = None,
) -> RoutingState:
    """Route the chips of ``[d]`` into ``q`` starting from tree ``t``.

    ``d`` is first replaced by its q-reduced representative.  By default
    the least vertex holding a chip fires next; ``choose`` picks from the
    list of vertices that may fire instead.
    """
    if d.degree != 0:
        raise NonzeroDegree(f"divisor {d} has degree {d.degree}")
    t = check_spanning_tree(g, t)
    reduced = q_reduce(g, d, q).reduced
    state = start_routing(g, reduced, rotor_from_tree(g, t, q))
    bound = None
    order = sorted(g.vertices)
    fired = 0
    while True:
        if choose is None:
            v = next((u for u in order if u != q and state.chips[u] > 0), None)
            if v is None:
                break
        else:
            ready = state.active()
            if not ready:
                break
            v = choose(sorted(ready))
        fire_vertex(g, state, v)
        fired += 1
        if fired % 4096 == 0:
            # the bound needs a determinant; only pay for it on long runs
            if bound is None:
                bound = fire_bound(g, reduced.as_dict(), q)
            if fired > bound:
                raise NonTermination(f"routing on {g!r} exceeded {bound} fires")
    return state


def rotor_route_action(g: RibbonGraph, d: Divisor, t, q, choose=None) -> SpanningTree:
    """``[d] . t`` computed with basepoint ``q``."""
    state = route(g, d, t, q, choose)
    tree = tree_from_rotor(g, state.rotors)
    if tree is None:
        raise InternalError(f"routing on {g!r} ended in a non-tree rotor configuration")
    return tree


def random_schedule(seed) -> Callable[[List[str]], str]:
    """Seeded random choice of the next vertex; tuples of ints are accepted."""
    if isinstance(seed, tuple):
        seed = repr(seed)
    rng = random.Random(seed)
    return rng.choice
