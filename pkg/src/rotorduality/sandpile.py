"""Divisors, lending moves and the sandpile group (Jacobian) of a graph.

Classes of degree-zero divisors are named by their q-reduced representative,
computed with Dhar's burning algorithm.  All chip arithmetic uses Python
integers, so nothing can overflow.
"""

from collections import deque
from dataclasses import dataclass
from typing import Dict, Iterable, List, Mapping, Optional, Tuple

import sympy

from .errors import DegreeMismatch, NonzeroDegree, UnknownVertex
from .ribbon import Dart, RibbonGraph


class Divisor:
    """An immutable integer chip assignment on vertices.

    Missing vertices carry zero chips, so ``d[v]`` never raises.  Equality
    and hashing only look at the nonzero entries.
    """

    __slots__ = ("_chips", "_hash")

    def __init__(self, chips: Optional[Mapping[str, int]] = None):
        items = {} if chips is None else chips
        self._chips = {v: int(n) for v, n in items.items() if n}
        self._hash = None

    @classmethod
    def point(cls, v, n=1):
        return cls({v: n})

    @property
    def chips(self) -> Dict[str, int]:
        return dict(self._chips)

    def __getitem__(self, v) -> int:
        return self._chips.get(v, 0)

    def items(self):
        return self._chips.items()

    def support(self):
        return self._chips.keys()

    @property
    def degree(self) -> int:
        return sum(self._chips.values())

    def is_zero(self) -> bool:
        return not self._chips

    def __add__(self, other):
        out = dict(self._chips)
        for v, n in other.items():
            out[v] = out.get(v, 0) + n
        return Divisor(out)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return Divisor({v: -n for v, n in self._chips.items()})

    def __rmul__(self, k: int):
        return Divisor({v: k * n for v, n in self._chips.items()})

    def __eq__(self, other):
        if not isinstance(other, Divisor):
            return NotImplemented
        return self._chips == other._chips

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._chips.items()))
        return self._hash

    def as_dict(self, vertices: Optional[Iterable[str]] = None) -> Dict[str, int]:
        if vertices is None:
            return dict(self._chips)
        return {v: self[v] for v in vertices}

    def __repr__(self):
        body = ", ".join(f"{v}:{n}" for v, n in sorted(self._chips.items()))
        return f"Divisor({{{body}}})"

    def __str__(self):
        return ",".join(f"{v}:{n}" for v, n in sorted(self._chips.items()))


def check_support(g: RibbonGraph, d: Divisor):
    for v in d.support():
        if v not in g.adjacency:
            raise UnknownVertex(f"divisor uses unknown vertex {v!r}")


def default_base(g: RibbonGraph) -> str:
    """Basepoint used when none is given: the least vertex id."""
    return min(g.vertices)


@dataclass(frozen=True)
class JacobianClass:
    """Element of Jac(G), named by its ``base``-reduced representative."""

    base: str
    reduced: Divisor

    def is_zero(self) -> bool:
        return self.reduced.is_zero()

    def __str__(self):
        return f"[{self.reduced or 0}] (q={self.base})"


@dataclass(frozen=True)
class GroupStructure:
    invariant_factors: Tuple[int, ...]

    @property
    def order(self) -> int:
        out = 1
        for d in self.invariant_factors:
            out *= d
        return out


# -- moves ------------------------------------------------------------------


def lending_move(g: RibbonGraph, d: Divisor, v, times: int = 1) -> Divisor:
    """Lend one chip along every edge at ``v`` (``times`` may be negative)."""
    g.check_vertex(v)
    check_support(g, d)
    change = {w: times * n for w, n in g.adjacency[v].items()}
    change[v] = -times * g.degree(v)
    return d + Divisor(change)


def set_firing(g: RibbonGraph, chips: Dict[str, int], subset, times: int = 1):
    """Fire every vertex of ``subset`` at once, in place.

    Only edges leaving the subset move chips.
    """
    adj = g.adjacency
    for v in subset:
        for w, n in adj[v].items():
            if w not in subset:
                chips[v] -= times * n
                chips[w] += times * n


def boundary(g: RibbonGraph, dart: Dart) -> Divisor:
    """``head(dart) - tail(dart)``."""
    g.check_dart(dart)
    return Divisor({g.head(dart): 1, dart.tail: -1})


# -- reduction ----------------------------------------------------------------


def _distances(g: RibbonGraph, q) -> Dict[str, int]:
    dist = {q: 0}
    queue = deque([q])
    while queue:
        u = queue.popleft()
        for w in g.adjacency[u]:
            if w not in dist:
                dist[w] = dist[u] + 1
                queue.append(w)
    return dist


def _make_effective_away_from(g: RibbonGraph, chips: Dict[str, int], q):
    # Lending by the ball of radius k-1 around q raises every vertex at
    # distance k and only lowers vertices at distance k-1, so sweeping k
    # downwards never undoes earlier work.
    dist = _distances(g, q)
    adj = g.adjacency
    for k in range(max(dist.values()), 0, -1):
        ball = {v for v, r in dist.items() if r < k}
        need = 0
        for v, r in dist.items():
            if r == k and chips[v] < 0:
                inflow = sum(n for w, n in adj[v].items() if w in ball)
                need = max(need, -(chips[v] // inflow))
        if need:
            set_firing(g, chips, ball, need)


def _burn(g: RibbonGraph, chips: Mapping[str, int], q) -> set:
    """Run Dhar's fire from ``q``; return the set of vertices left unburnt."""
    adj = g.adjacency
    unburnt = set(g.vertices)
    unburnt.discard(q)
    heat = dict.fromkeys(unburnt, 0)
    queue = deque([q])
    while queue:
        u = queue.popleft()
        for w, n in adj[u].items():
            if w in unburnt:
                heat[w] += n
                if heat[w] > chips[w]:
                    unburnt.discard(w)
                    queue.append(w)
    return unburnt


def is_q_reduced(g: RibbonGraph, d: Divisor, q) -> bool:
    chips = d.as_dict(g.vertices)
    if any(n < 0 for v, n in chips.items() if v != q):
        return False
    return not _burn(g, chips, q)


def q_reduce(g: RibbonGraph, d: Divisor, q=None) -> JacobianClass:
    """The q-reduced representative of a degree-zero divisor."""
    if q is None:
        q = default_base(g)
    g.check_vertex(q)
    check_support(g, d)
    if d.degree != 0:
        raise NonzeroDegree(f"divisor {d} has degree {d.degree}")
    chips = d.as_dict(g.vertices)
    _make_effective_away_from(g, chips, q)
    adj = g.adjacency
    while True:
        stuck = _burn(g, chips, q)
        if not stuck:
            break
        # every unburnt vertex can afford its outflow at least once
        times = min(
            chips[v] // out
            for v in stuck
            if (out := sum(n for w, n in adj[v].items() if w not in stuck))
        )
        set_firing(g, chips, stuck, times)
    return JacobianClass(q, Divisor(chips))


def class_of(g: RibbonGraph, d: Divisor, q=None) -> JacobianClass:
    return q_reduce(g, d, q)


def divisors_equivalent(g: RibbonGraph, d1: Divisor, d2: Divisor, q=None) -> bool:
    if d1.degree != d2.degree:
        raise DegreeMismatch(f"degrees {d1.degree} and {d2.degree} differ")
    return q_reduce(g, d1 - d2, q).is_zero()


def add_classes(g: RibbonGraph, a: JacobianClass, b: JacobianClass) -> JacobianClass:
    return q_reduce(g, a.reduced + b.reduced, a.base)


# -- group structure -----------------------------------------------------------


def reduced_laplacian(g: RibbonGraph, drop=None) -> Tuple[List[str], List[List[int]]]:
    """Laplacian with the row and column of ``drop`` removed."""
    if drop is None:
        drop = default_base(g)
    keep = [v for v in g.vertices if v != drop]
    adj = g.adjacency
    rows = []
    for v in keep:
        row = [-adj[v].get(w, 0) for w in keep]
        row[keep.index(v)] = g.degree(v)
        rows.append(row)
    return keep, rows


def smith_diagonal(matrix: List[List[int]]) -> List[int]:
    """Diagonal of the Smith normal form, each entry dividing the next.

    Pivots on the smallest nonzero absolute value of the remaining block.
    """
    a = [list(r) for r in matrix]
    m = len(a)
    n = len(a[0]) if m else 0
    diag = []
    for t in range(min(m, n)):
        entries = [(abs(a[i][j]), i, j) for i in range(t, m) for j in range(t, n) if a[i][j]]
        if not entries:
            break
        _, i, j = min(entries)
        a[t], a[i] = a[i], a[t]
        for row in a:
            row[t], row[j] = row[j], row[t]
        while True:
            p = a[t][t]
            clean = True
            for i in range(t + 1, m):
                if a[i][t]:
                    k = a[i][t] // p
                    a[i] = [x - k * y for x, y in zip(a[i], a[t])]
                    clean = clean and a[i][t] == 0
            for j in range(t + 1, n):
                if a[t][j]:
                    k = a[t][j] // p
                    for row in a:
                        row[j] -= k * row[t]
                    clean = clean and a[t][j] == 0
            if not clean:
                # a smaller remainder appeared in row/column t: move it to the pivot
                _, i, j = min(
                    [(abs(a[i][t]), i, t) for i in range(t + 1, m) if a[i][t]]
                    + [(abs(a[t][j]), t, j) for j in range(t + 1, n) if a[t][j]]
                )
                a[t], a[i] = a[i], a[t]
                for row in a:
                    row[t], row[j] = row[j], row[t]
                continue
            bad = next(
                (i for i in range(t + 1, m) for j in range(t + 1, n) if a[i][j] % p),
                None,
            )
            if bad is None:
                break
            a[t] = [x + y for x, y in zip(a[t], a[bad])]
        diag.append(abs(a[t][t]))
    return diag


def jacobian_structure(g: RibbonGraph) -> GroupStructure:
    _, lap = reduced_laplacian(g)
    return GroupStructure(tuple(d for d in smith_diagonal(lap) if d != 1))


def tree_count_kirchhoff(g: RibbonGraph) -> int:
    _, lap = reduced_laplacian(g)
    if not lap:
        return 1
    return int(sympy.Matrix(lap).det(method="bareiss"))
