"""Verification suites over single graphs or the built-in corpus.

Each suite returns a :class:`SuiteResult`; ``sample=None`` means exhaustive,
otherwise ``sample`` cases are drawn with ``random.Random(seed)``.
"""

import itertools
import random
from dataclasses import dataclass, field
from typing import List, Optional

from .duality import (
    check_duality_theorem,
    dual_dart_angle_check,
    phi_map,
    tree_angle,
    tree_angle_divisor,
)
from .oracle import basepoint_independence_report, enumerate_jacobian_classes, enumerate_spanning_trees
from .ribbon import RibbonGraph, dual_tree, genus, planar_dual
from .rotor import random_schedule, rotor_route_action, route
from .sandpile import Divisor, boundary, default_base, q_reduce

SUITES = ("duality", "transitive", "basepoint", "angles", "firing")

# exhaustive all-pairs checks only below this many trees
PAIR_LIMIT = 16


@dataclass
class SuiteResult:
    suite: str
    graph: str
    cases: int = 0
    failures: List[str] = field(default_factory=list)
    skipped: Optional[str] = None

    @property
    def ok(self) -> bool:
        return not self.failures

    def lines(self) -> List[str]:
        head = f"THEOREM {self.suite} graph={self.graph} cases={self.cases} failures={len(self.failures)}"
        if self.skipped:
            head += f" skipped={self.skipped}"
        return [head] + self.failures


def _generator_cases(g, trees, sample, seed):
    """(d, tree, q) with d = v - q for v != q."""
    vs = list(g.vertices)
    if sample is None:
        for q in vs:
            for v in vs:
                if v != q:
                    for t in trees:
                        yield Divisor({v: 1, q: -1}), t, q
        return
    rng = random.Random(seed)
    for _ in range(sample):
        q = rng.choice(vs)
        v = rng.choice([u for u in vs if u != q])
        yield Divisor({v: 1, q: -1}), rng.choice(trees), q


def verify_duality(g: RibbonGraph, sample=None, seed=0, trees=None) -> SuiteResult:
    res = SuiteResult("duality", g.name or "")
    if genus(g) != 0:
        res.skipped = "nonplanar"
        return res
    corr = planar_dual(g)
    trees = trees or enumerate_spanning_trees(g)
    for d, t, q in _generator_cases(g, trees, sample, seed):
        res.cases += 1
        check = check_duality_theorem(corr, d, t, q)
        if not check.equal:
            res.failures.append(check.describe())
    return res


def verify_transitive(g: RibbonGraph, sample=None, seed=0, trees=None) -> SuiteResult:
    """Each class row of the action table is a permutation of the trees."""
    res = SuiteResult("transitive", g.name or "")
    trees = trees or enumerate_spanning_trees(g)
    q = default_base(g)
    classes = enumerate_jacobian_classes(g, q)
    starts = trees if sample is None else random.Random(seed).sample(trees, min(sample, len(trees)))
    everything = set(trees)
    for t in starts:
        res.cases += 1
        images = [rotor_route_action(g, c.reduced, t, q) for c in classes]
        if len(set(images)) != len(images) or set(images) != everything:
            res.failures.append(
                f"COUNTEREXAMPLE graph={res.graph} tree={','.join(sorted(t))} "
                f"distinct_images={len(set(images))} classes={len(classes)} trees={len(trees)}"
            )
    return res


def verify_basepoint(g: RibbonGraph, sample=None, seed=0, trees=None) -> SuiteResult:
    """Planar graphs must be basepoint independent, the others must not."""
    res = SuiteResult("basepoint", g.name or "")
    report = basepoint_independence_report(
        g, max_cases=sample if sample is not None else 10**9, seed=seed, trees=trees
    )
    res.cases = report.cases
    planar = genus(g) == 0
    if planar != report.independent:
        res.failures.append(report.describe())
    return res


def verify_firing(g: RibbonGraph, sample=None, seed=0, trees=None, schedules=10) -> SuiteResult:
    """Random legal firing orders reach the same tree and conserve chips."""
    res = SuiteResult("firing", g.name or "")
    trees = trees or enumerate_spanning_trees(g)
    for i, (d, t, q) in enumerate(_generator_cases(g, trees, sample, seed)):
        res.cases += 1
        want = rotor_route_action(g, d, t, q)
        for k in range(schedules):
            got = rotor_route_action(g, d, t, q, choose=random_schedule((seed, i, k)))
            if got != want:
                res.failures.append(
                    f"COUNTEREXAMPLE graph={res.graph} d={d} tree={','.join(sorted(t))} q={q} schedule={k}"
                )
                break
    return res


def verify_angles(g: RibbonGraph, sample=None, seed=0, trees=None) -> SuiteResult:
    """Activated-edge identity everywhere; dart-angle duality, angle duality
    and zero-angle rigidity on planar graphs."""
    res = SuiteResult("angles", g.name or "")
    trees = trees or enumerate_spanning_trees(g)
    name = res.graph

    for d, t, v in _generator_cases(g, trees, sample, seed):
        res.cases += 1
        state = route(g, d, t, v)
        moved = q_reduce(g, d, v).reduced
        for dart in state.trace:
            moved = moved + boundary(g, dart)
        after = frozenset(x.edge for x in state.rho.values())
        angle = tree_angle(g, t, after, v)
        if not moved.is_zero():
            res.failures.append(f"TRACE graph={name} d={d} tree={','.join(sorted(t))} q={v} residue={moved}")
        if angle != q_reduce(g, -d):
            res.failures.append(f"ANGLE-ACTIVATED graph={name} d={d} tree={','.join(sorted(t))} q={v} angle={angle}")

    if genus(g) != 0:
        return res
    corr = planar_dual(g)

    for u in g.vertices:
        for e0, ek in itertools.product(g.darts_at(u), repeat=2):
            res.cases += 1
            if not dual_dart_angle_check(corr, u, e0, ek):
                res.failures.append(f"DART-ANGLE graph={name} u={u} e0={e0} ek={ek}")

    if len(trees) <= PAIR_LIMIT and sample is None:
        pairs = list(itertools.product(trees, repeat=2))
    else:
        rng = random.Random(seed)
        pairs = [(rng.choice(trees), rng.choice(trees)) for _ in range(sample or 200)]
    v = default_base(g)
    for t1, t2 in pairs:
        res.cases += 1
        lhs = phi_map(corr, tree_angle_divisor(g, t1, t2, v))
        rhs = tree_angle(corr.dual, dual_tree(corr, t1), dual_tree(corr, t2), default_base(corr.dual))
        if lhs != rhs:
            res.failures.append(
                f"ANGLE-DUALITY graph={name} t1={','.join(sorted(t1))} t2={','.join(sorted(t2))}"
            )
        if tree_angle(g, t1, t2, v).is_zero() != (t1 == t2):
            res.failures.append(f"ZERO-ANGLE graph={name} t1={','.join(sorted(t1))} t2={','.join(sorted(t2))}")

    res.failures.extend(_zero_angle_all_pairs(g, trees))
    res.cases += len(trees) * len(g.vertices)
    return res


def _zero_angle_all_pairs(g: RibbonGraph, trees) -> List[str]:
    # Angles add up around a vertex modulo a full turn, which is a lending
    # move; so angle(T, T') = angle(T0, T') - angle(T0, T) in Jac(G) and
    # "zero iff equal" over all pairs means T -> angle(T0, T) is injective.
    out = []
    t0 = trees[0]
    for v in g.vertices:
        seen = {}
        for t in trees:
            c = tree_angle(g, t0, t, v)
            if c in seen:
                out.append(
                    f"ZERO-ANGLE graph={g.name} root={v} t1={','.join(sorted(seen[c]))} t2={','.join(sorted(t))}"
                )
            seen[c] = t
    return out


RUNNERS = {
    "duality": verify_duality,
    "transitive": verify_transitive,
    "basepoint": verify_basepoint,
    "angles": verify_angles,
    "firing": verify_firing,
}


def run_suite(suite: str, g: RibbonGraph, sample=None, seed=0) -> SuiteResult:
    return RUNNERS[suite](g, sample=sample, seed=seed)
