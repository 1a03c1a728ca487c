# Sweep the built-in graphs: group structure, tree counts, and the
# commuting square for every generator, tree and basepoint.
import time

from rotorduality import corpus, genus, jacobian_structure, tree_count_kirchhoff
from rotorduality.verify import verify_duality

for name, g in corpus().items():
    start = time.perf_counter()
    group = " x ".join(f"Z/{k}" for k in jacobian_structure(g).invariant_factors)
    res = verify_duality(g)
    took = time.perf_counter() - start
    status = res.skipped or f"{res.cases} cases, {len(res.failures)} failures"
    print(f"{name:10s} genus={genus(g)} trees={tree_count_kirchhoff(g):4d} Jac={group} : {status} ({took:.1f}s)")
