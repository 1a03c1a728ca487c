# The small planar example: route one chip on the graph, then do the
# matching move on the dual, and compare.
from rotorduality import Divisor, corpus, dual_tree, faces, phi_map, planar_dual, rotor_route_action

g = corpus()["fig1"]
print(g)
for fid, orbit in faces(g).faces.items():
    print("face", fid, "=", " ".join(map(str, orbit)))

tree = frozenset({"e_xw", "e_xy", "e_xz"})
d = Divisor({"w": 1, "x": -1})
routed = rotor_route_action(g, d, tree, "x")
print("[w-x].T =", sorted(routed))

corr = planar_dual(g)
print("dual tree T* =", sorted(dual_tree(corr, tree)))

# phi moves the class across; pick the dual basepoint the same way
image = phi_map(corr, d)
print("phi([w-x]) =", image)
routed_dual = rotor_route_action(corr.dual, image.reduced, dual_tree(corr, tree), image.base)
print("phi([w-x]).T* =", sorted(routed_dual))
print("dual of [w-x].T =", sorted(dual_tree(corr, routed)))
print("commutes:", routed_dual == dual_tree(corr, routed))
