# On a torus embedding of K4 the routing action depends on the basepoint.
# Planar graphs never show this.
from rotorduality import corpus, faces, genus
from rotorduality.oracle import basepoint_independence_report

k4 = corpus()["k4_genus1"]
print(k4, "faces:", len(faces(k4).faces), "genus:", genus(k4))
report = basepoint_independence_report(k4)
print(report.describe())

for name in ("fig1", "wheel4"):
    print(basepoint_independence_report(corpus()[name]).describe())
