"""
Decomposing a triangulated triangle
===================================

A triangulation of a triangle with zero local h-polynomial comes from the
trivial subdivision or from a triforce by conical facet refinements.  The
internal edge graph decides which: a 3-cycle means a triforce.
"""

from localh import decompose_dim2, internal_edge_graph, random_iterated, verify_certificate
from localh.graph import component_reports

for base, seed in [("trivial", 1), ("triforce", 2)]:
    t, _ = random_iterated(base, 8, seed, d=3)
    g = internal_edge_graph(t)
    (rep,) = component_reports(g, t)
    print(f"{base} seed {seed}: {len(t.points)} points, graph {rep.classification}")

    cert = decompose_dim2(t)
    print("  recovered base:", cert.base, "with", len(cert.steps), "steps")
    if cert.triforce_points:
        print("  triforce edge points:", [tuple(map(str, p)) for p in cert.triforce_points])

    result = verify_certificate(cert, t)
    print("  certificate replays to the input:", result.ok)
