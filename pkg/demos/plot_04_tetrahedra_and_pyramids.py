"""
Tetrahedra, interior edge trees and pyramids
============================================

In a triangulated tetrahedron with zero local h-polynomial, each component
of the internal edge graph is a tree with one vertex of low excess, every
cell is a pyramid, and a certificate from the trivial subdivision exists.
One dimension up this fails: joining a subdivided segment with the triforce
gives more and more cells that are not pyramids.
"""

from localh import (
    count_non_pyramid_facets,
    decompose_dim3,
    local_h,
    random_iterated,
    segment_triforce_join,
    verify_certificate,
)
from localh.graph import check_components_are_trees, component_reports, internal_edge_graph

t, _ = random_iterated("trivial", 6, seed=11, d=4)
print(len(t.points), "points,", len(t.cells), "cells, l =", local_h(t))
for rep in component_reports(internal_edge_graph(t), t):
    print(" component", rep.component_id, rep.classification,
          "low-excess vertex", rep.low_excess_vertices)
print("trees with one low-excess vertex:", check_components_are_trees(t).ok)
print("non-pyramid cells:", count_non_pyramid_facets(t))

cert = decompose_dim3(t)
print("certificate:", len(cert.steps), "steps, verified:", verify_certificate(cert, t).ok)

for n in range(2, 6):
    s = segment_triforce_join(n)
    print(f"segment({n}) * triforce: l = {local_h(s)}, "
          f"{count_non_pyramid_facets(s)} non-pyramid cells")
