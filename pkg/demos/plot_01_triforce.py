"""
Local h-polynomial of the triforce
==================================

The triforce cuts a triangle into four by joining the edge midpoints.  Its
h-polynomial is 1 + 3x but its local h-polynomial vanishes.
"""

from localh import f_vector, flag_counts, h_polynomial, local_h_excess, local_h_mobius, triforce

t = triforce()
print("points:", len(t.points), "cells:", len(t.cells))

# face counts start with the empty face
print("f =", f_vector(t))
print("h =", h_polynomial(t))

# two independent routes to the local h-polynomial
print("inclusion-exclusion:", local_h_mobius(t))
print("excess formula:     ", local_h_excess(t))

# rows: face dimension, columns: dimension of the carrying face of the triangle
for row in flag_counts(t).as_rows():
    print(row)

# every restriction to an edge is a segment split once
edge = t.restrict([0, 1])
print("edge restriction:", len(edge.cells), "cells, h =", h_polynomial(edge))
