"""
Refinements, joins and additivity
=================================

A facet refinement adds the local h-polynomial of the piece it inserts.  A
conical facet refinement inserts a cone, whose local h-polynomial is zero,
so nothing changes.  Joins multiply local h-polynomials.
"""

import random

from localh import cone, join, local_h, random_iterated, segment_family, triforce
from localh.constructions import random_facet_refinement

rng = random.Random(3)

# ten random conical steps starting from the triforce
t, cert = random_iterated("triforce", 10, seed=3)
print("after", len(cert.steps), "conical steps:", len(t.points), "points, l =", local_h(t))

# a facet refinement that may place points inside the triangle
refined, cell, piece = random_facet_refinement(t, rng, moves=3)
print("refined cell", cell, "with a piece of local h", local_h(piece))
print("l(refined) =", local_h(refined), "= l(t) + l(piece):",
      local_h(refined) == local_h(t) + local_h(piece))

# segments with n interior points have local h n*x
for n in range(4):
    print(f"segment {n}:", local_h(segment_family(n)))

# the join of two segments lives in a 3-simplex
j = join(segment_family(2), segment_family(3))
print("join:", local_h(j), "product:", local_h(segment_family(2)) * local_h(segment_family(3)))

# a cone has zero local h whatever the base
print("cone over the triforce:", local_h(cone(triforce())))
