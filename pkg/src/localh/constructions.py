"""Triangulation generators and refinement operators.

Point indices are stable under refinement: every operator here keeps the
existing points in place and appends new ones at the end.  That is what
makes an index-based :class:`Certificate` replayable.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .exact import Point, affine_combination, barycentric_coords, make_point
from .triangulation import ReferenceSimplex, Triangulation

TRIVIAL = "trivial"
TRIFORCE = "triforce"


class RefinementError(ValueError):
    """A refinement step is not applicable to the given triangulation."""


def _reference(ref) -> ReferenceSimplex:
    if isinstance(ref, ReferenceSimplex):
        return ref
    if isinstance(ref, int):
        return ReferenceSimplex.standard(ref)
    return ReferenceSimplex(ref)


def trivial(ref) -> Triangulation:
    """The trivial subdivision; ``ref`` is a ReferenceSimplex, vertex list or ``d``."""
    ref = _reference(ref)
    return Triangulation(ref, ref.vertices, [range(ref.d)])


def triforce(ref=None, edge_points: Sequence | None = None) -> Triangulation:
    """A triangle cut into four by three points on its edges.

    ``edge_points`` are the points on edges (v0, v1), (v1, v2), (v0, v2);
    they default to the midpoints.  Points are indexed v0, v1, v2, then the
    edge points in that order.
    """
    ref = _reference(3 if ref is None else ref)
    if ref.d != 3:
        raise ValueError("the triforce subdivides a 2-simplex")
    v = ref.vertices
    if edge_points is None:
        half = Fraction(1, 2)
        edge_points = [affine_combination([v[a], v[b]], [half, half])
                       for a, b in ((0, 1), (1, 2), (0, 2))]
    edge_points = [make_point(p) for p in edge_points]
    for p, (a, b) in zip(edge_points, ((0, 1), (1, 2), (0, 2))):
        lam = ref.barycentric(p)
        if not (lam[a] > 0 and lam[b] > 0 and all(lam[c] == 0 for c in range(3) if c not in (a, b))):
            raise ValueError(f"triforce point {p} is not interior to edge ({a}, {b})")
    return Triangulation(ref, list(v) + edge_points,
                         [(0, 3, 5), (1, 3, 4), (2, 4, 5), (3, 4, 5)])


def segment_family(n: int) -> Triangulation:
    """The 1-simplex conv(e1, e2) with ``n`` equally spaced interior vertices."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    ref = ReferenceSimplex.standard(2)
    inner = [(Fraction(n + 1 - k, n + 1), Fraction(k, n + 1)) for k in range(1, n + 1)]
    points = list(ref.vertices) + inner
    chain = [0] + list(range(2, n + 2)) + [1]
    return Triangulation(ref, points, [(chain[i], chain[i + 1]) for i in range(n + 1)])


def transfer(t: Triangulation, vertices: Sequence) -> Triangulation:
    """Map ``t`` affinely onto the simplex with the given vertices.

    Reference position ``i`` of ``t`` goes to ``vertices[i]``.
    """
    target = _reference(vertices)
    if target.d != t.d:
        raise ValueError("target simplex has the wrong number of vertices")
    pts = [affine_combination(target.vertices, b) for b in t.bary]
    return Triangulation(target, pts, t.cells, _bary=t.bary)


def join(a: Triangulation, b: Triangulation) -> Triangulation:
    """Geometric join, realized in the standard simplex of Q^{d_a + d_b}.

    The factors sit in coordinate-disjoint blocks via their barycentric
    coordinates; points of ``a`` come first.
    """
    da, db = a.d, b.d
    za = (Fraction(0),) * da
    zb = (Fraction(0),) * db
    points = [tuple(p) + zb for p in a.bary] + [za + tuple(q) for q in b.bary]
    bary = points
    off = len(a.points)
    cells = [ca + tuple(i + off for i in cb) for ca in a.cells for cb in b.cells]
    return Triangulation(ReferenceSimplex.standard(da + db), points, cells, _bary=bary)


def cone(b: Triangulation) -> Triangulation:
    """Join with a single apex point, which becomes the last point."""
    return join(b, trivial(1))


def stellar_subdivision(t: Triangulation, face: Iterable[int], point) -> Triangulation:
    """Insert ``point`` in the relative interior of ``face``; every cell through the face is split."""
    face = tuple(sorted(face))
    if not face or not t.is_face(face):
        raise RefinementError(f"{face} is not a face")
    point = make_point(point)
    lam = barycentric_coords(point, t.cell_points(face))
    if any(x <= 0 for x in lam):
        raise RefinementError("point is not in the relative interior of the face")
    new = len(t.points)
    cells = []
    fset = set(face)
    for c in t.cells:
        if fset <= set(c):
            cells.extend(tuple(v for v in c if v != u) + (new,) for u in face)
        else:
            cells.append(c)
    return Triangulation(t.reference, t.points + (point,), cells)


# --- facet refinements -------------------------------------------------------


def _shared_faces(t: Triangulation, cell: tuple) -> list:
    cset = set(cell)
    out = []
    for other in t.cells:
        if other != cell:
            s = cset.intersection(other)
            if s:
                out.append(frozenset(s))
    return out


def facet_refine(t: Triangulation, cell: Sequence[int], replacement: Triangulation,
                 *, validate: bool = True) -> Triangulation:
    """Replace one cell by a triangulation of it.

    ``replacement`` must have the cell's vertices as its reference vertices
    (in any order) and must not subdivide any face the cell shares with
    another cell.  New points are appended in ``replacement`` order.
    """
    cell = tuple(sorted(cell))
    if cell not in t.cells:
        raise RefinementError(f"{list(cell)} is not a cell")
    cell_pts = t.cell_points(cell)
    if set(replacement.reference.vertices) != set(cell_pts):
        raise RefinementError("replacement is not a triangulation of the cell")
    if validate:
        report = replacement.validate()
        if not report:
            raise RefinementError(f"replacement is invalid: {report.violations[0]}")
    # cell-local support of each new point, as global indices
    pos_to_global = {replacement.reference.vertices.index(p): t.index_of[p] for p in cell_pts}
    shared = _shared_faces(t, cell)
    new_points = []
    local_to_global = {}
    for i, p in enumerate(replacement.points):
        if p in t.index_of and t.index_of[p] in cell:
            local_to_global[i] = t.index_of[p]
            continue
        if p in t.index_of:
            raise RefinementError(f"new point {p} coincides with an existing point")
        supp = frozenset(pos_to_global[k] for k in replacement.support[i])
        for s in shared:
            if supp <= s:
                raise RefinementError(
                    f"replacement subdivides face {sorted(s)} shared with another cell")
        local_to_global[i] = len(t.points) + len(new_points)
        new_points.append(p)
    cells = [c for c in t.cells if c != cell]
    cells += [tuple(local_to_global[i] for i in c) for c in replacement.cells]
    return Triangulation(t.reference, t.points + tuple(new_points), cells)


@dataclass(frozen=True)
class RefinementStep:
    """One conical facet refinement.

    The cell ``target_cell`` is replaced by the cone from ``apex`` over a
    triangulation of the opposite face H.  ``new_points`` are appended to the
    point list in order; ``base_cells`` are the cells of the triangulation of
    H, written with the indices the points have after the step.
    """

    target_cell: tuple
    apex: int
    new_points: tuple
    base_cells: tuple

    def __post_init__(self):
        object.__setattr__(self, "target_cell", tuple(sorted(self.target_cell)))
        object.__setattr__(self, "new_points", tuple(make_point(p) for p in self.new_points))
        object.__setattr__(self, "base_cells",
                           tuple(sorted(tuple(sorted(c)) for c in self.base_cells)))

    @property
    def face(self) -> tuple:
        """The subdivided face H: the target cell without the apex."""
        return tuple(v for v in self.target_cell if v != self.apex)

    def base_subdivision(self, t: Triangulation) -> Triangulation:
        """The triangulation of H this step cones over, as its own object."""
        pts = list(t.points) + list(self.new_points)
        h = self.face
        return Triangulation([pts[i] for i in h], pts,
                             self.base_cells).compact()


def conical_facet_refine(t: Triangulation, step: RefinementStep) -> Triangulation:
    """Apply a conical facet refinement; the local h-polynomial is unchanged."""
    cell = step.target_cell
    if cell not in t.cells:
        raise RefinementError(f"{list(cell)} is not a cell")
    if step.apex not in cell:
        raise RefinementError(f"apex {step.apex} is not a vertex of cell {list(cell)}")
    if not step.new_points:
        raise RefinementError("refinement step introduces no new points")
    n = len(t.points)
    for p in step.new_points:
        if p in t.index_of:
            raise RefinementError(f"new point {p} already exists")
    h = step.face
    allowed = set(h) | set(range(n, n + len(step.new_points)))
    for c in step.base_cells:
        if not set(c) <= allowed or len(c) != len(h):
            raise RefinementError(f"base cell {list(c)} does not live on face {list(h)}")
    base = step.base_subdivision(t)
    report = base.validate()
    if not report:
        raise RefinementError(f"base subdivision is invalid: {report.violations[0]}")
    if len(base.points) != len(h) + len(step.new_points):
        raise RefinementError("some new points are not used by the base subdivision")
    shared = _shared_faces(t, cell)
    hpos = {i: t.index_of[p] for i, p in enumerate(base.reference.vertices)}
    for k, p in enumerate(base.points):
        if p in t.index_of:
            continue
        supp = frozenset(hpos[j] for j in base.support[k])
        for s in shared:
            if supp <= s:
                raise RefinementError(
                    f"non-conical-eligible face: the base subdivides {sorted(s)}, "
                    "which is shared with another cell")
    cells = [c for c in t.cells if c != cell]
    cells += [c + (step.apex,) for c in step.base_cells]
    return Triangulation(t.reference, t.points + step.new_points, cells)


# --- certificates -------------------------------------------------------------


@dataclass
class Certificate:
    """A base triangulation plus conical facet refinements that rebuild a target."""

    base: str
    reference: ReferenceSimplex
    steps: list = field(default_factory=list)
    triforce_points: tuple | None = None
    seed: int | None = None

    def __post_init__(self):
        if self.base not in (TRIVIAL, TRIFORCE):
            raise ValueError(f"unknown certificate base {self.base!r}")
        self.reference = _reference(self.reference)
        if self.base == TRIFORCE and self.reference.d != 3:
            raise ValueError("a triforce base needs a 2-simplex reference")

    def base_triangulation(self) -> Triangulation:
        if self.base == TRIVIAL:
            return trivial(self.reference)
        return triforce(self.reference, self.triforce_points)

    def replay(self) -> Triangulation:
        t = self.base_triangulation()
        for i, step in enumerate(self.steps):
            try:
                t = conical_facet_refine(t, step)
            except RefinementError as exc:
                raise RefinementError(f"step {i}: {exc}") from exc
        return t


def replay(cert: Certificate) -> Triangulation:
    return cert.replay()


# --- random iterated refinement ---------------------------------------------------


def _random_interior_point(rng: random.Random, pts: Sequence[Point]) -> Point:
    if len(pts) == 2:
        t = rng.choice([Fraction(1, 4), Fraction(1, 3), Fraction(1, 2), Fraction(2, 3), Fraction(3, 4)])
        return affine_combination(pts, [1 - t, t])
    return affine_combination(pts, [Fraction(rng.randint(1, 3)) for _ in pts])


def _free_faces_check(t: Triangulation, cell: tuple):
    """Predicate: may the face spanned by these cell vertices be subdivided?"""
    shared = _shared_faces(t, cell)
    return lambda positions: not any(frozenset(positions) <= s for s in shared)


def random_base_subdivision(t: Triangulation, cell: tuple, apex: int,
                            rng: random.Random, moves: int | None = None) -> list:
    """Random triangulation of the face opposite ``apex`` that leaves shared faces alone.

    Returned as a list of cells, each a frozenset of points.  Built from the
    trivial subdivision by stellar moves at interior points of allowed
    faces, occasionally a triforce when the face is a free triangle.
    """
    h = [v for v in cell if v != apex]
    hpts = [t.points[v] for v in h]
    free = _free_faces_check(t, cell)
    if not free(h):
        raise RefinementError("face is shared with another cell")
    if len(h) == 3 and rng.random() < 0.25 and all(free(e) for e in ((h[0], h[1]), (h[1], h[2]), (h[0], h[2]))):
        v = hpts
        tf = triforce(v, [_random_interior_point(rng, [v[0], v[1]]),
                          _random_interior_point(rng, [v[1], v[2]]),
                          _random_interior_point(rng, [v[0], v[2]])])
        return [frozenset(tf.points[i] for i in c) for c in tf.cells]
    href = ReferenceSimplex(hpts)
    owner = {p: v for p, v in zip(hpts, h)}
    cells = [frozenset(hpts)]
    if moves is None:
        moves = rng.randint(1, 2)
    for _ in range(moves):
        faces = set()
        for c in cells:
            cl = sorted(c)
            for mask in range(1, 1 << len(cl)):
                f = tuple(p for b, p in enumerate(cl) if mask >> b & 1)
                if len(f) >= 2:
                    faces.add(f)
        allowed = []
        for f in sorted(faces):
            carrier = set()
            for p in f:
                lam = href.barycentric(p)
                carrier.update(owner[hpts[i]] for i, x in enumerate(lam) if x != 0)
            if free(carrier):
                allowed.append(f)
        if not allowed:
            break
        f = rng.choice(allowed)
        p = _random_interior_point(rng, f)
        fs = set(f)
        nxt = []
        for c in cells:
            if fs <= c:
                nxt.extend(frozenset(c - {u}) | {p} for u in f)
            else:
                nxt.append(c)
        cells = nxt
    return cells


def step_from_base(t: Triangulation, cell: tuple, apex: int, base_cells: Iterable) -> RefinementStep:
    """Package a coordinate-level base subdivision as an index-based step."""
    base_cells = [frozenset(c) for c in base_cells]
    pts = set().union(*base_cells)
    new_points = sorted(p for p in pts if p not in t.index_of)
    idx = dict(t.index_of)
    for k, p in enumerate(new_points):
        idx[p] = len(t.points) + k
    return RefinementStep(cell, apex, tuple(new_points),
                          tuple(tuple(idx[p] for p in c) for c in base_cells))


def eligible_pairs(t: Triangulation) -> list:
    """(cell, apex) pairs whose opposite face may carry a nontrivial subdivision."""
    out = []
    for c in t.cells:
        if t.d < 3:
            continue
        free = _free_faces_check(t, c)
        for a in c:
            h = [v for v in c if v != a]
            if free(h):
                out.append((c, a))
    return out


def random_iterated(base: str = TRIVIAL, steps: int = 0, seed: int = 0, d: int = 3):
    """Seeded random sequence of conical facet refinements.

    Returns ``(triangulation, certificate)``; the same arguments always give
    the same output.
    """
    if steps < 0:
        raise ValueError("steps must be nonnegative")
    if base == TRIFORCE:
        d = 3
    cert = Certificate(base, ReferenceSimplex.standard(d), seed=seed)
    t = cert.base_triangulation()
    rng = random.Random(seed)
    for _ in range(steps):
        pairs = eligible_pairs(t)
        if not pairs:
            raise RefinementError(
                f"no conical facet refinement is possible in dimension {d - 1}")
        cell, apex = rng.choice(pairs)
        step = step_from_base(t, cell, apex, random_base_subdivision(t, cell, apex, rng))
        t = conical_facet_refine(t, step)
        cert.steps.append(step)
    return t, cert


def random_facet_refinement(t: Triangulation, rng: random.Random, moves: int | None = None):
    """Random facet refinement along one cell; returns ``(refined, cell, replacement)``.

    The replacement comes from stellar moves on faces of the cell that are not
    shared with other cells, so interior points (and nonzero local h) occur.
    """
    cell = rng.choice(t.cells)
    cpts = t.cell_points(cell)
    free = _free_faces_check(t, cell)
    owner = dict(zip(cpts, cell))
    ref = ReferenceSimplex(cpts)
    r = trivial(ref)
    if moves is None:
        moves = rng.randint(1, 3)
    for _ in range(moves):
        allowed = []
        for k in range(1, r.d):
            for f in sorted(r.faces(k)):
                carrier = {owner[ref.vertices[j]] for j in r.carrier_positions(f)}
                if free(carrier):
                    allowed.append(f)
        if not allowed:
            break
        f = rng.choice(allowed)
        r = stellar_subdivision(r, f, _random_interior_point(rng, r.cell_points(f)))
    return facet_refine(t, cell, r, validate=False), cell, r


def segment_triforce_join(n: int) -> Triangulation:
    """The join of a segment with ``n`` interior vertices and the triforce."""
    return join(segment_family(n), triforce())
