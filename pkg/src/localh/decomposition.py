"""Decompose triangulations with vanishing local h into conical refinements.

The search works top-down, undoing refinements by coarsening sub-simplex
regions, and the resulting moves are reversed into a replayable
:class:`~localh.constructions.Certificate`.  :func:`verify_certificate` is an
independent replay checker and does not share code with the search.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .constructions import (
    TRIFORCE,
    TRIVIAL,
    Certificate,
    RefinementError,
    conical_facet_refine,
    step_from_base,
)
from .exact import det, inverse, vec_mat
from .graph import (
    DIM3_UNIQUE_3CYCLE,
    TREE_UNIQUE_LOW_EXCESS,
    component_reports,
    internal_edge_graph,
)
from .local_h import local_h
from .polynomial import IntPolynomial
from .triangulation import ReferenceSimplex, Triangulation


@lru_cache(maxsize=1 << 14)
def _inverse(rows: tuple):
    return inverse(rows)


@lru_cache(maxsize=1 << 14)
def _abs_det(rows: tuple):
    return abs(det(rows))


class DecompositionError(RuntimeError):
    """The input violates a precondition, or the search failed."""


@dataclass(frozen=True)
class CoarsenableRegion:
    """A sub-simplex F spanned by existing vertices, covered exactly by ``member_cells``.

    The triangulation does not subdivide the part of F's boundary that
    faces the rest of the simplex.
    """

    support_vertices: tuple
    member_cells: tuple
    points: tuple  # every point of t inside F, F's vertices first
    apex: int | None = None  # set when the induced subdivision is a cone


def _region(t: Triangulation, verts: tuple, inv=None):
    """Return the CoarsenableRegion spanned by ``verts`` or None.

    Trivially subdivided regions are rejected too.
    """
    d = t.d
    bary = t.bary
    if inv is None:
        m = [bary[v] for v in verts]
        if det(m) == 0:
            return None
        inv = inverse(m)
    lam = {}
    for i, b in enumerate(bary):
        coords = vec_mat(b, inv)
        if all(x >= 0 for x in coords):
            lam[i] = coords
    if len(lam) == d:
        return None
    cells = tuple(c for c in t.cells if all(v in lam for v in c))
    if len(cells) < 2:
        return None
    total = sum((t.cell_volume(c) for c in cells), Fraction(0))
    if total != abs(det([bary[v] for v in verts])):
        return None
    # facets of F whose relative interior meets the interior of the simplex
    exposed = [i for i in range(d)
               if len(t.carrier_positions(v for k, v in enumerate(verts) if k != i)) == d]
    vset = set(verts)
    for p, coords in lam.items():
        if p not in vset and any(coords[i] == 0 for i in exposed):
            return None
    order = tuple(verts) + tuple(sorted(p for p in lam if p not in vset))
    return CoarsenableRegion(tuple(sorted(verts)), cells, order)


def _cone_apex(t: Triangulation, region: CoarsenableRegion):
    """The apex over which the induced subdivision is a cone, if any."""
    common = set(region.member_cells[0])
    for c in region.member_cells[1:]:
        common &= set(c)
    for a in sorted(common & set(region.support_vertices)):
        # the link of a must be the restriction to the opposite facet
        h = [v for v in region.support_vertices if v != a]
        sub = induced_subdivision(t, region)
        pos = [sub.points.index(t.points[v]) for v in h]
        restricted = sub.restrict(pos)
        link = {frozenset(t.points[v] for v in c if v != a) for c in region.member_cells}
        if link == {frozenset(restricted.points[i] for i in c) for c in restricted.cells}:
            return a
    return None


def induced_subdivision(t: Triangulation, region: CoarsenableRegion) -> Triangulation:
    """The triangulation of F formed by the region's cells."""
    pts = [t.points[i] for i in region.points]
    idx = {p: k for k, p in enumerate(region.points)}
    verts = [t.points[v] for v in region.support_vertices]
    return Triangulation(ReferenceSimplex(verts), pts,
                         [[idx[v] for v in c] for c in region.member_cells])


def find_coarsenable_regions(t: Triangulation, *, include_whole: bool = False) -> list:
    """Every nontrivially subdivided sub-simplex region satisfying the coarsening hypothesis.

    Exhaustive over all d-subsets of points, so meant for small inputs.
    """
    ref = set(t.index_of[v] for v in t.reference.vertices)
    out = []
    for verts in itertools.combinations(range(len(t.points)), t.d):
        if not include_whole and set(verts) == ref:
            continue
        r = _region(t, verts)
        if r is not None:
            out.append(CoarsenableRegion(r.support_vertices, r.member_cells, r.points,
                                         _cone_apex(t, r)))
    return sorted(out, key=lambda r: (len(r.member_cells), r.support_vertices))


def coarsen(t: Triangulation, region: CoarsenableRegion, *, check: bool = True,
            known_local_h=None) -> Triangulation:
    """Replace the region's cells by the single cell F.

    With ``check`` the identity l(t) = l(coarse) + l(Gamma_F) is verified
    exactly, together with nonnegativity of l(Gamma_F).  ``known_local_h``
    may supply l(t) when the caller already has it.
    """
    return _coarsen(t, region, check, known_local_h)[0]


def _coarsen(t, region, check, known_local_h):
    verts = set(region.support_vertices)
    drop = set(region.points) - verts
    members = set(region.member_cells)
    cells = [c for c in t.cells if c not in members] + [region.support_vertices]
    keep = [i for i in range(len(t.points)) if i not in drop]
    remap = {old: new for new, old in enumerate(keep)}
    coarse = Triangulation(t.reference, [t.points[i] for i in keep],
                           [[remap[i] for i in c] for c in cells],
                           _bary=[t.bary[i] for i in keep])
    if not check:
        return coarse, None
    fine = local_h(t) if known_local_h is None else known_local_h
    piece = local_h(induced_subdivision(t, region))
    rest = local_h(coarse)
    if fine != rest + piece:
        raise DecompositionError(f"additivity fails: {fine} != {rest} + {piece}")
    if any(c < 0 for c in piece.coeffs):
        raise DecompositionError(f"coarsened piece has local h {piece}")
    return coarse, rest


# --- steps in coordinate form ----------------------------------------------------


@dataclass(frozen=True)
class _CoordStep:
    cell: frozenset
    apex: tuple
    base_cells: tuple  # frozensets of points


def _cone_step(t: Triangulation, region: CoarsenableRegion, apex: int) -> _CoordStep:
    return _CoordStep(frozenset(t.points[v] for v in region.support_vertices), t.points[apex],
                      tuple(frozenset(t.points[v] for v in c if v != apex)
                            for c in region.member_cells))


def _to_certificate(base: str, reference, triforce_points, coord_steps) -> Certificate:
    cert = Certificate(base, reference, triforce_points=triforce_points)
    t = cert.base_triangulation()
    for cs in coord_steps:
        cell = tuple(sorted(t.index_of[p] for p in cs.cell))
        step = step_from_base(t, cell, t.index_of[cs.apex], cs.base_cells)
        t = conical_facet_refine(t, step)
        cert.steps.append(step)
    return cert


def _require_vanishing(t: Triangulation):
    ell = local_h(t)
    if not ell.is_zero():
        raise DecompositionError(f"local h-polynomial is {ell}, not zero")


# --- dimension 2 --------------------------------------------------------------------


def _subregion(t: Triangulation, verts) -> Triangulation:
    verts = tuple(verts)
    r = _region_any(t, verts)
    if r is None:
        raise DecompositionError(f"{verts} does not span a union of cells")
    return r


def _region_any(t: Triangulation, verts: tuple):
    """Induced triangulation on a sub-simplex, allowing the trivial case."""
    m = [t.bary[v] for v in verts]
    inv = inverse(m)
    inside = [i for i, b in enumerate(t.bary) if all(x >= 0 for x in vec_mat(b, inv))]
    ins = set(inside)
    cells = [c for c in t.cells if all(v in ins for v in c)]
    total = sum((t.cell_volume(c) for c in cells), Fraction(0))
    if total != abs(det(m)):
        return None
    order = list(verts) + [i for i in inside if i not in verts]
    idx = {p: k for k, p in enumerate(order)}
    return Triangulation(ReferenceSimplex([t.points[v] for v in verts]),
                         [t.points[i] for i in order], [[idx[v] for v in c] for c in cells])


def _decompose2_rec(t: Triangulation, steps: list, top: bool):
    g = internal_edge_graph(t)
    if g.is_empty():
        if not t.is_trivial():
            raise DecompositionError("no interior edges but the subdivision is not trivial")
        return None
    reports = component_reports(g, t)
    if len(reports) != 1:
        raise DecompositionError("internal edge graph of a 2-simplex is disconnected")
    rep = reports[0]
    ref = [t.index_of[v] for v in t.reference.vertices]
    if rep.classification == TREE_UNIQUE_LOW_EXCESS:
        apex = rep.low_excess_vertices[0]
        if apex not in ref:
            raise DecompositionError("low-excess vertex is not a vertex of the simplex")
        other = sorted(v for a, b in g.edges for v in (a, b)
                       if apex in (a, b) and v != apex)[0]
        b, c = [v for v in ref if v != apex]
        steps.append(_CoordStep(frozenset(t.points[v] for v in ref), t.points[apex],
                                (frozenset({t.points[b], t.points[other]}),
                                 frozenset({t.points[other], t.points[c]}))))
        for half in ((apex, b, other), (apex, other, c)):
            _decompose2_rec(_subregion(t, half), steps, False)
        return None
    if rep.classification == DIM3_UNIQUE_3CYCLE and top:
        cyc = rep.simple_3_cycles[0]
        by_edge = {}
        for v in cyc:
            by_edge[tuple(sorted(t.support[v]))] = v
        try:
            u, v, w = by_edge[(0, 1)], by_edge[(1, 2)], by_edge[(0, 2)]
        except KeyError as exc:
            raise DecompositionError("3-cycle vertices are not on three distinct edges") from exc
        center = _subregion(t, (u, v, w))
        if not center.is_trivial():
            raise DecompositionError("central triforce triangle is subdivided")
        for corner in ((ref[0], u, w), (ref[1], u, v), (ref[2], v, w)):
            _decompose2_rec(_subregion(t, corner), steps, False)
        return (t.points[u], t.points[v], t.points[w])
    raise DecompositionError(f"unexpected internal edge graph structure: {rep.classification}")


def decompose_dim2(t: Triangulation) -> Certificate:
    """Certificate from the trivial subdivision or a triforce for a triangulated triangle."""
    if t.d != 3:
        raise DecompositionError("decompose_dim2 needs a triangulation of a 2-simplex")
    _require_vanishing(t)
    if t.is_trivial():
        return Certificate(TRIVIAL, t.reference)
    steps = []
    tri = _decompose2_rec(t, steps, True)
    if tri is None:
        return _to_certificate(TRIVIAL, t.reference, None, steps)
    return _to_certificate(TRIFORCE, t.reference, tri, steps)


# --- dimension 3 --------------------------------------------------------------------


def _preferred_apexes(t: Triangulation) -> set:
    """Apex choices singled out by the structure of the internal edge graph."""
    g = internal_edge_graph(t)
    if g.is_empty():
        return {t.index_of[v] for v in t.reference.vertices}
    out = set()
    for rep in component_reports(g, t):
        if not rep.low_excess_vertices:
            continue
        root = rep.low_excess_vertices[0]
        depth = {root: 0}
        parent = {root: None}
        queue = deque([root])
        while queue:
            u = queue.popleft()
            for x in sorted(g.graph.neighbors(u)):
                if x not in depth:
                    depth[x] = depth[u] + 1
                    parent[x] = u
                    queue.append(x)
        deepest = max(sorted(depth), key=lambda v: depth[v])
        if parent[deepest] is not None:
            out.add(parent[deepest])
    return out


def _straight_reach(bary, cells, a) -> dict:
    """For each vertex v, the vertices w with segment vw a union of edges of the faces."""
    nbrs = {}
    for c in cells:
        face = [v for v in c if v != a]
        for x, y in itertools.combinations(face, 2):
            nbrs.setdefault(x, set()).add(y)
            nbrs.setdefault(y, set()).add(x)

    def parallel(u, w):
        k = next(i for i, x in enumerate(u) if x)
        r = w[k] / u[k]
        return r > 0 and all(wi == r * ui for ui, wi in zip(u, w))

    reach = {}
    for v in nbrs:
        out = set()
        for x in nbrs[v]:
            prev, cur = v, x
            direction = [p - q for p, q in zip(bary[x], bary[v])]
            out.add(cur)
            while True:
                step = next((y for y in nbrs[cur] if y != prev and parallel(
                    direction, [p - q for p, q in zip(bary[y], bary[cur])])), None)
                if step is None:
                    break
                prev, cur = cur, step
                out.add(cur)
        reach[v] = out
    return reach


def _apex_regions(t: Triangulation, a: int, star: list) -> list:
    """Cone-shaped coarsenable regions with apex ``a``.

    In such a region every cell is ``a`` joined to a face in one hyperplane,
    so candidates come from groups of star cells sharing that hyperplane.  If
    the chosen cells fill F by volume, no other point of t can lie in F.
    """
    d = t.d
    bary = t.bary
    groups = {}
    for c in star:
        inv = _inverse(tuple(bary[v] for v in c))
        col = [row[c.index(a)] for row in inv]
        plane = frozenset(i for i, b in enumerate(bary)
                          if sum(x * y for x, y in zip(b, col)) == 0)
        groups.setdefault(plane, []).append(c)
    out = []
    seen = set()
    for _, cells in sorted(groups.items(), key=lambda kv: sorted(kv[0])):
        if len(cells) < 2:
            continue
        verts = sorted({v for c in cells for v in c if v != a})
        reach = _straight_reach(bary, cells, a)
        for h in itertools.combinations(verts, d - 1):
            # each edge of H must be a straight chain of edges
            if any(y not in reach[x] for x, y in itertools.combinations(h, 2)):
                continue
            key = tuple(sorted(h + (a,)))
            if key in seen:
                continue
            seen.add(key)
            m = tuple(bary[v] for v in key)
            vol = _abs_det(m)
            if vol == 0:
                continue
            inv = _inverse(m)
            lam = {}
            for v in verts:
                coords = vec_mat(bary[v], inv)
                if all(x >= 0 for x in coords):
                    lam[v] = coords
            members = tuple(c for c in cells if all(v == a or v in lam for v in c))
            if len(members) < 2 or sum(_abs_det(tuple(bary[v] for v in c)) for c in members) != vol:
                continue
            exposed = [i for i in range(d) if len(t.carrier_positions(
                v for k, v in enumerate(key) if k != i)) == d]
            extra = sorted(v for v in lam if v not in key)
            if any(lam[v][i] == 0 for v in extra for i in exposed):
                continue
            out.append(CoarsenableRegion(key, members, key + tuple(extra), a))
    return out


def cone_regions(t: Triangulation, apexes=None) -> list:
    """Coarsenable regions whose induced subdivision is a cone from one of F's vertices.

    The whole simplex is included.  ``apexes`` restricts the apex choices.
    """
    star = {}
    for c in t.cells:
        for v in c:
            star.setdefault(v, []).append(c)
    if apexes is None:
        apexes = range(len(t.points))
    out = []
    for a in sorted(apexes):
        out.extend(_apex_regions(t, a, star.get(a, [])))
    return sorted(out, key=lambda r: (len(r.member_cells), r.support_vertices, r.apex))


def _search3(t: Triangulation, ell, failed: set, stats: dict):
    if t.is_trivial():
        return []
    key = t.geometry_key()
    if key in failed:
        return None
    preferred = _preferred_apexes(t)
    order = sorted(preferred) + sorted(set(range(len(t.points))) - preferred)
    star = {}
    for c in t.cells:
        for v in c:
            star.setdefault(v, []).append(c)
    tried = 0
    # regions are generated one apex at a time, so the greedy path stays cheap
    for a in order:
        regions = sorted(_apex_regions(t, a, star.get(a, [])),
                         key=lambda r: (len(r.member_cells), r.support_vertices))
        for r in regions:
            if tried:
                stats["backtracks"] = stats.get("backtracks", 0) + 1
            tried += 1
            step = _cone_step(t, r, a)
            coarse, rest = _coarsen(t, r, stats["check"], ell)
            found = _search3(coarse, rest, failed, stats)
            if found is not None:
                return found + [step]
    failed.add(key)
    return None


def decompose_dim3(t: Triangulation, *, check: bool = True) -> Certificate:
    """Certificate from the trivial subdivision for a triangulated tetrahedron."""
    if t.d != 4:
        raise DecompositionError("decompose_dim3 needs a triangulation of a 3-simplex")
    _require_vanishing(t)
    stats = {"check": check}
    steps = _search3(t, IntPolynomial(), set(), stats)
    if steps is None:
        raise DecompositionError("search exhausted without reaching the trivial subdivision")
    return _to_certificate(TRIVIAL, t.reference, None, steps)


def decompose(t: Triangulation) -> Certificate:
    if t.d == 3:
        return decompose_dim2(t)
    if t.d == 4:
        return decompose_dim3(t)
    raise DecompositionError("decomposition is only available for dimensions 2 and 3")


# --- verification -------------------------------------------------------------------


@dataclass
class VerificationResult:
    ok: bool
    failed_step: int | None = None
    diff: list = field(default_factory=list)

    def __bool__(self):
        return self.ok


def verify_certificate(cert: Certificate, target: Triangulation) -> VerificationResult:
    """Replay ``cert`` step by step and compare with ``target`` by coordinates.

    Each step must be an eligible conical facet refinement and must leave the
    local h-polynomial unchanged.
    """
    if cert.reference != target.reference:
        return VerificationResult(False, None, ["reference simplices differ"])
    try:
        t = cert.base_triangulation()
    except ValueError as exc:
        return VerificationResult(False, None, [f"bad base: {exc}"])
    ell = local_h(t)
    for i, step in enumerate(cert.steps):
        try:
            nxt = conical_facet_refine(t, step)
        except RefinementError as exc:
            return VerificationResult(False, i, [str(exc)])
        if len(nxt.points) <= len(t.points):
            return VerificationResult(False, i, ["step does not add vertices"])
        ell_next = local_h(nxt)
        if ell_next != ell:
            return VerificationResult(False, i, [f"local h changed from {ell} to {ell_next}"])
        t = nxt
    report = t.validate()
    if not report:
        return VerificationResult(False, None, report.violations)
    diff = []
    mine, theirs = set(t.points), set(target.points)
    diff += [f"missing point {_fmt(p)}" for p in sorted(theirs - mine)]
    diff += [f"extra point {_fmt(p)}" for p in sorted(mine - theirs)]
    if not diff:
        a = {frozenset(t.points[i] for i in c) for c in t.cells}
        b = {frozenset(target.points[i] for i in c) for c in target.cells}
        diff += [f"missing cell {[_fmt(p) for p in sorted(c)]}" for c in sorted(b - a, key=sorted)]
        diff += [f"extra cell {[_fmt(p) for p in sorted(c)]}" for c in sorted(a - b, key=sorted)]
    return VerificationResult(not diff, None, diff)


def _fmt(p) -> str:
    return "(" + ", ".join(str(x) for x in p) + ")"
