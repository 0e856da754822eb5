"""Geometric triangulations of a simplex.

A :class:`Triangulation` stores a reference simplex, an indexed list of exact
points and its maximal cells as sorted index tuples.  Lower faces, carriers
and restrictions are derived on demand.  Instances are treated as immutable;
derived data is cached on first use.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

from . import _lp
from .exact import (
    DegenerateSimplexError,
    Point,
    affinely_independent,
    barycentric_coords,
    det,
    inverse,
    make_point,
    standard_basis,
    vec_mat,
)

Face = tuple  # sorted tuple of point indices


class ReferenceSimplex:
    """The simplex being subdivided, given by ``d`` affinely independent points."""

    __slots__ = ("vertices",)

    def __init__(self, vertices: Iterable[Sequence]):
        verts = tuple(make_point(v) for v in vertices)
        if not verts:
            raise DegenerateSimplexError("reference simplex needs at least one vertex")
        if len({len(v) for v in verts}) != 1:
            raise ValueError("reference vertices have mixed ambient dimensions")
        if not affinely_independent(verts):
            raise DegenerateSimplexError("reference vertices are affinely dependent")
        object.__setattr__(self, "vertices", verts)

    def __setattr__(self, name, value):
        raise AttributeError("ReferenceSimplex is immutable")

    @classmethod
    def standard(cls, d: int) -> "ReferenceSimplex":
        """conv(e_1, ..., e_d) in Q^d, a simplex of dimension d - 1."""
        if d < 1:
            raise ValueError("d must be at least 1")
        return cls(standard_basis(d))

    @property
    def d(self) -> int:
        return len(self.vertices)

    @property
    def dimension(self) -> int:
        return len(self.vertices) - 1

    @property
    def ambient_dim(self) -> int:
        return len(self.vertices[0])

    def is_standard(self) -> bool:
        d = len(self.vertices)
        return self.ambient_dim == d and all(
            v[i] == (1 if i == k else 0) for k, v in enumerate(self.vertices) for i in range(d))

    def barycentric(self, p: Point) -> tuple:
        if self.is_standard() and len(p) == self.d:
            # the coordinates are the point itself when it lies on the hyperplane
            if sum(p) != 1:
                raise ValueError("point is not in the affine hull of the simplex")
            return tuple(Fraction(x) for x in p)
        return barycentric_coords(p, self.vertices)

    def face(self, positions: Iterable[int]) -> "ReferenceSimplex":
        return ReferenceSimplex([self.vertices[i] for i in sorted(positions)])

    def __eq__(self, other):
        return isinstance(other, ReferenceSimplex) and self.vertices == other.vertices

    def __hash__(self):
        return hash(self.vertices)

    def __repr__(self):
        return f"ReferenceSimplex(d={self.d}, ambient_dim={self.ambient_dim})"


@dataclass(frozen=True)
class CarrierReport:
    face: Face
    carrier: frozenset
    excess: int
    interior: bool


@dataclass
class ValidationReport:
    ok: bool
    violations: list = field(default_factory=list)

    def __bool__(self):
        return self.ok


class Triangulation:
    """A triangulation of a reference simplex by exact-coordinate cells.

    Parameters
    ----------
    reference : ReferenceSimplex or sequence of points
    points : sequence of points
        The vertex set.  Coordinates must be distinct.
    cells : iterable of index collections
        Maximal cells; each must have exactly ``d`` indices.
    """

    def __init__(self, reference, points, cells, *, _bary=None):
        if not isinstance(reference, ReferenceSimplex):
            reference = ReferenceSimplex(reference)
        self.reference = reference
        self.points = tuple(make_point(p) for p in points)
        d = reference.d
        if len(set(self.points)) != len(self.points):
            raise ValueError("duplicate point coordinates")
        for p in self.points:
            if len(p) != reference.ambient_dim:
                raise ValueError("point dimension does not match the reference simplex")
        normalized = set()
        for c in cells:
            c = tuple(sorted(int(i) for i in c))
            if len(c) != d or len(set(c)) != d:
                raise ValueError(f"cell {c} must have exactly {d} distinct indices")
            if c[0] < 0 or c[-1] >= len(self.points):
                raise ValueError(f"cell {c} has an index out of range")
            normalized.add(c)
        self.cells = tuple(sorted(normalized))
        if _bary is not None:
            self.__dict__["bary"] = tuple(_bary)
        self._faces_cache = {}

    # --- basic attributes ----------------------------------------------

    @property
    def d(self) -> int:
        """Number of vertices of the reference simplex (its dimension plus one)."""
        return self.reference.d

    @property
    def dim(self) -> int:
        return self.reference.d - 1

    @cached_property
    def bary(self) -> tuple:
        """Barycentric coordinates of every point w.r.t. the reference simplex."""
        return tuple(self.reference.barycentric(p) for p in self.points)

    @cached_property
    def support(self) -> tuple:
        """Per point, the reference positions with nonzero barycentric coordinate."""
        return tuple(frozenset(i for i, x in enumerate(b) if x != 0) for b in self.bary)

    @cached_property
    def index_of(self) -> dict:
        return {p: i for i, p in enumerate(self.points)}

    def cell_points(self, cell: Iterable[int]) -> list:
        return [self.points[i] for i in cell]

    # --- faces ------------------------------------------------------------

    def faces(self, k: int) -> frozenset:
        """All k-dimensional faces; ``k = -1`` gives the single empty face ``()``."""
        if not -1 <= k <= self.dim:
            raise ValueError(f"face dimension {k} out of range [-1, {self.dim}]")
        if k not in self._faces_cache:
            if k == -1:
                result = frozenset({()})
            elif k == self.dim:
                result = frozenset(self.cells)
            else:
                result = frozenset(f for c in self.cells for f in itertools.combinations(c, k + 1))
            self._faces_cache[k] = result
        return self._faces_cache[k]

    def all_faces(self) -> list:
        return [f for k in range(-1, self.d) for f in sorted(self.faces(k))]

    def is_face(self, face: Iterable[int]) -> bool:
        face = tuple(sorted(face))
        if not face:
            return True
        if len(face) > self.d:
            return False
        return face in self.faces(len(face) - 1)

    def carrier_positions(self, face: Iterable[int]) -> frozenset:
        out = frozenset()
        for i in face:
            out |= self.support[i]
        return out

    def carrier(self, face: Iterable[int]) -> CarrierReport:
        """Smallest face of the reference simplex containing ``face``, and its excess."""
        face = tuple(sorted(face))
        if not face or not self.is_face(face):
            raise ValueError(f"{face} is not a nonempty face of the triangulation")
        positions = self.carrier_positions(face)
        return CarrierReport(face, positions, len(positions) - len(face), len(positions) == self.d)

    # --- restriction --------------------------------------------------

    def restrict(self, positions: Iterable[int]) -> "Triangulation":
        """The induced triangulation of the reference face spanned by ``positions``."""
        positions = tuple(sorted(set(positions)))
        if not positions:
            raise ValueError("cannot restrict to the empty face")
        if positions[0] < 0 or positions[-1] >= self.d:
            raise ValueError(f"positions {positions} out of range")
        pset = frozenset(positions)
        keep = [i for i, s in enumerate(self.support) if s <= pset]
        new_index = {old: new for new, old in enumerate(keep)}
        cells = set()
        for c in self.cells:
            sub = tuple(new_index[i] for i in c if i in new_index)
            if len(sub) == len(positions):
                cells.add(sub)
        bary = [tuple(self.bary[i][p] for p in positions) for i in keep]
        return Triangulation(self.reference.face(positions), [self.points[i] for i in keep],
                             cells, _bary=bary)

    def compact(self) -> "Triangulation":
        """Drop points not used by any cell, keeping the order of the rest."""
        used = sorted({i for c in self.cells for i in c})
        if len(used) == len(self.points):
            return self
        remap = {old: new for new, old in enumerate(used)}
        return Triangulation(self.reference, [self.points[i] for i in used],
                             [[remap[i] for i in c] for c in self.cells])

    def is_trivial(self) -> bool:
        return len(self.points) == self.d and len(self.cells) == 1

    # --- validation ---------------------------------------------------

    def cell_volume(self, cell: Sequence[int]) -> Fraction:
        """Volume of a cell relative to the reference simplex (which has volume 1)."""
        return abs(det([self.bary[i] for i in cell]))

    def validate(self) -> ValidationReport:
        """Check every geometric-triangulation invariant exactly."""
        violations = []
        try:
            self.bary
        except ValueError:
            for i, p in enumerate(self.points):
                try:
                    self.reference.barycentric(p)
                except ValueError:
                    violations.append(f"point {i} is not in the affine hull of the reference simplex")
            return ValidationReport(False, violations)
        for i, b in enumerate(self.bary):
            if any(x < 0 for x in b):
                violations.append(f"point {i} lies outside the reference simplex")
        coords = set(self.points)
        for j, v in enumerate(self.reference.vertices):
            if v not in coords:
                violations.append(f"reference vertex {j} is not a point of the triangulation")
        used = set(itertools.chain.from_iterable(self.cells))
        for i in range(len(self.points)):
            if i not in used:
                violations.append(f"point {i} is not used by any cell")
        if not self.cells:
            violations.append("triangulation has no cells")
        total = Fraction(0)
        inverses = {}
        for c in self.cells:
            vol = self.cell_volume(c)
            if vol == 0:
                violations.append(f"cell {list(c)} is degenerate")
            else:
                inverses[c] = inverse([self.bary[i] for i in c])
            total += vol
        if total != 1:
            violations.append(
                f"cell volumes sum to {total} of the reference volume (deficit {1 - total})")
        if not violations:
            for a, b in itertools.combinations(self.cells, 2):
                if not self._meet_properly(a, b, inverses):
                    violations.append(f"cells {list(a)} and {list(b)} intersect off-face")
        return ValidationReport(not violations, violations)

    def _meet_properly(self, a, b, inverses) -> bool:
        bary = self.bary
        d = self.d
        shared = set(a) & set(b)
        # disjoint coordinate boxes
        if not shared:
            for c in range(d):
                amin = min(bary[i][c] for i in a)
                amax = max(bary[i][c] for i in a)
                bmin = min(bary[i][c] for i in b)
                bmax = max(bary[i][c] for i in b)
                if amax < bmin or bmax < amin:
                    return True
        # a facet hyperplane of one cell strictly separates the other's private vertices
        for x, y in ((a, b), (b, a)):
            inv = inverses[x]
            private_y = [i for i in y if i not in shared]
            lam = [vec_mat(bary[i], inv) for i in private_y]
            for pos, v in enumerate(x):
                if v in shared:
                    continue
                if all(l[pos] < 0 for l in lam):
                    return True
        # exact LP: is there a common point with weight on a vertex of a outside b?
        rows = []
        for c in range(d):
            rows.append([bary[i][c] for i in a] + [-bary[i][c] for i in b])
        rows.append([Fraction(0 if i in shared else 1) for i in a] + [Fraction(0)] * d)
        rhs = [Fraction(0)] * d + [Fraction(1)]
        return not _lp.feasible(rows, rhs)

    # --- identity -----------------------------------------------------

    def geometry_key(self):
        """Coordinate-level identity, independent of point indexing."""
        return (self.reference.vertices, frozenset(self.points),
                frozenset(frozenset(self.points[i] for i in c) for c in self.cells))

    def __eq__(self, other):
        if not isinstance(other, Triangulation):
            return NotImplemented
        return (self.reference == other.reference and self.points == other.points
                and self.cells == other.cells)

    def __hash__(self):
        return hash((self.reference, self.points, self.cells))

    def __repr__(self):
        return (f"Triangulation(d={self.d}, points={len(self.points)}, "
                f"cells={len(self.cells)})")

    @classmethod
    def from_cell_coordinates(cls, reference, cells: Iterable[Iterable[Point]],
                              order: Sequence[Point] | None = None) -> "Triangulation":
        """Build a triangulation from cells given as coordinate collections.

        Points are indexed in the order of ``order`` when given, otherwise
        reference vertices first and the rest sorted.
        """
        if not isinstance(reference, ReferenceSimplex):
            reference = ReferenceSimplex(reference)
        cells = [frozenset(c) for c in cells]
        pts = set().union(*cells) if cells else set()
        if order is None:
            order = [v for v in reference.vertices if v in pts]
            order += sorted(pts - set(order))
        else:
            order = [p for p in order if p in pts]
            if len(order) != len(pts):
                raise ValueError("ordering does not cover every cell vertex")
        idx = {p: i for i, p in enumerate(order)}
        return cls(reference, order, [[idx[p] for p in c] for c in cells])
