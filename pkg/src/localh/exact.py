"""Exact rational scalars, points and geometric predicates.

Everything here works over :class:`fractions.Fraction`; there are no
tolerance parameters anywhere.  Points are plain tuples of Fractions so they
hash and compare structurally.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from typing import Iterable, Sequence

Rational = Fraction
Point = tuple  # tuple[Fraction, ...]

_RATIONAL_RE = re.compile(r"^-?\d+(/\d+)?$")


class DegenerateSimplexError(ValueError):
    """Raised when a simplex is expected to be affinely independent but is not."""


def parse_rational(text: str) -> Fraction:
    """Parse ``"p/q"``, ``"-p/q"`` or ``"p"`` into a Fraction.

    Decimal and exponent notation is rejected on purpose: the file formats
    carry exact values only.
    """
    if not isinstance(text, str) or not _RATIONAL_RE.match(text):
        raise ValueError(f"malformed rational {text!r}")
    num, _, den = text.partition("/")
    if den and int(den) == 0:
        raise ValueError(f"malformed rational {text!r}: zero denominator")
    return Fraction(int(num), int(den) if den else 1)


def format_rational(q: Fraction) -> str:
    return str(Fraction(q))


def as_rational(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return parse_rational(x)
    raise TypeError(f"cannot convert {type(x).__name__} to an exact rational")


def make_point(coords: Iterable) -> Point:
    return tuple(as_rational(c) for c in coords)


def standard_basis(d: int) -> list[Point]:
    """Vertices e_1, ..., e_d of the standard (d-1)-simplex in Q^d."""
    return [tuple(Fraction(int(i == j)) for j in range(d)) for i in range(d)]


# --- exact linear algebra -------------------------------------------------


def row_reduce(rows: Sequence[Sequence[Fraction]]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form; returns (matrix, pivot columns)."""
    m = [list(r) for r in rows]
    if not m:
        return m, []
    ncols = len(m[0])
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][c]
        m[r] = [v * inv for v in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m, pivots


def rank(rows: Sequence[Sequence[Fraction]]) -> int:
    return len(row_reduce(rows)[1])


def det(matrix: Sequence[Sequence[Fraction]]) -> Fraction:
    """Determinant by fraction-exact Gaussian elimination."""
    m = [list(map(Fraction, r)) for r in matrix]
    n = len(m)
    if any(len(r) != n for r in m):
        raise ValueError("determinant of a non-square matrix")
    result = Fraction(1)
    for c in range(n):
        piv = next((i for i in range(c, n) if m[i][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            result = -result
        p = m[c][c]
        result *= p
        for i in range(c + 1, n):
            if m[i][c] != 0:
                f = m[i][c] / p
                m[i] = [a - f * b for a, b in zip(m[i], m[c])]
    return result


def inverse(matrix: Sequence[Sequence[Fraction]]) -> list[list[Fraction]]:
    n = len(matrix)
    aug = [list(map(Fraction, r)) + [Fraction(int(i == j)) for j in range(n)]
           for i, r in enumerate(matrix)]
    red, pivots = row_reduce(aug)
    if pivots[:n] != list(range(n)):
        raise DegenerateSimplexError("singular matrix")
    return [r[n:] for r in red]


def vec_mat(v: Sequence[Fraction], m: Sequence[Sequence[Fraction]]) -> tuple:
    """Row vector times matrix."""
    cols = len(m[0])
    return tuple(sum((v[i] * m[i][j] for i in range(len(v)) if v[i]), Fraction(0))
                 for j in range(cols))


# --- predicates -----------------------------------------------------------


def affinely_independent(points: Sequence[Point]) -> bool:
    """True iff the points span an affine space of dimension ``len(points) - 1``."""
    if len(points) <= 1:
        return True
    base = points[0]
    edges = [[a - b for a, b in zip(p, base)] for p in points[1:]]
    return rank(edges) == len(points) - 1


def barycentric_coords(p: Point, simplex: Sequence[Point]) -> tuple:
    """Barycentric coordinates of ``p`` with respect to ``simplex``.

    ``simplex`` may be lower-dimensional than the ambient space; ``p`` must
    then lie in its affine hull.
    """
    if not simplex:
        raise DegenerateSimplexError("empty simplex")
    if not affinely_independent(simplex):
        raise DegenerateSimplexError("simplex vertices are affinely dependent")
    k = len(simplex)
    # unknowns lambda_1..lambda_k; one equation per coordinate plus sum = 1
    rows = [[v[c] for v in simplex] + [p[c]] for c in range(len(p))]
    rows.append([Fraction(1)] * k + [Fraction(1)])
    red, pivots = row_reduce(rows)
    if k in pivots:
        raise ValueError("point is not in the affine hull of the simplex")
    lam = [Fraction(0)] * k
    for row, c in zip(red, pivots):
        lam[c] = row[k]
    return tuple(lam)


def signed_volume(simplex: Sequence[Point]) -> Fraction:
    """Signed full-dimensional volume: det(v_1 - v_0, ..., v_k - v_0) / k!.

    The simplex must have exactly ambient dimension + 1 points; use
    :func:`gram_sq_volume` for lower-dimensional simplices.
    """
    if not simplex:
        raise ValueError("signed_volume needs at least one point")
    k = len(simplex) - 1
    if any(len(p) != k for p in simplex):
        raise ValueError(
            f"signed_volume needs ambient dimension + 1 points, got {len(simplex)} "
            f"points in dimension {len(simplex[0])}")
    if k == 0:
        return Fraction(1)
    base = simplex[0]
    edges = [[a - b for a, b in zip(p, base)] for p in simplex[1:]]
    return det(edges) / math.factorial(k)


def gram_sq_volume(simplex: Sequence[Point]) -> Fraction:
    """Gram determinant of the edge vectors from the first vertex.

    This equals ``(k! * vol_k)**2`` and stays rational; it is zero exactly
    when the points are affinely dependent.
    """
    if not simplex:
        raise ValueError("gram_sq_volume needs at least one point")
    base = simplex[0]
    edges = [[a - b for a, b in zip(p, base)] for p in simplex[1:]]
    if not edges:
        return Fraction(1)
    gram = [[sum((x * y for x, y in zip(u, v)), Fraction(0)) for v in edges] for u in edges]
    return det(gram)


def point_on_segment(a: Point, b: Point, t: Fraction) -> Point:
    """The point (1 - t) a + t b."""
    return tuple((1 - t) * x + t * y for x, y in zip(a, b))


def affine_combination(points: Sequence[Point], weights: Sequence[Fraction]) -> Point:
    total = sum(weights, Fraction(0))
    return tuple(sum((w * p[c] for p, w in zip(points, weights)), Fraction(0)) / total
                 for c in range(len(points[0])))
