"""Face counts, h-polynomials and local h-polynomials.

The local h-polynomial is computed two ways that share no face-walking
code: by inclusion-exclusion of h-polynomials over the restrictions to the
faces of the reference simplex, and by Stanley's excess formula summed over
the faces of the triangulation.  Agreement of the two is the main
correctness check of this package.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import comb

from .polynomial import IntPolynomial
from .triangulation import Triangulation


class LocalHMismatch(AssertionError):
    """The two local h formulas disagree; this is always an implementation bug."""


def f_vector(t: Triangulation) -> tuple:
    """(f_{-1}, f_0, ..., f_{d-1}) with f_{-1} = 1."""
    return tuple(len(t.faces(k)) for k in range(-1, t.d))


def h_from_f(f: tuple) -> IntPolynomial:
    """Solve sum h_i (x+1)^{d-i} = sum f_{i-1} x^{d-i} for the h_i.

    Equivalently h_i = sum_k (-1)^{i-k} C(d-k, i-k) f_{k-1}.
    """
    d = len(f) - 1
    return IntPolynomial(
        sum((-1) ** (i - k) * comb(d - k, i - k) * f[k] for k in range(i + 1))
        for i in range(d + 1))


def h_polynomial(t: Triangulation) -> IntPolynomial:
    return h_from_f(f_vector(t))


def local_h_mobius(t: Triangulation) -> IntPolynomial:
    """Alternating sum of h(Gamma_F) over all faces F of the reference simplex.

    The empty face contributes (-1)^d with the convention that its local h
    is 1.
    """
    d = t.d
    total = IntPolynomial([(-1) ** d])
    for size in range(1, d + 1):
        sign = (-1) ** (d - size)
        for positions in itertools.combinations(range(d), size):
            total = total + sign * h_polynomial(t.restrict(positions))
    return total


def _faces_with_carriers(t: Triangulation) -> dict:
    """Every nonempty face mapped to the size of its carrier, walked directly from cells."""
    out = {}
    for cell in t.cells:
        for mask in range(1, 1 << len(cell)):
            face = tuple(v for b, v in enumerate(cell) if mask >> b & 1)
            if face in out:
                continue
            carrier = set()
            for v in face:
                carrier.update(t.support[v])
            out[face] = len(carrier)
    return out


def local_h_excess(t: Triangulation) -> IntPolynomial:
    """Sum over faces G of (-1)^codim(G) x^(d - e(G)) (x - 1)^e(G).

    The empty face is included with codimension d and excess 0 (its carrier
    is the empty face of the reference simplex).
    """
    d = t.d
    # group terms by (number of vertices, excess) before expanding
    counts = {(0, 0): 1}
    for face, carrier_size in _faces_with_carriers(t).items():
        key = (len(face), carrier_size - len(face))
        counts[key] = counts.get(key, 0) + 1
    total = IntPolynomial()
    for (nverts, e), n in counts.items():
        sign = (-1) ** (d - nverts)
        term = IntPolynomial.monomial(d - e) * IntPolynomial.linear_power(-1, 1, e)
        total = total + sign * n * term
    return total


def local_h(t: Triangulation, method: str = "both") -> IntPolynomial:
    """Local h-polynomial; ``method='both'`` computes both formulas and cross-checks."""
    if method == "mobius":
        return local_h_mobius(t)
    if method == "excess":
        return local_h_excess(t)
    if method != "both":
        raise ValueError(f"unknown method {method!r}")
    a = local_h_mobius(t)
    b = local_h_excess(t)
    if a != b:
        raise LocalHMismatch(f"mobius formula gives {a}, excess formula gives {b}")
    return a


@dataclass(frozen=True)
class FlagCounts:
    """Counts f_i^j of i-faces carried by j-faces of the reference simplex."""

    d: int
    table: dict  # (i, j) -> count, only nonzero entries stored

    def __getitem__(self, key) -> int:
        return self.table.get(key, 0)

    def f(self, i: int) -> int:
        return sum(v for (a, _), v in self.table.items() if a == i)

    def as_rows(self) -> list:
        """Rows i = -1..d-1, columns j = -1..d-1."""
        return [[self[i, j] for j in range(-1, self.d)] for i in range(-1, self.d)]


def flag_counts(t: Triangulation) -> FlagCounts:
    table = {(-1, -1): 1}
    for k in range(t.d):
        for face in t.faces(k):
            j = len(t.carrier_positions(face)) - 1
            table[k, j] = table.get((k, j), 0) + 1
    return FlagCounts(t.d, table)


def ell2_formula(fc: FlagCounts, d: int) -> int:
    """Closed form of the x^2 coefficient: f_1^{d-1} - f_0^{d-2} - (d-1) f_0^{d-1}."""
    if d < 2:
        raise ValueError("the closed form needs d >= 2")
    return fc[1, d - 1] - fc[0, d - 2] - (d - 1) * fc[0, d - 1]


def ell1_formula(fc: FlagCounts, d: int) -> int:
    """The x coefficient equals the number of interior vertices."""
    return fc[0, d - 1]


def local_h_decomposition(t: Triangulation) -> IntPolynomial:
    """Reassemble h(t) as the sum of local h over all faces of the reference simplex."""
    total = IntPolynomial([1])
    for size in range(1, t.d + 1):
        for positions in itertools.combinations(range(t.d), size):
            total = total + local_h_excess(t.restrict(positions))
    return total
