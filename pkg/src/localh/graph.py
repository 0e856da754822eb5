"""The internal edge graph and the structural predicates built on it.

Every predicate returns a :class:`Check` carrying a witness rather than a bare
boolean, since a failure here points at a bug and needs to be debuggable.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import networkx as nx

from .local_h import flag_counts
from .triangulation import Triangulation

TREE_UNIQUE_LOW_EXCESS = "TREE_UNIQUE_LOW_EXCESS"
DIM3_UNIQUE_3CYCLE = "DIM3_UNIQUE_3CYCLE"
OTHER = "OTHER"


class PreconditionError(ValueError):
    pass


@dataclass
class Check:
    ok: bool
    witness: object = None
    note: str = ""

    def __bool__(self):
        return self.ok


@dataclass
class InternalEdgeGraph:
    """Edges of the triangulation carried by the whole reference simplex."""

    d: int
    excess: dict  # vertex -> excess of the vertex as a 0-face
    edges: list
    graph: nx.Graph = field(repr=False)

    @property
    def vertices(self) -> list:
        return sorted(self.graph.nodes)

    @property
    def components(self) -> list:
        return sorted(sorted(c) for c in nx.connected_components(self.graph))

    def is_empty(self) -> bool:
        return not self.edges

    def to_dot(self, t: Triangulation | None = None) -> str:
        lines = ["graph internal_edges {"]
        for v in self.vertices:
            label = f"{v}\\ne={self.excess[v]}"
            if t is not None:
                label += "\\ncarrier=" + ",".join(map(str, sorted(t.support[v])))
            lines.append(f'  {v} [label="{label}"];')
        for a, b in self.edges:
            lines.append(f"  {a} -- {b};")
        lines.append("}")
        return "\n".join(lines) + "\n"


def internal_edge_graph(t: Triangulation) -> InternalEdgeGraph:
    if t.d < 2:
        raise PreconditionError("the internal edge graph needs d >= 2")
    g = nx.Graph()
    edges = []
    for e in sorted(t.faces(1)):
        if len(t.carrier_positions(e)) == t.d:
            edges.append(e)
            g.add_edge(*e)
    excess = {v: len(t.support[v]) - 1 for v in g.nodes}
    return InternalEdgeGraph(t.d, excess, edges, g)


@dataclass
class ComponentReport:
    component_id: int
    vertices: list
    vertex_count: int
    edge_count: int
    euler_characteristic: int
    low_excess_vertices: list
    simple_3_cycles: list
    f0_codim1: int  # f_0^{d-2}(C)
    f1_interior: int  # f_1^{d-1}(C)
    classification: str

    def to_json(self) -> dict:
        return {
            "component_id": self.component_id,
            "vertices": self.vertices,
            "vertex_count": self.vertex_count,
            "edge_count": self.edge_count,
            "euler_characteristic": self.euler_characteristic,
            "low_excess_vertices": self.low_excess_vertices,
            "simple_3_cycles": [list(c) for c in self.simple_3_cycles],
            "f0_codim1": self.f0_codim1,
            "f1_interior": self.f1_interior,
            "classification": self.classification,
        }


def _triangles(g: nx.Graph, nodes) -> list:
    out = []
    for a, b, c in itertools.combinations(sorted(nodes), 3):
        if g.has_edge(a, b) and g.has_edge(b, c) and g.has_edge(a, c):
            out.append((a, b, c))
    return out


def component_reports(g: InternalEdgeGraph, t: Triangulation | None = None) -> list:
    d = g.d
    reports = []
    for cid, comp in enumerate(g.components):
        sub = g.graph.subgraph(comp)
        nv, ne = sub.number_of_nodes(), sub.number_of_edges()
        chi = nv - ne
        low = [v for v in comp if g.excess[v] < d - 2]
        tri = _triangles(sub, comp)
        if chi == 1 and len(low) == 1:
            kind = TREE_UNIQUE_LOW_EXCESS
        elif d == 3 and not low and chi == 0 and len(tri) == 1:
            kind = DIM3_UNIQUE_3CYCLE
        else:
            kind = OTHER
        reports.append(ComponentReport(
            component_id=cid, vertices=list(comp), vertex_count=nv, edge_count=ne,
            euler_characteristic=chi, low_excess_vertices=low, simple_3_cycles=tri,
            f0_codim1=sum(1 for v in comp if g.excess[v] == d - 2),
            f1_interior=ne, classification=kind))
    return reports


def _require_l1_l2_zero(t: Triangulation):
    fc = flag_counts(t)
    d = t.d
    l1 = fc[0, d - 1]
    if l1:
        raise PreconditionError(f"l_1 = {l1} is nonzero")
    l2 = fc[1, d - 1] - fc[0, d - 2]
    if l2:
        raise PreconditionError(f"l_2 = {l2} is nonzero")


def check_components_are_trees(t: Triangulation) -> Check:
    """Every component of the internal edge graph is a tree with one low-excess vertex.

    Requires d >= 4 and vanishing l_1, l_2.
    """
    if t.d < 4:
        raise PreconditionError("needs a simplex of dimension at least 3")
    _require_l1_l2_zero(t)
    for rep in component_reports(internal_edge_graph(t), t):
        if rep.euler_characteristic != 1 or len(rep.low_excess_vertices) != 1:
            return Check(False, rep)
    return Check(True)


def check_no_other_components(t: Triangulation) -> Check:
    """No component classifies as OTHER once l_1 = l_2 = 0 (d >= 3)."""
    if t.d < 3:
        raise PreconditionError("needs d >= 3")
    _require_l1_l2_zero(t)
    for rep in component_reports(internal_edge_graph(t), t):
        if rep.classification == OTHER:
            return Check(False, rep)
    return Check(True)


def check_component_edge_bound(t: Triangulation) -> Check:
    """Per component, f_0^{d-2}(C) <= f_1^{d-1}(C) when l_1 = 0 and d >= 3."""
    if t.d < 3:
        raise PreconditionError("needs d >= 3")
    l1 = flag_counts(t)[0, t.d - 1]
    if l1:
        raise PreconditionError(f"l_1 = {l1} is nonzero")
    for rep in component_reports(internal_edge_graph(t), t):
        if rep.f0_codim1 > rep.f1_interior:
            return Check(False, rep)
    return Check(True)


def check_codim1_vertices_on_graph(t: Triangulation) -> Check:
    """Every vertex carried by a codimension-1 face lies on some interior edge."""
    g = internal_edge_graph(t)
    nodes = set(g.graph.nodes)
    for v, s in enumerate(t.support):
        if len(s) == t.d - 1 and v not in nodes:
            return Check(False, v)
    return Check(True)


def is_connected_dim2(t: Triangulation) -> Check:
    """Connectivity of the internal edge graph of a triangulated triangle.

    An empty graph counts as connected; ``note`` is then ``"empty"``.
    """
    if t.d != 3:
        raise PreconditionError("connectivity check is for triangulations of a 2-simplex")
    g = internal_edge_graph(t)
    if g.is_empty():
        return Check(True, None, "empty")
    comps = g.components
    return Check(len(comps) == 1, comps if len(comps) > 1 else None)


@dataclass
class PyramidReport:
    cell: tuple
    is_pyramid: bool
    face: tuple | None = None  # reference positions of the proper face
    apex: int | None = None  # the one vertex outside it


def pyramid_facets(t: Triangulation) -> list:
    """For each cell, whether all but one of its vertices lie on a proper face of the simplex."""
    out = []
    full = frozenset(range(t.d))
    for c in t.cells:
        best = None
        for v in c:
            rest = t.carrier_positions(u for u in c if u != v)
            if rest != full and (best is None or len(rest) < len(best[0])):
                best = (rest, v)
        if best is None:
            out.append(PyramidReport(c, False))
        else:
            out.append(PyramidReport(c, True, tuple(sorted(best[0])), best[1]))
    return out


def count_non_pyramid_facets(t: Triangulation) -> int:
    return sum(1 for r in pyramid_facets(t) if not r.is_pyramid)


def check_interior_edge_cells_are_pyramids(t: Triangulation) -> Check:
    """Every cell containing an interior edge is a pyramid (d >= 4, l_1 = l_2 = 0)."""
    if t.d < 4:
        raise PreconditionError("needs d >= 4")
    _require_l1_l2_zero(t)
    interior = set(internal_edge_graph(t).edges)
    for rep in pyramid_facets(t):
        if rep.is_pyramid:
            continue
        if any(e in interior for e in itertools.combinations(rep.cell, 2)):
            return Check(False, rep)
    return Check(True)
