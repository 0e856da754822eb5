"""Seeded fuzz corpus and property harnesses.

Each harness runs a number of trials and collects failures as
``(trial, message)`` pairs instead of stopping at the first one.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .constructions import (
    TRIFORCE,
    TRIVIAL,
    cone,
    conical_facet_refine,
    eligible_pairs,
    join,
    segment_triforce_join,
    random_base_subdivision,
    random_facet_refinement,
    random_iterated,
    segment_family,
    step_from_base,
    trivial,
)
from .decomposition import decompose_dim2, decompose_dim3, verify_certificate
from .graph import (
    OTHER,
    check_component_edge_bound,
    check_interior_edge_cells_are_pyramids,
    check_components_are_trees,
    component_reports,
    count_non_pyramid_facets,
    internal_edge_graph,
    is_connected_dim2,
)
from .local_h import (
    ell2_formula,
    flag_counts,
    h_polynomial,
    local_h,
    local_h_excess,
    local_h_mobius,
)
from .triangulation import Triangulation


@dataclass
class HarnessResult:
    name: str
    trials: int = 0
    failures: list = field(default_factory=list)
    skipped: int = 0

    @property
    def ok(self) -> bool:
        return not self.failures

    def fail(self, trial, message: str):
        self.failures.append((trial, message))

    def summary(self) -> str:
        status = "ok" if self.ok else f"{len(self.failures)} failures"
        extra = f", {self.skipped} skipped" if self.skipped else ""
        return f"{self.name}: {self.trials} trials{extra}, {status}"

    def to_json(self) -> dict:
        return {"name": self.name, "trials": self.trials, "skipped": self.skipped,
                "ok": self.ok, "failures": [[str(k), m] for k, m in self.failures]}


# --- corpus ---------------------------------------------------------------------------


def _small(rng: random.Random, max_d: int) -> Triangulation:
    """A small instance of dimension at most ``max_d - 1``, possibly with nonzero local h."""
    d = rng.randint(2, max_d)
    if d == 2:
        return segment_family(rng.randint(0, 3))
    if d == 3 and rng.random() < 0.5:
        t, _ = random_iterated(TRIFORCE, rng.randint(0, 2), rng.randrange(1 << 30))
    else:
        t, _ = random_iterated(TRIVIAL, rng.randint(0, 2 if d <= 3 else 1),
                               rng.randrange(1 << 30), d=d)
    if rng.random() < 0.6:
        t = random_facet_refinement(t, rng, 1)[0]
    return t


def corpus_instance(kind: int, rng: random.Random):
    """One labelled instance of the given kind (0..7)."""
    s = rng.randrange(1 << 30)
    if kind == 0:
        k = rng.randint(0, 10)
        return f"random trivial 3 steps={k} seed={s}", random_iterated(TRIVIAL, k, s, d=3)[0]
    if kind == 1:
        k = rng.randint(0, 10)
        return f"random triforce steps={k} seed={s}", random_iterated(TRIFORCE, k, s)[0]
    if kind == 2:
        k = rng.randint(0, 6)
        return f"random trivial 4 steps={k} seed={s}", random_iterated(TRIVIAL, k, s, d=4)[0]
    if kind == 3:
        k = rng.randint(0, 3)
        return f"random trivial 5 steps={k} seed={s}", random_iterated(TRIVIAL, k, s, d=5)[0]
    if kind == 4:
        n = rng.randint(0, 4)
        if rng.random() < 0.2:
            return "trivial 2", trivial(2)
        return f"segment {n}", segment_family(n)
    if kind == 5:
        sub = random.Random(s)
        d = sub.choice((3, 3, 4))
        base = TRIFORCE if d == 3 and sub.random() < 0.5 else TRIVIAL
        t, _ = random_iterated(base, sub.randint(0, 4), s, d=d)
        t = random_facet_refinement(t, sub)[0]
        return f"facet refinement of random {base} {d} seed={s}", t
    if kind == 6:
        sub = random.Random(s)
        a = _small(sub, 3)
        b = _small(sub, 5 - a.d)
        return f"join seed={s}", join(a, b)
    sub = random.Random(s)
    return f"cone seed={s}", cone(_small(sub, 4))


def fuzz_corpus(n: int, seed: int = 0) -> list:
    """``n`` labelled triangulations covering d = 2..5, cycling through all kinds."""
    rng = random.Random(seed)
    return [corpus_instance(i % 8, rng) for i in range(n)]


# --- harnesses ------------------------------------------------------------------------


def harness_dual(trials: int, seed: int = 0) -> HarnessResult:
    """The inclusion-exclusion and excess formulas agree."""
    res = HarnessResult("dual")
    for label, t in fuzz_corpus(trials, seed):
        res.trials += 1
        a, b = local_h_mobius(t), local_h_excess(t)
        if a != b:
            res.fail(label, f"mobius {a} != excess {b}")
    return res


def harness_symmetry(trials: int, seed: int = 0) -> HarnessResult:
    """Coefficients are palindromic of degree d and nonnegative."""
    res = HarnessResult("symmetry")
    for label, t in fuzz_corpus(trials, seed):
        res.trials += 1
        ell = local_h(t)
        c = ell.padded(t.d + 1)
        if c != c[::-1]:
            res.fail(label, f"{ell} is not symmetric for d={t.d}")
        if any(x < 0 for x in c):
            res.fail(label, f"{ell} has a negative coefficient")
    return res


def harness_ell2(trials: int, seed: int = 0) -> HarnessResult:
    """The closed form for the x^2 coefficient, for d >= 3."""
    res = HarnessResult("ell2")
    for label, t in fuzz_corpus(trials, seed):
        if t.d < 3:
            res.skipped += 1
            continue
        res.trials += 1
        got, want = ell2_formula(flag_counts(t), t.d), local_h(t)[2]
        if got != want:
            res.fail(label, f"closed form {got} != coefficient {want}")
    return res


def harness_additivity(trials: int, seed: int = 0) -> HarnessResult:
    """Each trial checks one facet refinement and one conical facet refinement.

    For the facet refinement both the local h and the h-polynomial versions
    of additivity are checked; the conical step must leave local h unchanged.
    """
    res = HarnessResult("additivity")
    rng = random.Random(seed)
    kinds = (0, 1, 2, 2, 3, 5)
    for i in range(trials):
        label, t = corpus_instance(kinds[i % len(kinds)], rng)
        res.trials += 1
        refined, _, piece = random_facet_refinement(t, rng)
        report = refined.validate()
        if not report:
            res.fail(label, f"facet refinement invalid: {report.violations[0]}")
            continue
        lhs, rhs = local_h(refined), local_h(t) + local_h(piece)
        if lhs != rhs:
            res.fail(label, f"local h {lhs} != {rhs} after facet refinement")
        hl, hr = h_polynomial(refined), h_polynomial(t) + h_polynomial(piece) - 1
        if hl != hr:
            res.fail(label, f"h {hl} != {hr} after facet refinement")
        pairs = eligible_pairs(t)
        if not pairs:
            res.fail(label, "no conical step available")
            continue
        cell, apex = rng.choice(pairs)
        step = step_from_base(t, cell, apex, random_base_subdivision(t, cell, apex, rng))
        stepped = conical_facet_refine(t, step)
        if local_h(stepped) != local_h(t):
            res.fail(label, "conical step changed the local h-polynomial")
    return res


def harness_join(trials: int, seed: int = 0) -> HarnessResult:
    """Local h is multiplicative under joins, with total d at most 6."""
    res = HarnessResult("join")
    rng = random.Random(seed)
    for i in range(trials):
        a = _small(rng, 4)
        b = _small(rng, min(4, 6 - a.d))
        res.trials += 1
        got, want = local_h(join(a, b)), local_h(a) * local_h(b)
        if got != want:
            res.fail(i, f"join gives {got}, product is {want} (d={a.d}+{b.d})")
    return res


def harness_roundtrip2(trials: int, seed: int = 0, max_steps: int = 12) -> HarnessResult:
    """Decompose random iterated refinements of a triangle and verify the certificate."""
    res = HarnessResult("roundtrip2")
    rng = random.Random(seed)
    for i in range(trials):
        base = TRIFORCE if i % 2 else TRIVIAL
        k, s = rng.randint(0, max_steps), rng.randrange(1 << 30)
        t, _ = random_iterated(base, k, s, d=3)
        label = f"{base} steps={k} seed={s}"
        res.trials += 1
        cert = decompose_dim2(t)
        v = verify_certificate(cert, t)
        if not v:
            res.fail(label, f"step {v.failed_step}: {v.diff[:3]}")
        has_cycle = any(r.simple_3_cycles for r in component_reports(internal_edge_graph(t), t))
        if (cert.base == TRIFORCE) != has_cycle:
            res.fail(label, f"base {cert.base} but 3-cycle present: {has_cycle}")
    return res


def harness_roundtrip3(trials: int, seed: int = 0, max_steps: int = 8) -> HarnessResult:
    """Decompose random iterated refinements of a tetrahedron and verify the certificate."""
    res = HarnessResult("roundtrip3")
    rng = random.Random(seed)
    for _ in range(trials):
        k, s = rng.randint(1, max_steps), rng.randrange(1 << 30)
        t, _ = random_iterated(TRIVIAL, k, s, d=4)
        res.trials += 1
        v = verify_certificate(decompose_dim3(t), t)
        if not v:
            res.fail(f"steps={k} seed={s}", f"step {v.failed_step}: {v.diff[:3]}")
    return res


def harness_graph_structure(trials: int, seed: int = 0) -> HarnessResult:
    """Structure of the internal edge graph on corpus instances.

    Instances with vanishing x and x^2 coefficients must have no OTHER
    component, and for d >= 4 every component is a tree with one low-excess
    vertex.  With a vanishing x coefficient the per-component vertex/edge
    inequality holds.  Every triangulated triangle has a connected graph.
    """
    res = HarnessResult("thm13")
    for label, t in fuzz_corpus(trials, seed):
        res.trials += 1
        if t.d == 3:
            c = is_connected_dim2(t)
            if not c:
                res.fail(label, f"disconnected internal edge graph: {c.witness}")
        if t.d < 3:
            continue
        ell = local_h(t)
        if ell[1] == 0:
            c = check_component_edge_bound(t)
            if not c:
                res.fail(label, f"component inequality fails: {c.witness}")
        if ell[1] or ell[2]:
            continue
        for rep in component_reports(internal_edge_graph(t), t):
            if rep.classification == OTHER:
                res.fail(label, f"component {rep.component_id} classifies as OTHER")
        if t.d >= 4:
            c = check_components_are_trees(t)
            if not c:
                res.fail(label, f"component is not a tree with one low-excess vertex: {c.witness}")
    return res


def harness_pyramids(trials: int, seed: int = 0) -> HarnessResult:
    """Pyramid statements on corpus instances.

    Cells containing an interior edge are pyramids when d >= 4 and the x and
    x^2 coefficients vanish.  With vanishing local h, every cell is a pyramid
    for d = 4 and at most one cell is not for d = 3.
    """
    res = HarnessResult("prop37")
    for label, t in fuzz_corpus(trials, seed):
        res.trials += 1
        ell = local_h(t)
        if t.d >= 4 and not ell[1] and not ell[2]:
            c = check_interior_edge_cells_are_pyramids(t)
            if not c:
                res.fail(label, f"non-pyramid cell with an interior edge: {c.witness}")
        if ell.is_zero():
            n = count_non_pyramid_facets(t)
            if t.d == 4 and n:
                res.fail(label, f"{n} non-pyramid cells with vanishing local h")
            if t.d == 3 and n > 1:
                res.fail(label, f"{n} non-pyramid cells in a triangle with vanishing local h")
    return res


def harness_segment_triforce(trials: int = 4, seed: int = 0) -> HarnessResult:
    """Joins of a subdivided segment with the triforce: n - 1 non-pyramid cells, zero local h.

    Runs n = 2, ..., trials + 1; ``seed`` is unused since the family is fixed.
    """
    res = HarnessResult("prop51")
    for n in range(2, trials + 2):
        t = segment_triforce_join(n)
        res.trials += 1
        count = count_non_pyramid_facets(t)
        if count != n - 1:
            res.fail(n, f"{count} non-pyramid cells, expected {n - 1}")
        ell = local_h(t)
        if not ell.is_zero():
            res.fail(n, f"local h is {ell}")
    return res


HARNESSES = {
    "symmetry": harness_symmetry,
    "additivity": harness_additivity,
    "join": harness_join,
    "dual": harness_dual,
    "ell2": harness_ell2,
    "roundtrip2": harness_roundtrip2,
    "roundtrip3": harness_roundtrip3,
    "thm13": harness_graph_structure,
    "prop37": harness_pyramids,
    "prop51": harness_segment_triforce,
}


def run_harness(name: str, trials: int, seed: int = 0) -> HarnessResult:
    return HARNESSES[name](trials, seed)
