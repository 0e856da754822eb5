"""Acceptance gate: every primary criterion, checked exactly.

Each test records one PASS/FAIL line; the lines are printed in the pytest
terminal summary, or directly when this file is run as a script.
"""

import random
import time
from collections import Counter
from functools import lru_cache

from localh.constructions import (
    TRIFORCE,
    TRIVIAL,
    conical_facet_refine,
    eligible_pairs,
    join,
    random_base_subdivision,
    random_facet_refinement,
    random_iterated,
    segment_family,
    segment_triforce_join,
    step_from_base,
    triforce,
    trivial,
)
from localh.decomposition import decompose_dim2, decompose_dim3, verify_certificate
from localh.graph import (
    OTHER,
    check_component_edge_bound,
    check_components_are_trees,
    component_reports,
    count_non_pyramid_facets,
    internal_edge_graph,
    is_connected_dim2,
)
from localh.harness import _small, corpus_instance, fuzz_corpus
from localh.local_h import (
    ell2_formula,
    f_vector,
    flag_counts,
    h_polynomial,
    local_h,
    local_h_excess,
    local_h_mobius,
)

TIME_LIMIT = 60.0
CORPUS_SIZE = 500
RESULTS = []


@lru_cache(maxsize=None)
def corpus():
    """The shared fuzz corpus with both local h computations attached."""
    out = []
    for label, t in fuzz_corpus(CORPUS_SIZE, seed=2024):
        out.append((label, t, local_h_mobius(t), local_h_excess(t)))
    return tuple(out)


def record(number: int, title: str, failures: list, detail: str, start: float):
    elapsed = time.perf_counter() - start
    if elapsed > TIME_LIMIT:
        failures = failures + [f"took {elapsed:.1f}s"]
    status = "PASS" if not failures else "FAIL"
    line = f"[{status}] criterion {number:2d} {title}: {detail} ({elapsed:.1f}s)"
    if failures:
        line += f" first failure: {failures[0]}"
    RESULTS.append(line)
    print(line)
    assert not failures, line


def test_01_fixtures():
    start = time.perf_counter()
    bad = []
    for d in range(2, 6):
        if not local_h(trivial(d)).is_zero():
            bad.append(f"trivial d={d}")
    t = triforce()
    if not local_h(t).is_zero():
        bad.append("triforce local h")
    if h_polynomial(t) != [1, 3]:
        bad.append(f"triforce h = {h_polynomial(t)}")
    if f_vector(t) != (1, 6, 9, 4):
        bad.append(f"triforce f = {f_vector(t)}")
    for n in range(5):
        if local_h(segment_family(n)) != [0, n]:
            bad.append(f"segment {n}")
    record(1, "fixtures", bad, "trivial d=2..5, triforce f/h/l, segments n=0..4", start)


def test_02_dual_formulas():
    start = time.perf_counter()
    data = corpus()
    bad = [label for label, _, a, b in data if a != b]
    dims = Counter(t.d for _, t, _, _ in data)
    if sorted(dims) != [2, 3, 4, 5]:
        bad.append(f"dimensions covered: {sorted(dims)}")
    record(2, "dual-formula oracle", bad,
           f"{len(data)} instances, d counts {dict(sorted(dims.items()))}", start)


def test_03_symmetry_and_nonnegativity():
    start = time.perf_counter()
    bad = []
    nonzero = 0
    for label, t, ell, _ in corpus():
        c = ell.padded(t.d + 1)
        if c != c[::-1] or min(c) < 0:
            bad.append(f"{label}: {ell}")
        nonzero += not ell.is_zero()
    record(3, "symmetry and nonnegativity", bad,
           f"{len(corpus())} instances, {nonzero} with nonzero local h", start)


def test_04_additivity():
    start = time.perf_counter()
    rng = random.Random(404)
    bad = []
    refinements = conical = 0
    kinds = (0, 1, 2, 2, 3, 5)
    for i in range(200):
        label, t = corpus_instance(kinds[i % len(kinds)], rng)
        refined, _, piece = random_facet_refinement(t, rng)
        if not refined.validate():
            bad.append(f"{label}: invalid refinement")
            continue
        refinements += 1
        if local_h(refined) != local_h(t) + local_h(piece):
            bad.append(f"{label}: local h not additive")
        if h_polynomial(refined) != h_polynomial(t) + h_polynomial(piece) - 1:
            bad.append(f"{label}: h not additive")
        cell, apex = rng.choice(eligible_pairs(t))
        step = step_from_base(t, cell, apex, random_base_subdivision(t, cell, apex, rng))
        if local_h(conical_facet_refine(t, step)) != local_h(t):
            bad.append(f"{label}: conical step changed local h")
        conical += 1
    record(4, "additivity", bad,
           f"{refinements} facet refinements (l and h), {conical} conical steps", start)


def test_05_join_law():
    start = time.perf_counter()
    rng = random.Random(505)
    bad = []
    nonzero = 0
    for i in range(100):
        a = _small(rng, 4)
        b = _small(rng, min(4, 6 - a.d))
        assert a.d + b.d <= 6
        want = local_h(a) * local_h(b)
        nonzero += not want.is_zero()
        if local_h(join(a, b)) != want:
            bad.append(f"pair {i} (d={a.d}+{b.d})")
    record(5, "join law", bad, f"100 pairs with d_a + d_b <= 6, {nonzero} nonzero products",
           start)


def test_06_second_coefficient_formula():
    start = time.perf_counter()
    bad = []
    n = 0
    for label, t, ell, _ in corpus():
        if t.d < 3:
            continue
        n += 1
        if ell2_formula(flag_counts(t), t.d) != ell[2]:
            bad.append(label)
    record(6, "closed form for l_2", bad, f"{n} instances with d >= 3", start)


def test_07_dim2_round_trip():
    start = time.perf_counter()
    rng = random.Random(707)
    bad = []
    bases = Counter()
    for i in range(100):
        base = TRIFORCE if i % 2 else TRIVIAL
        k, s = rng.randint(0, 12), rng.randrange(1 << 30)
        t, _ = random_iterated(base, k, s, d=3)
        cert = decompose_dim2(t)
        bases[cert.base] += 1
        if not verify_certificate(cert, t):
            bad.append(f"{base} steps={k} seed={s}")
    record(7, "dimension 2 round trip", bad,
           f"100 instances (<= 12 steps), bases {dict(bases)}", start)


def test_08_dim3_round_trip():
    start = time.perf_counter()
    rng = random.Random(808)
    bad = []
    steps = 0
    for _ in range(50):
        k, s = rng.randint(1, 8), rng.randrange(1 << 30)
        t, _ = random_iterated(TRIVIAL, k, s, d=4)
        cert = decompose_dim3(t)
        steps += len(cert.steps)
        if not verify_certificate(cert, t):
            bad.append(f"steps={k} seed={s}")
    record(8, "dimension 3 round trip", bad,
           f"50 instances (<= 8 steps), {steps} certificate steps", start)


def test_09_internal_edge_graph_structure():
    start = time.perf_counter()
    bad = []
    counted = Counter()
    for label, t, ell, _ in corpus():
        if t.d == 3:
            counted["connectivity"] += 1
            if not is_connected_dim2(t):
                bad.append(f"{label}: disconnected")
        if t.d < 3:
            continue
        if ell[1] == 0:
            counted["edge bound"] += 1
            if not check_component_edge_bound(t):
                bad.append(f"{label}: component edge bound")
        if ell[1] or ell[2]:
            continue
        counted["classification"] += 1
        reports = component_reports(internal_edge_graph(t), t)
        if any(r.classification == OTHER for r in reports):
            bad.append(f"{label}: OTHER component")
        if t.d >= 4:
            counted["trees"] += 1
            if not check_components_are_trees(t):
                bad.append(f"{label}: component not a tree with one low-excess vertex")
    record(9, "structure of the internal edge graph", bad,
           ", ".join(f"{k} {v}" for k, v in sorted(counted.items())), start)


def test_10_segment_triforce_family():
    start = time.perf_counter()
    bad = []
    for n in range(2, 6):
        t = segment_triforce_join(n)
        if count_non_pyramid_facets(t) != n - 1:
            bad.append(f"n={n}: {count_non_pyramid_facets(t)} non-pyramid cells")
        if not local_h(t).is_zero():
            bad.append(f"n={n}: nonzero local h")
    record(10, "segment * triforce family", bad, "n = 2..5", start)


def test_11_pyramid_corollaries():
    start = time.perf_counter()
    bad = []
    counted = Counter()
    for label, t, ell, _ in corpus():
        if not ell.is_zero() or t.d not in (3, 4):
            continue
        n = count_non_pyramid_facets(t)
        counted[t.d] += 1
        if (t.d == 4 and n) or (t.d == 3 and n > 1):
            bad.append(f"{label}: {n} non-pyramid cells")
    record(11, "pyramid corollaries", bad,
           f"{counted[4]} instances with d=4, {counted[3]} with d=3", start)


if __name__ == "__main__":
    import sys

    failed = 0
    for name, fn in sorted(globals().items()):
        if name.startswith("test_"):
            try:
                fn()
            except AssertionError:
                failed += 1
    sys.exit(1 if failed else 0)
