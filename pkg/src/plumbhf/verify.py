"""Self-checks run by ``plumb verify`` and the test-suite."""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

import numpy as np

from .dcomb import build_classes, ker_u_pow_ranks
from .errors import HypothesisError
from .fullpath import full_paths, ker_u_generators
from .graph import EXACT, OUTSIDE_THEOREMS, PlumbingGraph, analyze, intersection_form
from .lattice import enumerate_spinc, initial_box_chunks
from .module import GradedModule, all_modules, d_invariant, short_vector_count, verify_blowdown

PASS, FAIL, SKIP = "pass", "fail", "skip"


@dataclass(frozen=True)
class Check:
    name: str
    status: str
    detail: str = ""


def check_policy_independence(g: PlumbingGraph, runs: int = 100, seed: int = 0) -> Check:
    """Random vertex choices give the same good set and the same endpoints."""
    form = intersection_form(g)
    form.require_negative_definite()
    total = 0
    for chunk in initial_box_chunks(form):
        good, term = full_paths(form, chunk)
        for i in range(runs):
            rng = np.random.default_rng([seed, i])
            g2, t2 = full_paths(form, chunk, rng)
            if not (g2 == good).all():
                return Check("policy independence", FAIL, f"good/bad differs for run {i}")
            if not (t2[good] == term[good]).all():
                return Check("policy independence", FAIL, f"endpoint differs for run {i}")
        total += len(chunk)
    return Check("policy independence", PASS, f"{total} starts x {runs} random runs")


def check_short_vectors(g: PlumbingGraph) -> Check:
    try:
        direct, rec = short_vector_count(g)
    except HypothesisError as exc:
        return Check("short-vector count", SKIP, str(exc))
    h1 = abs(intersection_form(g).det)
    ok = direct == rec == h1
    return Check("short-vector count", PASS if ok else FAIL,
                 f"direct {direct}, recurrence {rec}, |det Q| {h1}")


def check_blowdowns(g: PlumbingGraph, **kw) -> Check:
    """Both ways at every vertex: ``G`` blown up at ``v``, and ``G`` as the blow-down."""
    done, skipped, failed = 0, 0, []
    for v in range(g.n):
        for base, label in ((g, "G"), (g.reweight(v, -1), "G-1")):
            try:
                rep = verify_blowdown(base, v, **kw)
            except HypothesisError:
                skipped += 1
                continue
            done += 1
            if not rep.passed:
                failed.append(f"{label} at {v}: {'; '.join(rep.diffs)}")
    if failed:
        return Check("blow-down invariance", FAIL, " | ".join(failed))
    return Check("blow-down invariance", PASS,
                 f"{done} comparisons, {skipped} skipped (G+1 not negative definite)")


def check_margin_stability(g: PlumbingGraph, modules: list[GradedModule],
                           margins: tuple[int, int] = (1, 2), state_cap: int | None = None) -> Check:
    form = intersection_form(g)
    for mod in modules:
        tabs = [build_classes(form, mod.spinc, mod.level, m, state_cap) for m in margins]
        for n in range(mod.level + 1):
            a, b = (ker_u_pow_ranks(t, n) for t in tabs)
            if a != b:
                return Check("margin stability", FAIL,
                             f"Spin^c #{mod.spinc.index}, n = {n}: {a} vs {b}")
    return Check("margin stability", PASS, f"margins {margins[0]} and {margins[1]} agree")


def check_parity(g: PlumbingGraph, modules: list[GradedModule]) -> Check:
    if analyze(g).validity_regime != EXACT:
        return Check("degree parity", SKIP, "only asserted in the exact regime")
    bad = [m.spinc.index for m in modules if not m.single_parity()]
    if bad:
        return Check("degree parity", FAIL, f"mixed parity in Spin^c {bad}")
    return Check("degree parity", PASS, "one mod-2 class per Spin^c structure")


def check_d_invariants(g: PlumbingGraph, modules: list[GradedModule]) -> Check:
    form = intersection_form(g)
    if analyze(g).validity_regime == OUTSIDE_THEOREMS:
        return Check("d-invariant", SKIP, "more than two bad vertices")
    for mod in modules:
        fast, _ = d_invariant(form, mod.spinc)
        full, _ = d_invariant(form, mod.spinc, exhaustive=True)
        if not fast == full == -mod.tower_bottom:
            return Check("d-invariant", FAIL,
                         f"Spin^c #{mod.spinc.index}: good {fast}, box {full}, "
                         f"tower {mod.tower_bottom}")
    return Check("d-invariant", PASS, "good-vector max = box max = -tower bottom")


def check_level0_census(g: PlumbingGraph) -> Check:
    """Level-0 classes seeded from the whole box against the good-path census."""
    form = intersection_form(g)
    for t in enumerate_spinc(form):
        table = build_classes(form, t, 0, seeding="box")
        a = ker_u_pow_ranks(table, 0)
        b = dict(sorted(Counter(gr for _, gr in ker_u_generators(form, t)).items()))
        if a != b:
            return Check("Ker U census", FAIL, f"Spin^c #{t.index}: classes {a}, paths {b}")
    return Check("Ker U census", PASS, "class census equals full-path census")


def run_verify(g: PlumbingGraph, seed: int = 0, runs: int = 100,
               state_cap: int | None = None) -> list[Check]:
    form = intersection_form(g)
    form.require_negative_definite()
    modules = all_modules(form, state_cap=state_cap, check_d=False)
    return [
        check_policy_independence(g, runs, seed),
        check_short_vectors(g),
        check_level0_census(g),
        check_blowdowns(g, state_cap=state_cap),
        check_margin_stability(g, modules, state_cap=state_cap),
        check_parity(g, modules),
        check_d_invariants(g, modules),
    ]
