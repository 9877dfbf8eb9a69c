"""Assembling HF+ as a graded Z[U]-module, plus the independent oracles.

Write ``r_n(g)`` for the rank of ``Ker U^(n+1)`` in degree ``g``. A summand
with bottom ``b`` and length ``l`` (the tower has ``l = inf``) adds one to
``r_n(g)`` for ``g = b, b+2, ..., b + 2 min(n, l-1)``, so

    c_n(b) = r_n(b + 2n) - r_(n-1)(b + 2n)

counts summands with bottom ``b`` and length ``> n``, and the summands of
length exactly ``l`` are ``c_(l-1)(b) - c_l(b)``. Once a single summand is
longer than ``N`` (two levels running), it is the tower and the finite part is
complete.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .dcomb import build_classes, ker_u_pow_ranks, _frac
from .errors import HypothesisError, StabilizationError
from .fullpath import count_good, ker_u_generators
from .graph import (EXACT, EVEN_PART_ONLY, OUTSIDE_THEOREMS, IntersectionForm, PlumbingGraph,
                    analyze, blow_down_pair, intersection_form)
from .lattice import SpinCClass, box_chunks, enumerate_spinc, residues_array, squares_array

MAX_AUTO_LEVEL = 6

INTERPRETATION = {
    EXACT: "this is HF+(-Y(G))",
    EVEN_PART_ONLY: "this is HF+_ev(-Y(G)), the even-parity part",
    OUTSIDE_THEOREMS: "Comb+(G) only; no Floer identification claimed",
}


@dataclass(frozen=True, order=True)
class FiniteSummand:
    bottom: Fraction
    u_length: int
    mult: int

    def to_text(self) -> str:
        base = f"Z[{_frac(self.bottom)}]" if self.u_length == 1 else \
            f"(Z[U]/U^{self.u_length})[{_frac(self.bottom)}]"
        return base if self.mult == 1 else f"{base}^{self.mult}"

    def to_json(self) -> dict:
        return {"bottom": _frac(self.bottom), "u_length": self.u_length, "mult": self.mult}


@dataclass(frozen=True)
class GradedModule:
    spinc: SpinCClass
    tower_bottom: Fraction
    finite_summands: tuple[FiniteSummand, ...]
    validity_regime: str
    level: int = 0
    census: tuple = field(default=(), repr=False, compare=False)

    @property
    def hf_red_rank(self) -> int:
        return sum(s.u_length * s.mult for s in self.finite_summands)

    @property
    def hat_rank(self) -> int:
        # each cyclic summand contributes a generator and a relation
        return 1 + 2 * sum(s.mult for s in self.finite_summands)

    def degrees(self) -> list[Fraction]:
        out = [self.tower_bottom]
        for s in self.finite_summands:
            out += [s.bottom + 2 * i for i in range(s.u_length)] * s.mult
        return out

    def single_parity(self) -> bool:
        """Whether every degree lies in one class modulo 2."""
        d0 = self.tower_bottom
        return all(((d - d0) / 2).denominator == 1 for d in self.degrees())

    def signature(self) -> tuple:
        return (self.tower_bottom, self.finite_summands)

    def to_text(self) -> str:
        return " + ".join([f"T+[{_frac(self.tower_bottom)}]"]
                          + [s.to_text() for s in self.finite_summands])


def census_decomposition(ranks: list[dict]) -> tuple[list[FiniteSummand], list[Counter]]:
    """Finite summands of length ``<= N`` and the counts ``c_n`` from ``r_0..r_N``."""
    c = []
    for n, r in enumerate(ranks):
        prev = ranks[n - 1] if n else {}
        cn: Counter = Counter()
        for g in set(r) | set(prev):
            diff = r.get(g, 0) - prev.get(g, 0)
            if diff < 0:
                raise AssertionError(f"Ker U^{n + 1} census shrinks in degree {g}")
            if diff:
                cn[Fraction(g) - 2 * n] += diff
        c.append(cn)
    finite = []
    for length in range(1, len(ranks)):
        for b in sorted(c[length - 1]):
            exact = c[length - 1][b] - c[length].get(b, 0)
            if exact < 0:
                raise AssertionError(f"inconsistent census at bottom {b}, length {length}")
            if exact:
                finite.append(FiniteSummand(b, length, exact))
    return sorted(finite), c


def _stable(c: list[Counter]) -> bool:
    return len(c) >= 2 and sum(c[-1].values()) == 1 and sum(c[-2].values()) == 1


def assemble(form: IntersectionForm, spinc: SpinCClass, max_level: int | None = None,
             margin: int = 1, state_cap: int | None = None, max_auto_level: int = MAX_AUTO_LEVEL,
             check_d: bool = True, engine: str = "auto") -> GradedModule:
    """``Comb+(G, t)`` as a tower plus finite cyclic summands.

    Without ``max_level`` the level budget grows from 1 until one summand
    outlives two consecutive levels. With it, that budget alone is tried.
    """
    form.require_negative_definite()
    regime = analyze(form.graph).validity_regime
    if form.n == 0:
        return GradedModule(spinc, Fraction(0), (), regime)
    budgets = [max_level] if max_level is not None else range(1, max_auto_level + 1)
    for n_top in budgets:
        table = build_classes(form, spinc, n_top, margin, state_cap, engine)
        ranks = [ker_u_pow_ranks(table, n) for n in range(n_top + 1)]
        finite, c = census_decomposition(ranks)
        if _stable(c):
            break
    else:
        raise StabilizationError(
            f"Ker U^(n+1) censuses did not stabilize by level {n_top}; "
            f"raise --max-level or the state cap")
    (bottom,) = c[-1]
    module = GradedModule(spinc, bottom, tuple(finite), regime, n_top, tuple(ranks))
    if check_d and len(analyze(form.graph).bad_vertices) <= 2:
        d_y, _ = d_invariant(form, spinc)
        if -d_y != bottom:
            raise AssertionError(f"tower bottom {bottom} disagrees with d = {d_y}")
    return module


def d_invariant(form: IntersectionForm, spinc: SpinCClass,
                exhaustive: bool = False) -> tuple[Fraction, Fraction]:
    """``(d(Y, t), d(-Y, t))`` from the maximal ``(K^2 + |G|)/4`` in the class.

    The default searches the good initial-box vectors. ``exhaustive`` scans
    the whole box ``|<K,v>| <= -m(v)`` instead.
    """
    form.require_negative_definite()
    nbad = len(analyze(form.graph).bad_vertices)
    if nbad > 2:
        raise HypothesisError(
            f"the max-square formula for d needs at most two bad vertices; this graph has {nbad}")
    if form.n == 0:
        return Fraction(0), Fraction(0)
    if not exhaustive:
        gens = ker_u_generators(form, spinc)
        d_y = -min(g for _, g in gens)
        return d_y, -d_y
    target = np.asarray(spinc.residue, dtype=np.int64)
    best = None
    for chunk in box_chunks(form, 0):
        chunk = chunk[(residues_array(form, chunk) == target).all(axis=1)]
        if not len(chunk):
            continue
        num, den = squares_array(form, chunk)
        # num/den is K^2; den < 0 flips the order
        cand = Fraction(int(num.max() if den > 0 else num.min()), den)
        best = cand if best is None else max(best, cand)
    d_y = (best + form.n) / 4
    return d_y, -d_y


# --------------------------------------------------------------------------
# oracles

def _require_strict(g: PlumbingGraph) -> None:
    for v in range(g.n):
        if g.weights[v] >= -g.degree(v):
            raise HypothesisError(
                f"short-vector counting needs m(v) < -d(v) at every vertex; "
                f"vertex {v} has m = {g.weights[v]}, d = {g.degree(v)}")


@lru_cache(maxsize=4096)
def _short_recurrence(g: PlumbingGraph) -> int:
    if g.n == 0:
        return 1
    for v in range(g.n):
        if g.degree(v) == 0:
            return -g.weights[v] * _short_recurrence(g.remove(v))
        if g.degree(v) == 1:
            (w,) = g.neighbors(v)
            return (-g.weights[v] * _short_recurrence(g.remove(v))
                    - _short_recurrence(g.remove(v, w)))
    raise AssertionError("a nonempty forest has a vertex of degree at most one")


def short_vector_count(g: PlumbingGraph) -> tuple[int, int]:
    """``(direct, recurrence)`` counts of short vectors; both equal ``|det Q|``."""
    _require_strict(g)
    direct = count_good(intersection_form(g)) if g.n else 1
    return direct, _short_recurrence(g)


@dataclass
class BlowdownReport:
    vertex: int
    passed: bool
    left: list[GradedModule]
    right: list[GradedModule]
    diffs: list[str]


def all_modules(form: IntersectionForm, **kw) -> list[GradedModule]:
    return [assemble(form, t, **kw) for t in enumerate_spinc(form)]


def verify_blowdown(g: PlumbingGraph, v: int, **kw) -> BlowdownReport:
    """Compare ``Comb+`` of ``G'(v)`` and ``G+1(v)`` class by class."""
    gprime, gplus = blow_down_pair(g, v)
    fplus = intersection_form(gplus)
    if not fplus.is_negative_definite:
        raise HypothesisError(f"G+1({v}) is not negative definite")
    kw.setdefault("check_d", False)
    left = all_modules(intersection_form(gprime), **kw)
    right = all_modules(fplus, **kw)
    a = Counter(m.signature() for m in left)
    b = Counter(m.signature() for m in right)
    diffs = [f"G'({v}) only: {sig}" for sig in sorted(a - b)] + \
            [f"G+1({v}) only: {sig}" for sig in sorted(b - a)]
    return BlowdownReport(v, not diffs, left, right, diffs)


# --------------------------------------------------------------------------
# summary

@dataclass
class HFSummary:
    graph_hash: str
    regime: str
    h1_order: int
    bad_vertices: tuple[int, ...]
    modules: list[GradedModule]
    d_values: list[Fraction | None]

    @property
    def hf_red_total_rank(self) -> int:
        return sum(m.hf_red_rank for m in self.modules)

    @property
    def hat_rank(self) -> int:
        return sum(m.hat_rank for m in self.modules)

    @property
    def interpretation(self) -> str:
        return INTERPRETATION[self.regime]

    def to_json(self) -> dict:
        return {
            "graph_hash": self.graph_hash,
            "regime": self.regime,
            "spinc": [{
                "index": m.spinc.index,
                "residue": list(m.spinc.residue),
                "d_Y": None if d is None else _frac(d),
                "tower_bottom": _frac(m.tower_bottom),
                "finite": [s.to_json() for s in m.finite_summands],
            } for m, d in zip(self.modules, self.d_values)],
            "hf_red_total_rank": self.hf_red_total_rank,
        }

    def to_text(self) -> str:
        lines = []
        if self.regime == OUTSIDE_THEOREMS:
            lines.append(f"WARNING: {len(self.bad_vertices)} bad vertices; "
                         f"Comb+(G) only, no Floer identification claimed")
        lines += [f"Spin^c #{m.spinc.index}: {m.to_text()}" for m in self.modules]
        return "\n".join(lines)


def hf_summary(form: IntersectionForm, spinc: list[SpinCClass] | None = None,
               **kw) -> HFSummary:
    form.require_negative_definite()
    report = analyze(form.graph)
    classes = list(enumerate_spinc(form)) if spinc is None else spinc
    modules = [assemble(form, t, **kw) for t in classes]
    d_values = [-m.tower_bottom if report.validity_regime != OUTSIDE_THEOREMS else None
                for m in modules]
    summary = HFSummary(form.graph.graph_hash(), report.validity_regime,
                        abs(form.det), report.bad_vertices, modules, d_values)
    if not report.bad_vertices and spinc is None:
        if summary.hf_red_total_rank:
            raise AssertionError("a graph without bad vertices must have HF_red = 0")
        if summary.hat_rank != summary.h1_order:
            raise AssertionError("rank of HF-hat differs from |H_1|")
    return summary
