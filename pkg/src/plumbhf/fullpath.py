"""Full paths and the fast basis for ``Ker U``.

Starting from ``K`` in the initial box, repeatedly add ``2PD[v]`` at a vertex
with ``<K,v> = -m(v)``. The walk ends either inside the closed box
``m(v) <= <L,v> <= -m(v) - 2`` (good: ``K`` survives in ``Ker U``) or with
some ``<K,v> > -m(v)`` (bad: ``K`` is equivalent to a positive U-level).
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

import numpy as np

from .graph import IntersectionForm
from .lattice import (CharVector, SpinCClass, add_2pd, initial_box_chunks, residues_array,
                      squares_array)


@dataclass(frozen=True)
class PathResult:
    start: CharVector
    steps: tuple[tuple[int, CharVector], ...]
    good: bool
    terminal: CharVector
    witness: int | None = None

    @property
    def vectors(self) -> list[CharVector]:
        return [self.start] + [k for _, k in self.steps]


def _candidates(form: IntersectionForm, k: Sequence[int]) -> list[int]:
    return [v for v, w in enumerate(form.weights) if k[v] == -w]


def _violation(form: IntersectionForm, k: Sequence[int]) -> int | None:
    for v, w in enumerate(form.weights):
        if k[v] > -w:
            return v
    return None


def path_step(form: IntersectionForm, k: Sequence[int],
              rng: random.Random | None = None) -> tuple[int, CharVector] | None:
    """One step of the walk, or ``None`` when no vertex has ``<K,v> = -m(v)``.

    The lowest eligible vertex is used unless ``rng`` is given, in which case
    an eligible vertex is drawn from it.
    """
    cands = _candidates(form, k)
    if not cands:
        return None
    v = cands[0] if rng is None else rng.choice(cands)
    return v, add_2pd(form, k, v)


def run_full_path(form: IntersectionForm, k0: Sequence[int],
                  rng: random.Random | None = None, record: bool = True) -> PathResult:
    k = tuple(k0)
    steps = []
    bad = _violation(form, k)
    while bad is None:
        nxt = path_step(form, k, rng)
        if nxt is None:
            break
        v, k = nxt
        if record:
            steps.append((v, k))
        bad = _violation(form, k)
    return PathResult(tuple(k0), tuple(steps), bad is None, k, bad)


def full_paths(form: IntersectionForm, batch: np.ndarray,
               rng: np.random.Generator | None = None) -> tuple[np.ndarray, np.ndarray]:
    """Vectorized full paths over the rows of ``batch``.

    Returns the good/bad mask and the final vectors. The lowest eligible
    vertex is used unless ``rng`` is given, in which case each row draws its
    own eligible vertex at every step.
    """
    w = np.asarray(form.weights, dtype=np.int64)
    q2 = 2 * np.asarray(form.Q, dtype=np.int64).reshape(form.n, form.n)
    k = np.array(batch, dtype=np.int64, copy=True).reshape(-1, form.n)
    result = np.zeros(len(k), dtype=bool)
    active = np.arange(len(k))
    while active.size:
        cur = k[active]
        bad = (cur > -w).any(axis=1)
        hit = cur == -w
        has = hit.any(axis=1)
        result[active[~bad & ~has]] = True
        step = ~bad & has
        active = active[step]
        if not active.size:
            break
        hit = hit[step]
        if rng is None:
            v = hit.argmax(axis=1)
        else:
            v = (hit * (1 + rng.random(hit.shape))).argmax(axis=1)
        k[active] += q2[v]
    return result, k


def good_mask(form: IntersectionForm, batch: np.ndarray) -> np.ndarray:
    """Vectorized deterministic full paths: True where the path ends good."""
    return full_paths(form, batch)[0]


def ker_u_generators(form: IntersectionForm,
                     spinc: SpinCClass | None = None) -> list[tuple[CharVector, Fraction]]:
    """Initial-box vectors whose full path ends good, with their grades.

    These are the duals of a basis for ``Ker U`` in ``Comb+(G, t)``; the
    grade of ``K`` is ``-(K^2 + |G|)/4``. Output is in lexicographic order.
    """
    form.require_negative_definite()
    if spinc is not None:
        return list(_generators_by_class(form).get(spinc.residue, ()))
    return [gen for chunk in initial_box_chunks(form) for gen, _ in _graded_good(form, chunk)]


def _graded_good(form: IntersectionForm, chunk: np.ndarray):
    """``((K, grade), residue)`` for the good rows of ``chunk``."""
    good = chunk[good_mask(form, chunk)]
    if not len(good):
        return
    if not form.n:
        yield ((), Fraction(0)), ()
        return
    num, den = squares_array(form, good)
    res = residues_array(form, good).tolist()
    for row, r, x in zip(good.tolist(), res, num):
        # grade = -(K^2 + |G|)/4 with K^2 = x/den
        yield (tuple(row), -Fraction(int(x) + form.n * den, 4 * den)), tuple(r)


@lru_cache(maxsize=8)
def _generators_by_class(form: IntersectionForm) -> dict:
    # one pass over the box serves every Spin^c class
    out: dict = {}
    for chunk in initial_box_chunks(form):
        for gen, r in _graded_good(form, chunk):
            out.setdefault(r, []).append(gen)
    return {r: tuple(v) for r, v in out.items()}


def count_good(form: IntersectionForm) -> int:
    """Number of good initial-box vectors over all Spin^c classes."""
    form.require_negative_definite()
    return sum(int(good_mask(form, c).sum()) for c in initial_box_chunks(form))
