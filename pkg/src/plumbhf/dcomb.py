"""The dual model: leveled vectors ``U^m (x) K`` up to the adjunction relation.

For a vertex ``v`` and sign ``e``, ``U^m (x) K`` is equivalent to
``U^(m + (e<K,v> + m(v))/2) (x) (K + 2e PD[v])`` whenever that level is
nonnegative. Every move preserves the degree ``2m - (K^2 + |G|)/4``, so a
class lives on finitely many ellipsoid shells and is a finite set.

A class whose levels never exceed ``n`` is dual to a ``Ker U^(n+1)`` basis
element. Each class has a top-level representative with ``K`` in the initial
box, which gives a finite seed set for the classes of kill level ``<= N``.
Exploration is capped at level ``N + margin``; a class reaching past the cap
is recorded with ``kill_level=None`` (unbounded relative to the budget).
"""
from __future__ import annotations

import os
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import isqrt
from typing import Sequence

import numpy as np

from .errors import BudgetExceeded, UnsoundRequest
from .fullpath import ker_u_generators
from .graph import IntersectionForm
from .lattice import (CharVector, SpinCClass, grade, initial_box_chunks, residues_array,
                      spinc_residue)

DEFAULT_STATE_CAP = 10_000_000

State = tuple  # (level, k-tuple)


def default_state_cap() -> int:
    env = os.environ.get("PLUMB_STATE_CAP")
    return int(env) if env else DEFAULT_STATE_CAP


@dataclass(frozen=True)
class LeveledVector:
    m: int
    k: CharVector

    def __post_init__(self):
        if self.m < 0:
            raise ValueError("U-level must be nonnegative")


def _moves(form: IntersectionForm):
    w = form.weights
    adj = form.graph.adjacency
    return [(v, w[v], adj[v]) for v in range(form.n)]


def relation_neighbors(form: IntersectionForm, m: int, k: Sequence[int]) -> list[State]:
    """All leveled vectors one relation step away from ``U^m (x) K``."""
    out = []
    for v, w, nbrs in _moves(form):
        kv = k[v]
        for e in (1, -1):
            m2 = m + (e * kv + w) // 2
            if m2 < 0:
                continue
            new = list(k)
            new[v] += 2 * e * w
            for u in nbrs:
                new[u] += 2 * e
            out.append((m2, tuple(new)))
    return out


@dataclass
class ClassRecord:
    """One equivalence class, or one seed whose class escaped the level cap.

    Closed classes carry their full member set and exact ``kill_level``.
    Unbounded records (``kill_level is None``) are kept per seed and two of
    them may describe the same class.
    """

    id: int
    degree: Fraction
    kill_level: int | None
    representative: State
    size: int
    members: "MemberSet | None" = field(default=None, repr=False, compare=False)

    @property
    def bounded(self) -> bool:
        return self.kill_level is not None

    def to_json(self) -> dict:
        m, k = self.representative
        return {
            "degree": _frac(self.degree),
            "kill_level": self.kill_level if self.bounded else "unbounded",
            "representative": {"level": m, "k": list(k)},
        }


def _frac(x: Fraction) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


# --------------------------------------------------------------------------
# exploration of a single class

class ShellEncoder:
    """Packs the states of one degree into int64 keys.

    By Cauchy-Schwarz for the negative-definite form, a state of degree
    ``d`` has ``<K,v>^2 <= (4d + |G|) |m(v)|``, so each coordinate has a
    known range and a mixed-radix code is injective.
    """

    def __init__(self, form: IntersectionForm, degree: Fraction, cap: int,
                 floor: Sequence[int] = ()):
        s = 4 * Fraction(degree) + form.n
        bounds = []
        for i, w in enumerate(form.weights):
            b = isqrt(max(0, (s * abs(w)).__floor__()))
            if (b - w) % 2:
                b -= 1
            if floor:
                b = max(b, abs(floor[i]))
            bounds.append(b)
        self.bounds = np.asarray(bounds, dtype=np.int64)
        radix = [cap + 1] + [b + 1 for b in bounds]
        total = 1
        for r in radix:
            total *= r
        self.fits = total < (1 << 62)
        strides = []
        acc = 1
        for r in radix:
            strides.append(acc if self.fits else 0)
            acc *= r
        self.strides = np.asarray(strides, dtype=np.int64)
        self.offset = np.concatenate([[0], self.bounds])

    def encode(self, rows: np.ndarray) -> np.ndarray:
        digits = rows.copy()
        digits[:, 1:] = (rows[:, 1:] + self.bounds) // 2
        return digits @ self.strides

    def encode_state(self, state: State) -> int:
        m, k = state
        return int(self.encode(np.asarray([(m,) + tuple(k)], dtype=np.int64))[0])

    def in_range(self, rows: np.ndarray) -> bool:
        return bool((np.abs(rows[:, 1:]) <= self.bounds).all())


class MemberSet:
    """Membership test for a closed class: sorted keys or a plain set."""

    def __init__(self, keys: np.ndarray | None = None, encoder: ShellEncoder | None = None,
                 states: set | None = None):
        self.keys, self.encoder, self.states = keys, encoder, states

    def __len__(self) -> int:
        return len(self.states) if self.states is not None else int(self.keys.size)

    def __contains__(self, state: State) -> bool:
        if self.states is not None:
            return state in self.states
        m, k = state
        if not self.encoder.in_range(np.asarray([(m,) + tuple(k)], dtype=np.int64)):
            return False
        key = self.encoder.encode_state(state)
        pos = int(np.searchsorted(self.keys, key))
        return pos < self.keys.size and int(self.keys[pos]) == key


@dataclass
class Exploration:
    closed: bool
    top: State
    size: int
    members: MemberSet | None


_HANDOFF = 4096
_CHUNK = 8192


def _move_arrays(form: IntersectionForm):
    n = form.n
    v = np.repeat(np.arange(n), 2)
    e = np.tile(np.array([1, -1], dtype=np.int64), n)
    q = np.asarray(form.Q, dtype=np.int64).reshape(n, n)
    w = np.asarray(form.weights, dtype=np.int64)
    return v, e, w[v], 2 * e[:, None] * q[v]


def explore_class(form: IntersectionForm, seed: State, cap: int,
                  state_cap: int | None = None, engine: str = "auto") -> Exploration:
    """Close ``seed`` under the relation, or stop once a level exceeds ``cap``.

    ``engine="python"`` runs a plain set-based breadth-first search;
    ``"auto"`` starts the same way and hands large classes to a vectorized
    frontier search over packed int64 keys.
    """
    state_cap = default_state_cap() if state_cap is None else state_cap
    moves = _moves(form)
    visited = {seed}
    prev: list = []
    frontier = [seed]
    top = seed
    while frontier:
        if engine == "auto" and len(visited) > _HANDOFF:
            enc = ShellEncoder(form, grade(form, seed[1], seed[0]), cap, seed[1])
            if enc.fits:
                return _explore_numpy(form, enc, visited, prev, frontier, top, cap, state_cap)
        nxt = []
        for m, k in frontier:
            for v, w, nbrs in moves:
                kv = k[v]
                for e in (1, -1):
                    m2 = m + (e * kv + w) // 2
                    if m2 < 0:
                        continue
                    if m2 > cap:
                        return Exploration(False, top, len(visited), MemberSet(states=visited))
                    new = list(k)
                    new[v] += 2 * e * w
                    for u in nbrs:
                        new[u] += 2 * e
                    state = (m2, tuple(new))
                    if state in visited:
                        continue
                    visited.add(state)
                    nxt.append(state)
                    if m2 > top[0]:
                        top = state
        if len(visited) > state_cap:
            raise BudgetExceeded(f"state cap {state_cap} exceeded; raise --state-cap "
                                 f"or PLUMB_STATE_CAP")
        prev, frontier = frontier, nxt
    return Exploration(True, top, len(visited), MemberSet(states=visited))


def _sorted_member(sorted_keys: np.ndarray, x: np.ndarray) -> np.ndarray:
    if not sorted_keys.size:
        return np.zeros(x.shape, dtype=bool)
    pos = np.minimum(np.searchsorted(sorted_keys, x), sorted_keys.size - 1)
    return sorted_keys[pos] == x


def _explore_numpy(form, enc: ShellEncoder, visited: set, prev: list, frontier: list,
                   top: State, cap: int, state_cap: int) -> Exploration:
    # The relation is symmetric, so breadth-first layers only touch their
    # neighbours: new states are deduplicated against two layers, not all.
    def rows_of(states):
        return np.asarray([(m,) + k for m, k in states], dtype=np.int64).reshape(-1, form.n + 1)

    def finish(closed):
        keys = np.concatenate(layers)
        keys.sort()
        if keys.size > 1 and (keys[1:] == keys[:-1]).any():
            raise AssertionError("breadth-first layers overlap")
        return Exploration(closed, top, int(keys.size), MemberSet(keys=keys, encoder=enc))

    mv, me, mw, dk = _move_arrays(form)
    s0 = enc.strides[0]
    dkey = (dk // 2) @ enc.strides[1:]
    layers = [enc.encode(rows_of(visited))]
    total = len(visited)
    prev_keys = np.sort(enc.encode(rows_of(prev)))
    cur = rows_of(frontier)
    cur_keys = enc.encode(cur)
    order = np.argsort(cur_keys)
    cur, cur_keys = cur[order], cur_keys[order]
    while cur.size:
        cand, src, mov = [], [], []
        for lo in range(0, len(cur), _CHUNK):
            f = cur[lo:lo + _CHUNK]
            gain = (f[:, 1:][:, mv] * me + mw) // 2
            if (f[:, :1] + gain > cap).any():
                return finish(False)
            r, c = np.nonzero(f[:, :1] + gain >= 0)
            cand.append(cur_keys[lo + r] + gain[r, c] * s0 + dkey[c])
            src.append(lo + r)
            mov.append(c)
        cand = np.concatenate(cand)
        src = np.concatenate(src)
        mov = np.concatenate(mov)
        uniq, idx = np.unique(cand, return_index=True)
        fresh = ~(_sorted_member(prev_keys, uniq) | _sorted_member(cur_keys, uniq))
        uniq, idx = uniq[fresh], idx[fresh]
        s, c = src[idx], mov[idx]
        new = cur[s] + np.concatenate([((cur[s, 1 + mv[c]] * me[c] + mw[c]) // 2)[:, None],
                                       dk[c]], axis=1)
        if not enc.in_range(new) or not np.array_equal(enc.encode(new), uniq):
            raise AssertionError("state outside its degree shell; form is not definite?")
        layers.append(uniq)
        total += uniq.size
        if total > state_cap:
            raise BudgetExceeded(f"state cap {state_cap} exceeded; raise --state-cap "
                                 f"or PLUMB_STATE_CAP")
        if new.size:
            best = int(new[:, 0].argmax())
            if new[best, 0] > top[0]:
                top = (int(new[best, 0]), tuple(int(x) for x in new[best, 1:]))
        prev_keys, cur, cur_keys = cur_keys, new, uniq
    return finish(True)


def climbs_above(form: IntersectionForm, seed: State, cap: int, max_steps: int = 10_000) -> bool:
    """Greedy walk inside the class looking for a level above ``cap``.

    Takes the move with the largest level gain; when nothing gains, takes a
    level-preserving forward move as in a full path. ``True`` proves the
    class escapes the cap; ``False`` proves nothing.
    """
    moves = _moves(form)
    m, k = seed[0], list(seed[1])
    for _ in range(max_steps):
        best, bv, be = 0, -1, 0
        for v, w, _ in moves:
            kv = k[v]
            gain = (abs(kv) + w) // 2
            if gain > best:
                best, bv, be = gain, v, (1 if kv > 0 else -1)
            elif bv < 0 and kv == -w:
                bv, be = v, 1
        if bv < 0:
            return False
        m += best
        if m > cap:
            return True
        v, w, nbrs = moves[bv]
        k[v] += 2 * be * w
        for u in nbrs:
            k[u] += 2 * be
    return False


# --------------------------------------------------------------------------
# class tables

class ClassTable:
    """Equivalence classes of leveled vectors in one Spin^c class.

    :meth:`classify` explores lazily. Closed classes are indexed by degree so
    a new seed is first tested for membership in the closed classes of its
    own degree.
    """

    def __init__(self, form: IntersectionForm, spinc: SpinCClass, max_level: int,
                 margin: int = 1, state_cap: int | None = None, engine: str = "auto"):
        if max_level < 0 or margin < 0:
            raise ValueError("max_level and margin must be nonnegative")
        self.form = form
        self.spinc = spinc
        self.max_level = max_level
        self.margin = margin
        self.cap = max_level + margin
        self.state_cap = default_state_cap() if state_cap is None else state_cap
        self.engine = engine
        self._records: list[ClassRecord] = []
        self._closed: dict[Fraction, list[ClassRecord]] = {}
        self._known: dict[State, int] = {}
        # partial explorations that escaped the cap, by degree; U^j times any
        # of their states escapes as well
        self._escaped: dict[Fraction, list[MemberSet]] = {}
        self.states_explored = 0

    def record(self, cid: int) -> ClassRecord:
        return self._records[cid]

    def lookup(self, m: int, k: Sequence[int]) -> int | None:
        """Class id of an already classified state, without exploring."""
        return self._lookup((m, tuple(k)), None)

    def _lookup(self, state: State, degree: Fraction | None) -> int | None:
        if state in self._known:
            return self._known[state]
        if degree is None:
            degree = grade(self.form, state[1], state[0])
        for rec in self._closed.get(degree, ()):
            if state in rec.members:
                return rec.id
        return None

    def classify(self, m: int, k: Sequence[int]) -> int:
        """Class id of ``U^m (x) K``, exploring its class if needed."""
        seed = (m, tuple(k))
        if seed in self._known:
            return self._known[seed]
        degree = grade(self.form, seed[1], m)
        found = self._lookup(seed, degree)
        if found is not None:
            self._known[seed] = found
            return found
        if m > self.cap:
            raise UnsoundRequest(f"level {m} lies outside the explored region (cap {self.cap})")
        cid = len(self._records)
        if self._escapes(seed, degree) or climbs_above(self.form, seed, self.cap):
            rec = ClassRecord(cid, degree, None, seed, 1)
        else:
            budget = self.state_cap - self.states_explored
            try:
                ex = explore_class(self.form, seed, self.cap, budget, self.engine)
            except BudgetExceeded:
                # report the cap the caller set, not what was left of it
                raise BudgetExceeded(f"state cap {self.state_cap} exceeded; raise --state-cap "
                                     f"or PLUMB_STATE_CAP") from None
            self.states_explored += ex.size
            if ex.closed:
                top_deg = grade(self.form, ex.top[1], ex.top[0])
                if top_deg != degree:
                    raise AssertionError(f"degree not constant on class: {degree} vs {top_deg}")
                if spinc_residue(self.form, ex.top[1]) != self.spinc.residue:
                    raise AssertionError("class left its Spin^c structure")
                rec = ClassRecord(cid, degree, ex.top[0], ex.top, ex.size, ex.members)
                self._closed.setdefault(degree, []).append(rec)
            else:
                rec = ClassRecord(cid, degree, None, seed, ex.size)
                self._escaped.setdefault(degree, []).append(ex.members)
        self._records.append(rec)
        self._known[seed] = cid
        return cid

    def _escapes(self, seed: State, degree: Fraction) -> bool:
        m, k = seed
        for j in range(m + 1):
            for members in self._escaped.get(degree - 2 * j, ()):
                if (m - j, k) in members:
                    return True
        return False

    def classes(self) -> list[ClassRecord]:
        return list(self._records)

    def bounded_classes(self) -> list[ClassRecord]:
        return [r for r in self._records if r.bounded]


def seeds(form: IntersectionForm, spinc: SpinCClass, kind: str = "good") -> list[CharVector]:
    """Top-level seed vectors for the classes of ``spinc``, lexicographic.

    ``"box"`` gives the whole initial box. ``"good"`` keeps the vectors whose
    full path ends good: at the top level of a class no move gains, so the
    level-preserving moves of a full path cannot leave ``|<K,v>| <= -m(v)``.
    """
    if kind == "good":
        return [k for k, _ in ker_u_generators(form, spinc)]
    if kind != "box":
        raise ValueError(f"unknown seeding {kind!r}")
    return list(_box_by_class(form).get(spinc.residue, ()))


@lru_cache(maxsize=4)
def _box_by_class(form: IntersectionForm) -> dict:
    out: dict = {}
    for chunk in initial_box_chunks(form):
        res = residues_array(form, chunk).tolist() if form.n else [()] * len(chunk)
        for row, r in zip(chunk.tolist(), res):
            out.setdefault(tuple(r), []).append(tuple(row))
    return out


def build_classes(form: IntersectionForm, spinc: SpinCClass, max_level: int,
                  margin: int = 1, state_cap: int | None = None,
                  engine: str = "auto", seeding: str = "good") -> ClassTable:
    """Explore every class of kill level ``<= max_level`` in ``spinc``.

    Seeds are ``U^j (x) K`` for ``j <= max_level`` and ``K`` from
    :func:`seeds`; every class whose levels stay ``<= max_level`` contains
    such a seed at its top level.
    """
    form.require_negative_definite()
    table = ClassTable(form, spinc, max_level, margin, state_cap, engine)
    box = seeds(form, spinc, seeding)
    for j in range(max_level + 1):
        for k in box:
            table.classify(j, k)
    return table


def ker_u_pow_ranks(table: ClassTable, n: int) -> dict[Fraction, int]:
    """Rank of ``Ker U^(n+1)`` in each degree: classes with kill level ``<= n``."""
    if n > table.max_level or n < 0:
        raise UnsoundRequest(
            f"Ker U^{n + 1} requested but the table is only sound up to n = {table.max_level}")
    out: Counter = Counter()
    for rec in table.bounded_classes():
        if rec.kill_level <= n:
            out[rec.degree] += 1
    return dict(sorted(out.items()))


def u_shift(table: ClassTable, cid: int) -> int:
    """Class of ``U^(m+1) (x) K`` for a representative ``U^m (x) K`` of ``cid``."""
    m, k = table.record(cid).representative
    if m + 1 > table.cap:
        raise UnsoundRequest("U-shift image lies outside the explored region")
    return table.classify(m + 1, k)


def margin_stable(form: IntersectionForm, spinc: SpinCClass, max_level: int,
                  margins: tuple[int, int] = (1, 2), state_cap: int | None = None) -> bool:
    """Whether ``Ker U^(n+1)`` censuses agree at two margins for all ``n <= max_level``."""
    a = build_classes(form, spinc, max_level, margins[0], state_cap)
    b = build_classes(form, spinc, max_level, margins[1], state_cap)
    return all(ker_u_pow_ranks(a, n) == ker_u_pow_ranks(b, n) for n in range(max_level + 1))
