"""Characteristic vectors, their squares, and Spin^c classes.

A characteristic vector ``K`` is stored by its evaluations ``k[i] = <K, v_i>``
on the vertex spheres, as a plain tuple of ints. ``K + 2PD[v]`` is then
``k + 2 * Q[v]`` and ``K^2 = k^T Q^{-1} k``.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterator, Sequence

import numpy as np

from .errors import GraphInputError
from .graph import IntersectionForm
from .linalg import hermite_rows, reduce_mod_hermite

CharVector = tuple  # tuple[int, ...]


def is_characteristic(form: IntersectionForm, k: Sequence[int]) -> bool:
    return len(k) == form.n and all((x - w) % 2 == 0 for x, w in zip(k, form.weights))


def check_characteristic(form: IntersectionForm, k: Sequence[int]) -> CharVector:
    k = tuple(int(x) for x in k)
    if not is_characteristic(form, k):
        raise GraphInputError(
            f"{k} is not characteristic: need {form.n} entries with "
            f"<K,v> = m(v) mod 2")
    return k


def add_2pd(form: IntersectionForm, k: Sequence[int], v: int, sign: int = 1) -> CharVector:
    """``K + sign * 2PD[v]``."""
    col = form.Q[v]
    return tuple(x + 2 * sign * c for x, c in zip(k, col))


def square(form: IntersectionForm, k: Sequence[int]) -> Fraction:
    """Exact ``K^2`` computed in the dual lattice."""
    form.require_nondegenerate()
    if form.n == 0:
        return Fraction(0)
    return Fraction(_square_numerator(form, k), form.det)


def _square_numerator(form: IntersectionForm, k: Sequence[int]) -> int:
    """``K^2 * det Q`` as an integer: ``k . adj(Q) . k``."""
    return sum(ki * sum(a * kj for a, kj in zip(row, k)) for ki, row in zip(k, form.adj) if ki)


def renormalized_length(form: IntersectionForm, k: Sequence[int]) -> Fraction:
    """``(K^2 + |G|) / 4``."""
    return (square(form, k) + form.n) / 4


def grade(form: IntersectionForm, k: Sequence[int], level: int = 0) -> Fraction:
    """Degree ``2m - (K^2 + |G|)/4`` of the leveled vector ``U^m (x) K``."""
    form.require_nondegenerate()
    det = form.det
    num = _square_numerator(form, k) if form.n else 0
    return Fraction(8 * level * det - num - form.n * det, 4 * det)


# --------------------------------------------------------------------------
# Spin^c classes

@dataclass(frozen=True, order=True)
class SpinCClass:
    index: int
    residue: tuple[int, ...]

    def to_json(self) -> dict:
        return {"index": self.index, "residue": list(self.residue)}


@lru_cache(maxsize=64)
def _hermite(form: IntersectionForm) -> tuple[tuple[int, ...], ...]:
    form.require_nondegenerate()
    rows = [[2 * x for x in row] for row in form.Q]
    return tuple(tuple(r) for r in hermite_rows(rows))


def spinc_residue(form: IntersectionForm, k: Sequence[int]) -> tuple[int, ...]:
    """Canonical representative of ``k`` modulo the lattice ``2Q Z^n``."""
    if form.n == 0:
        return ()
    return reduce_mod_hermite(k, _hermite(form))


def residues_array(form: IntersectionForm, arr: np.ndarray) -> np.ndarray:
    """Vectorized :func:`spinc_residue` over the rows of ``arr``."""
    out = np.array(arr, dtype=np.int64, copy=True)
    for i, row in enumerate(_hermite(form)):
        q = np.floor_divide(out[:, i], row[i])
        out -= q[:, None] * np.asarray(row, dtype=np.int64)[None, :]
    return out


@lru_cache(maxsize=64)
def enumerate_spinc(form: IntersectionForm) -> tuple[SpinCClass, ...]:
    """All Spin^c classes, ordered lexicographically by canonical residue.

    Residues of characteristic vectors are exactly the tuples with
    ``0 <= r_i < H_ii`` and ``r_i = m(v_i) mod 2`` for the triangular Hermite
    basis ``H`` of ``2Q``; the residue is reduced once more to make it
    canonical.
    """
    form.require_nondegenerate()
    if form.n == 0:
        return (SpinCClass(0, ()),)
    h = _hermite(form)
    ranges = [range(w % 2, h[i][i], 2) for i, w in enumerate(form.weights)]
    found = set()
    for r in itertools.product(*ranges):
        found.add(reduce_mod_hermite(r, h))
    return tuple(SpinCClass(i, r) for i, r in enumerate(sorted(found)))


@lru_cache(maxsize=64)
def _spinc_lookup(form: IntersectionForm) -> dict[tuple[int, ...], SpinCClass]:
    return {c.residue: c for c in enumerate_spinc(form)}


def spinc_of(form: IntersectionForm, k: Sequence[int]) -> SpinCClass:
    found = _spinc_lookup(form).get(spinc_residue(form, k))
    if found is None:
        raise GraphInputError(f"{tuple(k)} is not a characteristic vector")
    return found


# --------------------------------------------------------------------------
# bounded enumerations

def _box_ranges(form: IntersectionForm, lo_shift: int, hi_shift: int) -> list[range]:
    return [range(w + lo_shift, -w + hi_shift + 1, 2) for w in form.weights]


def enumerate_initial_box(form: IntersectionForm) -> Iterator[CharVector]:
    """Characteristic ``K`` with ``m(v) + 2 <= <K,v> <= -m(v)``, lexicographic."""
    return itertools.product(*_box_ranges(form, 2, 0))


def initial_box_size(form: IntersectionForm) -> int:
    size = 1
    for w in form.weights:
        size *= max(0, -w)
    return size


def enumerate_box(form: IntersectionForm, n: int) -> Iterator[CharVector]:
    """The box ``B_n``: characteristic ``K`` with ``|<K,v>| <= -m(v) + 2n``."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    return itertools.product(*[range(w - 2 * n, -w + 2 * n + 1, 2) for w in form.weights])


def _range_chunks(ranges: list[range], chunk: int) -> Iterator[np.ndarray]:
    sizes = [len(r) for r in ranges]
    total = int(np.prod(sizes, dtype=object)) if sizes else 1
    starts = np.array([r.start for r in ranges], dtype=np.int64)
    for lo in range(0, total, chunk):
        idx = np.arange(lo, min(total, lo + chunk), dtype=np.int64)
        out = np.empty((idx.size, len(sizes)), dtype=np.int64)
        for i in range(len(sizes) - 1, -1, -1):
            out[:, i] = starts[i] + 2 * (idx % sizes[i])
            idx //= sizes[i]
        yield out


def initial_box_chunks(form: IntersectionForm, chunk: int = 1 << 16) -> Iterator[np.ndarray]:
    """The initial box as int64 arrays of at most ``chunk`` rows, lexicographic."""
    return _range_chunks(_box_ranges(form, 2, 0), chunk)


def box_chunks(form: IntersectionForm, n: int, chunk: int = 1 << 16) -> Iterator[np.ndarray]:
    """:func:`enumerate_box` in int64 chunks."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    return _range_chunks([range(w - 2 * n, -w + 2 * n + 1, 2) for w in form.weights], chunk)


def squares_array(form: IntersectionForm, arr: np.ndarray) -> tuple[np.ndarray, int]:
    """Numerators of ``K^2`` over the common denominator ``det Q``, row by row."""
    big = max((abs(x) for row in form.adj for x in row), default=0)
    kmax = int(np.abs(arr).max()) if arr.size else 0
    dtype = np.int64 if big * kmax * kmax * form.n * form.n < (1 << 62) else object
    adj = np.asarray(form.adj, dtype=dtype).reshape(form.n, form.n)
    arr = arr.astype(dtype)
    return ((arr @ adj) * arr).sum(axis=1), form.det
