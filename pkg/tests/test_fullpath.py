import random
from collections import Counter
from fractions import Fraction

import numpy as np
import pytest

from plumbhf.catalog import GOLDEN
from plumbhf.graph import intersection_form
from plumbhf.fullpath import (count_good, full_paths, good_mask, ker_u_generators, path_step,
                              run_full_path)
from plumbhf.lattice import enumerate_initial_box, enumerate_spinc, spinc_of, square

from conftest import no_bad_graphs

SIGMA237_PATH = [(1, 0, -1, -5), (-1, 2, 1, -3), (1, -2, 1, -3), (-1, 0, 3, -1),
                 (1, 0, -3, -1), (-1, 2, -1, 1), (1, -2, -1, 1), (-1, 0, 1, 3)]
E8_CENTER_PATH = [(2, 0, 0, 0, 0, 0, 0, 0), (-2, 2, 2, 0, 2, 0, 0, 0), (0, -2, 2, 0, 2, 0, 0, 0),
                  (2, -2, -2, 2, 2, 0, 0, 0), (-2, 0, 0, 2, 4, 0, 0, 0)]
SIGMA357_PRINTED = [
    (0, -1) + (0,) * 10,
    (0, 1) + (0,) * 10,
    (0, 1) + (0,) * 9 + (-2,),
    (0, 1, 0, 0, 0, -2) + (0,) * 6,
]


def test_path_step_examples(forms):
    assert path_step(forms["e8"], (2,) + (0,) * 7) == (0, (-2, 2, 2, 0, 2, 0, 0, 0))
    assert path_step(forms["e8"], (0,) * 8) is None
    assert path_step(forms["sigma237"], (1, 0, -1, -5)) == (0, (-1, 2, 1, -3))


def test_sigma237_transcript(forms):
    res = run_full_path(forms["sigma237"], (1, 0, -1, -5))
    assert res.good and res.terminal == (-1, 0, 1, 3)
    assert res.vectors == SIGMA237_PATH
    # the other path is the negated, reversed one
    other = run_full_path(forms["sigma237"], (1, 0, -1, -3))
    assert other.good and other.terminal == (-1, 0, 1, 5)
    assert [tuple(-x for x in k) for k in reversed(SIGMA237_PATH)][2] in other.vectors


def test_e8_transcripts(forms):
    res = run_full_path(forms["e8"], (2,) + (0,) * 7)
    assert not res.good and res.witness == 4
    assert res.vectors == E8_CENTER_PATH
    res = run_full_path(forms["e8"], (0,) * 7 + (2,))
    assert not res.good and res.terminal[res.witness] > 2
    res = run_full_path(forms["e8"], (0,) * 8)
    assert res.good and res.steps == () and res.terminal == (0,) * 8


def test_e8_from_last_vertex_never_meets_printed_vector(forms):
    """Every vertex-choice order from (0,...,0,2) misses (-2,0,0,2,4,0,0,0)."""
    form = forms["e8"]
    w = form.weights
    start = (0,) * 7 + (2,)
    seen, stack = {start}, [start]
    while stack:
        k = stack.pop()
        if any(k[v] > -w[v] for v in range(8)):
            continue
        for v in range(8):
            if k[v] == -w[v]:
                nxt = tuple(a + 2 * b for a, b in zip(k, form.Q[v]))
                if nxt not in seen:
                    seen.add(nxt)
                    stack.append(nxt)
    assert (-2, 0, 0, 2, 4, 0, 0, 0) not in seen


def test_generators_golden(forms):
    assert ker_u_generators(forms["e8"]) == [((0,) * 8, -2)]
    gens = ker_u_generators(forms["sigma237"])
    assert [k for k, _ in gens] == [(1, 0, -1, -5), (1, 0, -1, -3)]
    assert {g for _, g in gens} == {0}
    gens = ker_u_generators(forms["sigma357"])
    assert sorted(g for _, g in gens) == [-2, -2, 0, 0]
    ends = {run_full_path(forms["sigma357"], k).terminal for k, _ in gens}
    assert ends == set(SIGMA357_PRINTED)
    y = forms["y12"]
    t = spinc_of(y, (0, 0, 0, 1, 1))
    gens = ker_u_generators(y, t)
    assert gens == [((0, 0, 0, -1, -1), Fraction(-3, 4)), ((0, 0, 0, 1, 1), Fraction(-3, 4))]


def _check_path_invariants(form, k0):
    res = run_full_path(form, k0)
    w = form.weights
    sq = square(form, k0)
    for k in res.vectors[:-1]:
        assert all(abs(k[v]) <= -w[v] for v in range(form.n))
    for k in res.vectors:
        assert square(form, k) == sq
    if res.good:
        assert all(w[v] <= res.terminal[v] <= -w[v] - 2 for v in range(form.n))
    else:
        assert res.terminal[res.witness] > -w[res.witness]
    return res


@pytest.mark.parametrize("name", ["e8", "sigma237", "y12", "y_minus1"])
def test_path_invariants_on_whole_box(forms, name):
    form = forms[name]
    good = 0
    for k0 in enumerate_initial_box(form):
        good += _check_path_invariants(form, k0).good
    assert good == len(ker_u_generators(form))


def test_vectorized_paths_match_scalar(forms):
    form = forms["y_minus1"]
    box = np.array(list(enumerate_initial_box(form)))
    good, term = full_paths(form, box)
    for row, g, t in zip(box.tolist(), good, term.tolist()):
        res = run_full_path(form, row)
        assert res.good == g
        if g:
            assert res.terminal == tuple(t)
    assert (good_mask(form, box) == good).all()


@pytest.mark.parametrize("name", list(GOLDEN))
def test_policy_independence_golden(forms, name):
    form = forms[name]
    box = np.concatenate([c for c in [np.array(list(enumerate_initial_box(form)))]])
    good, term = full_paths(form, box)
    for i in range(100):
        g2, t2 = full_paths(form, box, np.random.default_rng([7, i]))
        assert (g2 == good).all()
        assert (t2[good] == term[good]).all()


def test_scalar_random_policy_matches(forms):
    form = forms["sigma237"]
    for k0 in enumerate_initial_box(form):
        base = run_full_path(form, k0)
        for s in range(20):
            res = run_full_path(form, k0, rng=random.Random(s))
            assert res.good == base.good
            if base.good:
                assert res.terminal == base.terminal


def test_count_matches_det_without_bad_vertices():
    for g in no_bad_graphs(50, seed=21):
        form = intersection_form(g)
        assert count_good(form) == abs(form.det)
        per_class = Counter(tuple(spinc_of(form, k).residue) for k, _ in ker_u_generators(form))
        assert set(per_class.values()) == {1}
        assert len(per_class) == len(enumerate_spinc(form))
