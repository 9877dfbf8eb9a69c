import random
from fractions import Fraction

import numpy as np
import pytest

from plumbhf.catalog import path
from plumbhf.errors import DegenerateFormError, GraphInputError
from plumbhf.graph import PlumbingGraph, intersection_form
from plumbhf.lattice import (add_2pd, box_chunks, check_characteristic, enumerate_box,
                             enumerate_initial_box, enumerate_spinc, grade, initial_box_chunks,
                             initial_box_size, is_characteristic, renormalized_length,
                             residues_array, spinc_of, spinc_residue, square, squares_array)

from conftest import random_forest

Y12_SIX = [(0, 2, 2, 3, 3), (0, 0, 0, 3, 3), (0, 2, 2, 1, 1),
           (0, 0, 0, 1, 1), (0, 2, 2, -1, -1), (0, 0, 0, -1, -1)]


def test_add_2pd_examples(forms):
    assert add_2pd(forms["e8"], (0,) * 8, 0) == (-4, 2, 2, 0, 2, 0, 0, 0)
    assert add_2pd(forms["sigma237"], (1, 0, -1, -5), 3) == (3, 0, -1, -19)
    k = (1, 0, -1, -3)
    assert add_2pd(forms["sigma237"], add_2pd(forms["sigma237"], k, 2), 2, -1) == k


def test_square_examples(forms):
    assert square(forms["e8"], (0,) * 8) == 0
    assert square(forms["sigma237"], (1, 0, -1, -3)) == -4
    assert renormalized_length(forms["sigma237"], (1, 0, -1, -3)) == 0
    assert square(forms["y12"], (0, 0, 0, 1, 1)) == -2
    assert renormalized_length(forms["y12"], (0, 0, 0, 1, 1)) == Fraction(3, 4)
    assert grade(forms["y12"], (0, 0, 0, 1, 1), 1) == Fraction(5, 4)


def test_square_needs_nondegenerate():
    form = intersection_form(PlumbingGraph((0,)))
    with pytest.raises(DegenerateFormError):
        square(form, (0,))


def test_square_identity_and_denominators():
    rng = random.Random(2)
    for _ in range(40):
        g = random_forest(rng, rng.randint(1, 7))
        form = intersection_form(g)
        for _ in range(10):
            k = tuple(w + 2 * rng.randint(-3, 3) for w in g.weights)
            v = rng.randrange(g.n)
            lhs = square(form, add_2pd(form, k, v))
            assert lhs == square(form, k) + 4 * k[v] + 4 * g.weights[v]
            assert (4 * abs(form.det)) % grade(form, k).denominator == 0
            if any(k):
                assert square(form, k) < 0


def test_characteristic_checks(forms):
    assert is_characteristic(forms["sigma237"], (1, 0, -1, -5))
    assert not is_characteristic(forms["sigma237"], (0, 0, -1, -5))
    with pytest.raises(GraphInputError):
        check_characteristic(forms["sigma237"], (1, 0, -1))


def test_spinc_examples(forms):
    assert len(enumerate_spinc(forms["e8"])) == 1
    assert len(enumerate_spinc(forms["y12"])) == 12
    assert len(enumerate_spinc(intersection_form(PlumbingGraph((-2,))))) == 2
    classes = {spinc_of(forms["y12"], k) for k in Y12_SIX}
    assert len(classes) == 1
    # those six are the only initial-box vectors in that class
    t = classes.pop()
    assert sorted(k for k in enumerate_initial_box(forms["y12"])
                  if spinc_of(forms["y12"], k) == t) == sorted(Y12_SIX)


def test_spinc_ordering_and_labels(forms):
    classes = enumerate_spinc(forms["y12"])
    assert [c.index for c in classes] == list(range(12))
    assert [c.residue for c in classes] == sorted(c.residue for c in classes)
    assert classes[0].to_json() == {"index": 0, "residue": list(classes[0].residue)}


def test_spinc_count_equals_det_and_orbit_invariance():
    rng = random.Random(8)
    for _ in range(40):
        g = random_forest(rng, rng.randint(1, 6), lo=-5)
        form = intersection_form(g)
        assert len(enumerate_spinc(form)) == abs(form.det)
        k = tuple(w + 2 * rng.randint(-2, 2) for w in g.weights)
        t = spinc_of(form, k)
        for _ in range(30):
            k = add_2pd(form, k, rng.randrange(g.n), rng.choice((1, -1)))
            assert spinc_of(form, k) == t


def test_spinc_separates_by_lattice():
    form = intersection_form(path(-2, -3))
    a, b = (0, 1), (2, 1)
    # differ by (2, 0), not in 2Q Z^2 (det 5 is odd)
    assert spinc_residue(form, a) != spinc_residue(form, b)
    assert spinc_residue(form, a) == spinc_residue(form, add_2pd(form, add_2pd(form, a, 0), 1, -1))


def test_residues_array_matches_scalar(forms):
    form = forms["y12"]
    arr = np.array(list(enumerate_initial_box(form)))
    res = residues_array(form, arr)
    for row, r in zip(arr, res):
        assert tuple(r) == spinc_residue(form, tuple(int(x) for x in row))


def test_box_counts(forms):
    assert len(list(enumerate_initial_box(forms["e8"]))) == 256
    assert len(list(enumerate_initial_box(forms["y12"]))) == 72 == initial_box_size(forms["y12"])
    single = intersection_form(PlumbingGraph((-2,)))
    assert list(enumerate_initial_box(single)) == [(0,), (2,)]
    assert list(enumerate_box(single, 0)) == [(-2,), (0,), (2,)]
    assert list(enumerate_box(single, 1)) == [(-4,), (-2,), (0,), (2,), (4,)]
    assert sum(1 for _ in enumerate_box(forms["e8"], 0)) == 3 ** 8


def test_chunks_match_iterators(forms):
    for name in ("y12", "sigma237"):
        form = forms[name]
        rows = np.concatenate(list(initial_box_chunks(form, chunk=7)))
        assert [tuple(r) for r in rows.tolist()] == list(enumerate_initial_box(form))
        rows = np.concatenate(list(box_chunks(form, 1, chunk=100)))
        assert [tuple(r) for r in rows.tolist()] == list(enumerate_box(form, 1))


def test_squares_array(forms):
    form = forms["sigma237"]
    arr = np.array(list(enumerate_box(form, 0)))
    num, den = squares_array(form, arr)
    for row, x in zip(arr.tolist(), num):
        assert Fraction(int(x), den) == square(form, row)
