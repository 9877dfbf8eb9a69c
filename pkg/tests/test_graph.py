import random
from math import gcd

import pytest

from plumbhf.catalog import GOLDEN, e8, path, sigma237, sigma357, star, y12, y_minus1
from plumbhf.errors import DegenerateFormError, GraphInputError
from plumbhf.graph import (EVEN_PART_ONLY, EXACT, OUTSIDE_THEOREMS, PlumbingGraph, analyze,
                           blow_down_pair, intersection_form, negative_continued_fraction,
                           parse_graph, seifert_to_star, tree_determinant)

from conftest import random_forest

E8_TEXT = "8; -2 -2 -2 -2 -2 -2 -2 -2; 0-1 0-2 2-3 0-4 4-5 5-6 6-7"


def test_parse_e8_compact():
    g = parse_graph(E8_TEXT)
    assert g == e8()
    assert g.weights == (-2,) * 8
    assert g.degree(0) == 3


def test_parse_empty():
    g = parse_graph("0;;")
    assert g.n == 0 and g.edges == ()
    assert intersection_form(g).det == 1


def test_parse_cycle():
    with pytest.raises(GraphInputError, match="not a forest"):
        parse_graph("3; -1 -2 -2; 0-1 1-2 2-0")


@pytest.mark.parametrize("text, fragment", [
    ("2; -2 x; 0-1", "offset 6"),
    ("2; -2 -2; 0-5", "unknown vertex"),
    ("2; -2 -2; 0-1 1-0", "repeated edge"),
    ("2; -2 -2; 1-1", "self-loop"),
    ("2; -2; ", "declared 2 vertices"),
    ("2 -2 -2", "3 ';'-separated"),
    ("2; -2 -2; 0=1", "malformed edge"),
])
def test_compact_errors(text, fragment):
    with pytest.raises(GraphInputError, match=fragment):
        parse_graph(text)


def test_json_round_trip_and_errors():
    g = sigma357()
    assert parse_graph(g.to_json()) == g
    assert parse_graph(g.to_compact()) == g
    with pytest.raises(GraphInputError, match="duplicate vertex id"):
        parse_graph('{"vertices":[{"id":0,"weight":-2},{"id":0,"weight":-2}],"edges":[]}')
    with pytest.raises(GraphInputError, match="unknown vertex"):
        parse_graph('{"vertices":[{"id":0,"weight":-2}],"edges":[[0,3]]}')
    with pytest.raises(GraphInputError, match="0..n-1"):
        parse_graph('{"vertices":[{"id":1,"weight":-2}],"edges":[]}')
    with pytest.raises(GraphInputError, match="invalid JSON"):
        parse_graph('{"vertices": [')


def test_parse_seifert_text():
    assert parse_graph("seifert -1 2/1 3/1 7/1") == sigma237()
    with pytest.raises(GraphInputError, match="p/q"):
        parse_graph("seifert -1 2:1")


def test_intersection_form_matches_graph():
    form = intersection_form(sigma237())
    assert form.Q == ((-1, 1, 1, 1), (1, -2, 0, 0), (1, 0, -3, 0), (1, 0, 0, -7))
    assert form.det == 1


@pytest.mark.parametrize("name, det", [
    ("e8", 1), ("sigma237", 1), ("sigma357", 1), ("y12", -12), ("y_minus1", -1),
])
def test_golden_determinants(name, det):
    g = GOLDEN[name]()
    form = intersection_form(g)
    assert form.det == det
    assert tree_determinant(g) == det
    assert form.is_negative_definite


def test_qinv_is_exact_inverse():
    form = intersection_form(y12())
    n = form.n
    for i in range(n):
        for j in range(n):
            assert sum(form.Q[i][k] * form.Qinv[k][j] for k in range(n)) == (i == j)


def test_e8_center_is_bad():
    rep = analyze(e8())
    assert rep.bad_vertices == (0,)
    assert rep.validity_regime == EXACT
    assert rep.is_negative_definite and rep.h1_order == 1


def test_analyze_examples():
    rep = analyze(sigma237())
    assert rep.bad_vertices == (0,) and rep.validity_regime == EXACT
    rep = analyze(y_minus1())
    assert rep.bad_vertices == (1, 4) and rep.validity_regime == EVEN_PART_ONLY
    assert abs(intersection_form(y12()).det) == 12
    # three bad -1 nodes of degree two
    three = path(-3, -1, -3, -1, -3, -1, -3)
    rep = analyze(three)
    assert len(rep.bad_vertices) == 3 and rep.validity_regime == OUTSIDE_THEOREMS


def test_degenerate_report():
    d4 = star(-2, -2, -2, -2, -2)
    rep = analyze(d4)
    assert not rep.is_negative_definite and rep.h1_order is None
    with pytest.raises(DegenerateFormError):
        intersection_form(d4).require_negative_definite()


def test_negative_continued_fractions():
    assert negative_continued_fraction(5, 4) == [2, 2, 2, 2]
    assert negative_continued_fraction(7, 6) == [2] * 6
    assert negative_continued_fraction(7, 3) == [3, 2, 2]
    assert negative_continued_fraction(3, 1) == [3]


def test_seifert_examples():
    g = seifert_to_star(-2, [(3, 1), (5, 4), (7, 6)])
    assert g == sigma357()
    assert g.weights == (-2, -3) + (-2,) * 10
    assert g.degree(0) == 3
    assert seifert_to_star(-1, [(2, 1), (3, 1), (7, 1)]).weights == (-1, -2, -3, -7)
    assert seifert_to_star(-2, []) == PlumbingGraph((-2,))
    # legs attach at the -a1 end
    g = seifert_to_star(-1, [(7, 3)])
    assert g.weights == (-1, -3, -2, -2) and g.edges == ((0, 1), (1, 2), (2, 3))


@pytest.mark.parametrize("p, q", [(4, 2), (3, 3), (2, 5), (3, 0)])
def test_seifert_errors(p, q):
    with pytest.raises(GraphInputError):
        seifert_to_star(-1, [(p, q)])


def test_blow_down_pair_examples():
    gp, gplus = blow_down_pair(PlumbingGraph((-2,)), 0)
    assert gp == path(-2, -1)
    assert gplus == PlumbingGraph((-1,))
    gp, gplus = blow_down_pair(e8(), 7)
    assert gp.n == 9 and gp.weights[8] == -1 and gp.neighbors(8) == (7,)
    assert gplus.weights[7] == -1 and gplus.edges == e8().edges
    with pytest.raises(GraphInputError):
        blow_down_pair(e8(), 8)


def test_seifert_stars_have_at_most_the_center_bad():
    rng = random.Random(3)
    for _ in range(100):
        legs = []
        for _ in range(rng.randint(0, 5)):
            p = rng.randint(2, 15)
            q = rng.randint(1, p - 1)
            if gcd(p, q) == 1:
                legs.append((p, q))
        rep = analyze(seifert_to_star(rng.randint(-5, -1), legs))
        assert set(rep.bad_vertices) <= {0}


def test_random_forests_structure_and_determinants():
    rng = random.Random(11)
    for _ in range(300):
        g = random_forest(rng, rng.randint(0, 12), lo=-5, hi=-1, strict=False)
        form = intersection_form(g)
        for v in range(g.n):
            off = [x for j, x in enumerate(form.Q[v]) if j != v]
            assert sum(off) == g.degree(v) and set(off) <= {0, 1}
            for j in range(g.n):
                assert form.Q[v][j] == form.Q[j][v]
        assert form.det == tree_determinant(g)


def test_blow_down_preserves_h1_order():
    rng = random.Random(5)
    for _ in range(60):
        g = random_forest(rng, rng.randint(1, 7))
        for v in range(g.n):
            gp, gplus = blow_down_pair(g, v)
            assert abs(intersection_form(gp).det) == abs(intersection_form(gplus).det)


def test_graph_hash_is_stable():
    assert e8().graph_hash() == parse_graph(E8_TEXT).graph_hash()
    assert e8().graph_hash() != sigma237().graph_hash()
    assert len(e8().graph_hash()) == 16
