"""Named plumbing graphs used in the worked examples and tests.

Vertex orders follow the usual conventions for these examples: the central
node first, then each leg read outward from the center.
"""
from __future__ import annotations

from .graph import PlumbingGraph, seifert_to_star


def path(*weights: int) -> PlumbingGraph:
    return PlumbingGraph(tuple(weights), tuple((i, i + 1) for i in range(len(weights) - 1)))


def star(center: int, *legs) -> PlumbingGraph:
    """Star with the given center weight; each leg is an int or a chain of ints."""
    weights = [center]
    edges = []
    for leg in legs:
        chain = (leg,) if isinstance(leg, int) else tuple(leg)
        prev = 0
        for w in chain:
            weights.append(w)
            edges.append((prev, len(weights) - 1))
            prev = len(weights) - 1
    return PlumbingGraph(tuple(weights), tuple(edges))


def e8() -> PlumbingGraph:
    """Negative-definite E8; boundary is the Poincare sphere Sigma(2,3,5)."""
    return star(-2, [-2], [-2, -2], [-2, -2, -2, -2])


def sigma237() -> PlumbingGraph:
    return seifert_to_star(-1, [(2, 1), (3, 1), (7, 1)])


def sigma357() -> PlumbingGraph:
    return seifert_to_star(-2, [(3, 1), (5, 4), (7, 6)])


def y12() -> PlumbingGraph:
    """Seifert plumbing for +12 surgery on the double trefoil.

    Reconstructed: central -2 node with legs -2, -2, -3, -3 (the only star
    compatible with 72 initial vectors and |det Q| = 12).
    """
    return star(-2, -2, -2, -3, -3)


def y_minus1() -> PlumbingGraph:
    """Plumbing for -1 surgery on the double trefoil (two bad vertices).

    Reconstructed from the figure labels: a central node of weight n - 12 = -13
    joined to two -1 nodes, each carrying a -2 and a -3 leaf.
    """
    return PlumbingGraph(
        (-13, -1, -2, -3, -1, -2, -3),
        ((0, 1), (1, 2), (1, 3), (0, 4), (4, 5), (4, 6)),
    )


GOLDEN = {
    "e8": e8,
    "sigma237": sigma237,
    "sigma357": sigma357,
    "y12": y12,
    "y_minus1": y_minus1,
}
