"""Plumbing graphs: parsing, validation, intersection forms, simple moves."""
from __future__ import annotations

import hashlib
import json
import re
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

from .errors import DegenerateFormError, GraphInputError
from .linalg import adjugate, bareiss, rational_inverse

EXACT = "exact"
EVEN_PART_ONLY = "even-part-only"
OUTSIDE_THEOREMS = "outside-theorems"


@dataclass(frozen=True)
class PlumbingGraph:
    """A weighted forest. Vertex ``i`` has weight ``weights[i]``.

    Edges are stored as sorted pairs ``(i, j)`` with ``i < j``; declaration
    order of the vertices is the canonical order used everywhere else.
    """

    weights: tuple[int, ...]
    edges: tuple[tuple[int, int], ...] = ()
    _adj: tuple[tuple[int, ...], ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        n = len(self.weights)
        object.__setattr__(self, "weights", tuple(int(w) for w in self.weights))
        norm = []
        seen = set()
        for a, b in self.edges:
            a, b = int(a), int(b)
            if not (0 <= a < n and 0 <= b < n):
                raise GraphInputError(f"edge {a}-{b} references an unknown vertex")
            if a == b:
                raise GraphInputError(f"self-loop at vertex {a}")
            e = (min(a, b), max(a, b))
            if e in seen:
                raise GraphInputError(f"repeated edge {e[0]}-{e[1]}")
            seen.add(e)
            norm.append(e)
        object.__setattr__(self, "edges", tuple(sorted(norm)))
        adj: list[list[int]] = [[] for _ in range(n)]
        for a, b in self.edges:
            adj[a].append(b)
            adj[b].append(a)
        object.__setattr__(self, "_adj", tuple(tuple(sorted(x)) for x in adj))
        if not _is_forest(n, self.edges):
            raise GraphInputError("not a forest: the edges contain a cycle")

    def __len__(self) -> int:
        return len(self.weights)

    @property
    def n(self) -> int:
        return len(self.weights)

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self._adj[v]

    def degree(self, v: int) -> int:
        return len(self._adj[v])

    @property
    def adjacency(self) -> tuple[tuple[int, ...], ...]:
        return self._adj

    def remove(self, *vertices: int) -> PlumbingGraph:
        """Induced subgraph on the remaining vertices, order preserved."""
        drop = set(vertices)
        keep = [i for i in range(self.n) if i not in drop]
        index = {old: new for new, old in enumerate(keep)}
        edges = [(index[a], index[b]) for a, b in self.edges if a in index and b in index]
        return PlumbingGraph(tuple(self.weights[i] for i in keep), tuple(edges))

    def reweight(self, v: int, delta: int) -> PlumbingGraph:
        w = list(self.weights)
        w[v] += delta
        return PlumbingGraph(tuple(w), self.edges)

    def to_compact(self) -> str:
        ws = " ".join(str(w) for w in self.weights)
        es = " ".join(f"{a}-{b}" for a, b in self.edges)
        return f"{self.n}; {ws}; {es}"

    def to_json(self) -> str:
        return json.dumps({
            "vertices": [{"id": i, "weight": w} for i, w in enumerate(self.weights)],
            "edges": [list(e) for e in self.edges],
        })

    def graph_hash(self) -> str:
        return hashlib.sha256(self.to_compact().encode()).hexdigest()[:16]


def _is_forest(n: int, edges) -> bool:
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b in edges:
        ra, rb = find(a), find(b)
        if ra == rb:
            return False
        parent[ra] = rb
    return True


# --------------------------------------------------------------------------
# parsing

_SEIFERT_RE = re.compile(r"^\s*seifert\b", re.IGNORECASE)


def parse_graph(text: str) -> PlumbingGraph:
    """Parse the compact, JSON or ``seifert`` text formats."""
    stripped = text.strip()
    if stripped.startswith("{"):
        return _parse_json(stripped)
    if _SEIFERT_RE.match(stripped):
        return _parse_seifert(stripped)
    return _parse_compact(text)


def _tokens(section: str, offset: int):
    for m in re.finditer(r"\S+", section):
        yield m.group(), offset + m.start()


def _int_token(tok: str, pos: int, what: str) -> int:
    try:
        return int(tok)
    except ValueError:
        raise GraphInputError(f"expected integer {what}, got {tok!r}", pos) from None


def _parse_compact(text: str) -> PlumbingGraph:
    parts = text.split(";")
    if len(parts) != 3:
        raise GraphInputError(
            f"compact format needs 3 ';'-separated sections, found {len(parts)}",
            0)
    offsets = [0, len(parts[0]) + 1, len(parts[0]) + len(parts[1]) + 2]
    head = list(_tokens(parts[0], offsets[0]))
    if len(head) != 1:
        raise GraphInputError("first section must be the vertex count", offsets[0])
    n = _int_token(*head[0], "vertex count")
    if n < 0:
        raise GraphInputError("negative vertex count", head[0][1])
    weights = [_int_token(t, p, "weight") for t, p in _tokens(parts[1], offsets[1])]
    if len(weights) != n:
        raise GraphInputError(f"declared {n} vertices but found {len(weights)} weights",
                              offsets[1])
    edges = []
    seen = set()
    for tok, pos in _tokens(parts[2], offsets[2]):
        m = re.fullmatch(r"(\d+)-(\d+)", tok)
        if not m:
            raise GraphInputError(f"malformed edge {tok!r}, expected i-j", pos)
        a, b = int(m.group(1)), int(m.group(2))
        if a >= n or b >= n:
            raise GraphInputError(f"edge {tok} references an unknown vertex", pos)
        if a == b:
            raise GraphInputError(f"self-loop {tok}", pos)
        key = (min(a, b), max(a, b))
        if key in seen:
            raise GraphInputError(f"repeated edge {tok}", pos)
        seen.add(key)
        edges.append((a, b))
    return PlumbingGraph(tuple(weights), tuple(edges))


def _parse_json(text: str) -> PlumbingGraph:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise GraphInputError(f"invalid JSON: {exc.msg}", exc.pos) from None
    try:
        verts = data["vertices"]
        raw_edges = data.get("edges", [])
    except (TypeError, KeyError):
        raise GraphInputError("JSON graph needs a 'vertices' list") from None
    by_id: dict[int, int] = {}
    for rec in verts:
        try:
            vid, w = int(rec["id"]), int(rec["weight"])
        except (TypeError, KeyError, ValueError):
            raise GraphInputError(f"bad vertex record {rec!r}") from None
        if vid in by_id:
            raise GraphInputError(f"duplicate vertex id {vid}")
        by_id[vid] = w
    n = len(by_id)
    if sorted(by_id) != list(range(n)):
        raise GraphInputError("vertex ids must be 0..n-1")
    edges = []
    for e in raw_edges:
        if not (isinstance(e, (list, tuple)) and len(e) == 2):
            raise GraphInputError(f"bad edge record {e!r}")
        a, b = int(e[0]), int(e[1])
        if a not in by_id or b not in by_id:
            raise GraphInputError(f"edge {a}-{b} references an unknown vertex")
        edges.append((a, b))
    return PlumbingGraph(tuple(by_id[i] for i in range(n)), tuple(edges))


def _parse_seifert(text: str) -> PlumbingGraph:
    toks = list(_tokens(text, 0))[1:]
    if not toks:
        raise GraphInputError("seifert input needs e0", len(text))
    e0 = _int_token(*toks[0], "e0")
    legs = []
    for tok, pos in toks[1:]:
        m = re.fullmatch(r"(-?\d+)/(-?\d+)", tok)
        if not m:
            raise GraphInputError(f"malformed Seifert pair {tok!r}, expected p/q", pos)
        legs.append((int(m.group(1)), int(m.group(2))))
    return seifert_to_star(e0, legs)


# --------------------------------------------------------------------------
# constructions

def negative_continued_fraction(p: int, q: int) -> list[int]:
    """Coefficients ``[a1, ..., as]`` with ``p/q = a1 - 1/(a2 - ...)``, all ``>= 2``."""
    out = []
    while q:
        a = -(-p // q)
        out.append(a)
        p, q = q, a * q - p
    return out


def seifert_to_star(e0: int, legs) -> PlumbingGraph:
    """Star-shaped plumbing with central weight ``e0`` and one chain per leg."""
    weights = [int(e0)]
    edges = []
    for p, q in legs:
        if not p > q >= 1:
            raise GraphInputError(f"Seifert pair {p}/{q} needs p > q >= 1")
        if gcd(p, q) != 1:
            raise GraphInputError(f"Seifert pair {p}/{q} is not in lowest terms")
        prev = 0
        for a in negative_continued_fraction(p, q):
            weights.append(-a)
            edges.append((prev, len(weights) - 1))
            prev = len(weights) - 1
    return PlumbingGraph(tuple(weights), tuple(edges))


def blow_down_pair(g: PlumbingGraph, v: int) -> tuple[PlumbingGraph, PlumbingGraph]:
    """``(G'(v), G_{+1}(v))``: a new -1 leaf on ``v``, or ``v`` reweighted by +1."""
    if not 0 <= v < g.n:
        raise GraphInputError(f"vertex {v} out of range")
    gprime = PlumbingGraph(g.weights + (-1,), g.edges + ((v, g.n),))
    return gprime, g.reweight(v, 1)


# --------------------------------------------------------------------------
# intersection form

@dataclass(frozen=True)
class IntersectionForm:
    """Intersection matrix of a plumbing and its exact invariants.

    ``adj`` is the integer adjugate, so ``Qinv == adj / det``; squares of
    characteristic vectors are computed from it without Fractions.
    """

    graph: PlumbingGraph
    Q: tuple[tuple[int, ...], ...]
    det: int
    minors: tuple[int, ...]
    Qinv: tuple[tuple[Fraction, ...], ...] | None
    adj: tuple[tuple[int, ...], ...] | None

    def __hash__(self) -> int:
        # everything else is derived from the graph; hashing Qinv is slow
        return hash(self.graph)

    @property
    def n(self) -> int:
        return len(self.Q)

    @property
    def weights(self) -> tuple[int, ...]:
        return self.graph.weights

    @property
    def is_negative_definite(self) -> bool:
        return all((m < 0) if k % 2 == 0 else (m > 0) for k, m in enumerate(self.minors))

    def require_nondegenerate(self) -> None:
        if self.det == 0:
            raise DegenerateFormError("intersection form is degenerate (det Q = 0)")

    def require_negative_definite(self) -> None:
        if not self.is_negative_definite:
            raise DegenerateFormError(
                "intersection form is not negative definite; the plumbing "
                "hypothesis (negative-definite graph) fails")


def intersection_form(g: PlumbingGraph) -> IntersectionForm:
    n = g.n
    q = [[0] * n for _ in range(n)]
    for i, w in enumerate(g.weights):
        q[i][i] = w
    for a, b in g.edges:
        q[a][b] = q[b][a] = 1
    det, minors = bareiss(q)
    qinv = adj = None
    if det != 0 and n:
        qinv = tuple(tuple(r) for r in rational_inverse(q))
        adj = tuple(tuple(r) for r in adjugate(q))
    elif n == 0:
        qinv, adj = (), ()
    return IntersectionForm(g, tuple(tuple(r) for r in q), det, tuple(minors), qinv, adj)


def tree_determinant(g: PlumbingGraph) -> int:
    """det Q by peeling leaves: ``det G = m(v) det(G-v) - det(G-v-w)``."""
    if g.n == 0:
        return 1
    for v in range(g.n):
        if g.degree(v) == 0:
            return g.weights[v] * tree_determinant(g.remove(v))
    v = next(v for v in range(g.n) if g.degree(v) == 1)
    w = g.neighbors(v)[0]
    return g.weights[v] * tree_determinant(g.remove(v)) - tree_determinant(g.remove(v, w))


@dataclass(frozen=True)
class GraphReport:
    is_forest: bool
    is_negative_definite: bool
    bad_vertices: tuple[int, ...]
    validity_regime: str
    h1_order: int | None


def bad_vertices(g: PlumbingGraph) -> tuple[int, ...]:
    return tuple(v for v in range(g.n) if g.weights[v] > -g.degree(v))


def regime_for(nbad: int) -> str:
    if nbad <= 1:
        return EXACT
    if nbad == 2:
        return EVEN_PART_ONLY
    return OUTSIDE_THEOREMS


def analyze(g: PlumbingGraph) -> GraphReport:
    form = intersection_form(g)
    bad = bad_vertices(g)
    return GraphReport(
        is_forest=True,
        is_negative_definite=form.is_negative_definite,
        bad_vertices=bad,
        validity_regime=regime_for(len(bad)),
        h1_order=abs(form.det) if form.det != 0 else None,
    )
