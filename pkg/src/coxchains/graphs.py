"""Coxeter graphs: parsing, classification, and diagram automorphisms.

Vertex numbering conventions (fixed, because the recursion's per-vertex
terms and the diagram automorphism depend on them):

* A_n, B_n: path 1..n; for B_n the label-4 edge is (1, 2).
* D_n: path 1..n-2, fork vertices n-1 and n both attached to n-2.
* E_n: Bourbaki numbering (chain 1-3-4-...-n, vertex 2 attached to 4).
* F4: path 1-2-3-4 with labels (3, 4, 3).
* H3, H4: path with the label-5 edge at (1, 2).
* I2(m): vertices 1, 2 with edge label m.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field


class GroupSpecError(ValueError):
    """Bad group specification string or non-finite type."""


class ClassificationError(ValueError):
    """Connected graph is not of finite type."""


@dataclass(frozen=True)
class CoxeterGraph:
    vertices: tuple
    edges: frozenset  # of (v, w, m) with v < w, m >= 3

    def __post_init__(self):
        seen = set(self.vertices)
        if len(seen) != len(self.vertices):
            raise ValueError("duplicate vertex ids")
        pairs = set()
        for v, w, m in self.edges:
            if v == w:
                raise ValueError("self-loop in Coxeter graph")
            if v not in seen or w not in seen:
                raise ValueError("edge endpoint not a vertex")
            if not v < w:
                raise ValueError("edges must be stored with v < w")
            if m < 3:
                raise ValueError("edge label must be >= 3")
            if (v, w) in pairs:
                raise ValueError("duplicate edge")
            pairs.add((v, w))

    @property
    def rank(self) -> int:
        return len(self.vertices)

    def label(self, v, w) -> int:
        a, b = (v, w) if v < w else (w, v)
        for x, y, m in self.edges:
            if (x, y) == (a, b):
                return m
        return 2

    def neighbors(self, v):
        out = []
        for x, y, m in self.edges:
            if x == v:
                out.append(y)
            elif y == v:
                out.append(x)
        return sorted(out)

    def degree(self, v) -> int:
        return len(self.neighbors(v))


def make_graph(vertices, edges) -> CoxeterGraph:
    norm = frozenset(
        (v, w, m) if v < w else (w, v, m) for v, w, m in edges
    )
    return CoxeterGraph(tuple(vertices), norm)


EMPTY_GRAPH = make_graph((), ())


@dataclass(frozen=True)
class TypeLabel:
    family: str  # one of A, B, D, E, F, H, I2
    rank: int    # for I2 this is the edge label m

    def __post_init__(self):
        fam, n = self.family, self.rank
        ok = (
            (fam == "A" and n >= 1)
            or (fam == "B" and n >= 2)
            or (fam == "D" and n >= 2)
            or (fam == "E" and n in (6, 7, 8))
            or (fam == "F" and n == 4)
            or (fam == "H" and n in (3, 4))
            or (fam == "I2" and n >= 3)
        )
        if not ok:
            raise GroupSpecError(f"not a finite type: {fam}{n}")

    @property
    def coxeter_rank(self) -> int:
        return 2 if self.family == "I2" else self.rank

    def __str__(self):
        if self.family == "I2":
            return f"I2({self.rank})"
        return f"{self.family}{self.rank}"


@dataclass
class DiagramAutomorphism:
    source: TypeLabel
    permutation: dict = field(default_factory=dict)

    def is_identity(self) -> bool:
        return all(v == w for v, w in self.permutation.items())

    def __call__(self, v):
        return self.permutation[v]


_TERM_RE = re.compile(r"^([A-Za-z]+)(\d+)?(?:\((\d+)\))?$")


def _standard_edges(family: str, n: int):
    if family == "A":
        return [(i, i + 1, 3) for i in range(1, n)]
    if family == "B":
        return [(1, 2, 4)] + [(i, i + 1, 3) for i in range(2, n)]
    if family == "D":
        if n == 2:
            return []
        if n == 3:
            return [(1, 2, 3), (1, 3, 3)]
        return (
            [(i, i + 1, 3) for i in range(1, n - 2)]
            + [(n - 2, n - 1, 3), (n - 2, n, 3)]
        )
    if family == "E":
        chain = [1, 3, 4] + list(range(5, n + 1))
        return [(a, b, 3) for a, b in zip(chain, chain[1:])] + [(2, 4, 3)]
    if family == "F":
        return [(1, 2, 3), (2, 3, 4), (3, 4, 3)]
    if family == "H":
        return [(1, 2, 5)] + [(i, i + 1, 3) for i in range(2, n)]
    if family == "I2":
        return [(1, 2, n)]
    raise GroupSpecError(f"unknown family {family}")


def standard_graph(t: TypeLabel, offset: int = 0) -> CoxeterGraph:
    """Graph of a finite type in standard numbering, vertex ids shifted by offset."""
    n = t.coxeter_rank
    vertices = [offset + i for i in range(1, n + 1)]
    edges = [(offset + a, offset + b, m) for a, b, m in _standard_edges(t.family, t.rank)]
    return make_graph(vertices, edges)


def _parse_term(term: str) -> TypeLabel:
    m = _TERM_RE.match(term)
    if not m:
        raise GroupSpecError(f"syntax error in group term {term!r}")
    fam = m.group(1).upper()
    digits, paren = m.group(2), m.group(3)
    if fam == "I" and digits == "2" and paren is not None:
        order = int(paren)
        if order < 3:
            raise GroupSpecError(f"I2({order}) is not an irreducible finite type")
        return TypeLabel("I2", order)
    if paren is not None or digits is None:
        raise GroupSpecError(f"syntax error in group term {term!r}")
    n = int(digits)
    if fam == "G":
        if n != 2:
            raise GroupSpecError(f"not a finite type: G{n}")
        return TypeLabel("I2", 6)
    if fam == "C":
        fam = "B"  # B and C share the graph and the arrangement
    if fam not in ("A", "B", "D", "E", "F", "H"):
        raise GroupSpecError(f"unknown family in term {term!r}")
    try:
        return TypeLabel(fam, n)
    except GroupSpecError:
        raise GroupSpecError(f"rank out of range for finite type: {term}")


def parse_group_spec(text: str) -> CoxeterGraph:
    """Parse a spec like "D5xA2" or "I2(7)xB3" into its Coxeter graph."""
    text = text.strip()
    if text == "1":
        return EMPTY_GRAPH
    if not text:
        raise GroupSpecError("empty group specification")
    vertices = []
    edges = []
    offset = 0
    for term in text.split("x"):
        label = _parse_term(term.strip())
        g = standard_graph(label, offset=offset)
        vertices.extend(g.vertices)
        edges.extend(g.edges)
        offset += label.coxeter_rank
    return make_graph(vertices, edges)


def connected_components(g: CoxeterGraph):
    """Components as (subgraph, embedding), ordered by smallest original id.

    Subgraphs keep the original vertex ids; the embedding maps subgraph
    vertex ids to original ids (here the identity map, kept explicit so
    callers can reconstruct ids without assumptions).
    """
    remaining = set(g.vertices)
    components = []
    for start in sorted(g.vertices):
        if start not in remaining:
            continue
        seen = {start}
        queue = [start]
        while queue:
            v = queue.pop()
            for w in g.neighbors(v):
                if w not in seen:
                    seen.add(w)
                    queue.append(w)
        remaining -= seen
        verts = tuple(sorted(seen))
        edges = frozenset((v, w, m) for v, w, m in g.edges if v in seen)
        components.append((CoxeterGraph(verts, edges), {v: v for v in verts}))
    return components


def delete_vertex(g: CoxeterGraph, v) -> CoxeterGraph:
    if v not in g.vertices:
        raise ValueError(f"vertex {v!r} not in graph")
    verts = tuple(x for x in g.vertices if x != v)
    edges = frozenset(e for e in g.edges if v not in e[:2])
    return CoxeterGraph(verts, edges)


def _path_order(g: CoxeterGraph):
    """Vertices of a path graph in order, or None if not a path."""
    if g.rank == 1:
        return list(g.vertices)
    ends = [v for v in g.vertices if g.degree(v) == 1]
    if len(ends) != 2 or any(g.degree(v) > 2 for v in g.vertices):
        return None
    order = [min(ends)]
    prev = None
    while len(order) < g.rank:
        nxt = [w for w in g.neighbors(order[-1]) if w != prev]
        if len(nxt) != 1:
            return None
        prev = order[-1]
        order.append(nxt[0])
    return order


def _classify_path(g: CoxeterGraph, order):
    labels = [g.label(a, b) for a, b in zip(order, order[1:])]
    n = len(order)
    if all(m == 3 for m in labels):
        return TypeLabel("A", n), order
    if n == 2:
        m = labels[0]
        if m == 4:
            return TypeLabel("B", 2), order
        return TypeLabel("I2", m), order
    big = [m for m in labels if m != 3]
    if len(big) != 1:
        raise ClassificationError("more than one edge label above 3")
    m = big[0]
    idx = labels.index(m)
    if idx > n - 2 - idx:  # orient so the big label sits nearer vertex 1
        order = list(reversed(order))
        labels = list(reversed(labels))
        idx = labels.index(m)
    if m == 4 and idx == 0:
        return TypeLabel("B", n), order
    if m == 4 and n == 4 and idx == 1:
        return TypeLabel("F", 4), order
    if m == 5 and idx == 0 and n in (3, 4):
        return TypeLabel("H", n), order
    raise ClassificationError(f"path with label {m} at position {idx} is not finite")


def _branches(g: CoxeterGraph, center):
    out = []
    for start in g.neighbors(center):
        branch = [start]
        prev = center
        while True:
            nxt = [w for w in g.neighbors(branch[-1]) if w != prev]
            if not nxt:
                break
            if len(nxt) > 1:
                raise ClassificationError("second branch vertex: not finite")
            prev = branch[-1]
            branch.append(nxt[0])
        out.append(branch)
    return sorted(out, key=lambda b: (len(b), b[0]))


def _classify_fork(g: CoxeterGraph, center):
    if any(m != 3 for _, _, m in g.edges):
        raise ClassificationError("branch vertex with a label above 3: not finite")
    branches = _branches(g, center)
    if len(branches) != 3:
        raise ClassificationError("vertex of degree > 3: not finite")
    lens = tuple(len(b) for b in branches)
    b1, b2, b3 = branches
    n = g.rank
    if lens[0] == 1 and lens[1] == 1:
        # D_n: long branch reversed is the path 1..n-3, center is n-2
        order = list(reversed(b3)) + [center] + [b1[0], b2[0]]
        return TypeLabel("D", n), order
    if lens == (1, 2, 2) and n == 6:
        order = [b3[1], b1[0], b3[0], center, b2[0], b2[1]]
        return TypeLabel("E", 6), order
    if lens == (1, 2, 3) and n == 7:
        order = [b2[1], b1[0], b2[0], center] + b3
        return TypeLabel("E", 7), order
    if lens == (1, 2, 4) and n == 8:
        order = [b2[1], b1[0], b2[0], center] + b3
        return TypeLabel("E", 8), order
    raise ClassificationError(f"branch lengths {lens} are not of finite type")


def classify_irreducible(g: CoxeterGraph):
    """Classify a connected nonempty graph.

    Returns (TypeLabel, iso) where iso maps graph vertex ids to standard
    numbering 1..n. Raises ClassificationError for non-finite graphs.
    """
    if g.rank == 0:
        raise ValueError("classify_irreducible needs a nonempty graph")
    comps = connected_components(g)
    if len(comps) != 1:
        raise ValueError("classify_irreducible needs a connected graph")
    if len(g.edges) != g.rank - 1:
        raise ClassificationError("graph contains a cycle: not finite")
    forks = [v for v in g.vertices if g.degree(v) >= 3]
    if not forks:
        order = _path_order(g)
        label, order = _classify_path(g, order)
    elif len(forks) == 1:
        label, order = _classify_fork(g, forks[0])
    else:
        raise ClassificationError("two branch vertices: not finite")
    iso = {v: i + 1 for i, v in enumerate(order)}
    std = standard_graph(label)
    for v, w, m in g.edges:
        if std.label(iso[v], iso[w]) != m:
            raise ClassificationError("graph does not match any finite type")
    return label, iso


def longest_element_automorphism(t: TypeLabel) -> DiagramAutomorphism:
    """The diagram automorphism s -> w0 s w0, on standard numbering.

    Identity exactly for the types whose longest element is central:
    I2(m even), B_n, D_n (n even), H3, H4, E7, E8.
    """
    n = t.coxeter_rank
    perm = {i: i for i in range(1, n + 1)}
    if t.family == "A":
        perm = {i: n + 1 - i for i in range(1, n + 1)}
    elif t.family == "D" and t.rank % 2 == 1 and t.rank >= 4:
        perm[n - 1], perm[n] = n, n - 1
    elif t.family == "E" and t.rank == 6:
        perm = {1: 6, 6: 1, 3: 5, 5: 3, 2: 2, 4: 4}
    elif t.family == "I2" and t.rank % 2 == 1:
        perm = {1: 2, 2: 1}
    return DiagramAutomorphism(t, perm)


def graph_automorphism(g: CoxeterGraph) -> dict:
    """The longest-element automorphism transported onto g's own vertex ids."""
    label, iso = classify_irreducible(g)
    inv = {i: v for v, i in iso.items()}
    sigma = longest_element_automorphism(label)
    return {v: inv[sigma(iso[v])] for v in g.vertices}


def component_labels(g: CoxeterGraph):
    return [classify_irreducible(c)[0] for c, _ in connected_components(g)]


def canonical_spec(g: CoxeterGraph) -> str:
    """Canonical serialization: component names sorted by family then rank."""
    labels = component_labels(g)
    if not labels:
        return "1"
    labels.sort(key=lambda t: (t.family, t.rank))
    return "x".join(str(t) for t in labels)
