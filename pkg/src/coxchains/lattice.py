"""Intersection lattices and brute-force orbit counting of maximal chains.

A lattice element is identified with the set of reflecting hyperplanes
containing it, which makes deduplication and the group action cheap: a
group element permutes root lines, hence hyperplane index sets. Maximal
chains are counted by rank DP; chain orbits by canonical-representative
hashing (lexicographically smallest image sequence, with the candidate
group subset pruned rank by rank), with a union-find fallback kept as a
second, independent implementation.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from .field import ZERO, full_space, null_space
from .models import (
    DihedralModel,
    ProductModel,
    ReflectionModel,
    generate_group,
)


@dataclass
class IntersectionLattice:
    kind: str            # matrix | dihedral | product
    elements: list       # Subspace for matrix models, opaque keys otherwise
    rank: list           # codimension within the essential space
    covers: list         # covers[i] = indices of elements directly above i
    bottom: int
    top: int
    essential_rank: int
    hypsets: list | None = None  # matrix models: containing-hyperplane sets

    def rank_sizes(self):
        sizes = [0] * (self.essential_rank + 1)
        for r in self.rank:
            sizes[r] += 1
        return tuple(sizes)


@dataclass
class GroupActionTable:
    rows: list            # rows[g] = tuple, image index per lattice element
    group: list           # aligned group elements (perm tuples or pairs)
    generator_rows: list  # indices of generator rows within `rows`

    @property
    def group_order(self) -> int:
        return len(self.rows)


@dataclass
class ChainOrbitCount:
    total_chains: int
    orbit_count: int
    orbit_sizes: tuple


def _dot_zero(u, v) -> bool:
    return sum((a * b for a, b in zip(u, v)), ZERO).is_zero()


def _containing_roots(roots, subspace):
    out = []
    for i, r in enumerate(roots):
        if all(_dot_zero(r, row) for row in subspace.basis):
            out.append(i)
    return frozenset(out)


def _build_matrix_lattice(model: ReflectionModel) -> IntersectionLattice:
    amb = model.ambient
    roots = model.roots
    bottom_space = full_space(amb)
    found = {frozenset(): bottom_space}
    queue = [frozenset()]
    while queue:
        hypset = queue.pop()
        for a in range(len(roots)):
            if a in hypset:
                continue
            gen_rows = [list(roots[i]) for i in hypset] + [list(roots[a])]
            sub = null_space(gen_rows, amb)
            full_set = _containing_roots(roots, sub)
            if full_set not in found:
                found[full_set] = sub
                queue.append(full_set)
    order = sorted(found, key=lambda s: (amb - found[s].dim, tuple(sorted(s))))
    elements = [found[s] for s in order]
    rank = [amb - e.dim for e in elements]
    index = {s: i for i, s in enumerate(order)}
    n = max(rank)
    by_rank = {}
    for i, r in enumerate(rank):
        by_rank.setdefault(r, []).append(i)
    covers = [[] for _ in elements]
    for r in range(n):
        for i in by_rank.get(r, []):
            for j in by_rank.get(r + 1, []):
                if order[i] <= order[j]:
                    covers[i].append(j)
    lattice = IntersectionLattice(
        kind="matrix",
        elements=elements,
        rank=rank,
        covers=covers,
        bottom=0,
        top=index[order[-1]],
        essential_rank=n,
        hypsets=order,
    )
    _validate_graded(lattice)
    if len(by_rank.get(1, [])) != len(roots):
        raise AssertionError("rank-1 elements are not exactly the hyperplanes")
    return lattice


def _validate_graded(l: IntersectionLattice):
    if sum(1 for r in l.rank if r == 0) != 1:
        raise AssertionError("bottom element is not unique")
    if sum(1 for r in l.rank if r == l.essential_rank) != 1:
        raise AssertionError("top element is not unique")
    has_parent = [False] * len(l.elements)
    for i, ups in enumerate(l.covers):
        for j in ups:
            if l.rank[j] != l.rank[i] + 1:
                raise AssertionError("cover relation skips a rank")
            has_parent[j] = True
        if not ups and l.rank[i] != l.essential_rank:
            raise AssertionError("non-top element with no cover above")
    for i, ok in enumerate(has_parent):
        if not ok and l.rank[i] != 0:
            raise AssertionError("non-bottom element with no cover below")


def _build_dihedral_lattice(model: DihedralModel) -> IntersectionLattice:
    m = model.m
    elements = ["V"] + [f"L{k}" for k in range(m)] + ["0"]
    rank = [0] + [1] * m + [2]
    covers = [list(range(1, m + 1))] + [[m + 1]] * m + [[]]
    return IntersectionLattice(
        kind="dihedral",
        elements=elements,
        rank=rank,
        covers=covers,
        bottom=0,
        top=m + 1,
        essential_rank=2,
    )


def _product_lattice(lat1, tab1, lat2, tab2):
    pairs = sorted(
        itertools.product(range(len(lat1.elements)), range(len(lat2.elements))),
        key=lambda p: (lat1.rank[p[0]] + lat2.rank[p[1]], p[0], p[1]),
    )
    index = {p: i for i, p in enumerate(pairs)}
    elements = [(lat1.elements[i], lat2.elements[j]) for i, j in pairs]
    rank = [lat1.rank[i] + lat2.rank[j] for i, j in pairs]
    covers = []
    for i, j in pairs:
        ups = [index[(i2, j)] for i2 in lat1.covers[i]]
        ups += [index[(i, j2)] for j2 in lat2.covers[j]]
        covers.append(ups)
    lattice = IntersectionLattice(
        kind="product",
        elements=elements,
        rank=rank,
        covers=covers,
        bottom=index[(lat1.bottom, lat2.bottom)],
        top=index[(lat1.top, lat2.top)],
        essential_rank=lat1.essential_rank + lat2.essential_rank,
    )
    rows = []
    group = []
    for g1, row1 in zip(tab1.group, tab1.rows):
        for g2, row2 in zip(tab2.group, tab2.rows):
            rows.append(tuple(index[(row1[i], row2[j])] for i, j in pairs))
            group.append((g1, g2))
    gen_rows = [g * len(tab2.rows) for g in tab1.generator_rows]
    gen_rows += list(tab2.generator_rows)
    table = GroupActionTable(rows=rows, group=group, generator_rows=gen_rows)
    return lattice, table


def _matrix_table(model: ReflectionModel, lattice: IntersectionLattice):
    index = {s: i for i, s in enumerate(lattice.hypsets)}
    elements = generate_group(model)
    rows = []
    gen_rows = []
    gen_perms = set(model.gen_perms)
    for pos, el in enumerate(elements):
        line_map = [abs(x) - 1 for x in el.perm]
        row = tuple(
            index[frozenset(line_map[i] for i in hypset)]
            for hypset in lattice.hypsets
        )
        rows.append(row)
        if el.perm in gen_perms:
            gen_rows.append(pos)
    return GroupActionTable(rows=rows, group=[e.perm for e in elements],
                            generator_rows=gen_rows)


def _dihedral_table(model: DihedralModel, lattice: IntersectionLattice):
    m = model.m
    rows = []
    group = []
    gen_rows = []
    for pos, el in enumerate(generate_group(model)):
        row = [0] * (m + 2)
        row[m + 1] = m + 1
        for k in range(m):
            row[1 + k] = 1 + model.line_image(el, k)
        rows.append(tuple(row))
        group.append(el.perm)
        # the reflections across line 0 and line 1 generate I2(m)
        if el.perm in ((0, 1), (1, 1)):
            gen_rows.append(pos)
    return GroupActionTable(rows=rows, group=group, generator_rows=gen_rows)


def build_lattice_with_action(model):
    """Build the intersection lattice and the full group action table."""
    if isinstance(model, ReflectionModel):
        lattice = _build_matrix_lattice(model)
        return lattice, _matrix_table(model, lattice)
    if isinstance(model, DihedralModel):
        lattice = _build_dihedral_lattice(model)
        return lattice, _dihedral_table(model, lattice)
    if isinstance(model, ProductModel):
        parts = [build_lattice_with_action(f) for f, _ in model.factors]
        if not parts:
            lattice = IntersectionLattice(
                kind="product", elements=["V"], rank=[0], covers=[[]],
                bottom=0, top=0, essential_rank=0,
            )
            table = GroupActionTable(rows=[(0,)], group=[()], generator_rows=[])
            return lattice, table
        lattice, table = parts[0]
        for lat2, tab2 in parts[1:]:
            lattice, table = _product_lattice(lattice, table, lat2, tab2)
        return lattice, table
    raise TypeError(f"not a reflection model: {model!r}")


def build_lattice(model) -> IntersectionLattice:
    return build_lattice_with_action(model)[0]


def count_maximal_chains(l: IntersectionLattice) -> int:
    ways = [0] * len(l.elements)
    ways[l.bottom] = 1
    for i in sorted(range(len(l.elements)), key=lambda i: l.rank[i]):
        w = ways[i]
        if w:
            for j in l.covers[i]:
                ways[j] += w
    return ways[l.top]


def maximal_chains(l: IntersectionLattice):
    """All maximal chains as tuples of element indices, bottom excluded."""
    out = []

    def walk(elem, prefix):
        ups = l.covers[elem]
        if not ups:
            out.append(prefix)
            return
        for d in ups:
            walk(d, prefix + (d,))

    walk(l.bottom, ())
    return out


def _scan_atoms(covers, rows, atoms):
    """Canonical-key counts for all chains passing through the given atoms."""
    out = {}
    group = range(len(rows))

    def dfs(elem, cands, key):
        ups = covers[elem]
        if not ups:
            out[key] = out.get(key, 0) + 1
            return
        for d in ups:
            best = None
            kept = []
            for g in cands:
                im = rows[g][d]
                if best is None or im < best:
                    best = im
                    kept = [g]
                elif im == best:
                    kept.append(g)
            dfs(d, kept, key + (best,))

    for atom in atoms:
        best = min(rows[g][atom] for g in group)
        cands = [g for g in group if rows[g][atom] == best]
        dfs(atom, cands, (best,))
    return out


def _scan_atoms_job(args):
    return _scan_atoms(*args)


def count_chain_orbits(l: IntersectionLattice, table: GroupActionTable,
                       workers: int = 1) -> ChainOrbitCount:
    """Orbit count of the group action on maximal chains.

    A chain's orbit key is the lexicographically smallest image sequence
    over all group elements, computed incrementally: at each rank the
    candidate set shrinks to the subgroup coset realizing the minimum so
    far. Partitioning the chain space by atom makes the result identical
    for any worker count.
    """
    if workers < 1:
        raise ValueError("workers must be >= 1")
    atoms = sorted(l.covers[l.bottom])
    merged = {}
    if workers == 1 or len(atoms) <= 1:
        merged = _scan_atoms(l.covers, table.rows, atoms)
    else:
        chunks = [atoms[i::workers] for i in range(workers)]
        chunks = [c for c in chunks if c]
        jobs = [(l.covers, table.rows, c) for c in chunks]
        with ProcessPoolExecutor(max_workers=len(chunks)) as pool:
            for part in pool.map(_scan_atoms_job, jobs):
                for key, cnt in part.items():
                    merged[key] = merged.get(key, 0) + cnt
    if not atoms:  # rank-0 lattice: the empty chain is the single orbit
        merged = {(): 1}
    sizes = tuple(sorted(merged.values()))
    total = sum(sizes)
    if total != count_maximal_chains(l):
        raise AssertionError("orbit sizes do not sum to the chain count")
    order = table.group_order
    for s in sizes:
        if order % s != 0:
            raise AssertionError(f"orbit size {s} does not divide |W| = {order}")
    return ChainOrbitCount(total_chains=total, orbit_count=len(merged),
                           orbit_sizes=sizes)


def count_chain_orbits_unionfind(l: IntersectionLattice,
                                 table: GroupActionTable) -> ChainOrbitCount:
    """Independent oracle: union-find over the full chain set."""
    chains = maximal_chains(l)
    index = {c: i for i, c in enumerate(chains)}
    parent = list(range(len(chains)))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for g in table.generator_rows:
        row = table.rows[g]
        for c, i in index.items():
            j = index[tuple(row[e] for e in c)]
            ri, rj = find(i), find(j)
            if ri != rj:
                parent[ri] = rj
    buckets = {}
    for i in range(len(chains)):
        r = find(i)
        buckets[r] = buckets.get(r, 0) + 1
    sizes = tuple(sorted(buckets.values()))
    return ChainOrbitCount(total_chains=len(chains), orbit_count=len(buckets),
                           orbit_sizes=sizes)


def orbit_count_of_lines(l: IntersectionLattice, table: GroupActionTable) -> int:
    """Number of group orbits among the coatoms (the lines of the lattice)."""
    coatoms = [i for i, r in enumerate(l.rank) if r == l.essential_rank - 1]
    seen = set()
    orbits = 0
    for c in coatoms:
        if c in seen:
            continue
        orbits += 1
        frontier = [c]
        seen.add(c)
        while frontier:
            e = frontier.pop()
            for g in table.generator_rows:
                im = table.rows[g][e]
                if im not in seen:
                    seen.add(im)
                    frontier.append(im)
    return orbits


def lattice_to_json(l: IntersectionLattice) -> dict:
    """Stable JSON dump: elements with codim and exact basis rows, cover
    edges, and rank sizes."""
    elems = []
    for i, e in enumerate(l.elements):
        entry = {"index": i, "codim": l.rank[i]}
        if l.kind == "matrix":
            entry["basis"] = [[str(x) for x in row] for row in e.basis]
        else:
            entry["key"] = str(e)
        elems.append(entry)
    edges = [[i, j] for i, ups in enumerate(l.covers) for j in sorted(ups)]
    return {
        "essential_rank": l.essential_rank,
        "rank_sizes": list(l.rank_sizes()),
        "elements": elems,
        "cover_edges": edges,
    }
