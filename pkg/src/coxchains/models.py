"""Concrete realizations of the finite reflection groups.

Matrix models carry exact root coordinates and generator matrices; group
elements are stored as signed permutations of the root-line indices and
their matrices are rebuilt on demand from the action on a root basis.
Dihedral groups I2(m) get a combinatorial model (m lines indexed 0..m-1,
rotations and reflections acting by index arithmetic) so we never need
the field Q(cos pi/m).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .field import (
    FIELD_Q,
    FIELD_QSQRT5,
    ONE,
    ZERO,
    FieldScalar,
    Subspace,
    canonical_subspace,
    identity_matrix,
    mat_inverse,
    mat_mul,
    mat_vec,
    null_space,
    scalar_to_string,
)
from .graphs import (
    CoxeterGraph,
    TypeLabel,
    classify_irreducible,
    connected_components,
    parse_group_spec,
)

DEFAULT_ELEMENT_CAP = 100_000

GROUP_ORDERS = {
    "A": lambda n: _factorial(n + 1),
    "B": lambda n: 2**n * _factorial(n),
    "D": lambda n: 2 ** (n - 1) * _factorial(n),
    "F": lambda n: 1152,
    "H": lambda n: 120 if n == 3 else 14400,
    "E": lambda n: {6: 51840, 7: 2903040, 8: 696729600}[n],
    "I2": lambda m: 2 * m,
}

REFLECTION_COUNTS = {
    "A": lambda n: n * (n + 1) // 2,
    "B": lambda n: n * n,
    "D": lambda n: n * (n - 1),
    "F": lambda n: 24,
    "H": lambda n: 15 if n == 3 else 60,
    "E": lambda n: {6: 36, 7: 63, 8: 120}[n],
    "I2": lambda m: m,
}


class UnsupportedModelError(ValueError):
    """Raised when a type has no brute-force realization here."""


def _factorial(n: int) -> int:
    out = 1
    for k in range(2, n + 1):
        out *= k
    return out


def group_order(t: TypeLabel) -> int:
    return GROUP_ORDERS[t.family](t.rank)


def reflection_count(t: TypeLabel) -> int:
    return REFLECTION_COUNTS[t.family](t.rank)


@dataclass(frozen=True)
class GroupElement:
    """A group element as a signed permutation of root-line indices.

    perm[i] = s * (j + 1) means the element maps root i to s * root j.
    """

    perm: tuple

    def __len__(self):
        return len(self.perm)


def compose_perms(g: tuple, h: tuple) -> tuple:
    """Signed-permutation product g.h (apply h first, then g)."""
    out = []
    for x in h:
        j = abs(x) - 1
        y = g[j]
        out.append(y if x > 0 else -y)
    return tuple(out)


def _q(x) -> FieldScalar:
    return FieldScalar.of(Fraction(x))


def _simple_roots(t: TypeLabel):
    """Simple root coordinates per standard numbering; returns (roots, ambient)."""
    fam, n = t.family, t.rank
    if fam == "A":
        amb = n + 1
        return [_e_minus_e(amb, i, i + 1) for i in range(n)], amb
    if fam == "B":
        amb = n
        roots = [[_q(1 if j == 0 else 0) for j in range(amb)]]
        for i in range(1, n):
            roots.append(_e_minus_e(amb, i - 1, i))
        return roots, amb
    if fam == "D":
        amb = n
        roots = [_e_minus_e(amb, i, i + 1) for i in range(n - 2)]
        roots.append(_e_minus_e(amb, n - 2, n - 1))
        roots.append(_e_plus_e(amb, n - 2, n - 1))
        return roots, amb
    if fam == "F":
        amb = 4
        half = Fraction(1, 2)
        return [
            _e_minus_e(amb, 1, 2),
            _e_minus_e(amb, 2, 3),
            [_q(0), _q(0), _q(0), _q(1)],
            [_q(half), _q(-half), _q(-half), _q(-half)],
        ], amb
    if fam == "E" and n == 6:
        amb = 8
        half = Fraction(1, 2)
        a1 = [_q(half), _q(-half), _q(-half), _q(-half), _q(-half), _q(-half), _q(-half), _q(half)]
        a2 = _e_plus_e(amb, 0, 1)
        # Bourbaki: alpha3 = e2-e1, alpha4 = e3-e2, ...
        a3 = [-x for x in _e_minus_e(amb, 0, 1)]
        a4 = [-x for x in _e_minus_e(amb, 1, 2)]
        a5 = [-x for x in _e_minus_e(amb, 2, 3)]
        a6 = [-x for x in _e_minus_e(amb, 3, 4)]
        return [a1, a2, a3, a4, a5, a6], amb
    if fam == "H" and n == 3:
        amb = 3
        tau_half = FieldScalar.sqrt5_part(Fraction(1, 4), Fraction(1, 4))
        inv_2tau = FieldScalar.sqrt5_part(Fraction(-1, 4), Fraction(1, 4))
        z = FieldScalar.of(0, FIELD_QSQRT5)
        one = FieldScalar.of(1, FIELD_QSQRT5)
        half = FieldScalar.of(Fraction(1, 2), FIELD_QSQRT5)
        return [
            [z, one, z],
            [half, tau_half, inv_2tau],
            [one, z, z],
        ], amb
    raise UnsupportedModelError(
        f"no matrix model for {t}; the recursion method supports this type"
    )


def _e_minus_e(amb, i, j):
    return [_q(1 if k == i else (-1 if k == j else 0)) for k in range(amb)]


def _e_plus_e(amb, i, j):
    return [_q(1 if k in (i, j) else 0) for k in range(amb)]


def _dot(u, v) -> FieldScalar:
    return sum((a * b for a, b in zip(u, v)), ZERO)


def _reflection_matrix(root, amb):
    norm = _dot(root, root)
    cols = []
    for j in range(amb):
        coef = (root[j] + root[j]) / norm
        col = [
            (ONE if i == j else ZERO) - coef * root[i]
            for i in range(amb)
        ]
        cols.append(col)
    return [[cols[j][i] for j in range(amb)] for i in range(amb)]


def _canonical_sign(vec):
    for x in vec:
        s = x.sign()
        if s > 0:
            return tuple(vec), 1
        if s < 0:
            return tuple(-y for y in vec), -1
    raise ValueError("zero root")


@dataclass
class ReflectionModel:
    """Matrix model of an irreducible finite reflection group."""

    label: TypeLabel
    kind: str  # "matrix"
    ambient: int
    field: str
    roots: list          # one canonical-signed representative per root pair
    generators: list     # reflection matrices, one per graph vertex
    gen_perms: list      # signed root permutations of the generators

    @property
    def essential_rank(self) -> int:
        return self.ambient - self.fixed_space_of_group().dim

    def fixed_space_of_group(self) -> Subspace:
        return null_space([list(r) for r in self.roots], self.ambient)

    def _root_frame(self):
        """Invertible column matrix [independent roots | group-fixed vectors]."""
        rows = []
        picked = []
        for idx, r in enumerate(self.roots):
            from .field import rref

            if len(rref(rows + [list(r)])) > len(rows):
                rows.append(list(r))
                picked.append(idx)
            if len(rows) == self.essential_rank:
                break
        fixed = [list(v) for v in self.fixed_space_of_group().basis]
        cols = rows + fixed
        frame = [[cols[j][i] for j in range(self.ambient)] for i in range(self.ambient)]
        return picked, fixed, frame

    def matrix_of(self, g: GroupElement):
        """Rebuild the matrix of g from its signed root permutation."""
        if not hasattr(self, "_frame_cache"):
            picked, fixed, frame = self._root_frame()
            self._frame_cache = (picked, fixed, mat_inverse(frame))
        picked, fixed, frame_inv = self._frame_cache
        img_cols = []
        for idx in picked:
            x = g.perm[idx]
            j = abs(x) - 1
            root = self.roots[j]
            img_cols.append([r if x > 0 else -r for r in root])
        img_cols.extend(fixed)
        img = [
            [img_cols[j][i] for j in range(self.ambient)]
            for i in range(self.ambient)
        ]
        return mat_mul(img, frame_inv)


@dataclass
class DihedralModel:
    """Index-arithmetic model of I2(m): lines L_0..L_{m-1} at angles k*pi/m."""

    label: TypeLabel
    kind: str  # "dihedral"
    m: int

    @property
    def essential_rank(self) -> int:
        return 2

    def elements(self):
        """All 2m elements as (j, eps): rotation by 2*pi*j/m, then optional
        reflection across the angle-0 axis is folded into the line action."""
        m = self.m
        return [GroupElement((j, eps)) for eps in (0, 1) for j in range(m)]

    def line_image(self, element: GroupElement, k: int) -> int:
        j, eps = element.perm
        if eps == 0:
            return (k + 2 * j) % self.m
        return (2 * j - k) % self.m


@dataclass
class ProductModel:
    """Direct product of irreducible factor models."""

    kind: str  # "product"
    factors: list  # of (ReflectionModel | DihedralModel, vertex ids tuple)

    @property
    def essential_rank(self) -> int:
        return sum(f.essential_rank for f, _ in self.factors)


_MATRIX_RANK_LIMITS = {"A": 6, "B": 5, "D": 5, "F": 4, "H": 3, "E": 6}


def _build_irreducible(t: TypeLabel):
    if t.family == "I2":
        if t.rank > 30:
            raise UnsupportedModelError(
                f"I2({t.rank}) exceeds the supported dihedral range (m <= 30)"
            )
        return DihedralModel(t, "dihedral", t.rank)
    limit = _MATRIX_RANK_LIMITS.get(t.family)
    if limit is None or t.rank > limit:
        raise UnsupportedModelError(
            f"{t} has no brute-force model (group too large); "
            f"use the recursion method instead"
        )
    simple, amb = _simple_roots(t)
    field = FIELD_QSQRT5 if t.family == "H" else FIELD_Q
    generators = [_reflection_matrix(r, amb) for r in simple]
    # close the simple roots under the generators, one representative per pair
    roots = []
    index = {}
    queue = []
    for r in simple:
        canon, _ = _canonical_sign(list(r))
        if canon not in index:
            index[canon] = len(roots)
            roots.append(list(canon))
            queue.append(list(canon))
    while queue:
        r = queue.pop()
        for gen in generators:
            img = mat_vec(gen, r)
            canon, _ = _canonical_sign(img)
            if canon not in index:
                index[canon] = len(roots)
                roots.append(list(canon))
                queue.append(list(canon))
    expected = reflection_count(t)
    if len(roots) != expected:
        raise AssertionError(
            f"{t}: root closure found {len(roots)} lines, expected {expected}"
        )
    gen_perms = []
    for gen in generators:
        perm = []
        for r in roots:
            canon, sign = _canonical_sign(mat_vec(gen, r))
            perm.append(sign * (index[canon] + 1))
        gen_perms.append(tuple(perm))
    return ReflectionModel(t, "matrix", amb, field, roots, generators, gen_perms)


def build_model(g, element_cap: int = DEFAULT_ELEMENT_CAP):
    """Build a reflection model for a graph or spec string.

    Irreducible types get a matrix or dihedral model; reducible groups get
    a ProductModel over their components.
    """
    if isinstance(g, str):
        g = parse_group_spec(g)
    comps = connected_components(g)
    order = 1
    factors = []
    for comp, _ in comps:
        label, _ = classify_irreducible(comp)
        factors.append((_build_irreducible(label), comp.vertices))
        order *= group_order(label)
    if order > element_cap:
        raise UnsupportedModelError(
            f"group order {order} exceeds the element cap {element_cap}; "
            f"use the recursion method instead"
        )
    if len(factors) == 1:
        return factors[0][0]
    return ProductModel("product", factors)


def generate_group(model, element_cap: int = DEFAULT_ELEMENT_CAP):
    """All group elements, identity first, by breadth-first closure."""
    if isinstance(model, DihedralModel):
        return model.elements()
    if isinstance(model, ProductModel):
        import itertools

        factor_lists = [generate_group(f, element_cap) for f, _ in model.factors]
        return [GroupElement(tuple(e.perm for e in combo))
                for combo in itertools.product(*factor_lists)]
    nroots = len(model.roots)
    identity = tuple(i + 1 for i in range(nroots))
    seen = {identity}
    elements = [identity]
    frontier = [identity]
    while frontier:
        nxt = []
        for h in frontier:
            for gen in model.gen_perms:
                prod = compose_perms(gen, h)
                if prod not in seen:
                    seen.add(prod)
                    elements.append(prod)
                    nxt.append(prod)
                    if len(elements) > element_cap:
                        raise UnsupportedModelError(
                            f"group closure exceeded the cap of {element_cap} "
                            f"elements; this type is too large for brute force"
                        )
        frontier = nxt
    return [GroupElement(p) for p in elements]


def reflecting_hyperplanes(model: ReflectionModel):
    """One canonical hyperplane (the solution set of <root, x> = 0) per root."""
    if model.kind != "matrix":
        raise ValueError("reflecting_hyperplanes needs a matrix model")
    out = []
    seen = set()
    for r in model.roots:
        h = null_space([list(r)], model.ambient)
        if h not in seen:
            seen.add(h)
            out.append(h)
    return out


def fixed_space(model: ReflectionModel, g: GroupElement) -> Subspace:
    """Canonical kernel of (matrix(g) - identity)."""
    if model.kind != "matrix":
        raise ValueError("fixed_space needs a matrix model")
    mat = model.matrix_of(g)
    ident = identity_matrix(model.ambient, model.field)
    rows = [
        [mat[i][j] - ident[i][j] for j in range(model.ambient)]
        for i in range(model.ambient)
    ]
    return null_space(rows, model.ambient)


def model_to_json(model) -> dict:
    """Documented JSON export of roots and generators for external checking."""
    if isinstance(model, DihedralModel):
        return {
            "kind": "dihedral",
            "type": str(model.label),
            "lines": model.m,
        }
    if isinstance(model, ProductModel):
        return {
            "kind": "product",
            "factors": [model_to_json(f) for f, _ in model.factors],
        }
    return {
        "kind": "matrix",
        "type": str(model.label),
        "ambient": model.ambient,
        "field": model.field,
        "roots": [[scalar_to_string(x) for x in r] for r in model.roots],
        "generators": [
            [[scalar_to_string(x) for x in row] for row in gen]
            for gen in model.generators
        ],
    }
