"""Exact scalars over Q and Q(sqrt5), and canonical subspaces.

Subspaces are stored as row-spans in strict reduced row echelon form, so
that two subspaces are equal as sets of vectors exactly when their stored
representations compare equal.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

FIELD_Q = "Q"
FIELD_QSQRT5 = "Q(sqrt5)"


class SingularMatrixError(ValueError):
    pass


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"cannot coerce {x!r} to an exact rational")


@dataclass(frozen=True, slots=True)
class FieldScalar:
    """An exact number a + b*sqrt(5), with b forced to 0 over Q."""

    a: Fraction
    b: Fraction
    field: str

    @staticmethod
    def of(x, field: str = FIELD_Q) -> "FieldScalar":
        if isinstance(x, FieldScalar):
            return x
        return FieldScalar(_frac(x), Fraction(0), field)

    @staticmethod
    def sqrt5_part(a, b) -> "FieldScalar":
        return FieldScalar(_frac(a), _frac(b), FIELD_QSQRT5)

    def __post_init__(self):
        if self.field not in (FIELD_Q, FIELD_QSQRT5):
            raise ValueError(f"unknown field tag {self.field!r}")
        if self.field == FIELD_Q and self.b != 0:
            raise ValueError("rational scalar with nonzero sqrt5 part")

    def _join(self, other: "FieldScalar") -> str:
        if self.field == FIELD_QSQRT5 or other.field == FIELD_QSQRT5:
            return FIELD_QSQRT5
        return FIELD_Q

    def __add__(self, other):
        other = FieldScalar.of(other, self.field)
        return FieldScalar(self.a + other.a, self.b + other.b, self._join(other))

    __radd__ = __add__

    def __neg__(self):
        return FieldScalar(-self.a, -self.b, self.field)

    def __sub__(self, other):
        return self + (-FieldScalar.of(other, self.field))

    def __rsub__(self, other):
        return FieldScalar.of(other, self.field) - self

    def __mul__(self, other):
        other = FieldScalar.of(other, self.field)
        return FieldScalar(
            self.a * other.a + 5 * self.b * other.b,
            self.a * other.b + self.b * other.a,
            self._join(other),
        )

    __rmul__ = __mul__

    def inverse(self) -> "FieldScalar":
        norm = self.a * self.a - 5 * self.b * self.b
        if norm == 0:
            raise ZeroDivisionError("division by zero scalar")
        return FieldScalar(self.a / norm, -self.b / norm, self.field)

    def __truediv__(self, other):
        return self * FieldScalar.of(other, self.field).inverse()

    def __rtruediv__(self, other):
        return FieldScalar.of(other, self.field) * self.inverse()

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.a == other and self.b == 0
        if isinstance(other, FieldScalar):
            return self.a == other.a and self.b == other.b
        return NotImplemented

    def __hash__(self):
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b))

    def sign(self) -> int:
        """Sign of the real number a + b*sqrt(5)."""
        if self.b == 0:
            return (self.a > 0) - (self.a < 0)
        if self.a == 0:
            return 1 if self.b > 0 else -1
        if self.a > 0 and self.b > 0:
            return 1
        if self.a < 0 and self.b < 0:
            return -1
        # opposite signs: compare a^2 against 5 b^2
        bigger_rational = self.a * self.a > 5 * self.b * self.b
        if self.a > 0:
            return 1 if bigger_rational else -1
        return -1 if bigger_rational else 1

    def __str__(self):
        if self.b == 0:
            return str(self.a)
        b = self.b
        sep = "+" if b >= 0 else "-"
        return f"{self.a}{sep}{abs(b)}sqrt5"


ZERO = FieldScalar.of(0)
ONE = FieldScalar.of(1)


def scalar_field(rows) -> str:
    for row in rows:
        for x in row:
            if isinstance(x, FieldScalar) and x.field == FIELD_QSQRT5:
                return FIELD_QSQRT5
    return FIELD_Q


def _as_scalar_rows(rows, field):
    return [[FieldScalar.of(x, field) for x in row] for row in rows]


def rref(rows):
    """Strict reduced row echelon form; zero rows dropped.

    Pivot choice is leftmost column, first nonzero row, so the result is
    deterministic. Input rows are lists of FieldScalar (or ints/Fractions).
    """
    field = scalar_field(rows)
    m = _as_scalar_rows(rows, field)
    if not m:
        return []
    ncols = len(m[0])
    pivot_row = 0
    for col in range(ncols):
        src = None
        for r in range(pivot_row, len(m)):
            if not m[r][col].is_zero():
                src = r
                break
        if src is None:
            continue
        m[pivot_row], m[src] = m[src], m[pivot_row]
        inv = m[pivot_row][col].inverse()
        m[pivot_row] = [x * inv for x in m[pivot_row]]
        for r in range(len(m)):
            if r == pivot_row:
                continue
            factor = m[r][col]
            if factor.is_zero():
                continue
            m[r] = [x - factor * y for x, y in zip(m[r], m[pivot_row])]
        pivot_row += 1
        if pivot_row == len(m):
            break
    return [row for row in m[:pivot_row]]


@dataclass(frozen=True, slots=True)
class Subspace:
    """A linear subspace given by its RREF row-span basis."""

    ambient: int
    basis: tuple  # tuple of tuples of FieldScalar, in strict RREF

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def codim(self) -> int:
        return self.ambient - len(self.basis)

    def contains_vector(self, v) -> bool:
        rows = [list(row) for row in self.basis]
        return len(rref(rows + [list(v)])) == len(self.basis)

    def __le__(self, other: "Subspace") -> bool:
        if self.ambient != other.ambient:
            raise ValueError("ambient dimension mismatch")
        return all(other.contains_vector(row) for row in self.basis)


def canonical_subspace(vectors, ambient: int) -> Subspace:
    """Canonical form (RREF basis) of the span of the given row vectors."""
    for row in vectors:
        if len(row) != ambient:
            raise ValueError(
                f"ragged input: row of length {len(row)}, ambient {ambient}"
            )
    basis = rref([list(row) for row in vectors])
    return Subspace(ambient, tuple(tuple(row) for row in basis))


def full_space(ambient: int, field: str = FIELD_Q) -> Subspace:
    rows = [
        [ONE if i == j else FieldScalar.of(0, field) for j in range(ambient)]
        for i in range(ambient)
    ]
    return canonical_subspace(rows, ambient)


def null_space(rows, ambient: int) -> Subspace:
    """Canonical subspace of solutions x of rows . x = 0."""
    reduced = rref([list(r) for r in rows])
    pivots = []
    for row in reduced:
        for j, x in enumerate(row):
            if not x.is_zero():
                pivots.append(j)
                break
    pivot_set = set(pivots)
    free = [j for j in range(ambient) if j not in pivot_set]
    basis = []
    for f in free:
        vec = [ZERO] * ambient
        vec[f] = ONE
        for row, p in zip(reduced, pivots):
            vec[p] = -row[f]
        basis.append(vec)
    return canonical_subspace(basis, ambient)


def orthogonal_rows(s: Subspace):
    """Rows spanning the space of linear forms vanishing on s."""
    if s.dim == 0:
        return [
            [ONE if i == j else ZERO for j in range(s.ambient)]
            for i in range(s.ambient)
        ]
    return [list(row) for row in null_space(s.basis, s.ambient).basis]


def intersect(s1: Subspace, s2: Subspace) -> Subspace:
    """Canonical form of the set intersection of two row-span subspaces."""
    if s1.ambient != s2.ambient:
        raise ValueError("ambient dimension mismatch")
    normals = orthogonal_rows(s1) + orthogonal_rows(s2)
    if not normals:
        return s1
    return null_space(normals, s1.ambient)


def mat_vec(m, v):
    return [sum((m[i][j] * v[j] for j in range(len(v))), ZERO) for i in range(len(m))]


def mat_mul(m1, m2):
    n = len(m2)
    cols = len(m2[0])
    return [
        [sum((m1[i][k] * m2[k][j] for k in range(n)), ZERO) for j in range(cols)]
        for i in range(len(m1))
    ]


def identity_matrix(n, field: str = FIELD_Q):
    return [
        [ONE if i == j else FieldScalar.of(0, field) for j in range(n)]
        for i in range(n)
    ]


def mat_inverse(m):
    n = len(m)
    field = scalar_field(m)
    aug = [
        [FieldScalar.of(x, field) for x in row]
        + [ONE if i == j else ZERO for j in range(n)]
        for i, row in enumerate(m)
    ]
    reduced = rref(aug)
    if len(reduced) < n or any(
        reduced[i][i] != ONE or any(not reduced[i][j].is_zero() for j in range(n) if j != i)
        for i in range(n)
    ):
        raise SingularMatrixError("matrix is not invertible")
    return [row[n:] for row in reduced]


def is_invertible(m) -> bool:
    try:
        mat_inverse(m)
        return True
    except SingularMatrixError:
        return False


def apply_matrix(m, s: Subspace) -> Subspace:
    """Canonical form of { m.x : x in s }; raises on singular m."""
    if len(m) != s.ambient:
        raise ValueError("matrix size does not match ambient dimension")
    if not is_invertible(m):
        raise SingularMatrixError("apply_matrix requires an invertible matrix")
    rows = [mat_vec(m, list(row)) for row in s.basis]
    return canonical_subspace(rows, s.ambient)


def scalar_to_string(x: FieldScalar) -> str:
    return str(x)


def subspace_to_rows_of_strings(s: Subspace):
    return [[scalar_to_string(x) for x in row] for row in s.basis]
