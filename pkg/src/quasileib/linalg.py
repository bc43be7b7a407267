"""Exact vectors, matrices and echelon-form subspaces over any supported field.

Vectors are tuples of scalars and matrices are tuples of row vectors; all
operators act on row vectors from the right, so ``apply_row(v, M)`` is
``v @ M``.  A :class:`Subspace` stores the reduced row-echelon basis of a
row space, which makes subspace equality structural equality.
"""

from __future__ import annotations

import itertools

from .errors import BudgetExceeded, DimensionMismatch, MixedFields, UnsupportedField
from .fields import Field, Scalar

DEFAULT_BUDGET = 1_000_000

# ---------------------------------------------------------------------------
# vectors and matrices (plain tuples)
# ---------------------------------------------------------------------------


def vec(field: Field, values) -> tuple:
    return tuple(v if isinstance(v, Scalar) else field(v) for v in values)


def zero_vec(field: Field, n: int) -> tuple:
    z = field.zero
    return (z,) * n


def unit_vec(field: Field, n: int, i: int) -> tuple:
    z, o = field.zero, field.one
    return tuple(o if j == i else z for j in range(n))


def vec_add(u: tuple, v: tuple) -> tuple:
    return tuple(a + b for a, b in zip(u, v))


def vec_sub(u: tuple, v: tuple) -> tuple:
    return tuple(a - b for a, b in zip(u, v))


def vec_scale(c: Scalar, u: tuple) -> tuple:
    return tuple(c * a for a in u)


def vec_is_zero(u: tuple) -> bool:
    return all(not a for a in u)


def mat_identity(field: Field, n: int) -> tuple:
    return tuple(unit_vec(field, n, i) for i in range(n))


def mat_transpose(a: tuple) -> tuple:
    return tuple(zip(*a)) if a else ()


def apply_row(v: tuple, a: tuple) -> tuple:
    """v @ a for a row vector v."""
    if len(v) != len(a):
        raise DimensionMismatch(f"vector of length {len(v)} vs {len(a)} rows")
    if not a:
        return ()
    ncols = len(a[0])
    out = [v[0] * a[0][j] for j in range(ncols)]
    for i in range(1, len(a)):
        vi = v[i]
        if not vi:
            continue
        row = a[i]
        for j in range(ncols):
            out[j] = out[j] + vi * row[j]
    return tuple(out)


def mat_mul(a: tuple, b: tuple) -> tuple:
    return tuple(apply_row(row, b) for row in a)


def mat_pow(field: Field, a: tuple, k: int) -> tuple:
    out = mat_identity(field, len(a))
    base = a
    while k:
        if k & 1:
            out = mat_mul(out, base)
        base = mat_mul(base, base)
        k >>= 1
    return out


def mat_is_zero(a: tuple) -> bool:
    return all(vec_is_zero(row) for row in a)


# ---------------------------------------------------------------------------
# row reduction
# ---------------------------------------------------------------------------


def rref(field: Field, rows, ncols: int):
    """Reduced row-echelon form.  Returns (rows, pivot columns); zero rows
    are dropped."""
    work = [list(r) for r in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        pivot_row = None
        for i in range(r, len(work)):
            if work[i][c]:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        work[r], work[pivot_row] = work[pivot_row], work[r]
        inv = work[r][c].inv()
        work[r] = [inv * x for x in work[r]]
        for i in range(len(work)):
            if i != r and work[i][c]:
                f = work[i][c]
                work[i] = [x - f * y for x, y in zip(work[i], work[r])]
        pivots.append(c)
        r += 1
        if r == len(work):
            break
    return tuple(tuple(row) for row in work[:r]), tuple(pivots)


class Subspace:
    """A subspace of F^n held as its reduced row-echelon basis."""

    __slots__ = ("field", "ambient_dim", "rows", "pivots")

    def __init__(self, field: Field, ambient_dim: int, rows: tuple, pivots: tuple):
        self.field = field
        self.ambient_dim = ambient_dim
        self.rows = rows
        self.pivots = pivots

    @property
    def dim(self) -> int:
        return len(self.rows)

    def is_zero(self) -> bool:
        return not self.rows

    def _check_ambient(self, other: "Subspace"):
        if self.field != other.field:
            raise MixedFields(f"{self.field} vs {other.field}")
        if self.ambient_dim != other.ambient_dim:
            raise DimensionMismatch(
                f"ambient {self.ambient_dim} vs {other.ambient_dim}"
            )

    def reduce(self, v: tuple) -> tuple:
        """The canonical representative of v modulo this subspace."""
        if len(v) != self.ambient_dim:
            raise DimensionMismatch(f"vector length {len(v)} in F^{self.ambient_dim}")
        for row, p in zip(self.rows, self.pivots):
            c = v[p]
            if c:
                v = tuple(x - c * y for x, y in zip(v, row))
        return v

    def contains_vector(self, v: tuple) -> bool:
        return vec_is_zero(self.reduce(v))

    def contains(self, other: "Subspace") -> bool:
        self._check_ambient(other)
        return all(self.contains_vector(r) for r in other.rows)

    def sum(self, other: "Subspace") -> "Subspace":
        self._check_ambient(other)
        return echelonize(self.field, self.ambient_dim, self.rows + other.rows)

    def intersect(self, other: "Subspace") -> "Subspace":
        self._check_ambient(other)
        if self.is_zero() or other.is_zero():
            return zero_subspace(self.field, self.ambient_dim)
        stacked = self.rows + other.rows
        kernel = left_kernel(self.field, stacked)
        vectors = []
        for coeffs in kernel.rows:
            u = coeffs[: self.dim]
            vectors.append(apply_row(u, self.rows) if self.dim else None)
        vectors = [v for v in vectors if v is not None]
        return echelonize(self.field, self.ambient_dim, vectors)

    def non_pivots(self) -> tuple:
        pivset = set(self.pivots)
        return tuple(c for c in range(self.ambient_dim) if c not in pivset)

    def sort_key(self):
        return (self.dim, tuple(tuple(s.to_json() for s in r) for r in self.rows))

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return (
            self.field == other.field
            and self.ambient_dim == other.ambient_dim
            and self.rows == other.rows
        )

    def __hash__(self):
        return hash((self.field, self.ambient_dim, self.rows))

    def __repr__(self):
        if self.is_zero():
            return f"<0 in F^{self.ambient_dim}>"
        rows = "; ".join("(" + ", ".join(map(repr, r)) + ")" for r in self.rows)
        return f"<span {rows}>"

    def to_json(self):
        return [[s.to_json() for s in row] for row in self.rows]


def echelonize(field: Field, ambient_dim: int, vectors) -> Subspace:
    """Canonical subspace spanned by the given vectors."""
    vectors = list(vectors)
    for v in vectors:
        if len(v) != ambient_dim:
            raise DimensionMismatch(f"vector length {len(v)} in F^{ambient_dim}")
        for s in v:
            if s.field != field:
                raise MixedFields(f"{field} vs {s.field}")
    rows, pivots = rref(field, vectors, ambient_dim)
    return Subspace(field, ambient_dim, rows, pivots)


def zero_subspace(field: Field, n: int) -> Subspace:
    return Subspace(field, n, (), ())


def full_subspace(field: Field, n: int) -> Subspace:
    rows = mat_identity(field, n)
    return Subspace(field, n, rows, tuple(range(n)))


def solve_left(field: Field, rows, target: tuple):
    """Some x with x @ rows = target, or None if the system is inconsistent.

    ``rows`` is a sequence of r equal-length vectors; x has length r.
    """
    r = len(rows)
    if r == 0:
        return () if vec_is_zero(target) else None
    ncols = len(rows[0])
    # augmented system on the transpose: columns are the unknown directions
    aug = [
        tuple(rows[i][j] for i in range(r)) + (target[j],) for j in range(ncols)
    ]
    reduced, pivots = rref(field, aug, r + 1)
    if r in pivots:
        return None
    x = [field.zero] * r
    for row, p in zip(reduced, pivots):
        x[p] = row[r]
    return tuple(x)


def left_kernel(field: Field, rows) -> Subspace:
    """All v with v @ rows = 0, i.e. the left null space of the matrix."""
    nrows = len(rows)
    if nrows == 0:
        return zero_subspace(field, 0)
    transposed = mat_transpose(rows)
    reduced, pivots = rref(field, transposed, nrows)
    pivset = set(pivots)
    free = [c for c in range(nrows) if c not in pivset]
    basis = []
    for f in free:
        v = [field.zero] * nrows
        v[f] = field.one
        for row, p in zip(reduced, pivots):
            v[p] = -row[f]
        basis.append(tuple(v))
    return echelonize(field, nrows, basis)


# ---------------------------------------------------------------------------
# enumeration over finite prime fields
# ---------------------------------------------------------------------------


def _require_finite(field: Field):
    if not field.is_finite:
        raise UnsupportedField(f"enumeration needs a finite field, got {field}")


def _check_budget(count: int, budget: int, what: str):
    if count > budget:
        raise BudgetExceeded(f"{what}: {count} exceeds budget {budget}")


def all_vectors(field: Field, n: int, budget: int = DEFAULT_BUDGET):
    """Every vector of F^n, lexicographically."""
    _require_finite(field)
    _check_budget(field.order**n, budget, f"vectors of F^{n}")
    elems = list(field.elements())
    for combo in itertools.product(elems, repeat=n):
        yield combo


def projective_points(field: Field, n: int, budget: int = DEFAULT_BUDGET):
    """One representative per 1-dimensional subspace of F^n: the leading
    nonzero coordinate is 1."""
    _require_finite(field)
    _check_budget(field.order**n, budget, f"projective points of F^{n}")
    elems = list(field.elements())
    z, o = field.zero, field.one
    for lead in range(n):
        for tail in itertools.product(elems, repeat=n - lead - 1):
            yield (z,) * lead + (o,) + tail


def enumerate_subspaces(
    field: Field,
    n: int,
    dims=None,
    budget: int = DEFAULT_BUDGET,
):
    """Every subspace of F^n exactly once, by direct construction of reduced
    row-echelon bases: choose pivot columns, then fill the free entries.

    The order (dimension, pivot set, free values) is deterministic, so the
    stream can be partitioned and restarted.
    """
    _require_finite(field)
    _check_budget(field.order**n, budget, f"subspaces of F^{n}")
    if dims is None:
        dims = range(n + 1)
    elif isinstance(dims, int):
        dims = (dims,)
    elems = list(field.elements())
    z, o = field.zero, field.one
    for k in dims:
        if k == 0:
            yield zero_subspace(field, n)
            continue
        if k > n:
            continue
        for pivots in itertools.combinations(range(n), k):
            pivset = set(pivots)
            free_slots = [
                (i, c)
                for i, p in enumerate(pivots)
                for c in range(p + 1, n)
                if c not in pivset
            ]
            for values in itertools.product(elems, repeat=len(free_slots)):
                rows = [[z] * n for _ in range(k)]
                for i, p in enumerate(pivots):
                    rows[i][p] = o
                for (i, c), val in zip(free_slots, values):
                    rows[i][c] = val
                yield Subspace(
                    field, n, tuple(tuple(r) for r in rows), tuple(pivots)
                )
