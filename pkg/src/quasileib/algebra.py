"""Leibniz algebras presented by structure constants.

An n-dimensional algebra is a cube ``c`` with ``[e_i, e_j] = sum_k
c[i][j][k] e_k``; the cube is stored as ``cube[i][j] = that product vector``.
A raw :class:`MultiplicationTable` promises nothing; a
:class:`LeibnizAlgebra` has been checked against the right Leibniz identity

    [x, [y, z]] = [[x, y], z] - [[x, z], y]

on all basis triples, which suffices by trilinearity.

The ideal of squares ``span{x*x}`` is generated by the basis squares together
with the polarized products ``[e_i, e_j] + [e_j, e_i]`` (expand
``(e_i + e_j)**2``), which is an exact generating set in every characteristic.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import (
    DimensionMismatch,
    MalformedInput,
    MixedFields,
    NotAnIdeal,
    NotASubalgebra,
    NotLeibniz,
)
from .fields import Field, Scalar, field_from_json
from .linalg import (
    DEFAULT_BUDGET,
    Subspace,
    echelonize,
    enumerate_subspaces,
    full_subspace,
    left_kernel,
    unit_vec,
    vec_is_zero,
    vec_scale,
    vec_sub,
    zero_subspace,
    zero_vec,
)


class MultiplicationTable:
    """Raw structure constants; no identity is promised."""

    __slots__ = ("field", "dim", "cube", "basis_names")

    def __init__(self, field: Field, dim: int, cube, basis_names=None):
        cube = tuple(tuple(tuple(v) for v in row) for row in cube)
        if len(cube) != dim or any(
            len(row) != dim or any(len(v) != dim for v in row) for row in cube
        ):
            raise DimensionMismatch(f"cube is not {dim}x{dim}x{dim}")
        for row in cube:
            for v in row:
                for s in v:
                    if not isinstance(s, Scalar) or s.field != field:
                        raise MixedFields("cube entries must be scalars of the field")
        if basis_names is None:
            basis_names = tuple(f"e{i+1}" for i in range(dim))
        if len(basis_names) != dim:
            raise DimensionMismatch("one basis name per dimension")
        self.field = field
        self.dim = dim
        self.cube = cube
        self.basis_names = tuple(basis_names)

    def __eq__(self, other):
        if not isinstance(other, MultiplicationTable):
            return NotImplemented
        return (
            self.field == other.field
            and self.dim == other.dim
            and self.cube == other.cube
        )

    def __hash__(self):
        return hash((self.field, self.dim, self.cube))

    def __repr__(self):
        return f"<table dim {self.dim} over {self.field}>"

    def to_json(self):
        return {
            "field": self.field.to_json(),
            "dim": self.dim,
            "basis_names": list(self.basis_names),
            "table": [
                [[s.to_json() for s in v] for v in row] for row in self.cube
            ],
        }


def table_from_json(obj) -> MultiplicationTable:
    if not isinstance(obj, dict):
        raise MalformedInput("algebra file must be a JSON object")
    for key in ("field", "dim", "table"):
        if key not in obj:
            raise MalformedInput(f"algebra file is missing {key!r}")
    field = field_from_json(obj["field"])
    dim = obj["dim"]
    if not isinstance(dim, int) or dim < 0:
        raise MalformedInput(f"bad dimension: {dim!r}")
    raw = obj["table"]
    if len(raw) != dim or any(
        len(row) != dim or any(len(v) != dim for v in row) for row in raw
    ):
        raise MalformedInput("table is not a dim^3 cube")
    cube = tuple(
        tuple(tuple(field.decode(s) for s in v) for v in row) for row in raw
    )
    names = obj.get("basis_names")
    return MultiplicationTable(field, dim, cube, names)


def build_table(field: Field, basis_names, products) -> MultiplicationTable:
    """Table from a sparse product map {(i, j): {k: coeff}}."""
    n = len(basis_names)
    cube = [[list(zero_vec(field, n)) for _ in range(n)] for _ in range(n)]
    for (i, j), entry in products.items():
        for k, coeff in entry.items():
            cube[i][j][k] = coeff if isinstance(coeff, Scalar) else field(coeff)
    return MultiplicationTable(field, n, cube, basis_names)


# ---------------------------------------------------------------------------
# identity validation
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ValidationResult:
    ok: bool
    mode: str
    witness: tuple | None = None  # (i, j, k) basis triple, or (i, j) for lie
    lhs: tuple | None = None
    rhs: tuple | None = None

    def to_json(self):
        out = {"ok": self.ok, "mode": self.mode}
        if not self.ok:
            out["witness"] = list(self.witness)
            if self.lhs is not None:
                out["lhs"] = [s.to_json() for s in self.lhs]
            if self.rhs is not None:
                out["rhs"] = [s.to_json() for s in self.rhs]
        return out


def _bracket_cube(cube, u: tuple, v: tuple, field: Field) -> tuple:
    n = len(u)
    out = list(zero_vec(field, n))
    for i, ui in enumerate(u):
        if not ui:
            continue
        row = cube[i]
        for j, vj in enumerate(v):
            if not vj:
                continue
            c = ui * vj
            w = row[j]
            for k in range(n):
                if w[k]:
                    out[k] = out[k] + c * w[k]
    return tuple(out)


def validate(table: MultiplicationTable, mode: str = "right") -> ValidationResult:
    """Check the chosen identity on all basis triples.

    ``right``: [x,[y,z]] = [[x,y],z] - [[x,z],y]
    ``left`` : [x,[y,z]] = [[x,y],z] + [y,[x,z]]
    ``lie``  : right identity plus [e_i, e_i] = 0 and antisymmetry
    """
    if mode not in ("right", "left", "lie"):
        raise ValueError(f"unknown mode {mode!r}")
    field, n, cube = table.field, table.dim, table.cube
    if mode == "lie":
        for i in range(n):
            if not vec_is_zero(cube[i][i]):
                return ValidationResult(False, mode, (i, i), cube[i][i], None)
        for i in range(n):
            for j in range(i + 1, n):
                if not vec_is_zero(vec_sub(cube[i][j], vec_scale(-field.one, cube[j][i]))):
                    return ValidationResult(False, mode, (i, j), cube[i][j], cube[j][i])
    br = lambda u, v: _bracket_cube(cube, u, v, field)
    for i in range(n):
        ei = unit_vec(field, n, i)
        for j in range(n):
            ej = unit_vec(field, n, j)
            for k in range(n):
                ek = unit_vec(field, n, k)
                lhs = br(ei, cube[j][k])
                if mode == "left":
                    rhs = tuple(
                        a + b for a, b in zip(br(cube[i][j], ek), br(ej, cube[i][k]))
                    )
                else:
                    rhs = tuple(
                        a - b for a, b in zip(br(cube[i][j], ek), br(cube[i][k], ej))
                    )
                if lhs != rhs:
                    return ValidationResult(False, mode, (i, j, k), lhs, rhs)
    return ValidationResult(True, mode)


class LeibnizAlgebra:
    """A multiplication table that passes the right Leibniz identity."""

    __slots__ = ("table", "_cache")

    def __init__(self, table: MultiplicationTable, _checked: bool = False):
        if not _checked:
            result = validate(table, "right")
            if not result.ok:
                raise NotLeibniz(f"right identity fails at triple {result.witness}")
        self.table = table
        self._cache = {}

    @property
    def field(self) -> Field:
        return self.table.field

    @property
    def dim(self) -> int:
        return self.table.dim

    @property
    def basis_names(self):
        return self.table.basis_names

    def basis_vector(self, i: int) -> tuple:
        return unit_vec(self.field, self.dim, i)

    def bracket(self, u: tuple, v: tuple) -> tuple:
        if len(u) != self.dim or len(v) != self.dim:
            raise DimensionMismatch("vectors must live in the algebra")
        return _bracket_cube(self.table.cube, u, v, self.field)

    def full(self) -> Subspace:
        return full_subspace(self.field, self.dim)

    def zero_space(self) -> Subspace:
        return zero_subspace(self.field, self.dim)

    def __eq__(self, other):
        if not isinstance(other, LeibnizAlgebra):
            return NotImplemented
        return self.table == other.table

    def __hash__(self):
        return hash(self.table)

    def __repr__(self):
        return f"<Leibniz algebra dim {self.dim} over {self.field}>"


def adjoint(alg: LeibnizAlgebra, x: tuple, side: str = "right") -> tuple:
    """Matrix (rows = images of basis vectors) of y -> [y, x] for ``right``
    or y -> [x, y] for ``left``."""
    if side not in ("right", "left"):
        raise ValueError(f"unknown side {side!r}")
    rows = []
    for i in range(alg.dim):
        e = alg.basis_vector(i)
        rows.append(alg.bracket(e, x) if side == "right" else alg.bracket(x, e))
    return tuple(rows)


def squares_ideal(alg: LeibnizAlgebra) -> Subspace:
    """span{x*x : x in L}: basis squares plus polarized products."""
    cube = alg.table.cube
    gens = [cube[i][i] for i in range(alg.dim)]
    for i in range(alg.dim):
        for j in range(i + 1, alg.dim):
            gens.append(tuple(a + b for a, b in zip(cube[i][j], cube[j][i])))
    return echelonize(alg.field, alg.dim, gens)


def bracket_subspaces(alg: LeibnizAlgebra, a: Subspace, b: Subspace) -> Subspace:
    if a.ambient_dim != alg.dim or b.ambient_dim != alg.dim:
        raise DimensionMismatch("subspaces must live in the algebra")
    gens = [alg.bracket(u, v) for u in a.rows for v in b.rows]
    return echelonize(alg.field, alg.dim, gens)


def center(alg: LeibnizAlgebra) -> Subspace:
    """{v : [v, L] = [L, v] = 0}, computed as a left kernel."""
    cube = alg.table.cube
    rows = []
    for i in range(alg.dim):
        flat = []
        for j in range(alg.dim):
            flat.extend(cube[i][j])
            flat.extend(cube[j][i])
        rows.append(tuple(flat))
    return left_kernel(alg.field, rows)


def is_subalgebra(alg: LeibnizAlgebra, s: Subspace) -> bool:
    return s.contains(bracket_subspaces(alg, s, s))


def is_ideal(alg: LeibnizAlgebra, s: Subspace) -> bool:
    full = alg.full()
    two_sided = bracket_subspaces(alg, s, full).sum(bracket_subspaces(alg, full, s))
    return s.contains(two_sided)


def subalgebra_closure(alg: LeibnizAlgebra, s: Subspace) -> Subspace:
    cur = s
    while True:
        nxt = cur.sum(bracket_subspaces(alg, cur, cur))
        if nxt == cur:
            return cur
        cur = nxt


def series(alg: LeibnizAlgebra, h: Subspace | None = None, kind: str = "lower_central"):
    """Descending series of the subalgebra ``h`` (the whole algebra by
    default) until stabilization.

    ``lower_central``  : H, [H,H], [[H,H],H], ...
    ``derived``        : H, [H,H], [[H,H],[H,H]], ...
    ``omega_of_square``: S, [S,S], [[S,S],S], ...  with S = [H,H]
    """
    if kind not in ("lower_central", "derived", "omega_of_square"):
        raise ValueError(f"unknown series kind {kind!r}")
    if h is None:
        h = alg.full()
    if not is_subalgebra(alg, h):
        raise NotASubalgebra("series of a non-subalgebra")
    if kind == "omega_of_square":
        start = bracket_subspaces(alg, h, h)
        step = lambda cur: bracket_subspaces(alg, cur, start)
        chain = [start]
    elif kind == "lower_central":
        step = lambda cur: bracket_subspaces(alg, cur, h)
        chain = [h]
    else:
        step = lambda cur: bracket_subspaces(alg, cur, cur)
        chain = [h]
    while True:
        nxt = step(chain[-1])
        if nxt == chain[-1]:
            break
        chain.append(nxt)
    return chain


def is_nilpotent(alg: LeibnizAlgebra) -> bool:
    return series(alg, kind="lower_central")[-1].is_zero()


def is_solvable(alg: LeibnizAlgebra) -> bool:
    return series(alg, kind="derived")[-1].is_zero()


def is_abelian(alg: LeibnizAlgebra) -> bool:
    return bracket_subspaces(alg, alg.full(), alg.full()).is_zero()


def is_lie(alg: LeibnizAlgebra) -> bool:
    return validate(alg.table, "lie").ok


def is_symmetric(alg: LeibnizAlgebra) -> bool:
    return validate(alg.table, "left").ok


def subalgebras(alg: LeibnizAlgebra, budget: int = DEFAULT_BUDGET):
    """All bracket-closed subspaces, over a finite prime field."""
    return [
        s
        for s in enumerate_subspaces(alg.field, alg.dim, budget=budget)
        if is_subalgebra(alg, s)
    ]


# ---------------------------------------------------------------------------
# quotients
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class QuotientAlgebra:
    parent: LeibnizAlgebra
    modulus: Subspace
    algebra: LeibnizAlgebra
    projection: tuple  # dim(parent) rows, each of length dim(quotient)

    def project_vector(self, v: tuple) -> tuple:
        r = self.modulus.reduce(v)
        comp = self.modulus.non_pivots()
        return tuple(r[c] for c in comp)

    def project_subspace(self, s: Subspace) -> Subspace:
        return echelonize(
            self.algebra.field,
            self.algebra.dim,
            [self.project_vector(r) for r in s.rows],
        )


def quotient(alg: LeibnizAlgebra, j: Subspace) -> QuotientAlgebra:
    """L/J for a verified ideal J; the quotient basis is the set of non-pivot
    coordinates of J's echelon form, which makes tables reproducible."""
    if not is_ideal(alg, j):
        raise NotAnIdeal("quotient by a non-ideal")
    comp = j.non_pivots()
    m = len(comp)
    field = alg.field

    def project(v):
        r = j.reduce(v)
        return tuple(r[c] for c in comp)

    cube = [
        [
            project(alg.bracket(alg.basis_vector(a), alg.basis_vector(b)))
            for b in comp
        ]
        for a in comp
    ]
    names = tuple(alg.basis_names[c] for c in comp)
    table = MultiplicationTable(field, m, cube, names)
    quot = LeibnizAlgebra(table)
    projection = tuple(project(alg.basis_vector(i)) for i in range(alg.dim))
    return QuotientAlgebra(alg, j, quot, projection)
