"""Constructors for the named algebra families, validated on construction.

Families (`` FAMILY_NAMES `` lists the constructor keys):

* ``abelian``                  -- all products zero.
* ``almost_abelian_lie``       -- A + Fa, A abelian, right multiplication by
  a acting as the identity on A (a Lie algebra).
* ``k2``                       -- the simple 3-dimensional Lie algebra over a
  field of characteristic 2 with [x,y]=z, [y,z]=y, [z,x]=x.
* ``non_lie_almost_abelian``   -- I + Fh with [x,h]=x and [h,x]=[h,h]=0.
* ``two_dim_nilpotent_cyclic`` -- basis b, a with [b,b]=a.
* ``two_dim_solvable_cyclic``  -- basis b, a with [b,b]=a, [a,b]=a.
* ``extraspecial_sum``         -- (anisotropic central extension E) + central
  summand Z: [u_i,u_j] = G[i][j] z with the quadratic form x -> [x,x]
  anisotropic on E/Fz.
* ``char2_nonperfect``         -- characteristic-2 family C + Fz + Fh with
  [c,c'] symmetric into Fz, [c,h]=[h,c]=c, [h,h]=z; needs every diagonal
  coefficient (and every diagonal combination) outside the squares, hence a
  non-perfect field.
* ``char2_nonperfect_minimal`` -- the 3-dimensional instance with basis
  c, z, h and [c,c] = lambda z.

Every constructor returns a :class:`LeibnizAlgebra`, so the right identity
is re-checked on construction; the symmetric families are additionally
checked against the left identity by the test suite.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from .algebra import LeibnizAlgebra, build_table
from .errors import (
    BadCharacteristic,
    BadDimension,
    IsotropicForm,
    SquareLambda,
    UnsupportedField,
)
from .fields import (
    GF2,
    Field,
    FunctionField,
    Scalar,
    poly_add,
    poly_mul,
    poly_sqrt,
    poly_trim,
)
from .linalg import DEFAULT_BUDGET, projective_points, rref, solve_left

# ---------------------------------------------------------------------------
# quadratic-form helpers
# ---------------------------------------------------------------------------


def evaluate_form(gram, point) -> Scalar:
    """q(x) = x G x^T for a square matrix of scalars."""
    total = None
    for i, xi in enumerate(point):
        for j, xj in enumerate(point):
            term = xi * gram[i][j] * xj
            total = term if total is None else total + term
    return total


def artin_schreier_root(field: FunctionField, d: Scalar):
    """A root of y**2 + y = d over GF(2)(t), or None.

    With y = n/m reduced, m**2 must be the (monic) denominator of d and
    n**2 + n m = num(d); squaring and multiplying by a fixed m are both
    GF(2)-linear in the coefficients of n, so the equation is a linear
    system over GF(2).
    """
    if field.p != 2:
        raise UnsupportedField("Artin-Schreier roots only in characteristic 2")
    num, den = d.value
    m = poly_sqrt(2, den)
    if m is None:
        return None
    # roots come in pairs n, n+m; if deg n > deg m the top term forces
    # 2 deg n = deg num, so this degree bound covers every solution
    bound = max(len(num) - 1, len(m) - 1, 1)
    width = 2 * bound + len(m)
    pad = lambda poly: tuple(
        GF2(poly[i] if i < len(poly) else 0) for i in range(width)
    )
    rows = []
    basis_polys = []
    for k in range(bound + 1):
        tk = poly_trim([0] * k + [1])
        img = poly_add(2, poly_trim([0] * (2 * k) + [1]), poly_mul(2, tk, m))
        rows.append(pad(img))
        basis_polys.append(tk)
    coeffs = solve_left(GF2, rows, pad(num))
    if coeffs is None:
        return None
    n = ()
    for c, tk in zip(coeffs, basis_polys):
        if c:
            n = poly_add(2, n, tk)
    y = field.from_polys(n, m)
    assert y * y + y == d
    return y


def char2_diagonal_anisotropic(field: FunctionField, diagonal) -> bool:
    """Whether sum d_i x_i**2 has only the trivial zero over GF(2)(t).

    Writing d_i = u_i**2 + t v_i**2, the form vanishes at x exactly when
    sum x_i u_i = sum x_i v_i = 0, so anisotropy is full rank of the
    (u_i, v_i) rows (forcing at most two variables over GF(2)(t)).
    """
    rows = []
    for d in diagonal:
        u, v = field.even_odd_parts(d)
        rows.append((u, v))
    _, pivots = rref(field, rows, 2)
    return len(pivots) == len(rows)


def is_anisotropic(field: Field, gram, budget: int = DEFAULT_BUDGET) -> bool:
    """Decide whether q(x) = x G x^T vanishes only at 0.

    Finite prime fields are handled by projective-point enumeration.  Over
    infinite fields: rank 1 directly; rank 2 by the discriminant (odd or
    zero characteristic) or by an Artin-Schreier root (characteristic 2);
    diagonal forms of any rank in characteristic 2 via the even/odd split.
    """
    k = len(gram)
    if k == 0:
        return True
    if field.is_finite:
        for pt in projective_points(field, k, budget=budget):
            if not evaluate_form(gram, pt):
                return False
        return True
    char2 = field.characteristic() == 2
    polar_zero = all(
        not (gram[i][j] + gram[j][i]) for i in range(k) for j in range(i + 1, k)
    )
    if char2 and polar_zero:
        return char2_diagonal_anisotropic(field, [gram[i][i] for i in range(k)])
    if k == 1:
        return bool(gram[0][0])
    if k == 2:
        a = gram[0][0]
        b = gram[0][1] + gram[1][0]
        c = gram[1][1]
        if not a:
            return False
        if not char2:
            disc = b * b - 4 * a * c
            return not disc.is_square()
        # a x^2 + b x y + c y^2 with b != 0: substitute x = (b/a) w y
        d = c * a / (b * b)
        return artin_schreier_root(field, d) is None
    raise UnsupportedField(
        f"anisotropy of a rank-{k} form with cross terms over {field}"
    )


# ---------------------------------------------------------------------------
# family constructors
# ---------------------------------------------------------------------------


def abelian(field: Field, dim: int) -> LeibnizAlgebra:
    if dim < 0:
        raise BadDimension("dimension must be nonnegative")
    return LeibnizAlgebra(build_table(field, tuple(f"e{i+1}" for i in range(dim)), {}))


def almost_abelian_lie(field: Field, dim: int) -> LeibnizAlgebra:
    """A + Fa with [x, a] = x and [a, x] = -x on the abelian part A."""
    if dim < 2:
        raise BadDimension("almost abelian needs dimension >= 2")
    k = dim - 1
    names = tuple(f"x{i+1}" for i in range(k)) + ("a",)
    products = {}
    for i in range(k):
        products[(i, k)] = {i: field.one}
        products[(k, i)] = {i: -field.one}
    return LeibnizAlgebra(build_table(field, names, products))


def k2(field: Field) -> LeibnizAlgebra:
    """[x,y]=z, [y,z]=y, [z,x]=x, antisymmetric; characteristic 2 only."""
    if field.characteristic() != 2:
        raise BadCharacteristic("this algebra lives in characteristic 2")
    one = field.one
    products = {
        (0, 1): {2: one},
        (1, 0): {2: -one},
        (1, 2): {1: one},
        (2, 1): {1: -one},
        (2, 0): {0: one},
        (0, 2): {0: -one},
    }
    return LeibnizAlgebra(build_table(field, ("x", "y", "z"), products))


def non_lie_almost_abelian(field: Field, dim_i: int) -> LeibnizAlgebra:
    """I + Fh with [x, h] = x for x in I and [h, x] = [h, h] = 0."""
    if dim_i < 1:
        raise BadDimension("the abelian part must be nonzero")
    if dim_i == 1:
        names = ("x", "h")
    elif dim_i == 2:
        names = ("x", "y", "h")
    else:
        names = tuple(f"x{i+1}" for i in range(dim_i)) + ("h",)
    products = {(i, dim_i): {i: field.one} for i in range(dim_i)}
    return LeibnizAlgebra(build_table(field, names, products))


def two_dim_nilpotent_cyclic(field: Field) -> LeibnizAlgebra:
    return LeibnizAlgebra(
        build_table(field, ("b", "a"), {(0, 0): {1: field.one}})
    )


def two_dim_solvable_cyclic(field: Field) -> LeibnizAlgebra:
    return LeibnizAlgebra(
        build_table(
            field, ("b", "a"), {(0, 0): {1: field.one}, (1, 0): {1: field.one}}
        )
    )


def default_anisotropic_gram(field: Field, rank: int = 1):
    """Shipped anisotropic forms: x**2 in rank 1 for every field; in rank 2,
    x**2 + xy + y**2 in characteristic 2 and x**2 + y**2 otherwise."""
    one, zero = field.one, field.zero
    if rank == 1:
        return ((one,),)
    if rank == 2:
        if field.characteristic() == 2:
            return ((one, one), (zero, one))
        return ((one, zero), (zero, one))
    raise BadDimension("shipped default forms have rank 1 or 2")


def extraspecial_sum(
    field: Field, gram=None, dim_z: int = 0, budget: int = DEFAULT_BUDGET
) -> LeibnizAlgebra:
    """E + Z with E = span{u_1..u_k, z}, [u_i, u_j] = G[i][j] z, and Z an
    extra central summand of dimension ``dim_z``.

    The quadratic form q(x) = [x,x] on E/Fz must be anisotropic, which makes
    Fz the centre of E and keeps every square off the centre nonzero.  All
    products land in the centre, so both Leibniz identities hold; the right
    identity is re-checked by the LeibnizAlgebra constructor anyway.
    """
    if gram is None:
        gram = default_anisotropic_gram(field, 1)
    gram = tuple(
        tuple(s if isinstance(s, Scalar) else field(s) for s in row) for row in gram
    )
    k = len(gram)
    if k < 1 or any(len(row) != k for row in gram):
        raise BadDimension("the form matrix must be square and nonempty")
    if dim_z < 0:
        raise BadDimension("the central summand dimension must be nonnegative")
    if not is_anisotropic(field, gram, budget=budget):
        raise IsotropicForm("the supplied form has a nontrivial zero")
    names = (
        tuple(f"u{i+1}" for i in range(k))
        + ("z",)
        + tuple(f"w{i+1}" for i in range(dim_z))
    )
    products = {
        (i, j): {k: gram[i][j]} for i in range(k) for j in range(k) if gram[i][j]
    }
    return LeibnizAlgebra(build_table(field, names, products))


def char2_nonperfect(
    field: Field, lambdas=None, gram=None, budget: int = DEFAULT_BUDGET
) -> LeibnizAlgebra:
    """C + Fz + Fh over a characteristic-2 field: [c_i, c_j] = G[i][j] z
    (symmetric), [c_i, h] = [h, c_i] = c_i, [h, h] = z.

    Squares are (sum G[i][i] g_i**2 + a**2) z for u = sum g_i c_i + a h + b z,
    so the construction needs every diagonal coefficient -- and every
    diagonal combination -- to avoid the squares of the field.  Over a
    perfect field (any finite field) no such coefficient exists.
    """
    if field.characteristic() != 2:
        raise BadCharacteristic("this family lives in characteristic 2")
    if gram is None:
        if lambdas is None:
            lambdas = (field.t,) if isinstance(field, FunctionField) else (field.one,)
        lambdas = tuple(
            s if isinstance(s, Scalar) else field(s) for s in lambdas
        )
        zero = field.zero
        gram = tuple(
            tuple(lambdas[i] if i == j else zero for j in range(len(lambdas)))
            for i in range(len(lambdas))
        )
    else:
        gram = tuple(
            tuple(s if isinstance(s, Scalar) else field(s) for s in row)
            for row in gram
        )
    k = len(gram)
    if k < 1 or any(len(row) != k for row in gram):
        raise BadDimension("the coefficient matrix must be square and nonempty")
    for i in range(k):
        for j in range(i + 1, k):
            if gram[i][j] != gram[j][i]:
                raise ValueError("the coefficient matrix must be symmetric")
    diagonal = [gram[i][i] for i in range(k)]
    for lam in diagonal:
        if lam.is_square():
            raise SquareLambda(f"{lam!r} is a square in {field}")
    # squares live on the diagonal extended by the [h,h] coefficient 1
    extended = diagonal + [field.one]
    if isinstance(field, FunctionField):
        if not char2_diagonal_anisotropic(field, extended):
            raise SquareLambda(
                "a combination of the diagonal coefficients is a square"
            )
    names = (
        tuple("c" if k == 1 else f"c{i+1}" for i in range(k)) + ("z", "h")
    )
    products = {}
    for i in range(k):
        for j in range(k):
            if gram[i][j]:
                products[(i, j)] = {k: gram[i][j]}
    for i in range(k):
        products[(i, k + 1)] = {i: field.one}
        products[(k + 1, i)] = {i: field.one}
    products[(k + 1, k + 1)] = {k: field.one}
    return LeibnizAlgebra(build_table(field, names, products))


def char2_nonperfect_minimal(field: Field, lam=None) -> LeibnizAlgebra:
    """Basis c, z, h with [c,c] = lambda z, [h,h] = z, [c,h] = [h,c] = c."""
    lambdas = None if lam is None else (lam,)
    return char2_nonperfect(field, lambdas=lambdas)


def two_dim_catalogue(field: Field):
    """The two non-Lie algebras of dimension 2: [b,b]=a with [a,b]=0 (the
    nilpotent one) and [b,b]=a with [a,b]=a (the solvable one); both cyclic.
    """
    return [two_dim_nilpotent_cyclic(field), two_dim_solvable_cyclic(field)]


# ---------------------------------------------------------------------------
# dispatch
# ---------------------------------------------------------------------------

FAMILY_NAMES = (
    "abelian",
    "almost_abelian_lie",
    "k2",
    "non_lie_almost_abelian",
    "two_dim_nilpotent_cyclic",
    "two_dim_solvable_cyclic",
    "extraspecial_sum",
    "char2_nonperfect",
    "char2_nonperfect_minimal",
)


@dataclass(frozen=True)
class FamilySpec:
    name: str
    field: Field
    params: dict = dc_field(default_factory=dict)


def build(spec: FamilySpec) -> LeibnizAlgebra:
    name, field, p = spec.name, spec.field, spec.params
    if name == "abelian":
        return abelian(field, p.get("dim", 1))
    if name == "almost_abelian_lie":
        return almost_abelian_lie(field, p.get("dim", 2))
    if name == "k2":
        return k2(field)
    if name == "non_lie_almost_abelian":
        return non_lie_almost_abelian(field, p.get("dim_i", 1))
    if name == "two_dim_nilpotent_cyclic":
        return two_dim_nilpotent_cyclic(field)
    if name == "two_dim_solvable_cyclic":
        return two_dim_solvable_cyclic(field)
    if name == "extraspecial_sum":
        return extraspecial_sum(field, p.get("gram"), p.get("dim_z", 0))
    if name == "char2_nonperfect":
        return char2_nonperfect(field, p.get("lambdas"), p.get("gram"))
    if name == "char2_nonperfect_minimal":
        return char2_nonperfect_minimal(field, p.get("lam"))
    raise ValueError(f"unknown family {name!r}")
