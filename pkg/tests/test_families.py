import pytest

from quasileib.algebra import (
    center,
    is_abelian,
    is_lie,
    is_nilpotent,
    is_solvable,
    quotient,
    squares_ideal,
    subalgebras,
    validate,
)
from quasileib.errors import (
    BadCharacteristic,
    BadDimension,
    IsotropicForm,
    SquareLambda,
)
from quasileib.families import (
    FamilySpec,
    abelian,
    almost_abelian_lie,
    artin_schreier_root,
    build,
    char2_diagonal_anisotropic,
    char2_nonperfect,
    char2_nonperfect_minimal,
    default_anisotropic_gram,
    evaluate_form,
    extraspecial_sum,
    is_anisotropic,
    k2,
    non_lie_almost_abelian,
    two_dim_catalogue,
    two_dim_solvable_cyclic,
)
from quasileib.fields import GF2, GF3, QQ, FunctionField, PrimeField
from quasileib.linalg import all_vectors, echelonize, vec
from quasileib.quasi import is_quasi_ideal
from tests.conftest import SYMMETRIC_FAMILIES

F2T = FunctionField(2)


def test_every_constructor_validates(nine_families):
    for name, alg in nine_families.items():
        assert validate(alg.table, "right").ok, name


def test_symmetric_families_pass_left_identity(nine_families):
    for name in SYMMETRIC_FAMILIES:
        assert validate(nine_families[name].table, "left").ok, name


def test_char2_minimal_shape():
    alg = char2_nonperfect_minimal(F2T)  # basis c, z, h
    t = F2T.t
    assert alg.basis_names == ("c", "z", "h")
    assert alg.bracket(vec(F2T, (1, 0, 0)), vec(F2T, (1, 0, 0))) == (
        F2T.zero,
        t,
        F2T.zero,
    )
    assert alg.bracket(vec(F2T, (0, 0, 1)), vec(F2T, (0, 0, 1))) == vec(
        F2T, (0, 1, 0)
    )
    assert alg.bracket(vec(F2T, (1, 0, 0)), vec(F2T, (0, 0, 1))) == vec(
        F2T, (1, 0, 0)
    )
    assert squares_ideal(alg) == echelonize(F2T, 3, [vec(F2T, (0, 1, 0))])
    assert center(alg) == squares_ideal(alg)


def test_char2_squares_never_vanish_off_center():
    # [u,u] = (lambda a^2 + b^2) z for u = a c + b h + g z; nonzero whenever
    # (a, b) != 0 because lambda is not a square
    alg = char2_nonperfect_minimal(F2T)
    t = F2T.t
    samples = [
        (t, F2T.one),
        (F2T.one, t),
        (t + 1, t * t),
        (F2T.one / (t + 1), t / (t + 1)),
        (F2T.one, F2T.zero),
        (F2T.zero, t),
    ]
    for a, b in samples:
        for g in (F2T.zero, F2T.one, t):
            u = (a, g, b)
            sq = alg.bracket(u, u)
            if a or b:
                assert any(sq)
                assert sq == (F2T.zero, t * a * a + b * b, F2T.zero)


def test_two_dim_solvable_structure():
    alg = two_dim_solvable_cyclic(GF3)
    assert not is_lie(alg)
    assert is_solvable(alg) and not is_nilpotent(alg)


def test_non_lie_almost_abelian_invariants():
    for dim_i in (1, 2, 3):
        alg = non_lie_almost_abelian(GF2, dim_i)
        ideal = squares_ideal(alg)
        assert ideal.dim == dim_i
        h = echelonize(GF2, dim_i + 1, [alg.basis_vector(dim_i)])
        assert is_quasi_ideal(alg, h).holds
        q = quotient(alg, ideal).algebra
        assert q.dim == 1 and is_abelian(q)


def test_k2_is_perfect_and_simple():
    alg = k2(GF2)
    from quasileib.algebra import bracket_subspaces, is_ideal

    assert bracket_subspaces(alg, alg.full(), alg.full()) == alg.full()
    proper_ideals = [
        s
        for s in subalgebras(alg)
        if is_ideal(alg, s) and 0 < s.dim < 3
    ]
    assert proper_ideals == []
    with pytest.raises(BadCharacteristic):
        k2(GF3)


def test_two_dim_catalogue():
    for field in (QQ, GF2, GF3):
        first, second = two_dim_catalogue(field)
        for alg in (first, second):
            assert validate(alg.table, "right").ok
            assert not is_lie(alg)
        assert is_nilpotent(first)
        assert is_solvable(second) and not is_nilpotent(second)


def test_abelian_and_guards():
    assert abelian(QQ, 0).dim == 0
    assert is_abelian(abelian(GF2, 4))
    with pytest.raises(BadDimension):
        abelian(GF2, -1)
    with pytest.raises(BadDimension):
        almost_abelian_lie(GF2, 1)
    with pytest.raises(BadDimension):
        non_lie_almost_abelian(GF2, 0)


def test_almost_abelian_lie_is_lie():
    for field in (GF2, GF3, QQ):
        for dim in (2, 3, 4):
            alg = almost_abelian_lie(field, dim)
            assert is_lie(alg)
            from quasileib.algebra import bracket_subspaces

            derived = bracket_subspaces(alg, alg.full(), alg.full())
            assert derived.dim == dim - 1


def test_extraspecial_sum_fixture_gf3():
    gram = default_anisotropic_gram(GF3, 2)
    alg = extraspecial_sum(GF3, gram, dim_z=1)
    assert alg.dim == 4
    # q = a^2 + b^2 has no nontrivial zero mod 3
    for x in all_vectors(GF3, 2):
        if any(x):
            assert evaluate_form(gram, x)
    ideal = squares_ideal(alg)
    assert ideal.dim == 1
    assert center(alg).dim == 2
    assert center(alg).contains(ideal)


def test_extraspecial_rejects_isotropic_forms():
    with pytest.raises(IsotropicForm):
        extraspecial_sum(GF2, ((GF2.one, GF2.zero), (GF2.zero, GF2.one)))
    with pytest.raises(IsotropicForm):
        extraspecial_sum(PrimeField(5), default_anisotropic_gram(PrimeField(5), 2))
    with pytest.raises(IsotropicForm):
        extraspecial_sum(QQ, ((QQ.zero,),))


def test_extraspecial_default_form_over_rationals():
    alg = extraspecial_sum(QQ, default_anisotropic_gram(QQ, 2))
    assert alg.dim == 3
    assert squares_ideal(alg).dim == 1


def test_char2_gates():
    with pytest.raises(SquareLambda):
        char2_nonperfect_minimal(GF2)
    with pytest.raises(BadCharacteristic):
        char2_nonperfect_minimal(GF3)
    with pytest.raises(BadCharacteristic):
        char2_nonperfect_minimal(QQ)
    with pytest.raises(SquareLambda):
        char2_nonperfect_minimal(F2T, lam=F2T.t * F2T.t)
    with pytest.raises(SquareLambda):
        char2_nonperfect(F2T, lambdas=(F2T.t, F2T.t))
    assert char2_nonperfect_minimal(F2T, lam=F2T.t).dim == 3


def test_char2_off_diagonal_gram():
    t = F2T.t
    gram = ((t, F2T.one), (F2T.one, t + 1))
    with pytest.raises(SquareLambda):
        # t * g1^2 + (t+1) * g2^2 + a^2 = 0 at g1 = g2 = 1, a = 1
        char2_nonperfect(F2T, gram=gram)
    with pytest.raises(ValueError):
        char2_nonperfect(F2T, gram=((t, F2T.one), (F2T.zero, t)))


def test_anisotropy_decisions():
    t = F2T.t
    one, zero = F2T.one, F2T.zero
    assert is_anisotropic(F2T, ((one, one), (zero, one)))  # x^2 + xy + y^2
    assert is_anisotropic(F2T, ((t,),))
    # x^2 + xy + (t^2 + t) y^2 has the root x = t y
    assert not is_anisotropic(F2T, ((one, one), (zero, t * t + t)))


def test_anisotropy_rank_one_nonzero_coefficient():
    t = F2T.t
    assert is_anisotropic(F2T, ((t * t,),))
    assert not is_anisotropic(F2T, ((F2T.zero,),))
    assert not is_anisotropic(GF3, ((GF3.zero,),))
    assert is_anisotropic(QQ, ((QQ(-1),),))
    # over Q: x^2 - 2 y^2 anisotropic (2 is not a rational square)
    assert is_anisotropic(QQ, ((QQ.one, QQ.zero), (QQ.zero, QQ(-2))))
    # x^2 - 4 y^2 is isotropic
    assert not is_anisotropic(QQ, ((QQ.one, QQ.zero), (QQ.zero, QQ(-4))))


def test_char2_diagonal_independence():
    t = F2T.t
    assert char2_diagonal_anisotropic(F2T, [t, F2T.one])
    assert not char2_diagonal_anisotropic(F2T, [t, t])
    assert not char2_diagonal_anisotropic(F2T, [t, F2T.one, t + 1])


def test_artin_schreier_solver():
    t = F2T.t
    root = artin_schreier_root(F2T, t * t + t)
    assert root is not None and root * root + root == t * t + t
    assert artin_schreier_root(F2T, F2T.one) is None
    assert artin_schreier_root(F2T, F2T.zero) == F2T.zero
    d = (t * t * t + t) / ((t + 1) * (t + 1))
    r = artin_schreier_root(F2T, d)
    if r is not None:
        assert r * r + r == d
    # denominator not a square: no root
    assert artin_schreier_root(F2T, F2T.one / t) is None


def test_build_dispatch():
    spec = FamilySpec("non_lie_almost_abelian", GF3, {"dim_i": 2})
    alg = build(spec)
    assert alg.dim == 3
    assert build(FamilySpec("k2", F2T, {})).dim == 3
    with pytest.raises(ValueError):
        build(FamilySpec("nope", GF2, {}))
