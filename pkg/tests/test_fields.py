import random
from fractions import Fraction

import pytest

from quasileib.errors import DivisionByZero, MalformedInput, MixedFields
from quasileib.fields import (
    GF2,
    GF3,
    QQ,
    FunctionField,
    PrimeField,
    field_from_json,
    parse_field,
    parse_scalar,
    poly_gcd,
    poly_mul,
    poly_sqrt,
)

F2T = FunctionField(2)
F3T = FunctionField(3)
FIELDS = (GF2, GF3, PrimeField(5), QQ, F2T, F3T)


def random_scalar(field, rng, nonzero=False):
    while True:
        if isinstance(field, PrimeField):
            s = field(rng.randrange(field.p))
        elif field is QQ or field == QQ:
            s = field(Fraction(rng.randrange(-20, 21), rng.randrange(1, 12)))
        else:
            num = [rng.randrange(field.p) for _ in range(rng.randrange(1, 4))]
            den = [rng.randrange(field.p) for _ in range(rng.randrange(1, 4))]
            if not any(den):
                den[-1] = 1
            s = field.from_polys(num, den)
        if not nonzero or s:
            return s


def test_gf5_addition():
    f = PrimeField(5)
    assert f(3) + f(4) == f(2)


def test_function_field_inverse_of_reduced_fraction():
    t = F2T.t
    x = t / (t + 1)
    assert x.inv() == (t + 1) / t
    assert x * x.inv() == F2T.one


def test_function_field_gcd_canonicalization():
    # t^2 + t = t (t + 1) over GF(2), so (t^2+t)/t^2 reduces to (t+1)/t
    s = F2T.from_polys((0, 1, 1), (0, 0, 1))
    assert s == F2T.from_polys((1, 1), (0, 1))
    assert s.value == ((1, 1), (0, 1))


def test_division_by_zero():
    with pytest.raises(DivisionByZero):
        GF3(1) / GF3(0)
    with pytest.raises(DivisionByZero):
        F2T.zero.inv()


def test_mixed_fields_rejected():
    with pytest.raises(MixedFields):
        GF2(1) + GF3(1)
    with pytest.raises(MixedFields):
        F2T.t * F3T.t


@pytest.mark.parametrize(
    "scalar,expected",
    [
        (F2T.t, False),
        (F2T.t * F2T.t, True),
        (F2T.from_polys((1, 0, 1)), True),  # t^2 + 1 = (t + 1)^2
        (GF3(2), False),  # squares mod 3 are {0, 1}
        (GF3(1), True),
        (QQ(Fraction(4, 9)), True),
        (QQ(Fraction(2, 9)), False),
        (QQ(-4), False),
    ],
)
def test_is_square_fixtures(scalar, expected):
    assert scalar.is_square() is expected


def test_field_axioms_on_random_triples():
    rng = random.Random(7)
    for field in FIELDS:
        for _ in range(1000):
            a = random_scalar(field, rng)
            b = random_scalar(field, rng)
            c = random_scalar(field, rng)
            assert (a + b) + c == a + (b + c)
            assert (a * b) * c == a * (b * c)
            assert a + b == b + a
            assert a * b == b * a
            assert a * (b + c) == a * b + a * c
            assert a + (-a) == field.zero
            if b:
                assert b * b.inv() == field.one
                assert (a / b) * b == a


def test_canonicalization_idempotent():
    rng = random.Random(11)
    for field in FIELDS:
        for _ in range(200):
            s = random_scalar(field, rng)
            assert field(s.value if isinstance(field, PrimeField) else s) == s
            assert field.decode(s.to_json()) == s


def test_sqrt_round_trip():
    rng = random.Random(13)
    for field in FIELDS:
        for _ in range(300):
            a = random_scalar(field, rng)
            sq = a * a
            assert sq.is_square()
            root = sq.sqrt()
            assert root is not None and root * root == sq
            if a.is_square():
                r = a.sqrt()
                assert r * r == a


def test_char2_frobenius_image_and_t():
    rng = random.Random(17)
    for _ in range(200):
        a = random_scalar(F2T, rng)
        assert (a * a).is_square()
    assert not F2T.t.is_square()


def test_even_odd_parts_reconstruct():
    rng = random.Random(19)
    t = F2T.t
    for _ in range(200):
        a = random_scalar(F2T, rng)
        u, v = F2T.even_odd_parts(a)
        assert u * u + t * v * v == a
    # is_square iff the odd part vanishes
    for _ in range(200):
        a = random_scalar(F2T, rng)
        _, v = F2T.even_odd_parts(a)
        assert a.is_square() == (not v)


def test_poly_sqrt_odd_characteristic():
    # (t^2 + 2t + 1) = (t + 1)^2 over GF(3); lead must be a square
    assert poly_sqrt(3, (1, 2, 1)) == (1, 1)
    assert poly_sqrt(3, (0, 0, 2)) is None  # 2 is not a square mod 3
    assert poly_sqrt(5, poly_mul(5, (2, 3, 1), (2, 3, 1))) == (2, 3, 1)


def test_poly_gcd_monic():
    # gcd(t^2 + t, t^2) = t over GF(2)
    assert poly_gcd(2, (0, 1, 1), (0, 0, 1)) == (0, 1)


def test_json_encodings():
    assert GF3(2).to_json() == 2
    assert QQ(Fraction(-3, 4)).to_json() == "-3/4"
    assert F2T.t.to_json() == {"num": [0, 1], "den": [1]}
    with pytest.raises(MalformedInput):
        GF3.decode(5)
    with pytest.raises(MalformedInput):
        QQ.decode("x")
    with pytest.raises(MalformedInput):
        F2T.decode({"num": [2], "den": [1]})


def test_field_descriptors_round_trip():
    for field in FIELDS:
        assert field_from_json(field.to_json()) == field
    assert parse_field("gf5") == PrimeField(5)
    assert parse_field("q") == QQ
    assert parse_field("gf2(t)") == F2T


def test_parse_scalar():
    assert parse_scalar(GF3, "-1") == GF3(2)
    assert parse_scalar(QQ, "3/4") == QQ(Fraction(3, 4))
    assert parse_scalar(F2T, "t^2+t") == F2T.t * (F2T.t + 1)
    assert parse_scalar(F2T, "t/(t+1)") == F2T.t / (F2T.t + 1)
    assert parse_scalar(F3T, "2*t^2+1") == F3T.from_polys((1, 0, 2))


def test_characteristics():
    assert GF2.characteristic() == 2
    assert QQ.characteristic() == 0
    assert F3T.characteristic() == 3
    assert PrimeField(7).order == 7
    assert list(GF3.elements()) == [GF3(0), GF3(1), GF3(2)]
