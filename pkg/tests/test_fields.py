import random

import pytest

import pircodex as px
from pircodex.fields import DEFAULT_GF2_MODULI, poly2_is_irreducible

from oracle import gf4_mul_table

SMALL_FIELDS = [px.Field(2), px.Field(3), px.Field(5), px.Field(7),
                px.Field(11), px.Field(13), px.Field(2, 2), px.Field(2, 3),
                px.Field(2, 4)]


def test_gf2_characteristic_two_identity(gf2):
    assert gf2.add(1, 1) == 0


def test_gf5_inverse_of_three(gf5):
    assert gf5.mul(3, 2) == 1
    assert gf5.div(1, 3) == 2


def test_gf4_matches_polynomial_reduction_table(gf4):
    table = gf4_mul_table()
    for (a, b), expected in table.items():
        assert gf4.mul(a, b) == expected
    # z * z = z + 1 explicitly
    assert gf4.mul(0b10, 0b10) == 0b11


@pytest.mark.parametrize("field", SMALL_FIELDS, ids=lambda f: f.spec_string())
def test_field_axioms_exhaustive(field):
    els = list(field.elements())
    for a in els:
        assert field.add(a, 0) == a
        assert field.mul(a, 1) == a
        assert field.add(a, field.neg(a)) == 0
        if a != 0:
            assert field.mul(a, field.inv(a)) == 1
        for b in els:
            assert field.add(a, b) == field.add(b, a)
            assert field.mul(a, b) == field.mul(b, a)
            for c in els:
                assert field.mul(a, field.mul(b, c)) == field.mul(field.mul(a, b), c)
                assert field.add(a, field.add(b, c)) == field.add(field.add(a, b), c)
                assert field.mul(a, field.add(b, c)) == \
                    field.add(field.mul(a, b), field.mul(a, c))


@pytest.mark.parametrize("field", [px.Field(2147483647), px.Field(2, 16)],
                         ids=lambda f: f.spec_string())
def test_division_roundtrip_randomized(field):
    rng = random.Random(20240)
    for _ in range(1000):
        a = rng.randrange(field.q)
        b = rng.randrange(1, field.q)
        assert field.mul(field.div(a, b), b) == a


def test_division_by_zero(gf5, gf4):
    with pytest.raises(ZeroDivisionError):
        gf5.div(1, 0)
    with pytest.raises(ZeroDivisionError):
        gf4.inv(0)


def test_pow_matches_repeated_multiplication(gf4):
    for a in range(1, 4):
        acc = 1
        for e in range(8):
            assert gf4.pow(a, e) == acc
            acc = gf4.mul(acc, a)
    assert gf4.pow(3, -1) == gf4.inv(3)


def test_field_element_operators(gf5):
    a, b = gf5.element(3), gf5.element(4)
    assert (a + b).value == 2
    assert (a - b).value == 4
    assert (a * b).value == 2
    assert (a / b).value == gf5.mul(3, gf5.inv(4))
    assert (-a).value == 2
    assert a == 3


def test_field_element_mismatch(gf5, gf4):
    with pytest.raises(px.FieldMismatchError):
        gf5.element(1) + gf4.element(1)


def test_parse_and_format_roundtrip():
    for text in ["gf(2)", "gf(31)", "gf(2^4)", "gf(2^3;modulus=0xb)", "gf(4)"]:
        f = px.Field.parse(text)
        again = px.Field.parse(f.spec_string())
        assert f == again


def test_parse_rejects_garbage():
    for text in ["gf()", "gf(6)", "gf(2^)", "field(5)", "gf(9^2)"]:
        with pytest.raises(ValueError):
            px.Field.parse(text)


def test_construction_validation():
    with pytest.raises(ValueError):
        px.Field(4)  # not prime
    with pytest.raises(ValueError):
        px.Field(3, 2)  # odd-characteristic extension unsupported
    with pytest.raises(ValueError):
        px.Field(2, 17)  # degree bound
    with pytest.raises(ValueError):
        px.Field(2, 3, modulus=0b1111)  # (x+1)(x^2+x+1) is reducible
    with pytest.raises(ValueError):
        px.Field(2, 3, modulus=0b10011)  # degree mismatch


def test_custom_modulus_as_coefficient_list():
    f = px.Field(2, 3, modulus=[1, 1, 0, 1])
    assert f.modulus_mask == 0b1011
    assert f.spec_string() == "gf(2^3;modulus=0xb)"


def test_default_moduli_are_irreducible_and_give_fields():
    rng = random.Random(7)
    for e, mask in DEFAULT_GF2_MODULI.items():
        assert poly2_is_irreducible(mask), hex(mask)
        field = px.Field(2, e)
        # a reducible modulus would create zero divisors; inverses must exist
        for _ in range(20):
            a = rng.randrange(1, field.q)
            assert field.mul(a, field.inv(a)) == 1


def test_element_range_check(gf5):
    with pytest.raises(ValueError):
        gf5.check(5)
    with pytest.raises(ValueError):
        gf5.element(-1)
