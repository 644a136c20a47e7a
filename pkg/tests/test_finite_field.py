import json

import pytest
from ffhyper import (
    FieldConstructionError,
    FieldElement,
    FieldMismatchError,
    FiniteField,
    InapplicableFieldError,
    build_field,
    config,
    field_from_descriptor,
    parse_field_descriptor,
)
from hypothesis import given
from hypothesis import strategies as st

from tests.conftest import check_output_stability

FIELDS = [(3, 1), (5, 1), (7, 1), (3, 2), (13, 1), (5, 2), (3, 3)]


def test_field_dump() -> None:
    dumps = [json.dumps(build_field(p, n).to_dict(), sort_keys=True) for p, n in [(5, 1), (3, 2)]]
    check_output_stability("\n".join(dumps))


@pytest.mark.parametrize(("descriptor", "expected"), [("13", (13, 1)), ("3^3", (3, 3)), ("9", (3, 2)), ("4", (2, 2))])
def test_parse_field_descriptor(descriptor: str, expected: tuple[int, int]) -> None:
    assert parse_field_descriptor(descriptor) == expected


@pytest.mark.parametrize("descriptor", ["", "p^2", "12", "3^"])
def test_parse_field_descriptor_rejects_garbage(descriptor: str) -> None:
    with pytest.raises(FieldConstructionError):
        parse_field_descriptor(descriptor)


@pytest.mark.parametrize(("p", "n"), [(2, 1), (2, 3), (9, 1), (15, 1), (5, 0)])
def test_build_field_rejects(p: int, n: int) -> None:
    with pytest.raises(FieldConstructionError):
        build_field(p, n)


def test_even_characteristic_message() -> None:
    with pytest.raises(FieldConstructionError, match="Even characteristic unsupported"):
        field_from_descriptor("4")


def test_build_field_is_memoised() -> None:
    assert build_field(7) is build_field(7)
    assert field_from_descriptor("3^2") is build_field(3, 2)


def test_lowered_table_size_applies_to_built_fields() -> None:
    build_field(13)
    saved = config.settings()
    try:
        config.configure(max_table_size=11)
        with pytest.raises(FieldConstructionError):
            build_field(13)
    finally:
        config.configure(**saved)
    assert build_field(13).q == 13


@pytest.mark.parametrize(("p", "n"), FIELDS)
def test_generator_enumerates_field(p: int, n: int) -> None:
    field = build_field(p, n)
    seen = {field.coefficients(field.power_of_generator(k)) for k in range(field.order)}

    assert len(seen) == field.order
    assert field.pow(field.generator, field.order) == field.one
    assert all(field.pow(field.generator, field.order // r) != field.one for r in (2, 3) if field.order % r == 0)


@pytest.mark.parametrize(("p", "n"), FIELDS)
def test_zech_addition_matches_coefficients(p: int, n: int) -> None:
    field = build_field(p, n)
    for a in field.elements():
        for b in field.elements():
            expected = [(x + y) % p for x, y in zip(field.coefficients(a), field.coefficients(b), strict=True)]
            assert field.add(a, b) == field.from_coefficients(expected)


@pytest.mark.parametrize(("p", "n"), FIELDS)
def test_vectorised_arithmetic_matches_scalar(p: int, n: int) -> None:
    field = build_field(p, n)
    indices = field.all_indices()
    for a in field.elements():
        sums = field.add_arrays(a.index, indices)
        products = field.mul_arrays(a.index, indices)
        for b in field.elements():
            assert sums[b.index] == field.add(a, b).index
            assert products[b.index] == field.mul(a, b).index
    negated = field.neg_array(indices)
    squared = field.square_array(indices)
    for a in field.elements():
        assert negated[a.index] == field.neg(a).index
        assert squared[a.index] == field.mul(a, a).index


def test_minus_one_and_prime_subfield(f9: FiniteField) -> None:
    assert f9.add(f9.minus_one, f9.one) == f9.zero
    assert f9.from_int(-1) == f9.minus_one
    assert f9.from_int(4) == f9.one
    assert f9.from_int(3) == f9.zero


def test_inverse_and_division(f13: FiniteField) -> None:
    for a in f13.nonzero_elements():
        assert f13.mul(a, f13.inv(a)) == f13.one
        assert f13.div(a, a) == f13.one
    with pytest.raises(ZeroDivisionError):
        f13.inv(f13.zero)
    with pytest.raises(ZeroDivisionError):
        f13.pow(f13.zero, -1)
    assert f13.pow(f13.zero, 0) == f13.one


def test_dlog(f13: FiniteField) -> None:
    assert f13.dlog(f13.one) == 0
    assert f13.dlog(f13.generator) == 1
    assert f13.dlog(f13.minus_one) == 6
    with pytest.raises(ValueError, match="logarithm of zero"):
        f13.dlog(f13.zero)


def test_trace_of_prime_field_is_identity(f13: FiniteField) -> None:
    for value in range(13):
        assert f13.trace(f13.from_int(value)) == value


def test_trace_is_additive() -> None:
    field = build_field(3, 3)
    for a in field.elements():
        for b in field.elements():
            assert field.trace(field.add(a, b)) == (field.trace(a) + field.trace(b)) % 3


def test_trace_array_matches_trace(f9: FiniteField) -> None:
    assert [int(t) for t in f9.trace_array] == [f9.trace(a) for a in f9.elements()]


def test_sqrt_of_minus_one(f13: FiniteField) -> None:
    i = f13.sqrt_of_minus_one()
    assert f13.mul(i, i) == f13.minus_one
    one_plus_i = f13.add(f13.one, i)
    assert f13.pow(one_plus_i, 4) == f13.from_int(-4)
    with pytest.raises(InapplicableFieldError):
        build_field(7).sqrt_of_minus_one()


def test_parse_and_format_element(f9: FiniteField) -> None:
    assert f9.parse_element("g^3") == FieldElement(4)
    assert f9.parse_element("g^-1") == FieldElement(9 - 1)
    assert f9.parse_element("5") == FieldElement(5)
    assert f9.format_element(FieldElement(0)) == "0"
    assert f9.format_element(FieldElement(4)) == "g^3"
    with pytest.raises(FieldMismatchError):
        f9.parse_element("9")
    with pytest.raises(FieldMismatchError):
        f9.parse_element("h^2")


def test_elements_outside_field_are_rejected(f5: FiniteField) -> None:
    with pytest.raises(FieldMismatchError):
        f5.add(FieldElement(7), f5.one)
    with pytest.raises(FieldMismatchError):
        f5.from_coefficients([1, 2])


@given(st.integers(0, 26), st.integers(0, 26), st.integers(0, 26))
def test_field_axioms(a: int, b: int, c: int) -> None:
    field = build_field(3, 3)
    x, y, z = field.element(a), field.element(b), field.element(c)

    assert field.add(x, y) == field.add(y, x)
    assert field.mul(x, y) == field.mul(y, x)
    assert field.add(field.add(x, y), z) == field.add(x, field.add(y, z))
    assert field.mul(field.mul(x, y), z) == field.mul(x, field.mul(y, z))
    assert field.mul(x, field.add(y, z)) == field.add(field.mul(x, y), field.mul(x, z))
    assert field.sub(field.add(x, y), y) == x


@given(st.integers(0, 24))
def test_frobenius_is_additive(a: int) -> None:
    field = build_field(5, 2)
    x = field.element(a)
    for b in field.elements():
        assert field.pow(field.add(x, b), 5) == field.add(field.pow(x, 5), field.pow(b, 5))
