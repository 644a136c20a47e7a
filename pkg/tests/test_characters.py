import numpy as np
import pytest
from ffhyper import (
    Character,
    FieldMismatchError,
    FiniteField,
    additive,
    all_characters,
    backend_for,
    build_field,
    char_conj,
    char_pow,
    char_product,
    evaluate,
    is_even,
    parse_character,
    quadratic,
    quartic,
    trivial,
)
from ffhyper.characters import InapplicableFieldError, character_exponents


def test_names(f13: FiniteField) -> None:
    assert trivial(f13).name == "eps"
    assert quadratic(f13).name == "phi"
    assert quartic(f13).name == "chi4"
    assert quartic(f13, conjugate=True).name == "chi4bar"
    assert Character(f13, 5).name == "chi5"
    assert str(Character(f13, 6)) == "phi"


def test_exponent_is_reduced(f13: FiniteField) -> None:
    assert Character(f13, 15) == Character(f13, 3)
    assert Character(f13, -1).j == 11
    assert Character(f13, 12).is_trivial


def test_group_operations(f13: FiniteField) -> None:
    a, b = Character(f13, 5), Character(f13, 9)
    assert char_product(a, b) == Character(f13, 2)
    assert char_conj(a) == Character(f13, 7)
    assert char_pow(a, 3) == Character(f13, 3)
    assert a / a == trivial(f13)
    assert quartic(f13) ** 2 == quadratic(f13)
    assert quartic(f13).conj == quartic(f13, conjugate=True)


def test_order(f13: FiniteField) -> None:
    assert trivial(f13).order == 1
    assert quadratic(f13).order == 2
    assert quartic(f13).order == 4
    assert Character(f13, 1).order == 12
    assert len(list(all_characters(f13))) == 12


def test_characters_of_different_fields_do_not_mix(f5: FiniteField, f13: FiniteField) -> None:
    with pytest.raises(FieldMismatchError):
        _ = Character(f5, 1) * Character(f13, 1)


def test_quartic_needs_q_one_mod_four() -> None:
    with pytest.raises(InapplicableFieldError):
        quartic(build_field(7))
    with pytest.raises(InapplicableFieldError):
        quartic(build_field(3, 3))


def test_parse_character(f13: FiniteField) -> None:
    assert parse_character(f13, "eps") == trivial(f13)
    assert parse_character(f13, "phi") == Character(f13, 6)
    assert parse_character(f13, "chi4") == Character(f13, 3)
    assert parse_character(f13, "CHI4BAR") == Character(f13, 9)
    assert parse_character(f13, "chi7") == Character(f13, 7)
    assert parse_character(f13, "-1") == Character(f13, 11)
    with pytest.raises(ValueError, match="Unrecognised character"):
        parse_character(f13, "psi")


@pytest.mark.parametrize(("q_field", "expected"), [((5, 1), True), ((7, 1), False), ((3, 2), True), ((3, 3), False)])
def test_quadratic_parity(q_field: tuple[int, int], expected: bool) -> None:  # noqa: FBT001
    field = build_field(*q_field)
    phi = quadratic(field)
    assert is_even(phi) is expected
    assert evaluate(phi, field.minus_one) == (1 if expected else -1)


def test_value_at_zero_is_zero(f9: FiniteField) -> None:
    assert evaluate(trivial(f9), f9.zero).is_zero()
    assert evaluate(Character(f9, 3), f9.zero).is_zero()
    assert evaluate(trivial(f9), f9.generator) == 1


@pytest.mark.parametrize(("p", "n"), [(5, 1), (3, 2), (13, 1)])
def test_multiplicative(p: int, n: int) -> None:
    field = build_field(p, n)
    backend = backend_for(field, "exact")
    for chi in all_characters(field):
        for x in field.nonzero_elements():
            for y in field.nonzero_elements():
                assert evaluate(chi, field.mul(x, y), backend) == evaluate(chi, x, backend) * evaluate(
                    chi, y, backend
                )


@pytest.mark.parametrize(("p", "n"), [(5, 1), (3, 2), (13, 1), (3, 3)])
def test_orthogonality(p: int, n: int) -> None:
    field = build_field(p, n)
    backend = backend_for(field, "exact")
    for chi in all_characters(field):
        total = backend.sum_roots(character_exponents(chi, np.arange(1, field.q)))
        assert total == (field.order if chi.is_trivial else 0)


def test_quartic_character_at_minus_four(f13: FiniteField) -> None:
    minus_four = f13.from_int(-4)
    assert evaluate(quartic(f13), minus_four) == 1
    assert evaluate(quartic(f13, conjugate=True), minus_four) == 1


@pytest.mark.parametrize(("p", "n"), [(5, 1), (3, 2), (3, 3)])
def test_additive_character(p: int, n: int) -> None:
    field = build_field(p, n)
    backend = backend_for(field, "exact")
    total = backend.zero()
    for x in field.elements():
        total = total + additive(field, x, backend)
        for y in field.elements():
            assert additive(field, field.add(x, y), backend) == additive(field, x, backend) * additive(
                field, y, backend
            )
    assert total.is_zero()
    assert additive(field, field.zero, backend) == 1


def test_float_backend_values(f13: FiniteField) -> None:
    exact = backend_for(f13, "exact")
    approx = backend_for(f13, "float")
    chi = Character(f13, 5)
    for x in f13.elements():
        assert approx.equal(evaluate(chi, x, exact), evaluate(chi, x, approx))
