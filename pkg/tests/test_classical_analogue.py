from fractions import Fraction

import mpmath
import pytest
from ffhyper import (
    NonTerminatingSeriesError,
    RationalPoly,
    TerminatingHypSeries,
    gamma_ratio,
    stanton_sides,
    terminating_2f1_poly,
    verify_stanton,
)

mpmath.mp.dps = 40


def _mpf(value: Fraction) -> mpmath.mpf:
    return mpmath.mpf(value.numerator) / value.denominator


def _at(poly: RationalPoly, z: float) -> mpmath.mpf:
    point = mpmath.mpf(z)
    return mpmath.fsum(_mpf(c) * point**k for k, c in enumerate(poly.coefficients))


def test_gamma_ratio_small_values() -> None:
    assert gamma_ratio(0) == 2
    assert gamma_ratio(1) == 16
    with pytest.raises(ValueError, match="non-negative"):
        gamma_ratio(-1)


@pytest.mark.parametrize("n", range(11))
def test_gamma_ratio_matches_gamma_function(n: int) -> None:
    expected = (
        mpmath.gamma(2 * n + 3)
        * mpmath.gamma(mpmath.mpf(3) / 4)
        / (mpmath.gamma(n + 2) * mpmath.gamma(n + mpmath.mpf(3) / 4))
    )
    assert mpmath.almosteq(_mpf(gamma_ratio(n)), expected, 1e-30)


def test_series_length_and_validation() -> None:
    assert TerminatingHypSeries(a=Fraction(-3), b=Fraction(1, 2), c=Fraction(5, 2)).length == 3
    assert TerminatingHypSeries(a=Fraction(-5), b=Fraction(-2), c=Fraction(1, 3)).length == 2
    assert TerminatingHypSeries(a=Fraction(-3), b=Fraction(1), c=Fraction(-3)).length == 3
    with pytest.raises(NonTerminatingSeriesError):
        TerminatingHypSeries(a=Fraction(1, 2), b=Fraction(1, 3), c=Fraction(1))
    with pytest.raises(NonTerminatingSeriesError):
        TerminatingHypSeries(a=Fraction(-3), b=Fraction(1), c=Fraction(-1))


def test_series_coefficients() -> None:
    series = TerminatingHypSeries(a=Fraction(-2), b=Fraction(1), c=Fraction(1))
    # (1 - z)^2
    assert series.coefficients() == [1, -2, 1]


@pytest.mark.parametrize(("a", "b", "c"), [(-3, Fraction(1, 2), Fraction(5, 2)), (-4, Fraction(-7, 3), Fraction(2, 5))])
def test_terminating_polynomial_matches_mpmath(a: int, b: Fraction, c: Fraction) -> None:
    series = TerminatingHypSeries(a=Fraction(a), b=b, c=c)
    poly = terminating_2f1_poly(series, RationalPoly.z())
    for z in (0.3, -1.7, 2.5):
        expected = mpmath.hyp2f1(a, _mpf(b), _mpf(c), z)
        assert mpmath.almosteq(_at(poly, z), expected, 1e-25)


def test_cleared_denominator() -> None:
    series = TerminatingHypSeries(a=Fraction(-1), b=Fraction(1), c=Fraction(1))
    z = RationalPoly.z()
    one = RationalPoly.constant(1)
    # (z + 1)^2 (1 - z/(z + 1)) = z + 1
    poly = terminating_2f1_poly(series, z, denominator=z + one, clearing_power=2)
    assert poly == (z + one) * (z + one) - z * (z + one)
    with pytest.raises(ValueError, match="Clearing power"):
        terminating_2f1_poly(series, z, denominator=z + one, clearing_power=0)


def test_stanton_sides_for_n_zero() -> None:
    lhs, rhs = stanton_sides(0)
    assert lhs == rhs == RationalPoly.from_coefficients([0, -4])


@pytest.mark.parametrize("n", range(7))
def test_stanton_sides_agree(n: int) -> None:
    lhs, rhs = stanton_sides(n)
    assert lhs == rhs
    assert lhs.degree == 4 * n + 1
    assert lhs.coefficients[0] == 0


@pytest.mark.parametrize("n", [1, 2, 3])
def test_stanton_sides_match_mpmath(n: int) -> None:
    lhs, _ = stanton_sides(n)
    quarter = mpmath.mpf(1) / 4
    for z in (0.3, -0.6, 1.9):
        point = mpmath.mpf(z)
        ratio = -(((point + 1) / (point - 1)) ** 2)
        expected_lhs = (point - 1) ** (4 * n + 2) * mpmath.hyp2f1(-n - quarter, -2 * n - 1, -n + quarter, ratio)
        expected_rhs = (
            -2
            * point
            * mpmath.gamma(2 * n + 3)
            * mpmath.gamma(3 * quarter)
            / (mpmath.gamma(n + 2) * mpmath.gamma(n + 3 * quarter))
            * mpmath.hyp2f1(-n - quarter, -n, 5 * quarter, point**4)
        )
        assert mpmath.almosteq(_at(lhs, z), expected_lhs, 1e-20)
        assert mpmath.almosteq(expected_lhs, expected_rhs, 1e-20)


def test_verify_stanton() -> None:
    report = verify_stanton(10)
    assert report.identity == "stanton"
    assert report.tested == 11
    assert report.passed == 11
    assert report.ok
    assert report.witnesses == []
    with pytest.raises(ValueError, match="non-negative"):
        verify_stanton(-1)


def test_polynomial_arithmetic() -> None:
    z = RationalPoly.z()
    square = (z + RationalPoly.constant(1)) ** 2
    assert square.coefficients == (1, 2, 1)
    assert (square - square).degree == -1
    assert (square * Fraction(1, 2)).coefficients == (Fraction(1, 2), 1, Fraction(1, 2))
    assert hash(square) == hash(RationalPoly.from_coefficients([1, 2, 1]))
