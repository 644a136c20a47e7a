"""
The complex number analogue of the quartic transformation, checked as an identity of polynomials.

For a non-negative integer n both

    (z-1)^(4n+2) 2F1(-n-1/4, -2n-1; -n+1/4 | -((z+1)/(z-1))^2)

and

    (-2z) Gamma(2n+3) Gamma(3/4) / (Gamma(n+2) Gamma(n+3/4)) 2F1(-n-1/4, -n; 5/4 | z^4)

are polynomials in z of degree 4n+1 with rational coefficients. Gamma(3/4) cancels, so the
whole check runs in exact rational arithmetic.
"""

import dataclasses
import logging
from collections.abc import Sequence
from fractions import Fraction

import sympy

from ffhyper.models import IdentityReport, Witness

__all__ = [
    "NonTerminatingSeriesError",
    "RationalPoly",
    "TerminatingHypSeries",
    "gamma_ratio",
    "stanton_sides",
    "terminating_2f1_poly",
    "verify_stanton",
]

logger = logging.getLogger(__name__)

_Z = sympy.Symbol("z")


class NonTerminatingSeriesError(ValueError):
    pass


def _rational(value: Fraction | int) -> sympy.Rational:
    value = Fraction(value)
    return sympy.Rational(value.numerator, value.denominator)


def _fraction(value: sympy.Expr) -> Fraction:
    rational = sympy.Rational(value)
    return Fraction(int(rational.p), int(rational.q))


def _nonpositive_integer(value: Fraction) -> bool:
    return value.denominator == 1 and value <= 0


@dataclasses.dataclass(frozen=True)
class RationalPoly:
    """A polynomial in z over the rationals"""

    poly: sympy.Poly

    @staticmethod
    def from_coefficients(coefficients: Sequence[Fraction | int]) -> "RationalPoly":
        """From coefficients listed low degree first"""
        terms = [_rational(c) for c in reversed(coefficients)] or [sympy.Integer(0)]
        return RationalPoly(sympy.Poly(terms, _Z, domain=sympy.QQ))

    @staticmethod
    def z() -> "RationalPoly":
        return RationalPoly.from_coefficients([0, 1])

    @staticmethod
    def constant(value: Fraction | int) -> "RationalPoly":
        return RationalPoly.from_coefficients([value])

    @property
    def coefficients(self) -> tuple[Fraction, ...]:
        """Low degree first, without trailing zeros; the zero polynomial has none"""
        if self.poly.is_zero:
            return ()
        return tuple(_fraction(c) for c in reversed(self.poly.all_coeffs()))

    @property
    def degree(self) -> int:
        """Degree, -1 for the zero polynomial"""
        return -1 if self.poly.is_zero else int(self.poly.degree())

    def __add__(self, other: "RationalPoly") -> "RationalPoly":
        return RationalPoly(self.poly + other.poly)

    def __sub__(self, other: "RationalPoly") -> "RationalPoly":
        return RationalPoly(self.poly - other.poly)

    def __mul__(self, other: "RationalPoly | Fraction | int") -> "RationalPoly":
        if isinstance(other, RationalPoly):
            return RationalPoly(self.poly * other.poly)
        return RationalPoly(self.poly * _rational(other))

    def __pow__(self, exponent: int) -> "RationalPoly":
        return RationalPoly(self.poly**exponent)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, RationalPoly):
            return NotImplemented
        return self.coefficients == other.coefficients

    def __hash__(self) -> int:
        return hash(self.coefficients)


@dataclasses.dataclass(frozen=True, kw_only=True)
class TerminatingHypSeries:
    """2F1(a, b; c | .) with a nonpositive integer upper parameter"""

    a: Fraction
    b: Fraction
    c: Fraction

    def __post_init__(self) -> None:
        candidates = [int(-u) for u in (self.a, self.b) if _nonpositive_integer(u)]
        if not candidates:
            raise NonTerminatingSeriesError(f"2F1({self.a}, {self.b}; {self.c}) does not terminate")
        length = min(candidates)
        if _nonpositive_integer(self.c) and -self.c < length:
            raise NonTerminatingSeriesError(
                f"Lower parameter {self.c} vanishes in the Pochhammer symbols before the series ends at {length}"
            )

    @property
    def length(self) -> int:
        """Index of the last term that can be nonzero"""
        return min(int(-u) for u in (self.a, self.b) if _nonpositive_integer(u))

    def coefficients(self) -> list[Fraction]:
        """(a)_k (b)_k / ((c)_k k!) for k = 0 ... length"""
        a, b, c = _rational(self.a), _rational(self.b), _rational(self.c)
        return [
            _fraction(sympy.rf(a, k) * sympy.rf(b, k) / (sympy.rf(c, k) * sympy.factorial(k)))
            for k in range(self.length + 1)
        ]


def terminating_2f1_poly(
    params: TerminatingHypSeries,
    argument: RationalPoly,
    *,
    denominator: RationalPoly | None = None,
    clearing_power: int | None = None,
) -> RationalPoly:
    """The series at argument, or at argument / denominator multiplied by denominator^clearing_power

    With a denominator every term k contributes argument^k denominator^(clearing_power - k), so the
    result stays a polynomial as long as clearing_power is at least the series length."""
    if denominator is None:
        result = RationalPoly.constant(0)
        for k, coefficient in enumerate(params.coefficients()):
            result = result + argument**k * coefficient
        return result
    power = params.length if clearing_power is None else clearing_power
    if power < params.length:
        raise ValueError(f"Clearing power {power} is below the series length {params.length}")
    result = RationalPoly.constant(0)
    for k, coefficient in enumerate(params.coefficients()):
        result = result + argument**k * denominator ** (power - k) * coefficient
    return result


def gamma_ratio(n: int) -> Fraction:
    """Gamma(2n+3) Gamma(3/4) / (Gamma(n+2) Gamma(n+3/4)) = (n+2)_(n+1) / (3/4)_n"""
    if n < 0:
        raise ValueError(f"n must be non-negative, got {n}")
    return _fraction(sympy.rf(n + 2, n + 1) / sympy.rf(sympy.Rational(3, 4), n))


def stanton_sides(n: int) -> tuple[RationalPoly, RationalPoly]:
    """Both polynomial sides for one non-negative integer n"""
    if n < 0:
        raise ValueError(f"n must be non-negative, got {n}")
    z = RationalPoly.z()
    one = RationalPoly.constant(1)
    quarter = Fraction(1, 4)
    left_series = TerminatingHypSeries(a=-n - quarter, b=Fraction(-2 * n - 1), c=-n + quarter)
    lhs = terminating_2f1_poly(
        left_series,
        (z + one) ** 2 * -1,
        denominator=(z - one) ** 2,
        clearing_power=2 * n + 1,
    )
    right_series = TerminatingHypSeries(a=-n - quarter, b=Fraction(-n), c=Fraction(5, 4))
    rhs = terminating_2f1_poly(right_series, z**4) * z * (-2 * gamma_ratio(n))
    return lhs, rhs


def _render(poly: RationalPoly) -> dict[str, object]:
    return {"degree": poly.degree, "coefficients": [f"{c.numerator}/{c.denominator}" for c in poly.coefficients]}


def verify_stanton(n_max: int = 10) -> IdentityReport:
    """Checks the polynomial identity, its degree 4n+1 and the vanishing constant term for n = 0 ... n_max"""
    if n_max < 0:
        raise ValueError(f"n_max must be non-negative, got {n_max}")
    report = IdentityReport(identity="stanton", field=None, backend="exact")
    for n in range(n_max + 1):
        lhs, rhs = stanton_sides(n)
        expected_degree = 4 * n + 1
        if lhs == rhs and lhs.degree == expected_degree and lhs.coefficients[0] == 0:
            report.record_pass()
            continue
        logger.debug(f"Polynomial identity fails at n = {n}")
        report.record_failure(
            Witness(
                key=(n,),
                parameters={"n": str(n), "expected_degree": str(expected_degree)},
                lhs=_render(lhs),
                rhs=_render(rhs),
                difference=_render(lhs - rhs),
            )
        )
    return report
