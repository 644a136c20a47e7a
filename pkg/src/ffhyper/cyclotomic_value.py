"""
Exact arithmetic in the cyclotomic field Q(zeta_m) and a floating point backend with the same contract.

Values of every character sum over F_q live in Q(zeta_m) with m = p(q-1). Exact values are kept as
canonical residues modulo the m-th cyclotomic polynomial, so equality of values is equality of
coefficient vectors.
"""

import cmath
import dataclasses
import functools
import logging
import math
from collections.abc import Sequence
from fractions import Fraction
from typing import Protocol, TypeAlias, TypedDict

import numpy as np
import numpy.typing as npt
import sympy

from ffhyper.config import BackendName, config

__all__ = [
    "ApproxNumber",
    "ApproxNumberDict",
    "ConductorMismatchError",
    "CycNumber",
    "CycNumberDict",
    "ExactBackend",
    "ExactBackendUnavailableError",
    "FloatBackend",
    "Value",
    "ValueBackend",
    "check_exact_conductor",
    "cyclotomic_polynomial",
    "embed",
    "get_backend",
    "reduce_mod_cyclotomic",
    "zeta",
]

logger = logging.getLogger(__name__)

# numpy reductions are used only while every partial sum provably fits in int64
_INT64_SAFE = 2**62

Rational: TypeAlias = int | Fraction


class ConductorMismatchError(ValueError):
    pass


class ExactBackendUnavailableError(ValueError):
    pass


class CycNumberDict(TypedDict):
    m: int
    coeffs: list[str]


class ApproxNumberDict(TypedDict):
    re: float
    im: float


def _exact_divide(numerator: Sequence[int], denominator: Sequence[int]) -> list[int]:
    """Quotient of integer polynomials (low degree first) by a monic divisor, which must divide exactly"""
    divisor_degree = len(denominator) - 1
    remainder = list(numerator)
    quotient = [0] * (len(numerator) - divisor_degree)
    for i in range(len(quotient) - 1, -1, -1):
        lead = remainder[i + divisor_degree]
        quotient[i] = lead
        if lead:
            for k, d in enumerate(denominator):
                remainder[i + k] -= lead * d
    if any(remainder[:divisor_degree]):
        raise ArithmeticError("Polynomial division left a remainder")
    return quotient


@functools.cache
def cyclotomic_polynomial(m: int) -> tuple[int, ...]:
    """Coefficients of the m-th cyclotomic polynomial, low degree first

    Computed as x^m - 1 divided by the cyclotomic polynomials of every proper divisor of m."""
    if m < 1:
        raise ValueError(f"Conductor must be positive, got {m}")
    polynomial = [-1] + [0] * (m - 1) + [1]
    for d in sympy.divisors(m)[:-1]:
        polynomial = _exact_divide(polynomial, cyclotomic_polynomial(int(d)))
    return tuple(polynomial)


def _kronecker_pack(values: Sequence[int], slot_bytes: int) -> int:
    return int.from_bytes(b"".join(v.to_bytes(slot_bytes, "little") for v in values), "little")


def _kronecker_unpack(packed: int, length: int, slot_bytes: int) -> list[int]:
    raw = packed.to_bytes(length * slot_bytes, "little")
    return [int.from_bytes(raw[i * slot_bytes : (i + 1) * slot_bytes], "little") for i in range(length)]


def _convolve(a: Sequence[int], b: Sequence[int]) -> list[int]:
    """Integer polynomial product by Kronecker substitution into big integers"""
    length = len(a) + len(b) - 1
    bound = max(map(abs, a)) * max(map(abs, b)) * min(len(a), len(b))
    if bound == 0:
        return [0] * length
    slot_bytes = (bound.bit_length() + 8) // 8
    a_pos = _kronecker_pack([max(c, 0) for c in a], slot_bytes)
    a_neg = _kronecker_pack([max(-c, 0) for c in a], slot_bytes)
    b_pos = _kronecker_pack([max(c, 0) for c in b], slot_bytes)
    b_neg = _kronecker_pack([max(-c, 0) for c in b], slot_bytes)
    positive = _kronecker_unpack(a_pos * b_pos + a_neg * b_neg, length, slot_bytes)
    negative = _kronecker_unpack(a_pos * b_neg + a_neg * b_pos, length, slot_bytes)
    return [x - y for x, y in zip(positive, negative, strict=True)]


class _CyclotomicRing:
    """Reduction data for one conductor: the cyclotomic polynomial and the reduced powers zeta^phi ... zeta^(m-1)"""

    def __init__(self, m: int):
        self.m = m
        self.polynomial = cyclotomic_polynomial(m)
        self.degree = len(self.polynomial) - 1
        lower = self.polynomial[: self.degree]
        rows: list[list[int]] = []
        current = [-c for c in lower]
        for _ in range(self.degree, m):
            rows.append(current)
            carry = current[-1]
            current = [0, *current[:-1]]
            if carry:
                current = [c - carry * low for c, low in zip(current, lower, strict=True)]
        self._rows = rows
        self._row_bound = max((abs(c) for row in rows for c in row), default=0)
        self._row_matrix = (
            np.array(rows, dtype=np.int64) if rows else np.zeros((0, self.degree), dtype=np.int64)
        )
        self._roots = np.exp(2j * np.pi * np.arange(m) / m)
        logger.debug(f"Prepared cyclotomic ring for m = {m} of degree {self.degree}")

    @functools.cached_property
    def _sparse_rows(self) -> list[list[tuple[int, int]]]:
        return [[(i, c) for i, c in enumerate(row) if c] for row in self._rows]

    @property
    def roots(self) -> npt.NDArray[np.complex128]:
        return self._roots

    def reduce(self, vector: Sequence[int]) -> list[int]:
        """Canonical residue of an integer polynomial in zeta modulo the cyclotomic polynomial"""
        if len(vector) > self.m:
            folded = [0] * self.m
            for i, c in enumerate(vector):
                folded[i % self.m] += c
            vector = folded
        degree = self.degree
        if len(vector) <= degree:
            return [*vector] + [0] * (degree - len(vector))
        low = [int(c) for c in vector[:degree]]
        high = [int(c) for c in vector[degree:]]
        high_bound = max(map(abs, high))
        if high_bound == 0:
            return low
        low_bound = max(map(abs, low), default=0)
        if low_bound + high_bound * self._row_bound * len(high) < _INT64_SAFE:
            reduced = np.asarray(low, dtype=np.int64) + np.asarray(high, dtype=np.int64) @ self._row_matrix[: len(high)]
            return [int(c) for c in reduced]
        for row, c in zip(self._sparse_rows, high, strict=False):
            if c:
                for i, r in row:
                    low[i] += c * r
        return low


@functools.cache
def _ring(m: int) -> _CyclotomicRing:
    return _CyclotomicRing(m)


class CycNumber:
    """An exact element of Q(zeta_m), stored as integer numerators over one positive denominator

    The numerators are the power basis coefficients 1, zeta, ..., zeta^(phi(m)-1) of the canonical
    residue modulo the m-th cyclotomic polynomial. The representation is normalised so that equal
    values have identical numerators and denominator."""

    __slots__ = ("m", "_numerators", "_denominator")

    def __init__(self, m: int, numerators: Sequence[int], denominator: int = 1):
        degree = _ring(m).degree
        if len(numerators) != degree:
            raise ValueError(f"Expected {degree} coefficients for conductor {m}, got {len(numerators)}")
        if denominator == 0:
            raise ZeroDivisionError("Denominator must be nonzero")
        if denominator < 0:
            numerators = [-c for c in numerators]
            denominator = -denominator
        divisor = math.gcd(denominator, *numerators)
        if divisor > 1:
            numerators = [c // divisor for c in numerators]
            denominator //= divisor
        self.m = m
        self._numerators = tuple(numerators)
        self._denominator = denominator

    @staticmethod
    def zero(m: int) -> "CycNumber":
        return CycNumber(m, [0] * _ring(m).degree)

    @staticmethod
    def rational(m: int, value: Rational) -> "CycNumber":
        value = Fraction(value)
        numerators = [0] * _ring(m).degree
        numerators[0] = value.numerator
        return CycNumber(m, numerators, value.denominator)

    @staticmethod
    def from_coefficients(m: int, coefficients: Sequence[Rational]) -> "CycNumber":
        fractions = [Fraction(c) for c in coefficients]
        denominator = math.lcm(1, *(f.denominator for f in fractions))
        return CycNumber(m, [int(f * denominator) for f in fractions], denominator)

    @staticmethod
    def from_dict(data: CycNumberDict) -> "CycNumber":
        return CycNumber.from_coefficients(data["m"], [Fraction(c) for c in data["coeffs"]])

    @property
    def numerators(self) -> tuple[int, ...]:
        return self._numerators

    @property
    def denominator(self) -> int:
        return self._denominator

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        """Power basis coefficients as exact rationals"""
        return tuple(Fraction(c, self._denominator) for c in self._numerators)

    def is_zero(self) -> bool:
        return not any(self._numerators)

    def to_dict(self) -> CycNumberDict:
        return {"m": self.m, "coeffs": [f"{c.numerator}/{c.denominator}" for c in self.coeffs]}

    def embed(self) -> "ApproxNumber":
        return embed(self)

    def conj(self) -> "CycNumber":
        """Image under the automorphism zeta -> zeta^-1 (complex conjugation)"""
        ring = _ring(self.m)
        spread = [0] * self.m
        for i, c in enumerate(self._numerators):
            spread[(-i) % self.m] += c
        return CycNumber(self.m, ring.reduce(spread), self._denominator)

    def times_root(self, exponent: int) -> "CycNumber":
        """Product with zeta^exponent"""
        exponent %= self.m
        if exponent == 0:
            return self
        ring = _ring(self.m)
        spread = [0] * self.m
        for i, c in enumerate(self._numerators):
            if c:
                spread[(i + exponent) % self.m] += c
        return CycNumber(self.m, ring.reduce(spread), self._denominator)

    def inverse(self) -> "CycNumber":
        """Multiplicative inverse via the extended Euclidean algorithm in Q[x] modulo the cyclotomic polynomial"""
        if self.is_zero():
            raise ZeroDivisionError("Division by zero in Q(zeta_m)")
        ring = _ring(self.m)
        x = sympy.Symbol("x")
        numerator = sympy.Poly(list(reversed(self._numerators)), x, domain=sympy.QQ)
        modulus = sympy.Poly(list(reversed(ring.polynomial)), x, domain=sympy.QQ)
        inverse = numerator.invert(modulus)
        coefficients = [Fraction(int(c.p), int(c.q)) * self._denominator for c in reversed(inverse.all_coeffs())]
        coefficients += [Fraction(0)] * (ring.degree - len(coefficients))
        return CycNumber.from_coefficients(self.m, coefficients)

    def _coerce(self, other: object) -> "CycNumber | None":
        if isinstance(other, CycNumber):
            if other.m != self.m:
                raise ConductorMismatchError(f"Cannot combine conductors {self.m} and {other.m}")
            return other
        if isinstance(other, int | Fraction):
            return CycNumber.rational(self.m, other)
        return None

    def __add__(self, other: "CycNumber | Rational") -> "CycNumber":
        right = self._coerce(other)
        if right is None:
            return NotImplemented
        numerators = [
            a * right._denominator + b * self._denominator
            for a, b in zip(self._numerators, right._numerators, strict=True)
        ]
        return CycNumber(self.m, numerators, self._denominator * right._denominator)

    __radd__ = __add__

    def __neg__(self) -> "CycNumber":
        return CycNumber(self.m, [-c for c in self._numerators], self._denominator)

    def __sub__(self, other: "CycNumber | Rational") -> "CycNumber":
        right = self._coerce(other)
        if right is None:
            return NotImplemented
        return self + (-right)

    def __rsub__(self, other: "CycNumber | Rational") -> "CycNumber":
        return (-self) + other

    def __mul__(self, other: "CycNumber | Rational") -> "CycNumber":
        if isinstance(other, int | Fraction):
            value = Fraction(other)
            return CycNumber(
                self.m, [c * value.numerator for c in self._numerators], self._denominator * value.denominator
            )
        right = self._coerce(other)
        if right is None:
            return NotImplemented
        if self.is_zero() or right.is_zero():
            return CycNumber.zero(self.m)
        product = _ring(self.m).reduce(_convolve(self._numerators, right._numerators))
        return CycNumber(self.m, product, self._denominator * right._denominator)

    __rmul__ = __mul__

    def __truediv__(self, other: "CycNumber | Rational") -> "CycNumber":
        if isinstance(other, int | Fraction):
            if other == 0:
                raise ZeroDivisionError("Division by zero in Q(zeta_m)")
            return self * (1 / Fraction(other))
        right = self._coerce(other)
        if right is None:
            return NotImplemented
        return self * right.inverse()

    def __rtruediv__(self, other: Rational) -> "CycNumber":
        return CycNumber.rational(self.m, other) * self.inverse()

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int | Fraction):
            other = CycNumber.rational(self.m, other)
        if not isinstance(other, CycNumber):
            return NotImplemented
        return (
            self.m == other.m
            and self._denominator == other._denominator
            and self._numerators == other._numerators
        )

    def __hash__(self) -> int:
        return hash((self.m, self._numerators, self._denominator))

    def __getstate__(self) -> tuple[int, tuple[int, ...], int]:
        return self.m, self._numerators, self._denominator

    def __setstate__(self, state: tuple[int, tuple[int, ...], int]) -> None:
        self.m, self._numerators, self._denominator = state

    def __repr__(self) -> str:
        terms = [f"({c})*z^{i}" for i, c in enumerate(self.coeffs) if c]
        return f"CycNumber(m={self.m}, {' + '.join(terms) or '0'})"


@dataclasses.dataclass(frozen=True)
class ApproxNumber:
    """A complex number in double precision, the floating counterpart of a CycNumber"""

    re: float
    im: float

    @staticmethod
    def from_complex(value: complex) -> "ApproxNumber":
        return ApproxNumber(float(value.real), float(value.imag))

    @property
    def value(self) -> complex:
        return complex(self.re, self.im)

    def conj(self) -> "ApproxNumber":
        return ApproxNumber(self.re, -self.im)

    def times_root(self, exponent: int, m: int) -> "ApproxNumber":
        return ApproxNumber.from_complex(self.value * cmath.exp(2j * math.pi * (exponent % m) / m))

    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def to_dict(self) -> ApproxNumberDict:
        return {"re": self.re, "im": self.im}

    def __abs__(self) -> float:
        return abs(self.value)

    @staticmethod
    def _as_complex(other: object) -> complex | None:
        if isinstance(other, ApproxNumber):
            return other.value
        if isinstance(other, int | float | Fraction):
            return complex(float(other))
        return None

    def __add__(self, other: "ApproxNumber | Rational | float") -> "ApproxNumber":
        right = self._as_complex(other)
        if right is None:
            return NotImplemented
        return ApproxNumber.from_complex(self.value + right)

    __radd__ = __add__

    def __neg__(self) -> "ApproxNumber":
        return ApproxNumber(-self.re, -self.im)

    def __sub__(self, other: "ApproxNumber | Rational | float") -> "ApproxNumber":
        right = self._as_complex(other)
        if right is None:
            return NotImplemented
        return ApproxNumber.from_complex(self.value - right)

    def __rsub__(self, other: "Rational | float") -> "ApproxNumber":
        return (-self) + other

    def __mul__(self, other: "ApproxNumber | Rational | float") -> "ApproxNumber":
        right = self._as_complex(other)
        if right is None:
            return NotImplemented
        return ApproxNumber.from_complex(self.value * right)

    __rmul__ = __mul__

    def __truediv__(self, other: "ApproxNumber | Rational | float") -> "ApproxNumber":
        right = self._as_complex(other)
        if right is None:
            return NotImplemented
        if right == 0:
            raise ZeroDivisionError("Division by zero")
        return ApproxNumber.from_complex(self.value / right)


Value: TypeAlias = CycNumber | ApproxNumber
"""A value produced by either backend"""


def zeta(m: int, a: int) -> CycNumber:
    """The canonical residue of zeta_m^a"""
    if m < 1:
        raise ValueError(f"Conductor must be positive, got {m}")
    return CycNumber.rational(m, 1).times_root(a)


def reduce_mod_cyclotomic(polynomial: Sequence[Rational], m: int) -> CycNumber:
    """Canonical residue of a rational polynomial in zeta_m (coefficients low degree first)"""
    fractions = [Fraction(c) for c in polynomial]
    denominator = math.lcm(1, *(f.denominator for f in fractions))
    numerators = [int(f * denominator) for f in fractions]
    return CycNumber(m, _ring(m).reduce(numerators or [0]), denominator)


def embed(value: CycNumber) -> ApproxNumber:
    """Evaluates a CycNumber at zeta_m = exp(2 pi i / m)"""
    ring = _ring(value.m)
    coefficients = np.array([c / value.denominator for c in value.numerators], dtype=np.float64)
    return ApproxNumber.from_complex(complex(coefficients @ ring.roots[: ring.degree]))


class ValueBackend(Protocol):
    """Constructors and comparisons shared by the exact and the floating point backend"""

    name: BackendName
    m: int

    def zero(self) -> Value: ...

    def one(self) -> Value: ...

    def root(self, exponent: int) -> Value: ...

    def rational(self, value: Rational) -> Value: ...

    def sum_roots(self, exponents: npt.NDArray[np.int64]) -> Value: ...

    def scale_root(self, value: Value, exponent: int) -> Value: ...

    def equal(self, a: Value, b: Value) -> bool: ...

    def distance(self, a: Value, b: Value) -> float: ...

    def to_json_value(self, value: Value) -> CycNumberDict | ApproxNumberDict: ...


class ExactBackend:
    """Exact values as CycNumbers of conductor m"""

    name: BackendName = "exact"

    def __init__(self, m: int):
        self.m = m
        self._ring = _ring(m)

    def zero(self) -> CycNumber:
        return CycNumber.zero(self.m)

    def one(self) -> CycNumber:
        return CycNumber.rational(self.m, 1)

    def root(self, exponent: int) -> CycNumber:
        return zeta(self.m, exponent)

    def rational(self, value: Rational) -> CycNumber:
        return CycNumber.rational(self.m, value)

    def sum_roots(self, exponents: npt.NDArray[np.int64]) -> CycNumber:
        """The sum of zeta_m^e over the given exponents, one term per entry"""
        if exponents.size == 0:
            return self.zero()
        counts = np.bincount(np.mod(exponents, self.m), minlength=self.m)
        return CycNumber(self.m, self._ring.reduce(counts.tolist()))

    def scale_root(self, value: Value, exponent: int) -> CycNumber:
        """value times zeta_m^exponent"""
        assert isinstance(value, CycNumber)
        return value.times_root(exponent)

    def equal(self, a: Value, b: Value) -> bool:
        return a == b

    def distance(self, a: Value, b: Value) -> float:
        assert isinstance(a, CycNumber)
        assert isinstance(b, CycNumber)
        return abs(embed(a - b))

    def to_json_value(self, value: Value) -> CycNumberDict:
        assert isinstance(value, CycNumber)
        return value.to_dict()


class FloatBackend:
    """Double precision complex values, compared with an absolute tolerance"""

    name: BackendName = "float"

    def __init__(self, m: int, tolerance: float):
        self.m = m
        self.tolerance = tolerance
        self._roots = _float_roots(m)

    def zero(self) -> ApproxNumber:
        return ApproxNumber(0.0, 0.0)

    def one(self) -> ApproxNumber:
        return ApproxNumber(1.0, 0.0)

    def root(self, exponent: int) -> ApproxNumber:
        return ApproxNumber.from_complex(complex(self._roots[exponent % self.m]))

    def rational(self, value: Rational) -> ApproxNumber:
        return ApproxNumber(float(value), 0.0)

    def sum_roots(self, exponents: npt.NDArray[np.int64]) -> ApproxNumber:
        if exponents.size == 0:
            return self.zero()
        counts = np.bincount(np.mod(exponents, self.m), minlength=self.m)
        return ApproxNumber.from_complex(complex(counts @ self._roots))

    def scale_root(self, value: Value, exponent: int) -> ApproxNumber:
        approx = embed(value) if isinstance(value, CycNumber) else value
        return approx * ApproxNumber.from_complex(complex(self._roots[exponent % self.m]))

    def equal(self, a: Value, b: Value) -> bool:
        return self.distance(a, b) < self.tolerance

    def distance(self, a: Value, b: Value) -> float:
        left = embed(a) if isinstance(a, CycNumber) else a
        right = embed(b) if isinstance(b, CycNumber) else b
        return abs(left - right)

    def to_json_value(self, value: Value) -> ApproxNumberDict:
        approx = embed(value) if isinstance(value, CycNumber) else value
        return approx.to_dict()


@functools.cache
def _float_roots(m: int) -> npt.NDArray[np.complex128]:
    return np.exp(2j * np.pi * np.arange(m) / m)


@functools.cache
def _exact_backend(m: int) -> ExactBackend:
    return ExactBackend(m)


def check_exact_conductor(m: int) -> None:
    if m > config.max_exact_conductor:
        raise ExactBackendUnavailableError(
            f"Conductor {m} exceeds the exact backend limit of {config.max_exact_conductor}, use the float backend"
        )


def get_backend(kind: BackendName, m: int, *, tolerance: float | None = None) -> ExactBackend | FloatBackend:
    """Returns the backend of the given kind for conductor m

    The float tolerance defaults to `config.float_tolerance_factor` times m, callers working over a
    field pass factor * q explicitly."""
    if kind == "exact":
        check_exact_conductor(m)
        return _exact_backend(m)
    if kind == "float":
        return FloatBackend(m, tolerance if tolerance is not None else config.float_tolerance_factor * m)
    raise ValueError(f"Unknown backend {kind!r}")
