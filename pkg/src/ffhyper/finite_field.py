import dataclasses
import functools
import itertools
import logging
import re
from collections.abc import Iterator, Sequence
from typing import TypedDict

import numpy as np
import numpy.typing as npt
import sympy

from ffhyper.config import config

__all__ = [
    "FieldConstructionError",
    "FieldDumpDict",
    "FieldElement",
    "FieldMismatchError",
    "FiniteField",
    "InapplicableFieldError",
    "build_field",
    "field_from_descriptor",
    "parse_field_descriptor",
]

logger = logging.getLogger(__name__)

IndexArray = npt.NDArray[np.int64]

_DESCRIPTOR_PATTERN = re.compile(r"^\s*(?P<base>\d+)\s*(?:\^\s*(?P<exponent>\d+))?\s*$")
_ELEMENT_PATTERN = re.compile(r"^\s*g\s*\^\s*(?P<exponent>-?\d+)\s*$")


class FieldConstructionError(ValueError):
    pass


class FieldMismatchError(ValueError):
    pass


class InapplicableFieldError(ValueError):
    """Raised when an object only exists for some fields, e.g. a quartic character when q is not 1 mod 4"""


@dataclasses.dataclass(frozen=True, order=True)
class FieldElement:
    """An element of a finite field, identified by its canonical index.

    Index 0 is the zero element and index k > 0 is g^(k-1) for the field generator g,
    so two elements of the same field are equal exactly when their indices are equal."""

    index: int


class FieldDumpDict(TypedDict):
    field: str
    p: int
    n: int
    q: int
    modulus: list[int]
    generator: list[int]
    powers: list[list[int]]
    trace: list[int]


Coefficients = tuple[int, ...]


def _poly_mul_mod(a: Coefficients, b: Coefficients, modulus: Coefficients, p: int) -> Coefficients:
    """Product of two residues modulo a monic polynomial over Z/p, coefficients low degree first"""
    n = len(modulus) - 1
    product = [0] * (2 * n - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                product[i + j] += ai * bj
    for degree in range(len(product) - 1, n - 1, -1):
        lead = product[degree] % p
        if lead:
            for k in range(n):
                product[degree - n + k] -= lead * modulus[k]
        product[degree] = 0
    return tuple(c % p for c in product[:n])


def _poly_pow_mod(a: Coefficients, exponent: int, modulus: Coefficients, p: int) -> Coefficients:
    n = len(modulus) - 1
    result: Coefficients = (1,) + (0,) * (n - 1)
    base = a
    while exponent:
        if exponent & 1:
            result = _poly_mul_mod(result, base, modulus, p)
        base = _poly_mul_mod(base, base, modulus, p)
        exponent >>= 1
    return result


def _code(coefficients: Coefficients, p: int) -> int:
    return sum(c * p**i for i, c in enumerate(coefficients))


def _coefficients(code: int, p: int, n: int) -> Coefficients:
    digits = []
    for _ in range(n):
        code, digit = divmod(code, p)
        digits.append(digit)
    return tuple(digits)


def _least_irreducible(p: int, n: int) -> Coefficients:
    """Least monic irreducible polynomial of degree n over Z/p, comparing (c0, ..., c_{n-1}) lexicographically"""
    if n == 1:
        return (0, 1)
    x = sympy.Symbol("x")
    for lower in itertools.product(range(p), repeat=n):
        if lower[0] == 0:
            continue
        candidate = sympy.Poly([1, *reversed(lower)], x, modulus=p)
        if candidate.is_irreducible:
            return (*lower, 1)
    raise FieldConstructionError(f"No irreducible polynomial of degree {n} found over Z/{p}")


def _least_primitive_element(p: int, n: int, modulus: Coefficients) -> Coefficients:
    q = p**n
    order_primes = sympy.primefactors(q - 1)
    one: Coefficients = (1,) + (0,) * (n - 1)
    for code in range(2, q):
        candidate = _coefficients(code, p, n)
        if all(_poly_pow_mod(candidate, (q - 1) // r, modulus, p) != one for r in order_primes):
            return candidate
    raise FieldConstructionError(f"No primitive element found for q = {q}")


class FiniteField:
    """The finite field of q = p^n elements with full discrete logarithm, Zech logarithm and trace tables.

    Elements are enumerated through powers of the generator: index 0 is zero and
    index k is g^(k-1). A coefficient-vector view (c0 + c1 x + ... modulo `modulus`)
    is kept for input and output. Instances are immutable after construction and
    are shared through `build_field`."""

    def __init__(self, p: int, n: int):
        self.p = p
        self.n = n
        self.q = p**n
        self.order = self.q - 1
        self.conductor = p * self.order
        self.modulus: Coefficients = _least_irreducible(p, n)
        logger.debug(f"Using modulus {self.modulus} for F_{self.q}")

        generator = _least_primitive_element(p, n, self.modulus)
        powers: list[Coefficients] = []
        current: Coefficients = (1,) + (0,) * (n - 1)
        for _ in range(self.order):
            powers.append(current)
            current = _poly_mul_mod(current, generator, self.modulus, p)
        self._powers = tuple(powers)

        index_of_code = np.full(self.q, -1, dtype=np.int64)
        index_of_code[0] = 0
        for exponent, power in enumerate(powers):
            index_of_code[_code(power, p)] = exponent + 1
        if (index_of_code < 0).any():
            raise FieldConstructionError(f"Generator {generator} does not enumerate F_{self.q}")
        self._index_of_code = index_of_code

        # 1 + g^k = g^zech[k], or zech[k] = -1 when 1 + g^k = 0
        zech = np.empty(self.order, dtype=np.int64)
        for exponent, power in enumerate(powers):
            shifted = ((power[0] + 1) % p, *power[1:])
            code = _code(shifted, p)
            zech[exponent] = -1 if code == 0 else index_of_code[code] - 1
        self._zech = zech

        log = np.arange(-1, self.order, dtype=np.int64)
        self._log = log

        trace = np.zeros(self.q, dtype=np.int64)
        for exponent in range(self.order):
            total = [0] * n
            for i in range(n):
                conjugate = powers[(exponent * p**i) % self.order]
                total = [(t + c) % p for t, c in zip(total, conjugate, strict=True)]
            trace[exponent + 1] = total[0]
        self._trace = trace

        self._log.setflags(write=False)
        self._trace.setflags(write=False)
        self._zech.setflags(write=False)
        self._index_of_code.setflags(write=False)
        logger.debug(f"Tabulated F_{self.q} with generator {generator}")

    def __repr__(self) -> str:
        return f"FiniteField({self.descriptor})"

    @property
    def descriptor(self) -> str:
        """The textual field descriptor, "p" for prime fields and "p^n" otherwise"""
        return str(self.p) if self.n == 1 else f"{self.p}^{self.n}"

    @property
    def zero(self) -> FieldElement:
        return FieldElement(0)

    @property
    def one(self) -> FieldElement:
        return FieldElement(1)

    @property
    def generator(self) -> FieldElement:
        """The least primitive element in coefficient order, always at index 2"""
        return FieldElement(2)

    @property
    def minus_one(self) -> FieldElement:
        return FieldElement(1 + self.order // 2)

    @property
    def log_array(self) -> IndexArray:
        """Discrete logarithm indexed by element index, -1 marks the zero element"""
        return self._log

    @property
    def trace_array(self) -> IndexArray:
        """Absolute trace indexed by element index"""
        return self._trace

    def element(self, index: int) -> FieldElement:
        if not 0 <= index < self.q:
            raise FieldMismatchError(f"Index {index} is not an element of F_{self.q}")
        return FieldElement(index)

    def elements(self) -> Iterator[FieldElement]:
        return (FieldElement(index) for index in range(self.q))

    def nonzero_elements(self) -> Iterator[FieldElement]:
        return (FieldElement(index) for index in range(1, self.q))

    def power_of_generator(self, exponent: int) -> FieldElement:
        return FieldElement(1 + exponent % self.order)

    def from_coefficients(self, coefficients: Sequence[int]) -> FieldElement:
        """The element c0 + c1 x + ... + c_{n-1} x^(n-1) modulo the field modulus"""
        if len(coefficients) > self.n:
            raise FieldMismatchError(f"Expected at most {self.n} coefficients for F_{self.q}")
        padded = tuple(c % self.p for c in coefficients) + (0,) * (self.n - len(coefficients))
        return FieldElement(int(self._index_of_code[_code(padded, self.p)]))

    def from_int(self, value: int) -> FieldElement:
        """The image of an integer in the prime subfield"""
        return self.from_coefficients([value % self.p])

    def coefficients(self, element: FieldElement) -> Coefficients:
        index = self._checked(element)
        if index == 0:
            return (0,) * self.n
        return self._powers[index - 1]

    def parse_element(self, text: str) -> FieldElement:
        """Parses "g^k" or a canonical index"""
        match = _ELEMENT_PATTERN.match(text)
        if match:
            return self.power_of_generator(int(match.group("exponent")))
        try:
            return self.element(int(text))
        except ValueError as err:
            raise FieldMismatchError(f"Cannot parse {text!r} as an element of F_{self.q}") from err

    def format_element(self, element: FieldElement) -> str:
        index = self._checked(element)
        return "0" if index == 0 else f"g^{index - 1}"

    def add(self, a: FieldElement, b: FieldElement) -> FieldElement:
        return FieldElement(self._add(self._checked(a), self._checked(b)))

    def sub(self, a: FieldElement, b: FieldElement) -> FieldElement:
        return self.add(a, self.neg(b))

    def neg(self, a: FieldElement) -> FieldElement:
        return FieldElement(self._neg(self._checked(a)))

    def mul(self, a: FieldElement, b: FieldElement) -> FieldElement:
        return FieldElement(self._mul(self._checked(a), self._checked(b)))

    def inv(self, a: FieldElement) -> FieldElement:
        index = self._checked(a)
        if index == 0:
            raise ZeroDivisionError(f"Zero has no inverse in F_{self.q}")
        return FieldElement(1 + (-(index - 1)) % self.order)

    def div(self, a: FieldElement, b: FieldElement) -> FieldElement:
        return self.mul(a, self.inv(b))

    def pow(self, a: FieldElement, exponent: int) -> FieldElement:
        index = self._checked(a)
        if index == 0:
            if exponent < 0:
                raise ZeroDivisionError(f"Zero has no inverse in F_{self.q}")
            return FieldElement(1 if exponent == 0 else 0)
        return FieldElement(1 + ((index - 1) * exponent) % self.order)

    def dlog(self, a: FieldElement) -> int:
        """The exponent k in [0, q-2] with g^k = a"""
        index = self._checked(a)
        if index == 0:
            raise ValueError("The discrete logarithm of zero is undefined")
        return index - 1

    def trace(self, a: FieldElement) -> int:
        """Absolute trace a + a^p + ... + a^(p^(n-1)), as an integer in [0, p-1]"""
        return int(self._trace[self._checked(a)])

    def sqrt_of_minus_one(self) -> FieldElement:
        """The canonical primitive fourth root of unity i = g^((q-1)/4)"""
        if self.q % 4 != 1:
            raise InapplicableFieldError(f"F_{self.q} has no square root of -1 since q is not 1 mod 4")
        return self.power_of_generator(self.order // 4)

    def to_dict(self) -> FieldDumpDict:
        return {
            "field": self.descriptor,
            "p": self.p,
            "n": self.n,
            "q": self.q,
            "modulus": list(self.modulus),
            "generator": list(self.coefficients(self.generator)),
            "powers": [list(power) for power in self._powers],
            "trace": [int(t) for t in self._trace],
        }

    # Vectorised index arithmetic, used by the character sums

    def add_arrays(self, a: npt.ArrayLike, b: npt.ArrayLike) -> IndexArray:
        left, right = np.broadcast_arrays(np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64))
        left_log = left - 1
        difference = np.mod(right - 1 - left_log, self.order)
        zech = self._zech[difference]
        summed = np.where(zech < 0, 0, 1 + np.mod(left_log + zech, self.order))
        return np.where(left == 0, right, np.where(right == 0, left, summed))

    def mul_arrays(self, a: npt.ArrayLike, b: npt.ArrayLike) -> IndexArray:
        left, right = np.broadcast_arrays(np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64))
        product = 1 + np.mod(left + right - 2, self.order)
        return np.where((left == 0) | (right == 0), 0, product)

    def neg_array(self, a: npt.ArrayLike) -> IndexArray:
        values = np.asarray(a, dtype=np.int64)
        return np.where(values == 0, 0, 1 + np.mod(values - 1 + self.order // 2, self.order))

    def square_array(self, a: npt.ArrayLike) -> IndexArray:
        values = np.asarray(a, dtype=np.int64)
        return np.where(values == 0, 0, 1 + np.mod(2 * (values - 1), self.order))

    def all_indices(self) -> IndexArray:
        return np.arange(self.q, dtype=np.int64)

    def _checked(self, element: FieldElement) -> int:
        if not 0 <= element.index < self.q:
            raise FieldMismatchError(f"{element} is not an element of F_{self.q}")
        return element.index

    def _add(self, a: int, b: int) -> int:
        if a == 0:
            return b
        if b == 0:
            return a
        zech = int(self._zech[(b - a) % self.order])
        if zech < 0:
            return 0
        return 1 + (a - 1 + zech) % self.order

    def _neg(self, a: int) -> int:
        if a == 0:
            return 0
        return 1 + (a - 1 + self.order // 2) % self.order

    def _mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return 1 + (a + b - 2) % self.order


def parse_field_descriptor(descriptor: str) -> tuple[int, int]:
    """Parses "p^n" or a prime power "q" into (p, n)"""
    match = _DESCRIPTOR_PATTERN.match(descriptor)
    if match is None:
        raise FieldConstructionError(f"Malformed field descriptor {descriptor!r}, expected 'p^n' or 'q'")
    base = int(match.group("base"))
    if match.group("exponent") is not None:
        return base, int(match.group("exponent"))
    factors = sympy.factorint(base)
    if len(factors) != 1:
        raise FieldConstructionError(f"{base} is not a prime power")
    ((p, n),) = factors.items()
    return int(p), int(n)


def build_field(p: int, n: int = 1) -> FiniteField:
    """Returns the fully tabulated field with p^n elements, p an odd prime

    The modulus is the least monic irreducible polynomial of degree n and the generator
    is the primitive element of least coefficient code, so every table is reproducible.
    Tables are shared per (p, n), the size guard `config.max_table_size` is checked on every call."""
    if n < 1:
        raise FieldConstructionError(f"Extension degree must be at least 1, got {n}")
    if p % 2 == 0:
        raise FieldConstructionError(f"Even characteristic unsupported, got p = {p}")
    if p < 3 or not sympy.isprime(p):
        raise FieldConstructionError(f"Characteristic must be an odd prime, got p = {p}")
    q = p**n
    if q > config.max_table_size:
        raise FieldConstructionError(f"q = {q} exceeds the table guard of {config.max_table_size}")
    return _tabulated_field(p, n)


@functools.cache
def _tabulated_field(p: int, n: int) -> FiniteField:
    logger.info(f"Building F_{p**n}")
    return FiniteField(p, n)


def field_from_descriptor(descriptor: str) -> FiniteField:
    return build_field(*parse_field_descriptor(descriptor))
