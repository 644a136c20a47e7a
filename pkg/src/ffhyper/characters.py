import dataclasses
import logging
import math
import re
from collections.abc import Iterator

import numpy as np
import numpy.typing as npt

from ffhyper.config import BackendName, config
from ffhyper.cyclotomic_value import ExactBackend, FloatBackend, Value, get_backend
from ffhyper.finite_field import FieldElement, FieldMismatchError, FiniteField, InapplicableFieldError

__all__ = [
    "Character",
    "InapplicableFieldError",
    "additive",
    "additive_exponents",
    "all_characters",
    "backend_for",
    "char_conj",
    "char_pow",
    "char_product",
    "character_exponents",
    "evaluate",
    "is_even",
    "parse_character",
    "quadratic",
    "quartic",
    "trivial",
]

logger = logging.getLogger(__name__)

_CHARACTER_SPEC = re.compile(r"^\s*(?:chi)?\s*(?P<j>-?\d+)\s*$")


@dataclasses.dataclass(frozen=True)
class Character:
    """The multiplicative character chi_j with chi_j(g^k) = zeta_(q-1)^(jk) and chi_j(0) = 0.

    The exponent is reduced modulo q - 1, so equal characters compare equal."""

    field: FiniteField = dataclasses.field(repr=False)
    j: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "j", self.j % self.field.order)

    @property
    def order(self) -> int:
        return self.field.order // math.gcd(self.j, self.field.order)

    @property
    def is_trivial(self) -> bool:
        return self.j == 0

    @property
    def name(self) -> str:
        """eps, phi, chi4, chi4bar or chi<j>"""
        order = self.field.order
        if self.j == 0:
            return "eps"
        if 2 * self.j == order:
            return "phi"
        if order % 4 == 0 and 4 * self.j == order:
            return "chi4"
        if order % 4 == 0 and 4 * self.j == 3 * order:
            return "chi4bar"
        return f"chi{self.j}"

    @property
    def conj(self) -> "Character":
        return Character(self.field, -self.j)

    def __mul__(self, other: "Character") -> "Character":
        if other.field is not self.field:
            raise FieldMismatchError(f"Cannot multiply characters of {self.field} and {other.field}")
        return Character(self.field, self.j + other.j)

    def __truediv__(self, other: "Character") -> "Character":
        return self * other.conj

    def __pow__(self, exponent: int) -> "Character":
        return Character(self.field, self.j * exponent)

    def __str__(self) -> str:
        return self.name


def trivial(field: FiniteField) -> Character:
    return Character(field, 0)


def quadratic(field: FiniteField) -> Character:
    return Character(field, field.order // 2)


def quartic(field: FiniteField, *, conjugate: bool = False) -> Character:
    """chi_((q-1)/4), or its conjugate chi_(3(q-1)/4)"""
    if field.q % 4 != 1:
        raise InapplicableFieldError(f"F_{field.q} has no quartic character since q is not 1 mod 4")
    j = field.order // 4
    return Character(field, 3 * j if conjugate else j)


def all_characters(field: FiniteField) -> Iterator[Character]:
    for j in range(field.order):
        yield Character(field, j)


def char_product(a: Character, b: Character) -> Character:
    return a * b


def char_conj(a: Character) -> Character:
    return a.conj


def char_pow(a: Character, exponent: int) -> Character:
    return a**exponent


def is_even(chi: Character) -> bool:
    """chi(-1) = 1"""
    return (chi.j * (chi.field.order // 2)) % chi.field.order == 0


def parse_character(field: FiniteField, spec: str) -> Character:
    """Parses an exponent ("3", "chi3") or one of eps, phi, chi4, chi4bar"""
    text = spec.strip().lower()
    if text == "eps":
        return trivial(field)
    if text == "phi":
        return quadratic(field)
    if text == "chi4":
        return quartic(field)
    if text == "chi4bar":
        return quartic(field, conjugate=True)
    match = _CHARACTER_SPEC.match(text)
    if match is None:
        raise ValueError(f"Unrecognised character {spec!r}, expected an exponent or eps, phi, chi4, chi4bar")
    return Character(field, int(match.group("j")))


def backend_for(field: FiniteField, kind: BackendName | None = None) -> ExactBackend | FloatBackend:
    """The value backend for the field's conductor p(q-1), float tolerance factor * q"""
    return get_backend(
        kind or config.backend, field.conductor, tolerance=config.float_tolerance_factor * field.q
    )


def character_exponents(chi: Character, indices: npt.ArrayLike) -> npt.NDArray[np.int64]:
    """Exponents e with chi(y) = zeta_m^e for each element index, or -1 where y = 0"""
    field = chi.field
    values = np.asarray(indices, dtype=np.int64)
    exponents = np.mod(field.p * chi.j * field.log_array[values], field.conductor)
    return np.where(values == 0, -1, exponents)


def additive_exponents(field: FiniteField, indices: npt.ArrayLike) -> npt.NDArray[np.int64]:
    """Exponents e with zeta^y = zeta_m^e for each element index"""
    values = np.asarray(indices, dtype=np.int64)
    return np.mod(field.order * field.trace_array[values], field.conductor)


def evaluate(chi: Character, y: FieldElement, backend: ExactBackend | FloatBackend | None = None) -> Value:
    """chi(y) in Q(zeta_m), zero at y = 0 for every character including the trivial one"""
    backend = backend or backend_for(chi.field)
    if y.index == 0:
        return backend.zero()
    return backend.root(chi.field.p * chi.j * chi.field.dlog(y))


def additive(field: FiniteField, y: FieldElement, backend: ExactBackend | FloatBackend | None = None) -> Value:
    """The additive character zeta^y = zeta_p^Tr(y), lifted to conductor p(q-1)"""
    backend = backend or backend_for(field)
    return backend.root(field.order * field.trace(y))
