"""
Gauss sums, Jacobi sums and the finite field binomial coefficient.

A `SumContext` bundles a field with a value backend and the per-field caches. The Gauss table is
built once per context, after which Jacobi sums and binomial coefficients cost a constant number
of products.
"""

import functools
import logging
from fractions import Fraction

import numpy as np

from ffhyper.characters import Character, additive_exponents, character_exponents, is_even, quadratic
from ffhyper.config import BackendName, config
from ffhyper.cyclotomic_value import ExactBackend, FloatBackend, Value, check_exact_conductor, get_backend
from ffhyper.finite_field import FieldElement, FieldMismatchError, FiniteField, build_field

__all__ = [
    "GaussTable",
    "SumContext",
    "SumCounter",
    "binomial",
    "build_context",
    "gauss",
    "hasse_davenport_check",
    "hasse_davenport_sides",
    "jacobi",
    "jacobi_direct",
]

logger = logging.getLogger(__name__)


class SumCounter:
    """Counts the field elements visited by summations, for cost regression checks"""

    def __init__(self) -> None:
        self.total = 0

    def add(self, terms: int) -> None:
        self.total += terms

    def reset(self) -> None:
        self.total = 0


class GaussTable:
    """G(chi_j) for every j together with its reciprocal

    G(eps) = -1 and 1/G(A) = A(-1) G(A-bar) / q for nontrivial A."""

    def __init__(self, field: FiniteField, backend: ExactBackend | FloatBackend, counter: SumCounter):
        nonzero = np.arange(1, field.q, dtype=np.int64)
        additive_part = additive_exponents(field, nonzero)
        exponents = np.arange(field.order, dtype=np.int64)
        values: list[Value] = []
        for j in range(field.order):
            # chi_j(g^k) = zeta_m^(p j k) on the nonzero index g^k -> k + 1
            values.append(backend.sum_roots(field.p * j * exponents + additive_part))
            counter.add(field.order)
        self._values = tuple(values)
        reciprocals: list[Value] = [backend.rational(-1)]
        for j in range(1, field.order):
            sign = 1 if is_even(Character(field, j)) else -1
            reciprocals.append(values[(-j) % field.order] * Fraction(sign, field.q))
        self._reciprocals = tuple(reciprocals)
        logger.debug(f"Built Gauss table for F_{field.q} with {field.order} entries")

    def value(self, j: int) -> Value:
        return self._values[j]

    def reciprocal(self, j: int) -> Value:
        return self._reciprocals[j]

    def __len__(self) -> int:
        return len(self._values)


class SumContext:
    """A field, a value backend and the lazily built caches shared by every character sum"""

    def __init__(self, field: FiniteField, backend: ExactBackend | FloatBackend):
        if backend.m != field.conductor:
            raise FieldMismatchError(f"Backend conductor {backend.m} does not match F_{field.q}")
        self.field = field
        self.backend = backend
        self.counter = SumCounter()
        self._gauss_table: GaussTable | None = None
        self.jacobi_cache: dict[tuple[int, int], Value] = {}
        self.phi = quadratic(field)

    def __repr__(self) -> str:
        return f"SumContext({self.field.descriptor}, {self.backend.name})"

    @property
    def gauss_table(self) -> GaussTable:
        if self._gauss_table is None:
            self._gauss_table = GaussTable(self.field, self.backend, self.counter)
        return self._gauss_table

    def warm(self) -> "SumContext":
        """Builds the Gauss table eagerly, before a sweep fans out"""
        _ = self.gauss_table
        return self

    def character(self, j: int) -> Character:
        return Character(self.field, j)

    def check(self, *characters: Character) -> None:
        for chi in characters:
            if chi.field is not self.field:
                raise FieldMismatchError(f"{chi} is a character of {chi.field}, not {self.field}")

    def sign(self, chi: Character) -> int:
        """chi(-1) as an integer"""
        return 1 if is_even(chi) else -1

    def char_value(self, chi: Character, y: FieldElement) -> Value:
        if y.index == 0:
            return self.backend.zero()
        return self.backend.root(self.field.p * chi.j * self.field.dlog(y))

    def gauss_ratio(self, numerators: tuple[Character, ...], denominators: tuple[Character, ...]) -> Value:
        """Product of G over the numerators divided by the product of G over the denominators"""
        self.check(*numerators, *denominators)
        table = self.gauss_table
        result = self.backend.one()
        for chi in numerators:
            result = result * table.value(chi.j)
        for chi in denominators:
            result = result * table.reciprocal(chi.j)
        return result


def gauss(ctx: SumContext, chi: Character) -> Value:
    """G(chi) = sum over y of chi(y) zeta^y"""
    ctx.check(chi)
    return ctx.gauss_table.value(chi.j)


def jacobi(ctx: SumContext, a: Character, b: Character) -> Value:
    """J(A, B) = sum over y of A(y) B(1 - y), through Gauss sums and the special values"""
    ctx.check(a, b)
    key = (a.j, b.j)
    cached = ctx.jacobi_cache.get(key)
    if cached is not None:
        return cached
    q = ctx.field.q
    if a.is_trivial and b.is_trivial:
        value = ctx.backend.rational(q - 2)
    elif a.is_trivial or b.is_trivial:
        value = ctx.backend.rational(-1)
    elif (a * b).is_trivial:
        value = ctx.backend.rational(-ctx.sign(a))
    else:
        value = ctx.gauss_ratio((a, b), (a * b,))
    ctx.jacobi_cache[key] = value
    return value


def jacobi_direct(ctx: SumContext, a: Character, b: Character) -> Value:
    """J(A, B) by direct summation over the field"""
    ctx.check(a, b)
    field = ctx.field
    y = field.all_indices()
    one_minus_y = field.add_arrays(1, field.neg_array(y))
    left = character_exponents(a, y)
    right = character_exponents(b, one_minus_y)
    mask = (left >= 0) & (right >= 0)
    ctx.counter.add(field.q)
    return ctx.backend.sum_roots(left[mask] + right[mask])


def binomial(ctx: SumContext, a: Character, b: Character) -> Value:
    """The binomial coefficient (A over B) = B(-1)/q J(A, B-bar)"""
    return jacobi(ctx, a, b.conj) * Fraction(ctx.sign(b), ctx.field.q)


def hasse_davenport_sides(ctx: SumContext, a: Character) -> tuple[Value, Value]:
    """Both sides of A(4) G(A) G(A phi) = G(A^2) G(phi)"""
    four = ctx.field.from_int(4)
    lhs = ctx.char_value(a, four) * gauss(ctx, a) * gauss(ctx, a * ctx.phi)
    rhs = gauss(ctx, a**2) * gauss(ctx, ctx.phi)
    return lhs, rhs


def hasse_davenport_check(ctx: SumContext, a: Character) -> bool:
    lhs, rhs = hasse_davenport_sides(ctx, a)
    return ctx.backend.equal(lhs, rhs)


def build_context(p: int, n: int = 1, backend: BackendName = "exact") -> SumContext:
    """The context for F_(p^n) with the given backend, shared within a process

    The table size and exact conductor limits are checked on every call, contexts are shared per
    field, backend and float tolerance factor."""
    field = build_field(p, n)
    if backend == "exact":
        check_exact_conductor(field.conductor)
    return _shared_context(field, backend, config.float_tolerance_factor)


@functools.cache
def _shared_context(field: FiniteField, backend: BackendName, tolerance_factor: float) -> SumContext:
    return SumContext(field, get_backend(backend, field.conductor, tolerance=tolerance_factor * field.q))
