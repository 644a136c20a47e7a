"""
The finite field 2F1 and the pseudo hypergeometric function F*.

Every sum here is a single pass over the field: the exponents of the roots of unity contributed by
each summand are collected in a numpy array and handed to the backend, which turns the histogram of
exponents into one value.
"""

import dataclasses
import functools
import logging
from fractions import Fraction
from typing import Literal, TypeAlias

from ffhyper.character_sums import SumContext, binomial
from ffhyper.characters import Character, character_exponents
from ffhyper.cyclotomic_value import Value
from ffhyper.finite_field import FieldElement

__all__ = [
    "FStarForm",
    "FStarParams",
    "Hyp2F1Params",
    "fstar",
    "fstar_char_sum",
    "fstar_point_count",
    "hyp2f1",
    "quadratic_point_sum",
]

logger = logging.getLogger(__name__)

FStarForm: TypeAlias = Literal["char", "point"]


def hyp2f1(ctx: SumContext, a: Character, b: Character, c: Character, x: FieldElement) -> Value:
    """2F1(A, B; C | x) = eps(x)/q * sum over y of B(y) (B-bar C)(y - 1) A-bar(1 - x y)"""
    ctx.check(a, b, c)
    field = ctx.field
    if x.index == 0:
        return ctx.backend.zero()
    y = field.all_indices()
    one_minus_xy = field.add_arrays(1, field.neg_array(field.mul_arrays(x.index, y)))
    exponents = (
        character_exponents(b, y),
        character_exponents(b.conj * c, field.add_arrays(y, field.minus_one.index)),
        character_exponents(a.conj, one_minus_xy),
    )
    mask = (exponents[0] >= 0) & (exponents[1] >= 0) & (exponents[2] >= 0)
    ctx.counter.add(field.q)
    total = ctx.backend.sum_roots((exponents[0] + exponents[1] + exponents[2])[mask])
    return total * Fraction(1, field.q)


def quadratic_point_sum(ctx: SumContext, left: Character, right: Character, s: FieldElement) -> Value:
    """The sum over t of left(1 - t) right(s - t^2)"""
    ctx.check(left, right)
    field = ctx.field
    t = field.all_indices()
    one_minus_t = field.add_arrays(1, field.neg_array(t))
    shifted = field.add_arrays(s.index, field.neg_array(field.square_array(t)))
    left_exponents = character_exponents(left, one_minus_t)
    right_exponents = character_exponents(right, shifted)
    mask = (left_exponents >= 0) & (right_exponents >= 0)
    ctx.counter.add(field.q)
    return ctx.backend.sum_roots(left_exponents[mask] + right_exponents[mask])


def fstar_point_count(ctx: SumContext, c: Character, d: Character, x: FieldElement) -> Value:
    """F*(C, D; x) = C(2)/q * sum over t of (C D-bar^2)(1 - t) (C-bar D)(1 - x - t^2)

    Equal to the character sum form whenever C != D and x is not 0 or 1."""
    field = ctx.field
    total = quadratic_point_sum(ctx, c * d.conj**2, c.conj * d, field.sub(field.one, x))
    return ctx.char_value(c, field.from_int(2)) * total * Fraction(1, field.q)


@functools.lru_cache(maxsize=4096)
def _fstar_coefficients(ctx: SumContext, c: Character, d: Character) -> tuple[Value, ...]:
    """(C chi^2 over chi)(C chi over D chi) for chi = chi_0 ... chi_(q-2)"""
    coefficients = []
    for chi in (ctx.character(j) for j in range(ctx.field.order)):
        coefficients.append(binomial(ctx, c * chi**2, chi) * binomial(ctx, c * chi, d * chi))
    return tuple(coefficients)


def fstar_char_sum(ctx: SumContext, c: Character, d: Character, x: FieldElement) -> Value:
    """F*(C, D; x) = q/(q-1) * sum over chi of (C chi^2 over chi)(C chi over D chi) chi(x/4)
    + CD(-1) C-bar(x/4)/q"""
    ctx.check(c, d)
    field = ctx.field
    if x.index == 0:
        return ctx.backend.zero()
    w = field.div(x, field.from_int(4))
    log_w = field.dlog(w)
    total = ctx.backend.zero()
    for j, coefficient in enumerate(_fstar_coefficients(ctx, c, d)):
        total = total + ctx.backend.scale_root(coefficient, field.p * j * log_w)
    ctx.counter.add(field.order)
    tail = ctx.char_value(c.conj, w) * Fraction(ctx.sign(c * d), field.q)
    return total * Fraction(field.q, field.order) + tail


def fstar(ctx: SumContext, c: Character, d: Character, x: FieldElement, *, form: FStarForm = "point") -> Value:
    if form == "point":
        return fstar_point_count(ctx, c, d, x)
    if form == "char":
        return fstar_char_sum(ctx, c, d, x)
    raise ValueError(f"Unknown F* form {form!r}, expected 'char' or 'point'")


@dataclasses.dataclass(kw_only=True, frozen=True)
class Hyp2F1Params:
    a: Character
    """Upper parameter A"""
    b: Character
    """Upper parameter B"""
    c: Character
    """Lower parameter C"""
    x: FieldElement

    def evaluate(self, ctx: SumContext) -> Value:
        return hyp2f1(ctx, self.a, self.b, self.c, self.x)


@dataclasses.dataclass(kw_only=True, frozen=True)
class FStarParams:
    c: Character
    d: Character
    x: FieldElement

    def evaluate(self, ctx: SumContext, *, form: FStarForm = "point") -> Value:
        return fstar(ctx, self.c, self.d, self.x, form=form)
