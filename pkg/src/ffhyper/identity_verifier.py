"""
Exhaustive verification of character sum identities over small finite fields.

Every identity enumerates its full tuple space in a fixed order. Each tuple is either skipped, with
the first failed condition recorded as the reason, or evaluated on both sides and compared by the
backend. Some comparisons are only reported as observations and never count as failures.
"""

import abc
import dataclasses
import functools
import itertools
import logging
import time
from collections.abc import Callable, Iterable, Sequence

from ffhyper import _sweep
from ffhyper.character_sums import SumContext, build_context, hasse_davenport_sides
from ffhyper.characters import Character, quartic
from ffhyper.classical_analogue import verify_stanton
from ffhyper.config import BackendName, config
from ffhyper.cyclotomic_value import Value
from ffhyper.finite_field import FieldElement, FiniteField, parse_field_descriptor
from ffhyper.hypergeometric import fstar_char_sum, fstar_point_count, hyp2f1, quadratic_point_sum
from ffhyper.models import IdentityReport, IdentitySweep, Witness

__all__ = [
    "IDENTITY_IDS",
    "QUADRATIC_HYPOTHESIS",
    "QUARTIC_VARIANTS",
    "Hypothesis",
    "UnknownIdentityError",
    "run_sweep",
    "verify_all",
    "verify_alpha_beta",
    "verify_eq31",
    "verify_eq42",
    "verify_fstar_forms",
    "verify_hasse_davenport",
    "verify_lemma1",
    "verify_thm2",
    "verify_thm3",
]

logger = logging.getLogger(__name__)

Key = tuple[int, ...]


class UnknownIdentityError(KeyError):
    pass


@dataclasses.dataclass(frozen=True)
class Hypothesis:
    """Named conditions on a pair of characters (A, B); a tuple is admissible when none holds"""

    conditions: tuple[tuple[str, Callable[[Character, Character], bool]], ...]

    def violation(self, a: Character, b: Character) -> str | None:
        """The reason of the first condition that rules the pair out, or None"""
        for reason, ruled_out in self.conditions:
            if ruled_out(a, b):
                return reason
        return None

    def admissible(self, a: Character, b: Character) -> bool:
        return self.violation(a, b) is None


def _quadratic(a: Character) -> Character:
    return Character(a.field, a.field.order // 2)


QUADRATIC_HYPOTHESIS = Hypothesis(
    (
        ("A trivial", lambda a, _b: a.is_trivial),
        ("A^2 B-bar trivial", lambda a, b: (a**2 / b).is_trivial),
        ("phi A B-bar trivial", lambda a, b: (_quadratic(a) * a / b).is_trivial),
    )
)
"""A, A^2 B-bar and phi A B-bar must all be nontrivial"""


@functools.lru_cache(maxsize=8192)
def _gauss_constant(ctx: SumContext, a: Character, b: Character) -> Value:
    """G(A^2 B-bar) G(phi A-bar B) / (G(phi) G(A))"""
    phi = ctx.phi
    return ctx.gauss_ratio((a**2 / b, phi * b / a), (phi, a))


class IdentityDefinition(abc.ABC):
    identity_id: str
    parameter_names: tuple[str, ...]

    @abc.abstractmethod
    def tuples(self, field: FiniteField) -> Iterable[Key]:
        """Every tuple of the sweep in canonical order, admissible or not"""

    @abc.abstractmethod
    def check(self, ctx: SumContext, key: Key, report: IdentityReport) -> None:
        """Records the outcome of one tuple on the report"""

    def applicable(self, field: FiniteField) -> bool:  # noqa: ARG002
        return True

    def select(self, field: FiniteField, sweep: IdentitySweep) -> list[Key]:
        """The tuples of the sweep after the optional character and argument filters"""
        selected = []
        has_argument = self.parameter_names[-1] in ("x", "y", "z")
        for key in self.tuples(field):
            if sweep.characters is not None and key[0] % field.order not in {
                j % field.order for j in sweep.characters
            }:
                continue
            if sweep.arguments is not None and has_argument and key[-1] not in sweep.arguments:
                continue
            selected.append(key)
        return selected

    def describe(self, ctx: SumContext, key: Key) -> dict[str, str]:
        field = ctx.field
        described = {}
        for name, value in zip(self.parameter_names, key, strict=True):
            if name in ("x", "y", "z"):
                described[name] = field.format_element(field.element(value))
            else:
                described[name] = Character(field, value).name
        return described

    def compare(self, ctx: SumContext, key: Key, report: IdentityReport, lhs: Value, rhs: Value) -> bool:
        backend = ctx.backend
        if backend.equal(lhs, rhs):
            report.record_pass(backend.distance(lhs, rhs) if backend.name == "float" else None)
            return True
        report.record_failure(
            Witness(
                key=key,
                parameters=self.describe(ctx, key),
                lhs=dict(backend.to_json_value(lhs)),
                rhs=dict(backend.to_json_value(rhs)),
                difference=dict(backend.to_json_value(lhs - rhs)),
            )
        )
        logger.debug(f"{self.identity_id} fails at {self.describe(ctx, key)}")
        return False


class HasseDavenport(IdentityDefinition):
    identity_id = "hasse_davenport"
    parameter_names = ("A",)

    def tuples(self, field: FiniteField) -> Iterable[Key]:
        return ((j,) for j in range(field.order))

    def check(self, ctx: SumContext, key: Key, report: IdentityReport) -> None:
        lhs, rhs = hasse_davenport_sides(ctx, ctx.character(key[0]))
        self.compare(ctx, key, report, lhs, rhs)


class FStarForms(IdentityDefinition):
    """The character sum and the point count forms of F* agree when C != D and x is not 0 or 1"""

    identity_id = "fstar_forms"
    parameter_names = ("C", "D", "x")

    def tuples(self, field: FiniteField) -> Iterable[Key]:
        return itertools.product(range(field.order), range(field.order), range(field.q))

    def check(self, ctx: SumContext, key: Key, report: IdentityReport) -> None:
        c, d = ctx.character(key[0]), ctx.character(key[1])
        x = ctx.field.element(key[2])
        if x.index in (0, 1):
            report.record_skip("x in {0, 1}")
            return
        lhs = fstar_char_sum(ctx, c, d, x)
        rhs = fstar_point_count(ctx, c, d, x)
        if c == d:
            report.observe("C = D", agreed=ctx.backend.equal(lhs, rhs))
            return
        self.compare(ctx, key, report, lhs, rhs)


class _PairIdentity(IdentityDefinition):
    """Identities over (A, B, element) subject to the quadratic transformation hypotheses"""

    parameter_names: tuple[str, ...] = ("A", "B", "x")

    def tuples(self, field: FiniteField) -> Iterable[Key]:
        return itertools.product(range(field.order), range(field.order), range(field.q))

    @abc.abstractmethod
    def excluded_argument(self, field: FiniteField, element: FieldElement) -> str | None:
        """Reason to skip the element regardless of the characters"""

    @abc.abstractmethod
    def sides(self, ctx: SumContext, a: Character, b: Character, element: FieldElement) -> tuple[Value, Value]:
        """Left and right side of the identity"""

    def check(self, ctx: SumContext, key: Key, report: IdentityReport) -> None:
        field = ctx.field
        element = field.element(key[2])
        reason = self.excluded_argument(field, element)
        if reason is not None:
            report.record_skip(reason)
            return
        a, b = ctx.character(key[0]), ctx.character(key[1])
        reason = QUADRATIC_HYPOTHESIS.violation(a, b)
        if reason is not None:
            report.record_skip(reason)
            return
        lhs, rhs = self.sides(ctx, a, b, element)
        self.compare(ctx, key, report, lhs, rhs)


class Lemma1(_PairIdentity):
    """F*(B, A-bar B; y) = phi A B(-1) A-bar^2 B(2) K(A, B) F*(B, phi A; 1 - y)"""

    identity_id = "lemma1"
    parameter_names = ("A", "B", "y")

    def excluded_argument(self, field: FiniteField, element: FieldElement) -> str | None:  # noqa: ARG002
        return "y in {0, 1}" if element.index in (0, 1) else None

    def sides(self, ctx: SumContext, a: Character, b: Character, element: FieldElement) -> tuple[Value, Value]:
        field, phi = ctx.field, ctx.phi
        lhs = fstar_point_count(ctx, b, b / a, element)
        constant = _gauss_constant(ctx, a, b) * ctx.sign(phi * a * b)
        constant = ctx.char_value(b / a**2, field.from_int(2)) * constant
        rhs = constant * fstar_point_count(ctx, b, phi * a, field.sub(field.one, element))
        return lhs, rhs


class AlphaBeta(_PairIdentity):
    """The two raw character sums whose equality is equivalent to the linear transformation of F*"""

    identity_id = "alpha_beta"
    parameter_names = ("A", "B", "y")

    def excluded_argument(self, field: FiniteField, element: FieldElement) -> str | None:  # noqa: ARG002
        return "y in {0, 1}" if element.index in (0, 1) else None

    def sides(self, ctx: SumContext, a: Character, b: Character, element: FieldElement) -> tuple[Value, Value]:
        field, phi = ctx.field, ctx.phi
        alpha = ctx.gauss_ratio((a**2 / b, phi * b / a), ()) * quadratic_point_sum(
            ctx, b / a**2, phi * a / b, element
        )
        beta_sum = quadratic_point_sum(ctx, a**2 / b, a.conj, field.sub(field.one, element))
        beta = ctx.gauss_ratio((phi, a), ()) * beta_sum * ctx.sign(phi * b * a)
        beta = ctx.char_value(a**2 / b, field.from_int(2)) * beta
        return alpha, beta


class Theorem2(_PairIdentity):
    """2F1(A, B; A^2 | 4x/(1+x)^2) = A-bar(4) phi B(-1) K(A, B) B^2(1+x) 2F1(phi A-bar B, B; phi A | x^2)"""

    identity_id = "thm2"

    def excluded_argument(self, field: FiniteField, element: FieldElement) -> str | None:
        return "x = -1 excluded" if element == field.minus_one else None

    def right_side(self, ctx: SumContext, a: Character, b: Character, x: FieldElement, sign: int) -> Value:
        field, phi = ctx.field, ctx.phi
        one_plus_x = field.add(field.one, x)
        constant = ctx.char_value(a.conj, field.from_int(4)) * _gauss_constant(ctx, a, b) * sign
        constant = constant * ctx.char_value(b**2, one_plus_x)
        return constant * hyp2f1(ctx, phi * b / a, b, phi * a, field.mul(x, x))

    def sides(self, ctx: SumContext, a: Character, b: Character, element: FieldElement) -> tuple[Value, Value]:
        field = ctx.field
        one_plus_x = field.add(field.one, element)
        argument = field.div(field.mul(field.from_int(4), element), field.mul(one_plus_x, one_plus_x))
        lhs = hyp2f1(ctx, a, b, a**2, argument)
        return lhs, self.right_side(ctx, a, b, element, ctx.sign(ctx.phi * b))

    def check(self, ctx: SumContext, key: Key, report: IdentityReport) -> None:
        failed_before = report.failed
        tested_before = report.tested
        super().check(ctx, key, report)
        b = ctx.character(key[1])
        if report.tested > tested_before and ctx.sign(b) < 0:
            report.observe("B odd", agreed=report.failed == failed_before)


class Equation31(Theorem2):
    """2F1(A, B; A-bar B | (1-x)^2/(1+x)^2) = A-bar(4) phi A B(-1) K(A, B) B^2(1+x) 2F1(phi A-bar B, B; phi A | x^2)

    Only x outside {0, 1, i, -i} is asserted, the edge points are reported."""

    identity_id = "eq31"

    def edge(self, field: FiniteField, element: FieldElement) -> bool:
        if element.index in (0, 1):
            return True
        if field.q % 4 == 1:
            i = field.sqrt_of_minus_one()
            return element in (i, field.neg(i))
        return False

    def sides(self, ctx: SumContext, a: Character, b: Character, element: FieldElement) -> tuple[Value, Value]:
        field = ctx.field
        one_plus_x = field.add(field.one, element)
        one_minus_x = field.sub(field.one, element)
        argument = field.div(field.mul(one_minus_x, one_minus_x), field.mul(one_plus_x, one_plus_x))
        lhs = hyp2f1(ctx, a, b, b / a, argument)
        return lhs, self.right_side(ctx, a, b, element, ctx.sign(ctx.phi * a * b))

    def check(self, ctx: SumContext, key: Key, report: IdentityReport) -> None:
        field = ctx.field
        element = field.element(key[2])
        a, b = ctx.character(key[0]), ctx.character(key[1])
        if (
            self.excluded_argument(field, element) is None
            and QUADRATIC_HYPOTHESIS.admissible(a, b)
            and self.edge(field, element)
        ):
            lhs, rhs = self.sides(ctx, a, b, element)
            report.observe("edge x in {0, 1, i, -i}", agreed=ctx.backend.equal(lhs, rhs))
            return
        _PairIdentity.check(self, ctx, key, report)


class Theorem3(IdentityDefinition):
    """D^4(z-1) 2F1(D, D chi4; chi4 | z^4) = 2F1(D, D^2 phi; D phi | -((z+1)/(z-1))^2)"""

    identity_id = "thm3"
    parameter_names = ("D", "z")

    def __init__(self, *, conjugate: bool = False):
        self.conjugate = conjugate

    def applicable(self, field: FiniteField) -> bool:
        return field.q % 4 == 1

    def tuples(self, field: FiniteField) -> Iterable[Key]:
        return itertools.product(range(field.order), range(field.q))

    def check(self, ctx: SumContext, key: Key, report: IdentityReport) -> None:
        field, phi = ctx.field, ctx.phi
        z = field.element(key[1])
        if z in (field.zero, field.one, field.minus_one):
            report.record_skip("z in {0, 1, -1}")
            return
        d = ctx.character(key[0])
        chi4 = quartic(field, conjugate=self.conjugate)
        z_minus_one = field.sub(z, field.one)
        ratio = field.div(field.add(z, field.one), z_minus_one)
        lhs = ctx.char_value(d**4, z_minus_one) * hyp2f1(ctx, d, d * chi4, chi4, field.pow(z, 4))
        rhs = hyp2f1(ctx, d, d**2 * phi, d * phi, field.neg(field.mul(ratio, ratio)))
        self.compare(ctx, key, report, lhs, rhs)


class Equation42(IdentityDefinition):
    """2F1(A, B; C | x) = ABC(-1) B-bar(x) 2F1(B C-bar, B; B A-bar | 1/x)"""

    identity_id = "eq42"
    parameter_names = ("A", "B", "C", "x")

    def tuples(self, field: FiniteField) -> Iterable[Key]:
        characters = range(field.order)
        return itertools.product(characters, characters, characters, range(field.q))

    def check(self, ctx: SumContext, key: Key, report: IdentityReport) -> None:
        field = ctx.field
        x = field.element(key[3])
        if x == field.zero:
            report.record_skip("x = 0")
            return
        a, b, c = (ctx.character(j) for j in key[:3])
        lhs = hyp2f1(ctx, a, b, c, x)
        rhs = ctx.char_value(b.conj, x) * hyp2f1(ctx, b / c, b, b / a, field.inv(x)) * ctx.sign(a * b * c)
        self.compare(ctx, key, report, lhs, rhs)


_IDENTITIES: dict[str, Callable[[str | None], IdentityDefinition]] = {
    "hasse_davenport": lambda _variant: HasseDavenport(),
    "fstar_forms": lambda _variant: FStarForms(),
    "lemma1": lambda _variant: Lemma1(),
    "alpha_beta": lambda _variant: AlphaBeta(),
    "thm2": lambda _variant: Theorem2(),
    "eq31": lambda _variant: Equation31(),
    "thm3": lambda variant: Theorem3(conjugate=variant == "chi4bar"),
    "eq42": lambda _variant: Equation42(),
}

IDENTITY_IDS = (*_IDENTITIES, "stanton")
"""Every identity id accepted by `run_sweep`, in the order `verify_all` runs them"""

QUARTIC_VARIANTS = ("chi4", "chi4bar")


def _definition(sweep: IdentitySweep) -> IdentityDefinition:
    try:
        factory = _IDENTITIES[sweep.identity]
    except KeyError:
        raise UnknownIdentityError(f"Unknown identity {sweep.identity!r}, expected one of {IDENTITY_IDS}") from None
    if sweep.identity == "thm3" and sweep.variant not in (None, *QUARTIC_VARIANTS):
        raise ValueError(f"Unknown quartic character {sweep.variant!r}, expected chi4 or chi4bar")
    return factory(sweep.variant)


def _context(sweep: IdentitySweep) -> SumContext:
    if sweep.field is None:
        raise ValueError(f"Identity {sweep.identity} needs a field")
    p, n = parse_field_descriptor(sweep.field)
    return build_context(p, n, sweep.backend).warm()


def _empty_report(sweep: IdentitySweep, field: FiniteField) -> IdentityReport:
    variant = (sweep.variant or "chi4") if sweep.identity == "thm3" else sweep.variant
    return IdentityReport(identity=sweep.identity, field=field.descriptor, backend=sweep.backend, variant=variant)


def _run_chunk(sweep: IdentitySweep, worker_index: int, jobs: int) -> IdentityReport:
    """Evaluates one static partition of a sweep; runs inside worker processes"""
    ctx = _context(sweep)
    definition = _definition(sweep)
    report = _empty_report(sweep, ctx.field)
    for key in _sweep.stride(definition.select(ctx.field, sweep), worker_index, jobs):
        definition.check(ctx, key, report)
    return report


def run_sweep(sweep: IdentitySweep, jobs: int | None = None) -> IdentityReport:
    """Runs one identity sweep, with the same report for any number of workers"""
    started = time.perf_counter()
    if sweep.identity == "stanton":
        report = verify_stanton(sweep.n_max)
        report.millis = int((time.perf_counter() - started) * 1000)
        return report
    definition = _definition(sweep)
    ctx = _context(sweep)
    if not definition.applicable(ctx.field):
        logger.info(f"{sweep.identity} does not apply to F_{ctx.field.q}")
        report = _empty_report(sweep, ctx.field)
        report.applicable = False
        return report
    logger.info(f"Verifying {sweep.identity} over F_{ctx.field.q} with the {sweep.backend} backend")
    report = _sweep.run_partitioned(sweep, jobs or config.jobs, _run_chunk)
    report.millis = int((time.perf_counter() - started) * 1000)
    logger.info(
        f"{sweep.identity} over F_{ctx.field.q}: tested {report.tested}, failed {report.failed}, "
        f"skipped {report.skipped_total}"
    )
    for observation in report.observations.values():
        if observation.agreed != observation.tested:
            logger.warning(
                f"{sweep.identity} over F_{ctx.field.q}: {observation.label} agreed on "
                f"{observation.agreed} of {observation.tested}"
            )
    return report


def _field_descriptor(field: FiniteField | str) -> str:
    return field if isinstance(field, str) else field.descriptor


def _verify(
    identity: str,
    field: FiniteField | str,
    backend: BackendName | None,
    jobs: int | None,
    variant: str | None = None,
) -> IdentityReport:
    sweep = IdentitySweep(
        identity=identity, field=_field_descriptor(field), backend=backend or config.backend, variant=variant
    )
    return run_sweep(sweep, jobs)


def verify_hasse_davenport(
    field: FiniteField | str, *, backend: BackendName | None = None, jobs: int | None = None
) -> IdentityReport:
    return _verify("hasse_davenport", field, backend, jobs)


def verify_fstar_forms(
    field: FiniteField | str, *, backend: BackendName | None = None, jobs: int | None = None
) -> IdentityReport:
    return _verify("fstar_forms", field, backend, jobs)


def verify_lemma1(
    field: FiniteField | str, *, backend: BackendName | None = None, jobs: int | None = None
) -> IdentityReport:
    return _verify("lemma1", field, backend, jobs)


def verify_alpha_beta(
    field: FiniteField | str, *, backend: BackendName | None = None, jobs: int | None = None
) -> IdentityReport:
    return _verify("alpha_beta", field, backend, jobs)


def verify_thm2(
    field: FiniteField | str, *, backend: BackendName | None = None, jobs: int | None = None
) -> IdentityReport:
    return _verify("thm2", field, backend, jobs)


def verify_eq31(
    field: FiniteField | str, *, backend: BackendName | None = None, jobs: int | None = None
) -> IdentityReport:
    return _verify("eq31", field, backend, jobs)


def verify_thm3(
    field: FiniteField | str,
    *,
    backend: BackendName | None = None,
    jobs: int | None = None,
    quartic_character: str = "chi4",
) -> IdentityReport:
    """The quartic transformation for one quartic character, `chi4` or its conjugate `chi4bar`"""
    return _verify("thm3", field, backend, jobs, quartic_character)


def verify_eq42(
    field: FiniteField | str, *, backend: BackendName | None = None, jobs: int | None = None
) -> IdentityReport:
    return _verify("eq42", field, backend, jobs)


def verify_all(
    fields: Sequence[str],
    *,
    backend: BackendName | None = None,
    jobs: int | None = None,
    n_max: int = 10,
) -> list[IdentityReport]:
    """Every field identity over every field, both quartic characters, then the polynomial identity"""
    reports = []
    for field in fields:
        for identity in _IDENTITIES:
            variants: Sequence[str | None] = QUARTIC_VARIANTS if identity == "thm3" else (None,)
            for variant in variants:
                sweep = IdentitySweep(
                    identity=identity, field=field, backend=backend or config.backend, variant=variant
                )
                reports.append(run_sweep(sweep, jobs))
    reports.append(run_sweep(IdentitySweep(identity="stanton", n_max=n_max), jobs))
    return reports

