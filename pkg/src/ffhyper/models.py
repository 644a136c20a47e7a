import dataclasses
import json
from typing import Any, TypedDict

from ffhyper.config import BackendName

__all__ = [
    "IdentityReport",
    "IdentitySweep",
    "Observation",
    "ObservationDict",
    "ReportDict",
    "SkipDict",
    "Witness",
    "WitnessDict",
]


class SkipDict(TypedDict):
    reason: str
    count: int


class ObservationDict(TypedDict):
    label: str
    tested: int
    agreed: int


class WitnessDict(TypedDict):
    key: list[int]
    parameters: dict[str, str]
    lhs: dict[str, Any]
    rhs: dict[str, Any]
    difference: dict[str, Any]


class _ReportDictBase(TypedDict):
    identity: str
    field: str | None
    backend: BackendName
    variant: str | None
    applicable: bool
    tested: int
    passed: int
    failed: int
    skipped: list[SkipDict]
    witnesses: list[WitnessDict]
    observations: list[ObservationDict]
    max_abs_difference: float | None


class ReportDict(_ReportDictBase, total=False):
    millis: int


@dataclasses.dataclass(kw_only=True, frozen=True)
class IdentitySweep:
    """One identity to sweep over one field"""

    identity: str
    """Identity id, e.g. `thm2`"""
    field: str | None = None
    """Field descriptor "p^n", not used by the polynomial identity"""
    backend: BackendName = "exact"
    variant: str | None = None
    """`chi4` or `chi4bar` for the quartic transformation"""
    characters: tuple[int, ...] | None = None
    """Restrict the first character parameter (A, or D, or C) to these exponents"""
    arguments: tuple[int, ...] | None = None
    """Restrict the field argument (x, y or z) to these element indices"""
    n_max: int = 10
    """Largest n checked by the polynomial identity"""


@dataclasses.dataclass(kw_only=True)
class Witness:
    """A failing tuple, with both sides and their difference rendered by the backend"""

    key: tuple[int, ...]
    """Canonical sort key of the tuple"""
    parameters: dict[str, str]
    lhs: dict[str, Any]
    rhs: dict[str, Any]
    difference: dict[str, Any]

    def to_dict(self) -> WitnessDict:
        return {
            "key": list(self.key),
            "parameters": self.parameters,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "difference": self.difference,
        }


@dataclasses.dataclass(kw_only=True)
class Observation:
    """A reported comparison that never affects pass or fail"""

    label: str
    tested: int = 0
    agreed: int = 0

    def to_dict(self) -> ObservationDict:
        return {"label": self.label, "tested": self.tested, "agreed": self.agreed}


@dataclasses.dataclass(kw_only=True)
class IdentityReport:
    """Outcome of one identity sweep

    `tested` counts every tuple that satisfied the hypotheses and was evaluated, so
    tested = passed + failed. Skipped tuples are counted per reason."""

    identity: str
    field: str | None
    backend: BackendName
    variant: str | None = None
    applicable: bool = True
    """False when the identity does not exist over this field, e.g. quartic characters with q = 3 mod 4"""
    tested: int = 0
    passed: int = 0
    failed: int = 0
    skipped: dict[str, int] = dataclasses.field(default_factory=dict)
    witnesses: list[Witness] = dataclasses.field(default_factory=list)
    observations: dict[str, Observation] = dataclasses.field(default_factory=dict)
    max_abs_difference: float | None = None
    """Largest |lhs - rhs| over passing tuples, recorded by the float backend"""
    millis: int | None = None

    @property
    def ok(self) -> bool:
        return self.failed == 0

    @property
    def skipped_total(self) -> int:
        return sum(self.skipped.values())

    def record_pass(self, difference: float | None = None) -> None:
        self.tested += 1
        self.passed += 1
        if difference is not None:
            self.max_abs_difference = max(self.max_abs_difference or 0.0, difference)

    def record_failure(self, witness: Witness) -> None:
        self.tested += 1
        self.failed += 1
        self.witnesses.append(witness)

    def record_skip(self, reason: str, count: int = 1) -> None:
        if count:
            self.skipped[reason] = self.skipped.get(reason, 0) + count

    def observe(self, label: str, *, agreed: bool) -> None:
        observation = self.observations.setdefault(label, Observation(label=label))
        observation.tested += 1
        observation.agreed += int(agreed)

    def merge(self, other: "IdentityReport") -> "IdentityReport":
        """Combines two partial reports of the same sweep, independent of order"""
        skipped = dict(self.skipped)
        for reason, count in other.skipped.items():
            skipped[reason] = skipped.get(reason, 0) + count
        observations = {label: dataclasses.replace(o) for label, o in self.observations.items()}
        for label, o in other.observations.items():
            merged = observations.setdefault(label, Observation(label=label))
            merged.tested += o.tested
            merged.agreed += o.agreed
        differences = [d for d in (self.max_abs_difference, other.max_abs_difference) if d is not None]
        timings = [t for t in (self.millis, other.millis) if t is not None]
        return IdentityReport(
            identity=self.identity,
            field=self.field,
            backend=self.backend,
            variant=self.variant,
            applicable=self.applicable and other.applicable,
            tested=self.tested + other.tested,
            passed=self.passed + other.passed,
            failed=self.failed + other.failed,
            skipped=skipped,
            witnesses=sorted([*self.witnesses, *other.witnesses], key=lambda w: w.key),
            observations=observations,
            max_abs_difference=max(differences) if differences else None,
            millis=max(timings) if timings else None,
        )

    def to_dict(self, *, include_timing: bool = True) -> ReportDict:
        result: ReportDict = {
            "identity": self.identity,
            "field": self.field,
            "backend": self.backend,
            "variant": self.variant,
            "applicable": self.applicable,
            "tested": self.tested,
            "passed": self.passed,
            "failed": self.failed,
            "skipped": [{"reason": reason, "count": self.skipped[reason]} for reason in sorted(self.skipped)],
            "witnesses": [w.to_dict() for w in sorted(self.witnesses, key=lambda w: w.key)],
            "observations": [self.observations[label].to_dict() for label in sorted(self.observations)],
            "max_abs_difference": self.max_abs_difference,
        }
        if include_timing and self.millis is not None:
            result["millis"] = self.millis
        return result

    def to_json(self, *, include_timing: bool = True, indent: int | None = 2) -> str:
        return json.dumps(self.to_dict(include_timing=include_timing), sort_keys=True, indent=indent)

    @staticmethod
    def from_dict(data: ReportDict) -> "IdentityReport":
        return IdentityReport(
            identity=data["identity"],
            field=data["field"],
            backend=data["backend"],
            variant=data["variant"],
            applicable=data["applicable"],
            tested=data["tested"],
            passed=data["passed"],
            failed=data["failed"],
            skipped={s["reason"]: s["count"] for s in data["skipped"]},
            witnesses=[
                Witness(
                    key=tuple(w["key"]),
                    parameters=w["parameters"],
                    lhs=w["lhs"],
                    rhs=w["rhs"],
                    difference=w["difference"],
                )
                for w in data["witnesses"]
            ],
            observations={
                o["label"]: Observation(label=o["label"], tested=o["tested"], agreed=o["agreed"])
                for o in data["observations"]
            },
            max_abs_difference=data["max_abs_difference"],
            millis=data.get("millis"),
        )
