from ffhyper.character_sums import (
    GaussTable,
    SumContext,
    SumCounter,
    binomial,
    build_context,
    gauss,
    hasse_davenport_check,
    hasse_davenport_sides,
    jacobi,
    jacobi_direct,
)
from ffhyper.characters import (
    Character,
    additive,
    all_characters,
    backend_for,
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
from ffhyper.classical_analogue import (
    NonTerminatingSeriesError,
    RationalPoly,
    TerminatingHypSeries,
    gamma_ratio,
    stanton_sides,
    terminating_2f1_poly,
    verify_stanton,
)
from ffhyper.config import config
from ffhyper.cyclotomic_value import (
    ApproxNumber,
    ApproxNumberDict,
    ConductorMismatchError,
    CycNumber,
    CycNumberDict,
    ExactBackend,
    ExactBackendUnavailableError,
    FloatBackend,
    Value,
    ValueBackend,
    cyclotomic_polynomial,
    embed,
    get_backend,
    reduce_mod_cyclotomic,
    zeta,
)
from ffhyper.finite_field import (
    FieldConstructionError,
    FieldDumpDict,
    FieldElement,
    FieldMismatchError,
    FiniteField,
    InapplicableFieldError,
    build_field,
    field_from_descriptor,
    parse_field_descriptor,
)
from ffhyper.hypergeometric import (
    FStarForm,
    FStarParams,
    Hyp2F1Params,
    fstar,
    fstar_char_sum,
    fstar_point_count,
    hyp2f1,
    quadratic_point_sum,
)
from ffhyper.identity_verifier import (
    IDENTITY_IDS,
    QUADRATIC_HYPOTHESIS,
    QUARTIC_VARIANTS,
    Hypothesis,
    UnknownIdentityError,
    run_sweep,
    verify_all,
    verify_alpha_beta,
    verify_eq31,
    verify_eq42,
    verify_fstar_forms,
    verify_hasse_davenport,
    verify_lemma1,
    verify_thm2,
    verify_thm3,
)
from ffhyper.models import (
    IdentityReport,
    IdentitySweep,
    Observation,
    ObservationDict,
    ReportDict,
    SkipDict,
    Witness,
    WitnessDict,
)

__all__ = [
    "IDENTITY_IDS",
    "QUADRATIC_HYPOTHESIS",
    "QUARTIC_VARIANTS",
    "ApproxNumber",
    "ApproxNumberDict",
    "Character",
    "ConductorMismatchError",
    "CycNumber",
    "CycNumberDict",
    "ExactBackend",
    "ExactBackendUnavailableError",
    "FStarForm",
    "FStarParams",
    "FieldConstructionError",
    "FieldDumpDict",
    "FieldElement",
    "FieldMismatchError",
    "FiniteField",
    "FloatBackend",
    "GaussTable",
    "Hyp2F1Params",
    "Hypothesis",
    "IdentityReport",
    "IdentitySweep",
    "InapplicableFieldError",
    "NonTerminatingSeriesError",
    "Observation",
    "ObservationDict",
    "RationalPoly",
    "ReportDict",
    "SkipDict",
    "SumContext",
    "SumCounter",
    "TerminatingHypSeries",
    "UnknownIdentityError",
    "Value",
    "ValueBackend",
    "Witness",
    "WitnessDict",
    "additive",
    "all_characters",
    "backend_for",
    "binomial",
    "build_context",
    "build_field",
    "char_conj",
    "char_pow",
    "char_product",
    "config",
    "cyclotomic_polynomial",
    "embed",
    "evaluate",
    "field_from_descriptor",
    "fstar",
    "fstar_char_sum",
    "fstar_point_count",
    "gamma_ratio",
    "gauss",
    "get_backend",
    "hasse_davenport_check",
    "hasse_davenport_sides",
    "hyp2f1",
    "is_even",
    "jacobi",
    "jacobi_direct",
    "parse_character",
    "parse_field_descriptor",
    "quadratic",
    "quadratic_point_sum",
    "quartic",
    "reduce_mod_cyclotomic",
    "run_sweep",
    "stanton_sides",
    "terminating_2f1_poly",
    "trivial",
    "verify_all",
    "verify_alpha_beta",
    "verify_eq31",
    "verify_eq42",
    "verify_fstar_forms",
    "verify_hasse_davenport",
    "verify_lemma1",
    "verify_stanton",
    "verify_thm2",
    "verify_thm3",
    "zeta",
]
