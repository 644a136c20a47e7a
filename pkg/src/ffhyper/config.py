import logging
import os
from collections.abc import Callable
from typing import Literal, TypeAlias, TypedDict

logger = logging.getLogger(__name__)

BackendName: TypeAlias = Literal["exact", "float"]
"""Name of a value backend: exact cyclotomic arithmetic or double precision complex numbers"""

# Environment variables used to seed the defaults
FFHYPER_JOBS = os.getenv("FFHYPER_JOBS")
FFHYPER_BACKEND = os.getenv("FFHYPER_BACKEND")

_DEFAULT_MAX_TABLE_SIZE = 2**20
_DEFAULT_MAX_EXACT_CONDUCTOR = 2_500
_DEFAULT_FLOAT_TOLERANCE_FACTOR = 1e-6


class ConfigSettings(TypedDict):
    jobs: int
    backend: BackendName
    float_tolerance_factor: float
    max_table_size: int
    max_exact_conductor: int


def _jobs_from_environment() -> int:
    if not FFHYPER_JOBS:
        return 1
    try:
        jobs = int(FFHYPER_JOBS)
    except ValueError:
        logger.warning(f"Ignoring FFHYPER_JOBS={FFHYPER_JOBS!r}, expected a positive integer")
        return 1
    return max(jobs, 1)


def _backend_from_environment() -> BackendName:
    if FFHYPER_BACKEND in ("exact", "float"):
        return FFHYPER_BACKEND  # type: ignore[return-value]
    if FFHYPER_BACKEND:
        logger.warning(f"Ignoring FFHYPER_BACKEND={FFHYPER_BACKEND!r}, expected 'exact' or 'float'")
    return "exact"


class UpdatableConfig:
    """Class to manage and update configuration settings for ffhyper.

    Attributes:
        jobs (int): Default number of worker processes used by identity sweeps.
        backend (BackendName): Default value backend, `exact` or `float`.
        float_tolerance_factor (float): The float backend accepts |lhs - rhs| < factor * q.
        max_table_size (int): Largest q for which `build_field` will tabulate a field.
        max_exact_conductor (int): Largest conductor m = p(q-1) the exact backend accepts.
    """

    def __init__(self) -> None:
        self._jobs: int = _jobs_from_environment()
        self._backend: BackendName = _backend_from_environment()
        self._float_tolerance_factor: float = _DEFAULT_FLOAT_TOLERANCE_FACTOR
        self._max_table_size: int = _DEFAULT_MAX_TABLE_SIZE
        self._max_exact_conductor: int = _DEFAULT_MAX_EXACT_CONDUCTOR

    @property
    def jobs(self) -> int:
        """Returns the default worker count for sweeps."""
        return self._jobs

    @property
    def backend(self) -> BackendName:
        """Returns the default value backend."""
        return self._backend

    @property
    def float_tolerance_factor(self) -> float:
        """Absolute float tolerance per field element, the tolerance for a field of size q is factor * q."""
        return self._float_tolerance_factor

    @property
    def max_table_size(self) -> int:
        """Returns the largest field size that will be fully tabulated."""
        return self._max_table_size

    @property
    def max_exact_conductor(self) -> int:
        """Returns the largest cyclotomic conductor handled exactly."""
        return self._max_exact_conductor

    def settings(self) -> ConfigSettings:
        """Returns a snapshot of every setting, accepted by `configure` as keyword arguments."""
        return {
            "jobs": self._jobs,
            "backend": self._backend,
            "float_tolerance_factor": self._float_tolerance_factor,
            "max_table_size": self._max_table_size,
            "max_exact_conductor": self._max_exact_conductor,
        }

    def with_jobs(self, jobs: int, func: Callable[[], object]) -> None:
        """Executes a function with the sweep worker count temporarily overridden."""
        original_jobs = self._jobs
        try:
            self._jobs = max(jobs, 1)
            func()
        finally:
            self._jobs = original_jobs

    def configure(  # noqa: PLR0913
        self,
        *,
        jobs: int | None = None,
        backend: BackendName | None = None,
        float_tolerance_factor: float | None = None,
        max_table_size: int | None = None,
        max_exact_conductor: int | None = None,
    ) -> None:
        """
        Configures the library defaults. Only the settings that are passed are changed.
        The initial `jobs` and `backend` values can also be set via the `FFHYPER_JOBS`
        and `FFHYPER_BACKEND` environment variables.

        Args:
            jobs (int | None, optional): Default worker count for sweeps, at least 1.
            backend (BackendName | None, optional): Default value backend.
            float_tolerance_factor (float | None, optional): Float comparisons use factor * q as tolerance.
            max_table_size (int | None, optional): Guard on q for `build_field`. Defaults to 2**20.
            max_exact_conductor (int | None, optional): Guard on m for the exact backend. Defaults to 2500.

        Returns:
            None
        """

        if jobs is not None:
            self._jobs = max(jobs, 1)
        if backend is not None:
            self._backend = backend
        if float_tolerance_factor is not None:
            self._float_tolerance_factor = float_tolerance_factor
        if max_table_size is not None:
            self._max_table_size = max_table_size
        if max_exact_conductor is not None:
            self._max_exact_conductor = max_exact_conductor
        logger.debug(
            f"Configured jobs={self._jobs} backend={self._backend} "
            f"float_tolerance_factor={self._float_tolerance_factor} max_table_size={self._max_table_size} "
            f"max_exact_conductor={self._max_exact_conductor}"
        )


config = UpdatableConfig()
