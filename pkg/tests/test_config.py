import importlib

import pytest
from ffhyper.config import UpdatableConfig

# the package re-exports the `config` instance under the module name
config_module = importlib.import_module("ffhyper.config")


def test_defaults(monkeypatch: pytest.MonkeyPatch) -> None:
    monkeypatch.setattr(config_module, "FFHYPER_JOBS", None)
    monkeypatch.setattr(config_module, "FFHYPER_BACKEND", None)
    fresh = UpdatableConfig()

    assert fresh.jobs == 1
    assert fresh.backend == "exact"
    assert fresh.float_tolerance_factor == 1e-6
    assert fresh.max_table_size == 2**20
    assert fresh.max_exact_conductor == 2500


def test_environment_seeds_defaults(monkeypatch: pytest.MonkeyPatch) -> None:
    monkeypatch.setattr(config_module, "FFHYPER_JOBS", "4")
    monkeypatch.setattr(config_module, "FFHYPER_BACKEND", "float")
    fresh = UpdatableConfig()

    assert fresh.jobs == 4
    assert fresh.backend == "float"


def test_invalid_environment_is_ignored(monkeypatch: pytest.MonkeyPatch) -> None:
    monkeypatch.setattr(config_module, "FFHYPER_JOBS", "many")
    monkeypatch.setattr(config_module, "FFHYPER_BACKEND", "quantum")
    fresh = UpdatableConfig()

    assert fresh.jobs == 1
    assert fresh.backend == "exact"


def test_configure_only_changes_given_settings() -> None:
    fresh = UpdatableConfig()
    backend = fresh.backend

    fresh.configure(jobs=0, max_exact_conductor=100)

    assert fresh.jobs == 1
    assert fresh.max_exact_conductor == 100
    assert fresh.backend == backend


def test_with_jobs_restores_value() -> None:
    fresh = UpdatableConfig()
    fresh.configure(jobs=2)
    seen = []

    fresh.with_jobs(8, lambda: seen.append(fresh.jobs))

    assert seen == [8]
    assert fresh.jobs == 2


def test_settings_round_trip_through_configure() -> None:
    fresh = UpdatableConfig()
    fresh.configure(jobs=3, backend="float", max_table_size=4096)
    other = UpdatableConfig()

    other.configure(**fresh.settings())

    assert other.settings() == fresh.settings()
    assert other.jobs == 3
    assert other.max_table_size == 4096
