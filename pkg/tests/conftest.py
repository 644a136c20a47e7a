import inspect
from pathlib import Path

import pytest
from ffhyper import FiniteField, SumContext, build_context, build_field


def check_output_stability(logs: str, *, test_name: str | None = None) -> None:
    """Test that a rendered output hasn't changed, comparing against the approved file next to the test module"""
    caller_frame = inspect.stack()[1]
    caller_path = Path(caller_frame.filename).resolve()
    caller_dir = caller_path.parent
    test_name = test_name or caller_frame.function
    caller_stem = Path(caller_frame.filename).stem
    output_dir = caller_dir / f"{caller_stem}.approvals"
    output_file = output_dir / f"{test_name}.approved.txt"

    # first run writes the approval file and fails
    if not output_file.exists():
        output_dir.mkdir(exist_ok=True)
        output_file.write_text(logs, encoding="utf-8")
        pytest.fail(
            f"New approval file created at {output_file} from test {test_name} - "
            "if this was intentional, please commit the file to the repo"
        )

    approved = output_file.read_text(encoding="utf-8")
    if approved != logs:
        received = output_dir / f"{test_name}.received.txt"
        received.write_text(logs, encoding="utf-8")
        pytest.fail(f"Output of {test_name} differs from {output_file}, see {received}")


@pytest.fixture(scope="session")
def f5() -> FiniteField:
    return build_field(5)


@pytest.fixture(scope="session")
def f9() -> FiniteField:
    return build_field(3, 2)


@pytest.fixture(scope="session")
def f13() -> FiniteField:
    return build_field(13)


@pytest.fixture(scope="session")
def ctx5() -> SumContext:
    return build_context(5)


@pytest.fixture(scope="session")
def ctx9() -> SumContext:
    return build_context(3, 2)


@pytest.fixture(scope="session")
def ctx13() -> SumContext:
    return build_context(13)


@pytest.fixture(scope="session")
def ctx13_float() -> SumContext:
    return build_context(13, 1, "float")
