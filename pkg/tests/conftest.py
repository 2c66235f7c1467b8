from pathlib import Path

import pytest

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"


@pytest.fixture(scope="session")
def fixtures_dir() -> Path:
    return FIXTURES


@pytest.fixture(scope="session")
def mini_ontology_path() -> Path:
    return FIXTURES / "mini_ontology.tsv"


@pytest.fixture(scope="session")
def worked_snapshot_path() -> Path:
    return FIXTURES / "snapshots" / "worked_examples.tsv"


def pytest_configure(config):
    config.addinivalue_line(
        "markers", "acceptance(label): marks a test as one numbered acceptance criterion"
    )


def pytest_runtest_logreport(report):
    """Print one pass/fail line per acceptance criterion."""
    if report.when != "call":
        return
    marker = getattr(report, "_acceptance_label", None)
    if marker:
        status = "PASS" if report.passed else "FAIL"
        print(f"\nacceptance criterion {marker}: {status}")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("acceptance")
    if marker and marker.args:
        report._acceptance_label = marker.args[0]
