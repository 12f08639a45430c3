from pathlib import Path

import pytest

from qfsum.concept_tree import load_tree
from qfsum.frontend import default_lexicon
from qfsum.pipeline import bundled_corpus, bundled_path, load_config

GOLDEN = Path(__file__).parent / "golden"

_criteria: dict[str, dict] = {}


def pytest_collection_modifyitems(items):
    for item in items:
        marker = item.get_closest_marker("acceptance")
        if marker:
            item.user_properties.append(("criterion", marker.args[0]))
            item.user_properties.append(("title", marker.kwargs.get("title", "")))


def pytest_runtest_logreport(report):
    props = dict(report.user_properties)
    if "criterion" not in props:
        return
    entry = _criteria.setdefault(props["criterion"], {"title": props["title"], "ok": True, "ran": False})
    if report.when == "call":
        entry["ran"] = True
    if report.failed:
        entry["ok"] = False


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(_criteria, key=lambda k: int(k.lstrip("AC"))):
        entry = _criteria[key]
        status = "PASS" if entry["ok"] and entry["ran"] else "FAIL"
        terminalreporter.write_line(f"{key:5s} {status}  {entry['title']}")


@pytest.fixture(scope="session")
def lexicon():
    return default_lexicon()


@pytest.fixture(scope="session")
def tree():
    return load_tree()


@pytest.fixture(scope="session")
def corpus():
    return bundled_corpus()


@pytest.fixture(scope="session")
def fixture_conf():
    return bundled_path("fixture.conf")


@pytest.fixture(scope="session")
def labels_path():
    return bundled_path("labels.tsv")


@pytest.fixture(scope="session")
def tuned_config(fixture_conf):
    return load_config(fixture_conf)
