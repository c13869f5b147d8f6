import pytest

from tempus.corpus import generate_corpus
from tempus.pipeline import bundled_models

KUCHMA = ("Presidents Leonid Kuchma of Ukraine and Boris Yeltsin of Russia signed an economic "
          "cooperation plan on February 27, 1998.")
CAR_BOMB = ("A car exploded in the middle of a group of men playing volleyball. "
            "More than 10 people have died, police said.")


@pytest.fixture(scope="session")
def models():
    return bundled_models()


@pytest.fixture(scope="session")
def mini_corpus():
    return generate_corpus(40, seed=11)


_CRITERIA: dict = {}


def pytest_runtest_logreport(report):
    marker = "test_acceptance.py::test_criterion_"
    if marker in report.nodeid and (report.when == "call" or report.outcome != "passed"):
        name = report.nodeid.split("::")[-1][len("test_criterion_"):]
        _CRITERIA[name] = report.outcome


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(_CRITERIA, key=lambda n: int(n.split("_")[0])):
        number, _, title = name.partition("_")
        status = "PASS" if _CRITERIA[name] == "passed" else "FAIL"
        terminalreporter.write_line(f"criterion {number:>2} {status}  {title.replace('_', ' ')}")
