import re
from pathlib import Path

import pytest

from emrec import build_blocks, load

FIXTURES = Path(__file__).parent / "fixtures"


def wrap(body: str, params: str = "", imports: str = "", package: str = "p") -> str:
    """A one-method unit around ``body``."""
    return f"package {package};\n{imports}\nclass C {{\n    void m({params}) {{\n{body}\n    }}\n}}\n"


def labeled_of(body: str, params: str = "", imports: str = ""):
    unit = load(wrap(body, params, imports))
    return build_blocks(unit.classes[0].method("m"))


def fixture_units():
    """Every shipped .jx fixture as ``(path, unit)``."""
    return [(p, load(p.read_text(encoding="utf-8"))) for p in sorted(FIXTURES.rglob("*.jx"))]


@pytest.fixture
def classifier_box():
    unit = load((FIXTURES / "classifier_box.jx").read_text(encoding="utf-8"))
    return unit, build_blocks(unit.find_method("mouseReleased")[1])


# --- acceptance summary --------------------------------------------------------

_AC_RESULTS = {}
_AC_NAME = re.compile(r"test_ac(\d+)_")


def pytest_runtest_logreport(report):
    m = _AC_NAME.search(report.nodeid)
    if not m or "test_acceptance" not in report.nodeid:
        return
    n = int(m.group(1))
    if report.when == "call" or report.outcome != "passed":
        prev = _AC_RESULTS.get(n, True)
        _AC_RESULTS[n] = prev and report.outcome == "passed"


def pytest_terminal_summary(terminalreporter):
    if not _AC_RESULTS:
        return
    from test_acceptance import CRITERIA

    terminalreporter.section("acceptance criteria")
    for n in sorted(CRITERIA):
        if n not in _AC_RESULTS:
            status = "NOT RUN"
        else:
            status = "PASS" if _AC_RESULTS[n] else "FAIL"
        terminalreporter.write_line(f"AC{n} {status:7} {CRITERIA[n]}")
