import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

CORPUS = Path(__file__).resolve().parent.parent / "corpus"

S_RULE = "s(X,Z) :- p(Z), q(X,Y), r(X,Y)."
S_FACTS = "p(2). q(1,1). q(1,2). q(2,2). r(1,1). r(1,2). r(2,1)."
EQ5 = ["p(2)", "q(1,1)", "q(1,2)", "q(2,2)", "r(1,1)", "r(1,2)", "r(2,1)", "s(1,2)"]


@pytest.fixture
def corpus():
    return CORPUS


def read(name: str) -> str:
    return (CORPUS / name).read_text()


def pytest_terminal_summary(terminalreporter):
    module = sys.modules.get("test_acceptance")
    results = getattr(module, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(results):
        terminalreporter.write_line(results[number][1])
