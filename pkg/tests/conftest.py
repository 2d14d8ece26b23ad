from pathlib import Path

import pytest

from photonpair import _backend

CORPUS = Path(__file__).parent / "corpus"


@pytest.fixture(params=sorted(_backend.AVAILABLE))
def backend(request):
    return request.param


ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def criterion(request):
    """Record a PASS/FAIL line for an acceptance criterion."""
    doc = (request.function.__doc__ or request.node.name).strip().splitlines()[0]
    yield
    rep = getattr(request.node, "rep_call", None)
    status = "PASS" if rep is not None and rep.passed else "FAIL"
    param = getattr(request.node, "callspec", None)
    suffix = f" [{request.node.callspec.id}]" if param is not None else ""
    ACCEPTANCE_LINES.append(f"[{status}] {doc}{suffix}")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if rep.when == "call":
        item.rep_call = rep


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
