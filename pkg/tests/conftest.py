import pytest

from qhb import markov


@pytest.fixture
def fresh_triple_cache(monkeypatch):
    """Empty in-memory triple cache, restored afterwards."""
    monkeypatch.setattr(markov, "_cache", (0, ()))
    yield


ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def criterion(request):
    """Record one PASS/FAIL line per acceptance criterion."""
    state = {}

    def record(number: int, title: str, detail: str = "") -> None:
        state.update(number=number, title=title, detail=detail)

    yield record
    if state:
        failed = request.node.rep_call.failed if hasattr(request.node, "rep_call") else True
        verdict = "FAIL" if failed else "PASS"
        line = f"[{verdict}] criterion {state['number']}: {state['title']}"
        if state["detail"]:
            line += f" ({state['detail']})"
        ACCEPTANCE_LINES.append(line)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if rep.when == "call":
        item.rep_call = rep


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split("criterion ")[1].split(":")[0])):
            terminalreporter.write_line(line)
