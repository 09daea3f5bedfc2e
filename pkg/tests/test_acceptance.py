"""Every acceptance criterion at its stated limits, one line of output each.

Run with ``pytest tests/test_acceptance.py -s`` to see the lines live; they
are also collected into the terminal summary.
"""

import pytest

from propchoose import acceptance

LINES: list[str] = []


@pytest.fixture(scope="module", autouse=True)
def summary(request):
    yield
    reporter = request.config.pluginmanager.get_plugin("terminalreporter")
    if reporter is not None and LINES:
        reporter.write_sep("=", "acceptance criteria")
        for line in LINES:
            reporter.write_line(line)


@pytest.mark.parametrize("check", acceptance.ALL, ids=[c.__name__ for c in acceptance.ALL])
def test_criterion(check):
    result = check()
    print(result.line())
    for detail in result.details:
        print("    " + detail)
    LINES.append(result.line())
    assert result.passed, "\n".join(d for d in result.details if d.startswith("FAIL"))
