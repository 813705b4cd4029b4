import pytest


def pytest_addoption(parser):
    parser.addoption("--extended", action="store_true", default=False,
                     help="run long acceptance checks (minutes to hours)")


def pytest_configure(config):
    config.addinivalue_line("markers", "extended: long-running check, needs --extended")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--extended"):
        return
    skip = pytest.mark.skip(reason="long-running; pass --extended")
    for item in items:
        if "extended" in item.keywords:
            item.add_marker(skip)


AC_NAMES = [f"AC-{i}" for i in range(1, 12)]


@pytest.fixture
def ac_report(request, capsys):
    """Record and print one PASS/FAIL line for an acceptance criterion."""
    lines = request.config.__dict__.setdefault("_ac_lines", {})

    def report(ac: str, passed: bool, detail: str) -> None:
        line = f"{ac} {'PASS' if passed else 'FAIL'}: {detail}"
        lines[ac] = line
        with capsys.disabled():
            print("\n" + line)
    return report


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = config.__dict__.get("_ac_lines", {})
    if not lines:
        return
    terminalreporter.section("acceptance criteria")
    for ac in AC_NAMES:
        terminalreporter.write_line(lines.get(ac, f"{ac} SKIPPED: long-running, run with --extended"))
