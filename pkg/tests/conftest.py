import pytest

# criterion number -> (name, passed, detail); filled in by the acceptance tests
ACCEPTANCE: dict = {}


@pytest.hookimpl(trylast=True)
def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in range(1, 14):
        if n not in ACCEPTANCE:
            terminalreporter.write_line(f"ACCEPTANCE {n:2d} NOT RUN")
            continue
        name, passed, detail = ACCEPTANCE[n]
        terminalreporter.write_line(f"ACCEPTANCE {n:2d} {'PASS' if passed else 'FAIL'} {name}: {detail}")
