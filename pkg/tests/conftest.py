import time

import pytest

_LINES: list[str] = []


@pytest.fixture
def criterion(capsys):
    """criterion(number, label, budget_s, fn): fn returns (ok, detail)."""

    def check(number, label, budget_s, fn):
        t0 = time.perf_counter()
        try:
            ok, detail = fn()
        except Exception as exc:  # reported, then re-raised below
            ok, detail, err = False, f"{type(exc).__name__}: {exc}", exc
        else:
            err = None
        elapsed = time.perf_counter() - t0
        in_time = elapsed < budget_s
        status = "PASS" if ok and in_time else "FAIL"
        line = f"criterion {number:>2} {status}  {label}  ({elapsed:.2f}s of {budget_s}s)  {detail}"
        _LINES.append(line)
        with capsys.disabled():
            print("\n" + line)
        if err is not None:
            raise err
        assert ok, detail
        assert in_time, f"took {elapsed:.1f}s, budget {budget_s}s"

    return check


def pytest_terminal_summary(terminalreporter):
    if _LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(_LINES, key=lambda s: int(s.split()[1])):
            terminalreporter.write_line(line)
