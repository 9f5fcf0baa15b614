import pytest

from fracszilard.cycle import CycleConfig, run_cycle

_ACCEPTANCE_LINES = []


@pytest.fixture(scope="session", autouse=True)
def _warm_kernels():
    # one tiny evaluation so jit compilation never lands inside a timed block
    run_cycle(CycleConfig(2.0, 1e-9, 2.0, 1.0))


@pytest.fixture(scope="session")
def record_criterion():
    """Collect one pass/fail line per acceptance criterion for the summary."""

    def _record(line):
        _ACCEPTANCE_LINES.append(line)
        print(line)

    return _record


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if _ACCEPTANCE_LINES:
        terminalreporter.write_sep("=", "acceptance criteria")
        for line in _ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
