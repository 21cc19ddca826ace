from pathlib import Path

import pytest

from zerodetect.arith import sieve_lambda
from zerodetect.characters import character_from_label
from zerodetect.zerodata import load_zeros

DATA = Path(__file__).parent / "data"
ZETA_FILE = DATA / "zeta_zeros_100k.txt.gz"


@pytest.fixture(scope="session")
def zeta_zeros():
    return load_zeros(ZETA_FILE, "zeta")


@pytest.fixture(scope="session")
def table():
    return sieve_lambda(10**5)


@pytest.fixture(scope="session")
def chi5():
    return character_from_label("5.2")


_LINES = pytest.StashKey[list]()


@pytest.fixture
def report(request):
    """Record a one-line criterion verdict for the terminal summary."""
    lines = request.config.stash.setdefault(_LINES, [])

    def emit(tag: str, ok: bool, detail: str):
        line = f"{tag}: {'PASS' if ok else 'FAIL'}  {detail}"
        lines.append(line)
        print(line)
        return ok

    return emit


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = config.stash.get(_LINES, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines, key=lambda s: (int(s.split()[1].rstrip(":").rstrip("abc")), s)):
            terminalreporter.write_line(line)
