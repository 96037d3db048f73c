import random

import pytest
from hypothesis import settings

from glinf.residue import Modulus

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")


@pytest.fixture
def rng():
    return random.Random(12345)


@pytest.fixture(params=[(2, 1), (2, 2), (3, 1)], ids=lambda pk: f"p{pk[0]}k{pk[1]}")
def mod(request):
    return Modulus(*request.param)


_ACCEPTANCE = pytest.StashKey[list]()


@pytest.fixture
def acceptance(request):
    """Record one summary line per acceptance criterion."""
    lines = request.config.stash.setdefault(_ACCEPTANCE, [])

    def report(number, passed, text):
        line = f"[{'PASS' if passed else 'FAIL'}] criterion {number}: {text}"
        lines.append(line)
        print(line)
        return passed

    return report


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = config.stash.get(_ACCEPTANCE, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
