import random

import pytest
from hypothesis import settings

from affsys.catalog import boolean, chain, diamond, drastic_chain, lukasiewicz, nonintegral_chain, two
from affsys.verify import gen_algebra

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

# filled by tests/test_acceptance.py, printed at the end of the run
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture
def L2():
    return two("frame")


@pytest.fixture
def c3():
    return chain(3, "frame")


def small_algebras(variety, count=12, max_size=5, seed=0):
    rng = random.Random(f"fixture:{variety}:{seed}")
    return [gen_algebra(variety, rng, max_size) for _ in range(count)]


QUANTALES = [lukasiewicz(3), lukasiewicz(4), drastic_chain(4), nonintegral_chain(), chain(3, "uquant"), boolean(2, "uquant")]
CBALGS = [two("cbalg"), diamond("cbalg"), boolean(3, "cbalg")]
