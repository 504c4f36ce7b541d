import os
import random
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))

from formality.core import Field, Q
from formality.operad import Cochain

F2 = Field(2)
F3 = Field(3)
FIELDS = [Q, F2, F3]


def random_scalar(rng, field):
    if field.p:
        return rng.randrange(1, field.p)
    return field(rng.choice([1, -1, 2, -3]))


def random_cochain(rng, operad, p, q, density=0.5, part="all"):
    """A random cochain of arity p and degree q (possibly zero)."""
    keys = operad.component_keys(p, q, part) if part != "all" else operad.component_keys(p, q)
    table = {k: random_scalar(rng, operad.field) for k in keys if rng.random() < density}
    return Cochain(operad, p, q, table)


@pytest.fixture
def rng():
    return random.Random(20240607)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[k])
