import random

import pytest
from hypothesis import strategies as st

from spaths.instance import Instance, random_instance


def path123():
    return Instance(3, ((1, 2), (2, 3)), ((1,), (3,)))


def star():
    # center 2, leaves 1, 3, 4
    return Instance(4, ((1, 2), (2, 3), (2, 4)), ((1,), (3, 4)))


@st.composite
def instances(draw, max_n=8, max_extra=8, min_blocks=2):
    n = draw(st.integers(max(2, min_blocks), max_n))
    m = n - 1 + draw(st.integers(0, max_extra))
    k = draw(st.integers(min_blocks, n))
    b = draw(st.integers(min_blocks, k))
    seed = draw(st.integers(0, 2 ** 32 - 1))
    return random_instance(n, m, k, b, seed)


def random_small(rng: random.Random, max_n=10, extra=10, seed=None):
    n = rng.randint(2, max_n)
    m = rng.randint(n - 1, n - 1 + extra)
    k = rng.randint(2, n)
    b = rng.randint(2, k)
    return random_instance(n, m, k, b, rng.randrange(2 ** 32) if seed is None else seed)


ACCEPTANCE: list[str] = []


def record(number: int, name: str, ok: bool, detail: str = "") -> None:
    line = f"criterion {number} {name}: {'PASS' if ok else 'FAIL'}" + (f" ({detail})" if detail else "")
    ACCEPTANCE.append(line)
    print(line)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE):
            terminalreporter.write_line(line)
