from __future__ import annotations

import functools

import pytest

from binuc.lattice import generate
from binuc.torsion import enumerate_presilting, enumerate_tors, gen_linear_An


@functools.lru_cache(maxsize=None)
def tors_of(n: int, orientation: str | None = None):
    return enumerate_tors(gen_linear_An(n, orientation))


@functools.lru_cache(maxsize=None)
def pairs_of(n: int, orientation: str | None = None):
    T = tors_of(n, orientation)
    return enumerate_presilting(T.spec, T)


def corpus():
    """Named small lattices used across the suites."""
    items = [
        ("fig1", generate("fig1")),
        ("fig2", generate("fig2")),
        ("M3", generate("M3")),
        ("N5", generate("N5")),
        ("weak_order3", generate("weak_order", 3)),
        ("weak_order4", generate("weak_order", 4)),
    ]
    items += [(f"chain{n}", generate("chain", n)) for n in range(1, 7)]
    items += [(f"boolean{n}", generate("boolean", n)) for n in range(0, 5)]
    items += [(f"tors_A{n}", tors_of(n).lattice) for n in range(1, 4)]
    items.append(("tors_A3_sink", tors_of(3, "><").lattice))
    return items


@pytest.fixture(scope="session")
def A2():
    return tors_of(2)


@pytest.fixture(scope="session")
def A3():
    return tors_of(3)


@pytest.fixture(scope="session")
def A3_sink():
    """A3 with arrows 1 -> 2 <- 3."""
    return tors_of(3, "><")


# acceptance summary lines, printed after the run

ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
