import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from varlat.textio import parse_basis_inline, read_basis  # noqa: E402

DATA = Path(__file__).parent / "data"

# commutative bases exercised across the suite; the first two are the worked examples
CORPUS = {
    "example1": "xy = yx, xyzq = 0, x^3 = 0, x^2y = y^2x",
    "example2": "xy = yx, x^5 = 0, x^3y^2 = y^3x^2",
    "x2y_zero": "xy = yx, x^2y = 0",
    "x3_zero": "xy = yx, x^3 = 0",
    "x2_zero": "xy = yx, x^2 = 0",
    "xy_zero": "xy = yx, xy = 0",
    "semilattice": "xy = yx, x = x^2",
    "sl_join_nil": "xy = yx, x^2 = x^3, x^2y = xy^2",
    "sl_join_x2": "xy = yx, x^2 = x^3, x^2y = x^2y^2",
    "A2": "xy = yx, x^2y = y",
    "A3": "xy = yx, x^3y = y",
    "A5": "xy = yx, x^5y = y",
    "not_substitutive": "xy = yx, x^5 = 0, x^3y = x^2y^2",
    "x2_eq_x3": "xy = yx, x^2 = x^3",
    "com": "xy = yx",
    "trivial": "xy = yx, x = y",
}


def corpus_basis(name):
    return parse_basis_inline(CORPUS[name])


@pytest.fixture
def data_dir():
    return DATA


@pytest.fixture
def example1():
    return read_basis(DATA / "example1.bas")


@pytest.fixture
def example2():
    return read_basis(DATA / "example2.bas")


# acceptance criterion number -> (passed, detail), filled by test_acceptance
RESULTS = {}


def pytest_terminal_summary(terminalreporter):
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for n in sorted(RESULTS):
            ok, detail = RESULTS[n]
            terminalreporter.write_line(f"criterion {n}: {'PASS' if ok else 'FAIL'}  {detail}")
