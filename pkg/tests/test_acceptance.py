"""The fourteen acceptance criteria at full level, tolerance zero.

Each criterion is one test; a one-line pass/fail summary per criterion is
printed at the end of the pytest run (see conftest.py) and when this file is
run directly with ``python3 tests/test_acceptance.py``.
"""

import pytest

from qforest.verify import CRITERIA, DEFAULT_SEED, run_criterion

RESULTS = {}


@pytest.mark.slow
@pytest.mark.parametrize("number", [c[0] for c in CRITERIA],
                         ids=[f"{c[0]:02d}-{c[1].replace(' ', '-')}" for c in CRITERIA])
def test_criterion(number):
    res = run_criterion(number, level="full", seed=DEFAULT_SEED)
    RESULTS[number] = res
    print(res.line())
    for note in res.notes:
        print("   ", note)
    assert res.passed, res.actual


if __name__ == "__main__":
    import sys

    failed = 0
    for num, _, _ in CRITERIA:
        r = run_criterion(num, "full")
        print(r.line(), flush=True)
        failed += not r.passed
    sys.exit(1 if failed else 0)
