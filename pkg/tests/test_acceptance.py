"""End-to-end acceptance criteria, each checked for exact equality.

Run directly (``python3 tests/test_acceptance.py``) for a plain PASS/FAIL listing;
under pytest the same lines appear in the terminal summary.
"""
import sys

import pytest

from artifact.acceptance import CRITERIA

SEED = 0
RESULTS = {}


def _line(number, ok):
    return f"[{'PASS' if ok else 'FAIL'}] criterion {number:2d}: {CRITERIA[number][0]}"


@pytest.mark.parametrize("number", sorted(CRITERIA))
def test_criterion(number):
    name, fn = CRITERIA[number]
    ok, detail = fn(SEED)
    RESULTS[number] = bool(ok)
    print(_line(number, ok))
    assert ok, f"{name}: {detail}"


def main():
    failed = 0
    for number, (_, fn) in sorted(CRITERIA.items()):
        ok, _ = fn(SEED)
        failed += not ok
        print(_line(number, ok), flush=True)
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
