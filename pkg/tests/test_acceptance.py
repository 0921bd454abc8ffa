"""One test per acceptance criterion, at the stated bounds and time limits.

Each test prints a PASS/FAIL line; the lines are also collected into the
terminal summary. Run directly with ``python tests/test_acceptance.py``.
"""

import sys

import pytest

from satake.acceptance import DEFAULT_CONFIG, NAMES, run_criterion


@pytest.mark.parametrize("number", sorted(NAMES))
def test_acceptance_criterion(number, acceptance_lines):
    result = run_criterion(number, DEFAULT_CONFIG)
    line = result.line()
    print(line)
    acceptance_lines.append(line)
    assert result.passed, "\n".join(result.failures) or line


if __name__ == "__main__":
    results = [run_criterion(n, DEFAULT_CONFIG) for n in sorted(NAMES)]
    for r in results:
        print(r.line())
        for f in r.failures:
            print(f"    {f}")
    sys.exit(0 if all(r.passed for r in results) else 1)
