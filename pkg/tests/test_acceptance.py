"""Acceptance gate: every verification row must pass within its budget.

One pass/fail line is printed per criterion (run pytest with -s or -v to see
them); the same table drives ``gnorm reproduce``.
"""

import pytest

from gnorm.config import DEFAULT
from gnorm.verification import ROWS, run_row

_RESULTS: dict[str, dict] = {}


@pytest.mark.parametrize("row", ROWS, ids=[r.rid for r in ROWS])
def test_criterion(row):
    result = _RESULTS.get(row.rid) or run_row(row, DEFAULT)
    _RESULTS[row.rid] = result
    status = "PASS" if result["ok"] else "FAIL"
    print(f"[{status}] {row.rid}: {row.title} ({result['elapsed_s']}s)")
    detail = {k: v for k, v in result.items()
              if k not in ("id", "title", "ok", "within_budget")}
    assert result["within_budget"], f"{row.rid} exceeded {row.budget_s}s: {detail}"
    assert result["ok"], detail
