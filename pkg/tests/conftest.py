import sys
from collections import defaultdict
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

ROOT = Path(__file__).resolve().parents[1]
DATA = ROOT / "data"

CRITERIA = {
    1: "construction fidelity",
    2: "distance law, multiplicity, P3, P4 for every prime N <= 13, N^k <= 2200",
    3: "composite counterexample",
    4: "deterministic distance tables",
    5: "random search direction",
    6: "exhaustive conjecture oracle",
    7: "Walsh and punctured Walsh total distance",
    8: "error-correction radius",
    9: "classification properties",
    10: "CLI determinism",
}

# criterion -> list of (label, passed, detail)
_acceptance: dict[int, list] = defaultdict(list)


@pytest.fixture
def data_dir() -> Path:
    return DATA


@pytest.fixture
def record():
    """Log one sub-check of an acceptance criterion; returns ``passed``."""
    def _record(criterion: int, label: str, passed: bool, detail: str = "") -> bool:
        _acceptance[criterion].append((label, bool(passed), detail))
        return passed
    return _record


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for number, title in CRITERIA.items():
        checks = _acceptance.get(number)
        if not checks:
            tr.write_line(f"criterion {number:2d} NOT RUN  {title}")
            continue
        failed = [c for c in checks if not c[1]]
        status = "PASS" if not failed else "FAIL"
        summary = f"{len(checks) - len(failed)}/{len(checks)} checks"
        if failed:
            summary += "; failing: " + ", ".join(f"{label} ({detail})" for label, _, detail in failed)
        tr.write_line(f"criterion {number:2d} {status}  {title}: {summary}")
