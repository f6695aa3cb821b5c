import re

import pytest
from hypothesis import HealthCheck, settings

from ncgraded import builtin, complete, minimal_resolution

settings.register_profile(
    "suite", max_examples=40, deadline=None,
    suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("suite")


@pytest.fixture(scope="session")
def sz_rs():
    return complete(builtin("smith-zhang"), 8)


@pytest.fixture(scope="session")
def sz_res(sz_rs):
    return minimal_resolution(sz_rs, 5, 8)


@pytest.fixture(scope="session")
def qp_rs():
    return complete(builtin("quantum-plane-2"), 8)


@pytest.fixture(scope="session")
def qp_res(qp_rs):
    return minimal_resolution(qp_rs, 5, 8)


@pytest.fixture(scope="session")
def poly2_rs():
    return complete(builtin("polynomial-2"), 8)


_CRIT = re.compile(r"test_criterion_(\d+)")


def pytest_terminal_summary(terminalreporter):
    """One pass/fail line per acceptance criterion in the terminal summary."""
    tr = terminalreporter
    lines = {}
    for status in ("passed", "failed", "error"):
        for rep in tr.stats.get(status, []):
            nodeid = getattr(rep, "nodeid", "")
            if "test_acceptance" not in nodeid:
                continue
            if getattr(rep, "when", "call") != "call" and status == "passed":
                continue
            m = _CRIT.search(nodeid)
            if not m:
                continue
            n = int(m.group(1))
            verdict = "PASS" if status == "passed" else "FAIL"
            if n not in lines or verdict == "FAIL":
                lines[n] = (verdict, nodeid.split("::")[-1])
    if lines:
        tr.write_sep("-", "acceptance criteria")
        for n in sorted(lines):
            verdict, name = lines[n]
            tr.write_line(f"criterion {n}: {verdict} ({name})")
