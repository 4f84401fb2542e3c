"""Shared test configuration.

Two jobs:

* pin hypothesis to a derandomized profile so every run exercises the same
  examples (failures are reproducible, CI is deterministic), and
* print one ``acceptance criterion NN: PASS/FAIL`` line per acceptance test
  at the end of the run, so the gate can be read off the terminal summary.
"""

from hypothesis import HealthCheck, settings

settings.register_profile(
    "ci",
    derandomize=True,
    max_examples=50,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("ci")

_ACCEPTANCE_PREFIX = "test_acceptance.py::test_criterion_"


def _criterion_id(nodeid: str) -> str | None:
    marker = nodeid.rsplit("::", 1)[-1]
    if not marker.startswith("test_criterion_"):
        return None
    return marker[len("test_criterion_") :].split("[")[0]


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    outcomes: dict[str, str] = {}
    for status in ("passed", "failed", "error"):
        for report in terminalreporter.stats.get(status, []):
            nodeid = getattr(report, "nodeid", "")
            if _ACCEPTANCE_PREFIX not in nodeid:
                continue
            crit = _criterion_id(nodeid)
            if crit is None:
                continue
            verdict = "PASS" if status == "passed" else "FAIL"
            # any failing phase (setup/call/teardown) marks the criterion failed
            if outcomes.get(crit) != "FAIL":
                outcomes[crit] = verdict

    if not outcomes:
        return

    try:
        from test_acceptance import CRITERIA
    except ImportError:  # pragma: no cover - acceptance module always present
        CRITERIA = {}

    terminalreporter.write_sep("-", "acceptance criteria")
    for crit in sorted(outcomes):
        title = CRITERIA.get(crit, "")
        terminalreporter.write_line(
            f"acceptance criterion {crit}: {outcomes[crit]}"
            + (f" - {title}" if title else "")
        )
