import os
import sys

from hypothesis import settings

sys.path.insert(0, os.path.dirname(__file__))

settings.register_profile("default", deadline=None)
settings.load_profile("default")

CRITERIA = {
    "01": "kato-morel tower independence",
    "02": "characterization identity",
    "03": "lam formulas as stated",
    "04": "degree-0 oracle equivalence",
    "05": "nilpotence",
    "06": "r3a ramification square",
    "07": "r1c-strong base change",
    "08": "homotopy-ses",
    "09": "coprime-kill",
    "10": "generation / prime-generation",
}


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance: one of the ten acceptance criteria")


def pytest_terminal_summary(terminalreporter):
    outcome = {}
    for key in ("passed", "failed", "error"):
        for rep in terminalreporter.stats.get(key, []):
            nodeid = getattr(rep, "nodeid", "")
            if "test_acceptance.py::test_criterion_" not in nodeid or rep.when not in ("call", "setup"):
                continue
            num = nodeid.split("test_criterion_")[1][:2]
            ok = key == "passed"
            outcome[num] = outcome.get(num, True) and ok
    if not outcome:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(outcome):
        terminalreporter.write_line(f"criterion {num} {'PASS' if outcome[num] else 'FAIL'}: {CRITERIA[num]}")
