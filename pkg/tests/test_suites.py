import pytest

from mwt.suites import REGISTRY, SuiteError, divisor_chains, resolve_params, run_suite

SMALL = {
    "homotopy-ses": {"samples": 20},
    "characterization": {"samples": 20},
    "generation": {"samples": 20, "max_degree": 3},
    "prime-generation": {"samples": 20, "max_degree": 3},
    "projection": {"samples": 10, "max_degree": 3},
    "lam-formulas": {"variant": "corrected", "samples": 4},
    "nilpotence": {},
    "coprime-kill": {"max_rank": 3},
    "r3a": {"samples": 20},
    "r1c-weak": {"samples": 5},
    "r1c-strong": {"samples": 5},
    "prime-degree-independence": {"samples": 5},
    "composite-square": {"samples": 5},
    "kato-morel": {"samples": 5, "degrees": (2, 4)},
}


def test_every_suite_has_a_small_run():
    assert set(SMALL) == set(REGISTRY)


@pytest.mark.parametrize("name", sorted(SMALL))
@pytest.mark.parametrize("q", [3, 5])
def test_suite_small_runs_pass(name, q):
    rep = run_suite(name, {"q": q, **SMALL[name]}, timing=False)
    assert rep["pass"], rep["failures"][:3]
    assert rep["cases_run"] > 0
    assert rep["elapsed_ms"] == 0


def test_stated_lam_formulas_fail():
    rep = run_suite("lam-formulas", {"q": 3}, timing=False)
    assert not rep["pass"]
    checks = {f["case"]["check"] for f in rep["failures"]}
    assert "geo(1)=n_eps" in checks


def test_seed_changes_cases_but_not_verdict():
    a = run_suite("characterization", {"q": 3, "samples": 10, "seed": 1}, timing=False)
    b = run_suite("characterization", {"q": 3, "samples": 10, "seed": 2}, timing=False)
    assert a["pass"] and b["pass"] and a["seed"] != b["seed"]


def test_resolve_params_rejects_unknown():
    with pytest.raises(SuiteError):
        resolve_params("nilpotence", {"mode": "bt"})
    with pytest.raises(SuiteError):
        resolve_params("nope", {})
    with pytest.raises(SuiteError):
        resolve_params("nilpotence", {"q": 4})


def test_divisor_chains():
    chains = divisor_chains(6)
    assert [1, 6] in chains and [1, 2, 6] in chains and [1, 3, 6] in chains
    assert all(b % a == 0 for ch in chains for a, b in zip(ch, ch[1:]))
