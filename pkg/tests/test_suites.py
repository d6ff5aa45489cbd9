import pytest

from aksverify.errors import DomainError
from aksverify.suites import SUITES, run_suite

SMALL = {
    "oracle": {"max_n": 300},
    "legendre": {"max_n": 60, "max_p": 20},
    "lcm-bound": {"max_m": 100},
    "lemma-d": {"max_n": 200},
    "totient-sum": {"max_r": 200},
    "cyclotomic": {"max_p": 20},
    "xk-identities": {"max_r": 8},
    "gflt": {"max_p": 11},
    "division": {"max_n": 40, "max_m": 24},
    "cns": {"max_m": 8},
    "sigma": {"max_m": 8},
    "grid": {"max_m": 8},
    "rub": {"max_n": 50, "max_p": 31},
    "introspectivity": {"max_n": 20, "max_p": 13},
    "congruence": {"max_n": 150},
    "lemma-f": {"max_n": 110},
    "lemma-g": {"max_p": 7},
    "pascal": {"max_m": 10},
    "binomial": {"max_m": 10},
    "binom-div": {"max_p": 30},
}


@pytest.mark.parametrize("name", sorted(SMALL))
def test_suite_small_range_passes(name):
    report = run_suite(name, SMALL[name], seed=1)
    assert report.cases_run > 0
    assert report.passed, report.render()
    assert report.ranges == {**SUITES[name].flags, **SMALL[name]}


def test_range_flags_honored_exactly():
    assert run_suite("oracle", {"max_n": 50}).cases_run == 49
    assert run_suite("totient-sum", {"max_r": 17}).cases_run == 17
    assert run_suite("grid", {"max_m": 3}).cases_run == 4
    with pytest.raises(DomainError):
        run_suite("grid", {"max_p": 3})


def test_seeded_suites_are_deterministic():
    a = run_suite("division", {"max_n": 20, "max_m": 16}, seed=7)
    b = run_suite("division", {"max_n": 20, "max_m": 16}, seed=7)
    assert a.cases_run == b.cases_run and a.failures == b.failures


def test_parallel_matches_serial():
    serial = run_suite("lemma-h", {"max_n": 300}, jobs=1)
    parallel = run_suite("lemma-h", {"max_n": 300}, jobs=2)
    assert serial.cases_run == parallel.cases_run
    assert [f.inputs for f in serial.failures] == [f.inputs for f in parallel.failures]


def test_failures_are_reported():
    report = run_suite("lemma-h", {"max_n": 300})
    assert report.failures and not report.passed
    assert "FAIL" in report.render()
