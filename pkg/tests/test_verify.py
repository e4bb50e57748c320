import json

import pytest

from msproots.msp import BudgetExceeded
from msproots.verify import (
    check_branching,
    check_lemma_2_4,
    check_lemma_2_4_sweep,
    check_prop_2_1,
    check_theorems,
    check_thm11,
    check_thm12,
    check_thm32,
    explore_conjecture,
)


def test_lemma_examples_pass():
    for n, lam in [(2, (1, 1)), (3, (1, 2, 3)), (3, (1, 1, 1)), (4, (-1, 0, 2, 3))]:
        rep = check_lemma_2_4(n, lam)
        assert rep.passed and rep.instances_checked == n + 1, (n, lam)


def test_lemma_preconditions():
    with pytest.raises(ValueError):
        check_lemma_2_4(3, (1, 1))
    with pytest.raises(ValueError):
        check_lemma_2_4(3, (1, 1, 2))
    with pytest.raises(BudgetExceeded):
        check_lemma_2_4(8, (8,) * 8)


def test_lemma_sweep_deterministic():
    a = check_lemma_2_4_sweep(4, samples=10, seed=3)
    b = check_lemma_2_4_sweep(4, samples=10, seed=3)
    assert a.passed and b.passed
    assert a.instances_checked == b.instances_checked == 10 * 5


def test_prop21_small_cases():
    for n, k in [(1, 1), (2, 1), (2, 2), (3, 1)]:
        rep = check_prop_2_1(n, k)
        assert rep.passed, (n, k, rep.failures[:2])


def test_prop21_budget():
    with pytest.raises(BudgetExceeded):
        check_prop_2_1(5, 2)
    rep = check_prop_2_1(2, 2, budget=10 ** 6)
    assert rep.passed


def test_branching_small_cases():
    rep = check_branching(2, 1, 1)
    assert rep.passed and rep.instances_checked == 5
    # the mu = (1,1,2,2) split: (-1)(1) + 0*0 + (1)(-1) = -2 equals the direct value
    from msproots.msp import EvalInstance, msp_value_dp

    def val(parts, k):
        return msp_value_dp(EvalInstance(parts, 2, k))

    direct = val((1, 1, 2, 2), 2)
    split = (val((1, 1), 1) * val((2, 2), 1)
             + val((1, 2), 1) * val((1, 2), 1)
             + val((2, 2), 1) * val((1, 1), 1))
    assert direct == split == -2
    assert val((2, 2, 2, 2), 2) == val((2, 2), 1) * val((2, 2), 1) == 1


def test_branching_report_carries_l():
    rep = check_branching(3, 1, 1)
    assert rep.passed
    d = rep.to_dict()
    assert d["l"] == 1 and d["suite"] == "branching"


def test_branching_budget():
    with pytest.raises(BudgetExceeded):
        check_branching(5, 2, 1)


def test_theorem_suites_pass_small():
    for n, k in [(2, 1), (3, 1), (2, 2), (4, 1)]:
        for fn in (check_thm11, check_thm12, check_thm32):
            rep = fn(n, k)
            assert rep.passed, (fn.__name__, n, k, rep.failures[:3])


def test_check_theorems_merges_sections():
    rep = check_theorems(3, 1)
    assert rep.passed and rep.suite == "theorems"
    assert "thm11.prime_equivalence" in rep.sections
    assert "thm12.near_identity_patterns" in rep.sections
    assert "thm32.coefficient_agreement" in rep.sections
    assert rep.instances_checked == sum(rep.sections.values())


def test_report_json_schema():
    rep = check_thm32(3, 1)
    d = rep.to_dict()
    assert list(d)[:6] == ["suite", "n", "k", "instances_checked", "failures", "elapsed_ms"]
    text = json.dumps(d)
    assert json.loads(text) == d


def test_reports_deterministic_and_jobs_invariant():
    def strip(rep):
        d = rep.to_dict()
        d.pop("elapsed_ms")
        return d

    assert strip(check_thm12(3, 1)) == strip(check_thm12(3, 1))
    assert strip(check_thm12(4, 1, jobs=1)) == strip(check_thm12(4, 1, jobs=3))
    assert strip(check_branching(3, 1, 1, jobs=1)) == strip(check_branching(3, 1, 1, jobs=2))


def test_explore_conjecture_prime_cases():
    from msproots.partitions import lambda_tilde_size

    for p in (2, 3, 5):
        rep = explore_conjecture(p, 1)
        assert rep.zero_coefficients == []
        assert rep.is_prime_power and rep.consistent_with_conjecture
        assert rep.total == lambda_tilde_size(p, 1)


def test_explore_conjecture_prime_power_case():
    rep = explore_conjecture(4, 1)
    assert rep.total == 10
    assert rep.zero_coefficients == [] and rep.consistent_with_conjecture


def test_explore_conjecture_composite_case():
    rep = explore_conjecture(6, 1)
    assert rep.total == 80
    assert len(rep.zero_coefficients) == 12
    assert not rep.is_prime_power and rep.consistent_with_conjecture
    assert all(sum(lam) % 6 == 0 for lam in rep.zero_coefficients)


def test_conjecture_report_dict():
    d = explore_conjecture(3, 1).to_dict()
    assert d["total"] == 4 and d["zero_coefficients"] == []
    assert d["is_prime_power"] is True and d["consistent_with_conjecture"] is True
