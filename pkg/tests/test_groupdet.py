import pytest

from msproots import groupdet
from msproots.msp import BudgetExceeded, EvalInstance, msp_value_dp
from msproots.groupdet import (
    MonomialMap,
    coefficient,
    count_terms,
    dedekind_expand,
    exponent_key,
    key_partition,
    leibniz_determinant,
    prime_term_count,
)
from msproots.partitions import enumerate_partitions


def test_leibniz_golden_n3():
    det = leibniz_determinant(3)
    assert dict(det.items()) == {
        (3, 0, 0): 1, (0, 3, 0): 1, (0, 0, 3): 1, (1, 1, 1): -3}


def test_leibniz_small_orders():
    assert dict(leibniz_determinant(1).items()) == {(1,): 1}
    assert dict(leibniz_determinant(2).items()) == {(0, 2): 1, (2, 0): -1}


def test_leibniz_guard():
    with pytest.raises(BudgetExceeded):
        leibniz_determinant(9)
    with pytest.raises(ValueError):
        leibniz_determinant(0)


def test_dedekind_equals_leibniz():
    for n in range(1, 6):
        assert dedekind_expand(n, 1) == leibniz_determinant(n), n


def test_dedekind_trivial_group_power():
    assert dict(dedekind_expand(1, 3).items()) == {(3,): 1}


def test_dedekind_power_is_polynomial_product():
    for n in range(1, 5):
        one = dedekind_expand(n, 1)
        assert dedekind_expand(n, 2) == one * one, n
        assert dedekind_expand(n, 3) == one * dedekind_expand(n, 2), n


def test_dedekind_coefficient_example():
    assert dedekind_expand(2, 2).coefficient((2, 2)) == -2


def test_dedekind_budget_guard():
    groupdet._expansions.pop((4, 3), None)
    with pytest.raises(BudgetExceeded):
        dedekind_expand(4, 3, budget=10)


def test_dedekind_keys_have_divisible_weight():
    for n, k in [(2, 1), (3, 1), (4, 1), (5, 1), (2, 2), (3, 2)]:
        for key in dedekind_expand(n, k):
            assert sum((i + 1) * e for i, e in enumerate(key)) % n == 0, (n, k, key)


def test_coefficient_routes():
    assert coefficient(3, 1, (1, 2, 3)) == -3
    assert coefficient(3, 1, (3, 3, 3)) == 1
    assert coefficient(2, 1, (1, 2)) == 0
    with pytest.raises(ValueError):
        coefficient(3, 1, (1, 2))
    with pytest.raises(ValueError):
        coefficient(3, 1, (1, 2, 4))


def test_coefficient_delegates_without_cached_expansion():
    groupdet._expansions.pop((2, 2), None)
    assert coefficient(2, 2, (1, 1, 2, 2)) == -2  # evaluator route
    dedekind_expand(2, 2)
    assert coefficient(2, 2, (1, 1, 2, 2)) == -2  # cached route


def test_count_terms_examples():
    assert count_terms(3, 1) == (4, 4, True)
    assert count_terms(2, 1) == (2, 2, True)
    nu, upper, equal = count_terms(6, 1)
    assert upper == 80 and nu <= upper
    assert nu == 68 and not equal  # 12 coefficients vanish at n = 6
    # cross-check the surviving count against the evaluator route
    alive = sum(
        1 for lam in enumerate_partitions(6, 6)
        if sum(lam) % 6 == 0 and msp_value_dp(EvalInstance(lam, 6, 1)) != 0)
    assert alive == nu


def test_prime_term_count_values():
    assert [prime_term_count(p) for p in (2, 3, 5, 7)] == [2, 4, 26, 246]
    with pytest.raises(ValueError):
        prime_term_count(6)


def test_count_matches_prime_formula():
    for p in (2, 3, 5):
        tc = count_terms(p, 1)
        assert tc.nu == prime_term_count(p) and tc.equal


def test_exponent_key_round_trip():
    key = exponent_key((1, 1, 3), 3)
    assert key == (2, 0, 1)
    assert key_partition(key) == (1, 1, 3)
    for lam in enumerate_partitions(4, 4):
        assert key_partition(exponent_key(lam, 4)) == lam
    with pytest.raises(ValueError):
        exponent_key((0, 1), 3)


def test_monomial_map_validation_and_zero_drop():
    m = MonomialMap(2, 2, {(1, 1): 0, (2, 0): 5})
    assert len(m) == 1 and m.coefficient((1, 1)) == 0
    with pytest.raises(ValueError):
        MonomialMap(2, 2, {(1, 2): 1})
    with pytest.raises(ValueError):
        MonomialMap(2, 2, {(1,): 1})


def test_relabel_fixes_expansions():
    for n, k in [(5, 1), (6, 1), (4, 2)]:
        m = dedekind_expand(n, k)
        for l in range(2, n + 1):
            if __import__("math").gcd(l, n) == 1:
                assert m.relabel(l) == m, (n, k, l)
    with pytest.raises(ValueError):
        dedekind_expand(4, 1).relabel(2)


def test_records_sorted_by_partition():
    records = dedekind_expand(3, 1).to_records()
    assert records == [("1,1,1", 1), ("1,2,3", -3), ("2,2,2", 1), ("3,3,3", 1)]
    texts = [t for t, _ in dedekind_expand(5, 1).to_records()]
    assert texts == sorted(texts, key=lambda s: tuple(int(x) for x in s.split(",")))
