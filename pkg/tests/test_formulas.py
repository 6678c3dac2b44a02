import math
from fractions import Fraction

import pytest

from apkit.enumeration import all_types, count_ap_partitions, parse_type
from apkit.formulas import (
    DeltaClassification as DC,
    Method,
    NoClosedForm,
    boundary_rhs_x,
    clubsuit,
    column_weight,
    count_auto,
    count_cor1,
    count_cor2,
    count_mansour_sun,
    count_subsets_auto,
    count_theorem_boundary,
    count_theorem_general,
    cwz_condition,
    delta_classify,
    general_x_sum,
    hwang_g,
    multi_sum_count,
    residue_matrices,
)
from oracles import naive_partitions, naive_subsets

Z120 = "1^89 2^3 3^2 5^1 7^2"


def test_delta_classify_examples():
    dc = delta_classify(120, 3, Z120)
    assert (dc.d, dc.delta, dc.classification) == (3, 51, DC.POSITIVE)
    dc = delta_classify(6, 2, "3^2")
    assert (dc.d, dc.delta, dc.classification) == (2, -2, DC.MINUS_D)
    for t in all_types(7):
        dc = delta_classify(7, 1, t)
        assert dc.delta == t.blocks and dc.classification is DC.POSITIVE
    assert delta_classify(8, 2, "1^2 3^2").classification is DC.ZERO
    assert delta_classify(6, 2, "6^1").classification is DC.OTHER


def test_general_examples():
    assert count_theorem_general(20, 3, "1^4 2^3 3^2 4^1") == 25200
    assert count_theorem_general(9, 3, [9]) == 1
    values = {count_theorem_general(120, m, Z120) for m in (1, 2, 3, 4, 5, 7, 59)}
    assert values == {(120 * math.factorial(97)) // (97 * math.factorial(89) * 6 * 2 * 1 * 2)}
    with pytest.raises(ValueError, match="outside"):
        count_theorem_general(6, 2, "3^2")


def test_general_matches_oracle_small():
    for n in range(1, 9):
        for m in range(1, n + 1):
            for t in all_types(n):
                if delta_classify(n, m, t).classification is DC.POSITIVE:
                    assert count_theorem_general(n, m, t) == len(naive_partitions(n, m, t.counts))


def test_clubsuit_examples():
    assert clubsuit(6, 2, "3^2") == 6
    assert clubsuit(9, 1, "1^1 2^2 4^1") == 9
    assert clubsuit(8, 2, "2^1 3^2") == Fraction(8, 3)
    with pytest.raises(ValueError):
        clubsuit(4, 2, "1^2 2^1")


def test_boundary_examples():
    assert count_theorem_boundary(6, 2, "3^2") == 9
    assert count_theorem_boundary(8, 2, "1^2 3^2") == 16 == count_ap_partitions(8, 2, "1^2 3^2")
    assert count_theorem_boundary(8, 2, "2^1 3^2") == 0 == count_ap_partitions(8, 2, "2^1 3^2")
    t = "1^4 4^2"
    assert delta_classify(12, 2, t).classification is DC.ZERO
    assert count_theorem_boundary(12, 2, t) == count_ap_partitions(12, 2, t)
    with pytest.raises(ValueError):
        count_theorem_boundary(20, 3, "1^4 2^3 3^2 4^1")


def test_uncorrected_coefficient_fails_only_on_symmetric_split():
    # the uncorrected delta == -d coefficient double counts for 1^(n-4) 2^2 with m == n
    failures = []
    for n in range(1, 13):
        for m in range(1, n + 1):
            for t in all_types(n):
                if delta_classify(n, m, t).classification is DC.MINUS_D:
                    if count_theorem_boundary(n, m, t, uncorrected=True) != count_ap_partitions(n, m, t):
                        failures.append((n, m, t.counts))
    assert failures == [(n, n, (n - 4, 2)) if n > 4 else (4, 4, (0, 2)) for n in range(4, 13)]
    assert count_theorem_boundary(4, 4, "2^2", uncorrected=True) == -6
    assert count_theorem_boundary(4, 4, "2^2") == 0


def test_mansour_sun_examples():
    assert count_mansour_sun(6, 2, 1, 1) == 9 == len(naive_subsets(6, 2, 1, 1))
    assert count_mansour_sun(8, 2, 2, 1) == 20 == len(naive_subsets(8, 2, 2, 1))
    assert count_mansour_sun(5, 0, 3, 2) == 1
    with pytest.raises(ValueError, match="mpk"):
        count_mansour_sun(8, 2, 2, 2)


def test_cor1_examples():
    assert count_cor1(2, 2, 2) == 16
    assert count_cor1(2, 1, 2) == 4 == len(naive_subsets(4, 2, 2, 1))
    for p in range(1, 4):
        for k in range(2, 5):
            assert count_cor1(1, p, k) == 0 == len(naive_subsets(p * k, k, 1, p))
    with pytest.raises(ValueError):
        count_cor1(2, 2, 1)


def test_cor2_examples():
    assert count_cor2(3, 1, 3) == 8 == len(naive_subsets(6, 3, 3, 1))
    assert count_cor2(2, 2, 2) == 9 == len(naive_subsets(6, 2, 2, 2))
    for k in range(3, 7):
        assert count_cor2(2, 1, k) == len(naive_subsets(2 * k - 2, k, 2, 1))
    with pytest.raises(ValueError):
        count_cor2(2, 1, 2)


def test_cor2_beyond_stated_range():
    # n < (p+1)k: the generalized binomial still gives the right count
    seen = 0
    for m in range(1, 8):
        for p in range(1, 6):
            for k in range(1, 8):
                n = m * p * k - m
                if p * k <= p + 1 or n > 14 or n >= (p + 1) * k:
                    continue
                seen += 1
                assert count_cor2(m, p, k) == len(naive_subsets(n, k, m, p)), (m, p, k)
    assert seen > 5


def test_hwang_examples():
    assert hwang_g(6, 2, 2) == 9
    assert hwang_g(6, 2, 3) == 12
    for n in range(2, 9):
        assert hwang_g(n, 0, 1) == 1
    assert hwang_g(4, 2, 2) == 4 == len(naive_subsets(4, 2, 2, 1))
    with pytest.raises(ValueError):
        hwang_g(5, 2, 5)


def test_hwang_matches_oracle_including_large_k():
    for n in range(2, 12):
        for m in range(1, n):
            for k in range(0, n + 2):
                assert hwang_g(n, k, m) == len(naive_subsets(n, k, m, 1)), (n, k, m)


def test_residue_matrices_row_sums():
    t = parse_type("1^2 2^2 3^1")
    mats = list(residue_matrices(3, t))
    assert len(mats) == math.comb(4, 2) * 3
    for cols in mats:
        assert sum(c[0] for c in cols) == 2 and sum(c[1] for c in cols) == 1
    assert list(residue_matrices(2, "1^4")) == [((), ())]
    assert column_weight((2, 0, 1)) == 2 + 3


def test_multi_sum_examples():
    assert [multi_sum_count(120, m, Z120) for m in range(1, 6)] == [count_theorem_general(120, 1, Z120)] * 5
    assert multi_sum_count(7, 1, "1^3 2^2") == count_theorem_general(7, 1, "1^3 2^2")
    assert multi_sum_count(6, 2, "3^2") == 9
    with pytest.raises(ValueError):
        multi_sum_count(6, 4, "3^2")


def test_multi_sum_is_exact_for_every_delta():
    for n in range(1, 11):
        for m in range(1, n + 1):
            if n % m:
                continue
            for t in all_types(n):
                assert multi_sum_count(n, m, t) == count_ap_partitions(n, m, t)


def _generic_points(m, t, how_many=5):
    W = column_weight(t.counts[1:])
    n1 = t.n // m
    pts = []
    x = W + 1
    while len(pts) < how_many:
        if x not in (n1, n1 + 1) and m * x != W:
            pts.append(x)
        x += 1
    return pts + [-1, -2]


def test_boundary_rhs_at_n1():
    assert boundary_rhs_x(3, 2, "3^2", DC.ZERO) != 9  # wrong case gives a different number
    assert boundary_rhs_x(3, 2, "3^2", DC.MINUS_D) == 9
    assert boundary_rhs_x(4, 2, "1^2 3^2", DC.ZERO) == 16
    for n in range(1, 13):
        for m in range(1, n + 1):
            if n % m:
                continue
            for t in all_types(n):
                dc = delta_classify(n, m, t)
                if dc.classification in (DC.ZERO, DC.MINUS_D):
                    assert boundary_rhs_x(n // m, m, t, dc.classification) == count_theorem_boundary(n, m, t)


def test_boundary_rhs_matches_general_sum_off_n1():
    checked = 0
    for n in range(2, 13):
        for m in range(2, n + 1):
            if n % m:
                continue
            for t in all_types(n):
                dc = delta_classify(n, m, t)
                if dc.classification not in (DC.ZERO, DC.MINUS_D):
                    continue
                for x in _generic_points(m, t):
                    checked += 1
                    assert general_x_sum(x, m, t) == boundary_rhs_x(x, m, t, dc.classification), (n, m, t, x)
    assert checked > 100


def test_boundary_rhs_indicator_branch():
    # k_2 == 0: no third term, so MINUS_D differs from ZERO by the shifted pole only
    t = parse_type("3^2")
    x = 7
    zero = boundary_rhs_x(x, 2, t, DC.ZERO)
    minus = boundary_rhs_x(x, 2, t, DC.MINUS_D)
    from apkit.numeric import guarded_cyclic_term

    assert minus - zero == 2 * guarded_cyclic_term(x, 3, [0, 2]) - 2 * guarded_cyclic_term(x, 4, [0, 2])


def test_count_auto_dispatch():
    assert count_auto(20, 3, "1^4 2^3 3^2 4^1") == (25200, Method.CYCLIC_MULTINOMIAL)
    assert count_auto(6, 2, "3^2") == (9, Method.BOUNDARY_CORRECTION)
    assert delta_classify(8, 4, "4^2").classification is DC.OTHER
    assert count_auto(8, 4, "4^2") == (count_ap_partitions(8, 4, "4^2"), Method.BRUTE_FORCE)
    with pytest.raises(NoClosedForm):
        count_auto(120, 6, Z120)


def test_count_subsets_auto_dispatch():
    assert count_subsets_auto(8, 2, 2, 2) == (16, Method.SEPARATION_N_EQ_MPK)
    assert count_subsets_auto(9, 2, 2, 2) == (count_mansour_sun(9, 2, 2, 2), Method.SEPARATION_GENERAL)
    assert count_subsets_auto(6, 2, 2, 2)[1] is Method.SEPARATION_N_EQ_MPK_MINUS_M
    assert count_subsets_auto(12, 5, 4, 1) == (hwang_g(12, 5, 4), Method.SINGLE_DIFFERENCE)
    count, method = count_subsets_auto(10, 3, 2, 3)
    assert method is Method.BRUTE_FORCE and count == len(naive_subsets(10, 3, 2, 3))


def test_cwz_examples():
    assert cwz_condition(120, 3, Z120)
    assert not cwz_condition(120, 4, Z120)
    assert [m for m in range(1, 60) if cwz_condition(120, m, Z120)] == [1, 2, 3]
    for t in all_types(9):
        assert cwz_condition(9, 1, t) == (t.k(1) >= 1)
    assert not cwz_condition(6, 1, "3^2")


def test_cwz_implies_positive_delta():
    for n in range(1, 21):
        for t in all_types(n):
            for m in range(1, n + 1):
                if cwz_condition(n, m, t):
                    assert delta_classify(n, m, t).classification is DC.POSITIVE


def test_m_independence_of_counts():
    for n in range(1, 11):
        for t in all_types(n):
            ms = [m for m in range(1, n + 1) if delta_classify(n, m, t).classification is DC.POSITIVE]
            assert len({count_ap_partitions(n, m, t) for m in ms}) <= 1


def test_closed_forms_are_integral():
    for n in range(1, 11):
        for m in range(1, n + 1):
            for t in all_types(n):
                cls = delta_classify(n, m, t).classification
                if cls is DC.POSITIVE:
                    assert isinstance(count_theorem_general(n, m, t), int)
                elif cls is not DC.OTHER:
                    assert isinstance(count_theorem_boundary(n, m, t), int)
