"""Acceptance criteria, one test each, with their wall-clock limits."""

import csv
import math

import pytest

import apkit.identity
from apkit import verify
from apkit.cli import EXIT_MISMATCH, main
from apkit.enumeration import (
    SeparationSpec,
    all_types,
    count_ap_partitions,
    enumerate_ap_partitions,
    enumerate_separated_subsets,
)
from apkit.formulas import (
    DeltaClassification as DC,
    count_cor1,
    count_theorem_boundary,
    count_theorem_general,
    cwz_condition,
    delta_classify,
    multi_sum_count,
)
from apkit.identity import rm_grid, rm_lhs, rm_random_suite, rm_rhs

pytestmark = pytest.mark.acceptance

Z120 = "1^89 2^3 3^2 5^1 7^2"
Z120_POSITIVE_M = [
    1, 2, 3, 4, 5, 7, 9, 11, 13, 14, 17, 19, 21, 22, 23, 25, 26, 27, 28, 29, 31,
    33, 34, 35, 37, 38, 39, 41, 43, 44, 46, 47, 49, 51, 52, 53, 55, 57, 58, 59,
]


def _grid(name, max_n):
    res = verify.run_grid(name, max_n)
    assert res.checked > 0
    assert res.mismatches == [], res.mismatches[:5]
    return res


def test_01_z6_golden(criterion):
    with criterion(1, "Z_6 golden case", 1):
        got = {frozenset(p.keys()) for p in enumerate_ap_partitions(6, 2, "3^2")}
        want = {frozenset({(i, 3), (j + 1, 3)}) for i in (0, 2, 4) for j in (0, 2, 4)}
        assert got == want and len(want) == 9
        assert len(list(enumerate_ap_partitions(6, 2, "3^2"))) == 9
        assert count_theorem_boundary(6, 2, "3^2") == 9


def test_02_z8_golden(criterion):
    with criterion(2, "Z_8 golden case", 1):
        got = list(enumerate_separated_subsets(SeparationSpec(8, 2, 2, 2)))
        want = {frozenset({i, (i + 1) % 8}) for i in range(8)} | {frozenset({i, (i + 3) % 8}) for i in range(8)}
        assert {frozenset(s) for s in got} == want and len(got) == 16
        assert count_cor1(2, 2, 2) == 16


def test_03_general_grid(criterion):
    with criterion(3, "positive-margin closed form vs brute force, n <= 12", 600):
        _grid("general", 12)


def test_04_boundary_grid(criterion):
    with criterion(4, "boundary closed form vs brute force, n <= 12", 600):
        _grid("boundary", 12)


def test_05_mansour_sun_grid(criterion):
    with criterion(5, "separated subsets n >= mpk+1 vs oracle, n <= 14", 300):
        _grid("mansour-sun", 14)


def test_06_corollaries_grid(criterion):
    with criterion(6, "n = mpk and n = mpk-m formulas vs oracle, n <= 14", 300):
        _grid("cor1", 14)
        _grid("cor2", 14)
        for p in range(1, 5):
            for k in range(2, 8):
                if p * k <= 14:
                    spec = SeparationSpec(p * k, k, 1, p)
                    assert count_cor1(1, p, k) == 0 == len(list(enumerate_separated_subsets(spec)))


def test_07_hwang_grid(criterion):
    with criterion(7, "single-difference alternating sum vs oracle, n <= 14", 300):
        res = _grid("hwang", 14)
        pairs = {(n, m) for n in range(2, 15) for m in range(1, n) if math.gcd(m, n) > 1}
        assert pairs and res.checked == sum(n - 1 for n in range(2, 15)) * 8


def test_08_identity_suite(criterion):
    with criterion(8, "convolution identity: exhaustive grid + 1000 random", 120):
        count = 0
        for inst in rm_grid(m_max=2, N_max=3, z_range=(-2, 2), xy_range=(-10, 10)):
            count += 1
            assert rm_lhs(inst) == rm_rhs(inst), inst
        assert count > 100000
        summary = rm_random_suite(m_max=3, trials=1000, seed=42)
        assert summary.ok and summary.passed == 1000


def test_09_bijections(criterion):
    with criterion(9, "scaling (n <= 10) and residue (n <= 12) bijections", 600):
        _grid("scaling", 10)
        _grid("residue", 12)
        for n in range(1, 11):
            for m in range(1, n + 1):
                d = math.gcd(m, n)
                for t in all_types(n):
                    assert count_ap_partitions(n, m, t) == count_ap_partitions(n, d, t)


def test_10_z120(criterion, tmp_path):
    with criterion(10, "Z_120 reproduction", 60):
        values = [multi_sum_count(120, m, Z120) for m in (1, 2, 3, 4, 5)]
        assert len(set(values)) == 1 and values[0] == count_theorem_general(120, 1, Z120)
        assert [m for m in range(1, 60) if cwz_condition(120, m, Z120)] == [1, 2, 3]
        assert [m for m in range(1, 60) if delta_classify(120, m, Z120).classification is DC.POSITIVE] == Z120_POSITIVE_M
        out = tmp_path / "table.csv"
        assert main(["table", "--n-range", "120", "--m-range", "1..59", "--types", "spec",
                     "--type", Z120, "--out", str(out)]) == 0
        rows = list(csv.DictReader(out.open()))
        assert [int(r["m"]) for r in rows if r["class"] == "POSITIVE"] == Z120_POSITIVE_M
        assert {r["count"] for r in rows if r["class"] == "POSITIVE"} == {str(values[0])}


def test_11_negative_control(criterion, monkeypatch, capsys):
    with criterion(11, "corrupted evaluator makes the identity command fail", 60):
        original = apkit.identity.rm_rhs
        monkeypatch.setattr(apkit.identity, "rm_rhs", lambda inst, guarded=False: original(inst, guarded) + 1)
        assert main(["identity", "--trials", "100"]) == EXIT_MISMATCH
        assert "status: FAIL" in capsys.readouterr().out
