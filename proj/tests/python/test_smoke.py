import math

import pytest

import saddlemg


def test_symbol_arithmetic():
    fA, fB, fC = saddlemg.elasticity_symbols(0.5)
    assert fA.coeffs() == {-1: -1, 0: 2, 1: -1}
    assert saddlemg.modulus_squared(fB).coeffs() == fA.coeffs()
    assert abs(fA(math.pi) - 4) < 1e-15
    assert saddlemg.sup_norm(fA) == pytest.approx(4.0)


def test_chat_symbol():
    fA, fB, fC = saddlemg.elasticity_symbols(0.5)
    f = saddlemg.hatC_symbol(fA, fB, fC, 0.5)
    assert f.coeff(0) == pytest.approx(31 / 24, abs=1e-14)
    assert f.coeff(2) == pytest.approx(-1 / 16, abs=1e-14)


def test_analyze():
    r = saddlemg.analyze(0.5)
    assert abs(r["omega_opt"] - 55 / 96) < 1e-15
    assert r["mu_opt"] == pytest.approx(0.8848, abs=5e-4)
    assert r["kappa_Chat"] == pytest.approx(31 / 8, abs=1e-12)
    assert all(c["passed"] for c in r["checks"])
    bound = saddlemg.mu_bound(r["omega_opt"], r["kappa_A"], r["kappa_Chat"], r["gamma_A"], r["gamma_Chat"])
    assert bound == pytest.approx(r["mu_opt"], abs=1e-12)


def test_solve_tgm():
    r = saddlemg.solve(t=9, cycle="tgm", omega="55/96")
    assert r["converged"]
    assert r["iterations"] == 12
    assert r["history"][0] == 1.0
    assert r["history"][-1] < 1e-6


def test_hierarchy():
    levels = saddlemg.hierarchy(t=8)
    assert [lv["n"] for lv in levels] == [256, 128, 64, 32, 16, 8, 4]
    for lv in levels:
        assert set(lv["fA"]) == {-1, 0, 1}
        for j, v in {-1: -1, 0: 2, 1: -1}.items():
            assert abs(lv["fA"][j] - v) < 1e-13


def test_errors():
    with pytest.raises(ValueError):
        saddlemg.solve(cycle="f")
    with pytest.raises(saddlemg.Divergence):
        saddlemg.solve(t=6, omega="3")
    assert "table1" in saddlemg.presets()
