import math

import pytest

import alpha_harmonic as ah


def test_rotation_and_dilation_energy():
    assert ah.rotation_energy(1.5) == pytest.approx(16 * math.pi)
    d = ah.dilation_energy(1.2, 5.0)
    assert d["value"] == pytest.approx(37.16345733281924346, rel=1e-12)
    assert d["xi"] == pytest.approx(4.0006064621173174967, rel=1e-10)
    for lam in (2.0, 10.0, 100.0):
        assert ah.dilation_energy(1.0, lam)["value"] == pytest.approx(8 * math.pi, rel=1e-12)


def test_growth_function():
    g, gp = ah.growth_function(1.3, 0.15)
    assert g == pytest.approx(1.0166984225502868267, rel=1e-11)
    assert gp == pytest.approx(0.22849688202608566012, rel=1e-11)


def test_xi_bounds_pass():
    checks = ah.xi_bounds(1.5, math.exp(8.0))
    assert checks and all(c["passed"] for c in checks)


def test_mobius():
    m = ah.Mobius(2, 1 + 1j, 0, 0.5)
    assert abs(m.a * m.d - m.b * m.c - 1) < 1e-12
    assert m(1j) == pytest.approx(2 + 6j)
    assert ah.Mobius.dilation(3.0)(0.5) == pytest.approx(1.5)
    _, lam, _ = ah.mobius_svd(m)
    assert lam >= 1.0
    with pytest.raises(ValueError):
        ah.Mobius(1, 2, 2, 4)


def test_energy_report():
    r = ah.energy_report("identity", 1.5, 128)
    assert r["e_alpha"] == pytest.approx(16 * math.pi, rel=1e-12)
    assert r["degree_int"] == 1
    r = ah.energy_report("identity", 1.3, 256, ah.Mobius(1.5, 0.5j, 0, 1 / 1.5))
    assert r["passes_floor"] and r["degree_int"] == 1
    assert ah.energy_report("conjugation", 1.0, 64)["degree_int"] == -1


def test_radial_roundtrip():
    n_cells = 400
    line = [i * math.pi / n_cells for i in range(n_cells + 1)]
    assert ah.radial_energy(1, line, 1.4) == pytest.approx(2 ** 3.8 * math.pi, rel=1e-12)
    assert ah.radial_residual(1, line, 1.4)[2] < 1e-9
    assert ah.radial_degree(1, line) == pytest.approx(1.0)

    s = ah.minimize_radial(1.2, 3, 1000)
    assert s["converged"] and s["degree_int"] == 1
    assert s["energy"] > 2 ** 4.6 * math.pi
    assert len(s["profile"]) == 1001
    shot = ah.shoot_radial(1.2, 3, s["profile"][1] / (math.pi / 1000), 1000)
    assert max(abs(a - b) for a, b in zip(shot, s["profile"])) < 1e-3

    with pytest.raises(ValueError):
        ah.minimize_radial(1.0, 3, 1000)


def test_verify_subset():
    rows = ah.verify([2, 3])
    assert [r["id"] for r in rows] == [2, 3]
    assert all(r["passed"] for r in rows)
