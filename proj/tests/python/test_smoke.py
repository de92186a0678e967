import math

import pytest

substat = pytest.importorskip("substat")


def test_build_and_eval_model():
    t = substat.build_model("schwarzschild", n=3, mass=0.5)
    assert t.r_min == pytest.approx(1.0, abs=1e-12)
    assert t.has_horizon
    f, fp, fpp = t.f(2.0)
    assert f == pytest.approx(math.sqrt(0.5), abs=1e-14)

    with pytest.raises(substat.SubstatError):
        substat.build_model("schwarzschild", mass=1.0, charge=2.0)


def test_curvature_and_substatic():
    rn = substat.build_model("reissner-nordstrom", mass=1.0, charge=0.5)
    grid = [rn.r_min * (1.05 + 0.5 * i) for i in range(20)]
    rep = substat.check_substatic(rn, grid)
    assert rep["passed"]

    q_rad, q_tan = substat.substatic_tensor(rn, 3.0)
    assert abs(q_rad) < 1e-10
    assert q_tan > 0

    fd = substat.fd_curvature_oracle(rn, 3.0)
    cf = substat.ricci(rn, 3.0)
    assert cf[0] == pytest.approx(fd[0], abs=1e-6)
    assert cf[1] == pytest.approx(fd[1], abs=1e-6)


def test_optical_distance_and_series():
    schw = substat.build_model("schwarzschild", mass=0.5)
    rho = substat.rho_radial(schw, 2.0, 4.0)
    assert rho == pytest.approx(2.0 + math.log(3.0), rel=1e-10)

    series = substat.area_series(schw, 2.0, [1.0, 10.0, 100.0])
    assert series["monotone"]
    for a in series["A"]:
        assert a == pytest.approx(1.0, abs=1e-9)

    est = substat.avr_estimate(schw, 2.0)
    assert est["certified"]
    assert est["value"] == pytest.approx(1.0, abs=1e-6)


def test_inequalities_on_spheres():
    schw = substat.build_model("schwarzschild", mass=0.5)
    sphere = substat.RadialGraphSurface.sphere(2.0, 96)
    assert substat.area(schw, sphere) == pytest.approx(16 * math.pi, rel=1e-10)
    assert substat.f_volume(schw, sphere) == pytest.approx(28 * math.pi / 3, rel=1e-10)

    wil = substat.willmore_check(schw, sphere)
    assert wil["passed"] and wil["equality"]

    iso = substat.isoperimetric_check(schw, sphere)
    assert iso["passed"] and iso["equality"]

    pert = substat.RadialGraphSurface.cosine([3.0, 0.3], 96)
    strict = substat.willmore_check(schw, pert)
    assert strict["passed"] and not strict["equality"]


def test_suite_registry_exposed():
    names = substat.acceptance_criteria()
    assert "vacuum-schwarzschild" in names
    result = substat.run_suite(["vacuum-schwarzschild"])
    assert result["all_passed"]
    assert "PASS" in result["log"]
