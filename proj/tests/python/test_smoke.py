import math
import os

import pytest

import polydet

FIXTURES = os.environ.get(
    "POLYDET_FIXTURES", os.path.join(os.path.dirname(__file__), "..", "fixtures")
)


def spec1(C=1.0):
    pts = [polydet.DivisorPoint(0.2, 0.5), polydet.DivisorPoint(0.7 + 0.3j, -0.5)]
    return polydet.TorusMetricSpec(1j, pts, C)


def test_version():
    assert polydet.__version__


def test_special_functions():
    assert abs(polydet.dedekind_eta(1j) - 0.7682254223260566) < 1e-14
    d = polydet.jacobi_theta(0.5, 0.5, 0, 1j, derivative=True)
    assert abs(d + 2 * math.pi * polydet.dedekind_eta(1j) ** 3) < 1e-10
    assert abs(polydet.macdonald_k0(1.0) - 0.42102443824070833) < 1e-14


def test_cone_coefficients():
    c = polydet.spectral_coefficients(math.pi)
    assert abs(c.I - 0.125) < 1e-15
    assert abs(c.Itilde + 0.5772156649015329 / (8 * math.pi)) < 1e-12
    assert polydet.coefficient_d(2 * math.pi) == 1.0


def test_ray_singer():
    r = polydet.torus_log_det(polydet.TorusMetricSpec(1j))
    assert abs(r.log_det_over_area - math.log(polydet.torus_c0(1j))) < 1e-12
    assert r.log_det() is None


def test_scaling_and_variation():
    a = polydet.torus_log_det(spec1()).log_det_over_area
    b = polydet.torus_log_det(spec1(3.0)).log_det_over_area
    expect = -sum(polydet.coefficient_I(x) for x in spec1().betas()) * math.log(3.0)
    assert abs(b - a - expect) < 1e-12
    rep = polydet.verify_variation(spec1(), polydet.Tau.angle(0, 1))
    assert rep.residual < 1e-5


def test_bad_input_raises():
    with pytest.raises(ValueError):
        polydet.TorusMetricSpec(1j, [polydet.DivisorPoint(0.2, 0.5)])
    with pytest.raises(ValueError):
        polydet.normalize_config('{"command": "nope"}')


def test_config_normalization():
    n = polydet.normalize_config('{"command": "cone-coeffs", "betas": ["6pi/4"]}')
    assert '"3pi/2"' in n
    assert polydet.normalize_config(n) == n


def test_genus2_pack_and_golden():
    pack = polydet.SurfacePack.load(os.path.join(FIXTURES, "genus2_pack.json"))
    assert pack.genus == 2
    pack.validate()
    e = pack.prime_form("P1", "P2")
    assert abs(e + pack.prime_form("P2", "P1")) < 1e-14 * abs(e)
    r = polydet.higher_genus_log_det(pack, [("P1", 1.0), ("P2", 1.0)])
    assert r.log_c0 is None
    assert polydet.check_golden(os.path.join(FIXTURES, "golden_vectors.json"), pack) == []
