import json
import math

import pytest

import _ellshell as es


def test_profile_and_curvatures():
    assert es.lambda_of(1.0, 0.7) == pytest.approx(1.0, abs=1e-15)
    assert es.lambda_of(2.0, math.pi / 4) == pytest.approx(math.sqrt(2.5), rel=1e-15)
    k = es.curvatures(2.0, math.pi / 2)
    assert k["kappa1"] == pytest.approx(-2.0, rel=1e-15)
    assert k["kappa2"] == pytest.approx(-0.5, rel=1e-15)
    assert k["gauss"] == pytest.approx(1.0, rel=1e-15)


def test_structure_function():
    assert es.c313(1.0, 0.9) == 0.0
    assert es.c313(2.0, math.pi / 4) == pytest.approx(-0.37947331922020555, rel=1e-12)


def test_frame_orthonormal():
    f = es.frame(2.0, 1.1, 0.4)
    for name in ("e1", "e2", "n"):
        v = f[name]
        assert sum(x * x for x in v) == pytest.approx(1.0, abs=1e-13)
    assert sum(a * b for a, b in zip(f["e1"], f["e2"])) == pytest.approx(0.0, abs=1e-13)


def test_sphere_rotation_eigenfield():
    # on the sphere the rotation field satisfies Bochner u = u, Hodge u = 2u
    phi, theta = 1.1, 0.3
    u2 = math.sin(phi)
    b1, b2 = es.apply_operator(1.0, "bochner", "structural", "rotation", phi, theta)
    assert b1 == pytest.approx(0.0, abs=1e-7)
    assert b2 == pytest.approx(u2, rel=1e-5)
    h1, h2 = es.apply_operator(1.0, "hodge", "coefficient", "rotation", phi, theta)
    assert h1 == pytest.approx(0.0, abs=1e-7)
    assert h2 == pytest.approx(2.0 * u2, rel=1e-5)


def test_replay_residual_small():
    r = es.replay(2.0, "normal-hodge", "random:seed=5", 1.2, 0.4)
    assert r["residual"] < 5e-3
    assert r["oracle1"] == pytest.approx(r["intrinsic1"], abs=5e-3)


def test_replay_order4_tightens_residual():
    # the 4th-order oracle suppresses stencil truncation on the hardest shape
    r2 = es.replay(0.5, "normal-navier", "stream:seed=3", 1.1, 0.7, order=2)
    r4 = es.replay(0.5, "normal-navier", "stream:seed=3", 1.1, 0.7, order=4)
    assert r4["residual"] < 1e-4
    assert r4["residual"] < r2["residual"]


def test_verify_json_roundtrip():
    doc = json.loads(es.verify_json(["geometry"], [2.0], samples=40, seed=7))
    assert doc["tool"] == "ellshell"
    assert doc["summary"]["failed"] == 0
    assert any(row["id"] == "geometry.c313_triple" for row in doc["results"])
