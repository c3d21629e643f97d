import json
import math
import os
import subprocess

import pytest

import tropispec as ts


def test_radius_and_certificate():
    A = ts.Matrix([[0, 2], [3, 0]])
    r, cert = ts.bonsall_radius(A)
    assert r == pytest.approx(math.sqrt(6.0), rel=1e-12)
    assert cert["nodes"] == [0, 1]
    assert cert["geometric_mean"] == pytest.approx(r, rel=1e-12)


def test_point_spectrum_and_lower_radius():
    A = ts.Matrix([[1, 4], [0, 2]])
    spec = ts.point_spectrum(A)
    assert [lam for lam, _ in spec] == pytest.approx([1.0, 2.0])
    d, method = ts.lower_radius(A)
    assert d == 1.0
    assert method == "sigma-p-min"


def test_semirings_and_errors():
    P = ts.Matrix([[1, 4], [0, 2]], semiring="plus-times")
    assert ts.op_norm(P) == 5.0
    with pytest.raises(ValueError):
        ts.Matrix([[1, -1], [0, 1]])
    with pytest.raises(ValueError):
        ts.point_spectrum(P)


def test_sequences_bracket_the_radii():
    A = ts.Matrix([[0.9, 1.02, 0], [0, 1.01, 0.95], [1.0, 0, 0]])
    r, _ = ts.bonsall_radius(A)
    d, _ = ts.lower_radius(A)
    up = ts.norm_root_sequence(A, 20)
    lo = ts.min_modulus_root_sequence(A, 20)
    assert up[-1] == pytest.approx(r, rel=1e-6)
    assert lo[-1] == pytest.approx(d, rel=1e-6)
    assert all(x >= r - 1e-9 for x in up)
    assert all(x <= d + 1e-9 for x in lo)


def test_maxpoly_mapping():
    A = ts.Matrix([[0, 2], [3, 0]])
    lhs, rhs, ok = ts.verify_radius_mapping(A, [1, 0, 1])
    assert ok and lhs == pytest.approx(6.0) and rhs == pytest.approx(6.0)
    report = ts.verify_point_mapping(A, [0, 1, 0.5])
    assert report["contains_forward"] and report["contains_backward"]
    assert report["equality_required"] and report["equality_holds"]


def test_approx_eigenvector():
    A = ts.Matrix([[0, 2], [3, 0]])
    res = ts.approx_eigenvector(A, 0.05, seed=3)
    assert res["residual"] <= 0.05
    assert res["branch"] in ("y", "u")


def test_hadamard_ensemble():
    reports = ts.ensemble_run(trials=40, seed=11, n_min=2, n_max=4)
    assert reports
    for rep in reports:
        if rep["informational"]:
            continue
        assert rep["violations"] == []


def test_kernel_refinement():
    spec = json.dumps(
        {
            "a": 1.0,
            "family": {"kind": "constant", "c": 2.0},
            "alpha": {"c0": 0, "c1": 0},
            "beta": {"c0": 1, "c1": 0},
        }
    )
    rows = ts.radius_refinement(spec, [8, 16])
    for _, r, d in rows:
        assert r == 2.0 and d == 2.0
    assert ts.path_norm(spec, 8, 3) == pytest.approx(8.0, rel=1e-12)


def test_cli_runs_if_available():
    cli = os.environ.get("TROPISPEC_CLI")
    if not cli:
        pytest.skip("TROPISPEC_CLI not set")
    matrix = '{"semiring":"max-times","n":2,"rows":[[0,2],[3,0]]}'
    path = "/tmp/tropispec_smoke_matrix.json"
    with open(path, "w") as fh:
        fh.write(matrix)
    out = subprocess.run([cli, "radius", "--input", path], capture_output=True, text=True)
    assert out.returncode == 0
    payload = json.loads(out.stdout)
    assert payload["tool"] == "tropispec-v1"
    assert payload["r"] == pytest.approx(math.sqrt(6.0), rel=1e-12)
