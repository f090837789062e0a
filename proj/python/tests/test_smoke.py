import json
import math

import numpy as np
import pytest

import genfield_py as gf

L = 2.0 * math.pi


@pytest.fixture
def setup():
    grid = gf.MomentumGrid(1, 3, L, 1.0)
    basis = gf.OccupationBasis(grid.n_modes, 4)
    return grid, basis


def test_dimensions(setup):
    grid, basis = setup
    assert grid.n_modes == 3
    assert basis.dim == 35
    assert basis.total(0) == 0 and basis.occupations(0) == [0, 0, 0]


def test_sigma_inner_constant_function(setup):
    grid, _ = setup
    ones = [1.0 + 0.0j] * grid.n_modes
    val = gf.sigma_inner(grid, ones, ones)
    assert abs(val - (1.0 + math.sqrt(2.0))) < 1e-12


def test_field_is_hermitian(setup):
    grid, basis = setup
    phi = gf.field_matrix(grid, basis, "standard", "phi", 0.25, [0.0])
    assert np.max(np.abs(phi - phi.conj().T)) < 1e-12


def test_ccr_constant(setup):
    grid, basis = setup
    c = gf.ccr_constant(grid, basis, "standard", 0.0, [0.0], [0.0])
    assert c["is_identity_multiple"]
    assert abs(c["measured"] - 1j * 3.0 / L) < 1e-10
    assert abs(c["measured"] - c["canonical"]) < 1e-10


def test_kg_residual(setup):
    grid, basis = setup
    assert gf.kg_residual(grid, basis, "standard", 0.4, [L / 3.0]) < 1e-12


def test_single_mode_spectrum():
    grid = gf.MomentumGrid(1, 1, L, 1.0)
    basis = gf.OccupationBasis(1, 4)
    h = gf.free_hamiltonian(grid, basis, "standard")
    eigs = gf.restricted_spectrum(h["mode"], basis, 2)
    assert np.allclose(eigs, [0.5, 1.5, 2.5], atol=1e-10)
    assert abs(h["e0"] - 0.5) < 1e-12


def test_spectrum_matches_oracle(setup):
    grid, basis = setup
    h = gf.free_hamiltonian(grid, basis, "standard")
    got = gf.restricted_spectrum(h["product"], basis, 2)
    want = gf.oscillator_spectrum(grid, "standard", basis, 2)
    assert np.allclose(got, want, atol=1e-10)


def test_translation(setup):
    grid, basis = setup
    step = L / 3.0
    assert gf.translation_residual(grid, basis, "standard", 0.1, [step], [step]) < 1e-10


def test_normal_order_text():
    s = gf.normal_order_text("a(0)*ad(0)")
    assert "ad(0)*a(0)" in s and "1" in s
    assert gf.normal_order_text(s) == s  # idempotent on normal forms
    assert gf.wick_order_text("a(0)*ad(0)") == "ad(0)*a(0)"


def test_classify_catalog():
    assert "delta_gauss" in gf.catalog()
    r = gf.classify_net("delta_gauss")
    assert r["verdict"] == "Moderate" and abs(r["n_hat"] - 4.0) < 0.25
    assert gf.classify_net("negligible_gauss")["verdict"] == "Negligible"
    assert gf.classify_net("exp_x2")["verdict"] == "Unclassified"


def test_run_config_roundtrip():
    cfg = {
        "grid": {"d": 1, "K": 3, "L": L, "m": 1.0},
        "n_max": 4,
        "profile": "standard",
        "seed": 7,
        "suites": ["kg", "translation"],
    }
    report = json.loads(gf.run_config(json.dumps(cfg)))
    assert report["summary"]["all_passed"]
    assert [s["id"] for s in report["suites"]] == ["kg", "translation"]


def test_schema_mentions_required_keys():
    schema = json.loads(gf.config_schema())
    assert set(schema["required"]) == {"grid", "n_max", "profile", "seed", "suites"}
