import math

import numpy as np
import pytest

import potts_chain as pc


def test_hamiltonian_is_hermitian_with_known_ground_state():
    h = pc.hamiltonian("z3_plus", 3)
    assert h.shape == (27, 27)
    assert np.allclose(h, h.conj().T)
    assert np.linalg.eigvalsh(h)[0] == pytest.approx(-7.995543735508917, abs=1e-10)


def test_transfer_is_identity_at_isotropic_point():
    t = pc.transfer("periodic", 2, math.pi / 6)
    assert np.allclose(t, np.eye(9), atol=1e-12)


def test_sector_sizes():
    sectors = [s["sector"] for s in pc.spectrum("conj", 3)]
    assert sectors.count(1) == 14
    assert sectors.count(-1) == 13


def test_bethe_roots_reproduce_energies():
    records = pc.bethe("z3_plus", 2)
    assert len(records) == 9
    for r in records:
        assert r["bethe_residual"] < 1e-9
        assert pc.bethe_residual("z3_plus", 2, r["sector"], r["roots"]) < 1e-9


def test_single_sector():
    records = pc.bethe("conj", 2, sector=-1)
    assert {r["sector"] for r in records} == {-1}


def test_json_is_deterministic():
    assert pc.bethe_json("conj", 2) == pc.bethe_json("conj", 2)


def test_tables():
    assert pc.check_table("t2")["passed"]
    report = pc.check_table("t1")
    assert report["passed_rows"] == 7


def test_kac_weight():
    assert pc.kac_weight(2, 1) == (2, 5)
    with pytest.raises(ValueError):
        pc.kac_weight(3, 1)


def test_errors_map_to_python_exceptions():
    with pytest.raises(ValueError):
        pc.hamiltonian("nonsense", 2)
    with pytest.raises(ArithmeticError):
        pc.bethe_residual("z3_plus", 2, 0, [1j * math.pi / 12, 0.3])


def test_cli_exit_codes():
    code, out, _ = pc.run_cli(["tables", "check", "--id", "t2"])
    assert code == 0
    assert "PASS" in out
    assert pc.run_cli(["bogus"])[0] == 2
