import numpy as np
import pytest

import kinterp


def diag(*d):
    return np.diag(np.asarray(d, dtype=complex))


def test_mu_of_diagonal_matrix():
    assert kinterp.mu(diag(3, 1, 2)) == {"breakpoints": [1.0, 2.0, 3.0], "values": [3.0, 2.0, 1.0], "tail": 0.0}


def test_mu_is_unitarily_invariant():
    rng = np.random.default_rng(0)
    x = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
    u, _ = np.linalg.qr(rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4)))
    got = kinterp.mu(u @ x @ u.conj().T, w=0.5)["values"]
    assert np.allclose(got, np.linalg.svd(x, compute_uv=False), rtol=1e-12)


def test_k_of_step_function():
    f = {"breakpoints": [3.0], "values": [2.0], "tail": 0.0}
    assert kinterp.k_curve(f, [0.5, 1.0, 2.0, 10.0]) == pytest.approx([1.0, 2.0, 3.0, 3.0], abs=1e-15)
    assert kinterp.m_at(f, 1.0) == 2.0


def test_k_of_matrix_matches_cut_enumeration():
    rng = np.random.default_rng(1)
    x = rng.normal(size=(5, 5)) + 1j * rng.normal(size=(5, 5))
    s = np.linalg.svd(x, compute_uv=False)
    for u in (0.01, 0.3, 1.0, 4.0, 100.0):
        # Keep the k largest singular values in G: ||G||_0 = k, ||H||_inf = s_k.
        best = min(k + u * (s[k] if k < len(s) else 0.0) for k in range(len(s) + 1))
        assert kinterp.k_at(x, u) == pytest.approx(best, rel=1e-12)


def test_decompose_attains_k():
    x = diag(3, 0.5)
    d = kinterp.decompose(x, 1.0)
    assert d["value"] == pytest.approx(1.5)
    assert np.allclose(d["G"] + d["H"], x)


def test_counterexample_is_certified():
    cx = kinterp.counterexample(1, 1, 1, 0.6)
    assert cx["report"]["certified"]
    assert "certified" in cx["certificate"]
    a, x, w = cx["A"], cx["X"], cx["w"]
    us = list(np.logspace(-3, 3, 50))
    assert kinterp.k_curve(a, us, w) == pytest.approx(kinterp.k_curve(x, us, w), abs=1e-12)
    assert kinterp.korbit_norm(x, a, w) == pytest.approx(1.0, abs=1e-12)
    assert not kinterp.orbit_check(x, a, 1.0, w)["pass"]
    with pytest.raises(ValueError):
        kinterp.counterexample(1, 1, 1, 0.4)


def test_pointwise_constant():
    assert kinterp.pointwise_constant(diag(4, 4, 2, 2), diag(4, 2, 0, 0)) == pytest.approx(2, rel=1e-9)
    tail = {"breakpoints": [1.0], "values": [2.0], "tail": 1.0}
    finite = {"breakpoints": [1.0], "values": [1.0], "tail": 0.0}
    assert kinterp.pointwise_constant(tail, finite) is None


def test_transfer_reconstructs_x():
    a, x = diag(4, 2, 0, 0), diag(4, 4, 2, 2)
    out = kinterp.transfer(a, x, seed=3, samples=20)
    assert out["plan"]["C"] == 2
    assert out["report"]["pass"]
    assert out["orthogonal"]
    assert len(out["terms"]) <= 4
    assert np.allclose(kinterp.apply(out["terms"], a), x, atol=1e-9)
    with pytest.raises(kinterp.DomainError):
        kinterp.transfer(diag(1, 0), diag(1, 1, 1))


def test_check_interp_identity():
    x = diag(3, 0.5)
    report = kinterp.check_interp([(np.eye(2), np.eye(2))], x)
    assert report["pass"]
    assert {b["norm"] for b in report["enorm_bounds"]} == set(kinterp.norm_keys())


def test_suite_is_deterministic():
    first = kinterp.run_suite(seed=5)
    assert first == kinterp.run_suite(seed=5)
    assert first["pass"]
    assert len(first["properties"]) == 25


def test_bad_input_raises():
    with pytest.raises(ValueError):
        kinterp.mu({"breakpoints": [2.0, 1.0], "values": [1.0, 1.0]})
    with pytest.raises(ValueError):
        kinterp.mu(np.zeros((2, 3), dtype=complex))
