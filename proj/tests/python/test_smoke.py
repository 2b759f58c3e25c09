"""Smoke tests of the python bindings against values the C++ suite pins down."""

import math

import numpy as np
import pytest

import sdlab


def test_solve_returns_converged_run():
    r = sdlab.solve(nx=16)
    assert r["converged"] is True
    assert 10 <= r["iterations"] <= 39
    hist = r["residual_history"]
    assert len(hist) == r["iterations"] + 1
    assert hist[-1] <= 1e-8 * hist[0]
    assert all(b <= a * (1 + 1e-14) for a, b in zip(hist, hist[1:]))
    errs = r["errors"]
    assert set(errs) == {"ux", "uy", "pS", "pD", "pGamma"}
    assert all(0 < errs[k] < 0.1 for k in errs if k != "pGamma")
    assert r["wall_time_s"] > 0


def test_solve_is_deterministic_and_seed_sensitive():
    a = sdlab.solve(nx=8, formulation="ro")
    b = sdlab.solve(nx=8, formulation="ro")
    assert a["iterations"] == b["iterations"]
    assert a["residual_history"] == b["residual_history"]
    assert a["errors"] == b["errors"]
    assert "pGamma" not in a["errors"]

    c = sdlab.solve(nx=8, formulation="ro", seed=99)
    assert c["residual_history"] != a["residual_history"]


def test_convergence_orders():
    rows = sdlab.convergence([8, 16, 32])
    assert [r["nx"] for r in rows] == [8, 16, 32]
    assert math.isnan(rows[0]["orders"]["ux"])
    for row in rows[1:]:
        for field in ("ux", "uy", "pS", "pD", "pGamma"):
            assert 1.5 <= row["orders"][field] <= 2.6


def test_condition_number_band():
    c = sdlab.condition_number(nx=8)
    assert 3.0 <= c <= 25.0
    assert c == pytest.approx(4.0, abs=0.4)


def test_fractional_matrix_hand_values():
    S = np.asarray(sdlab.fractional_matrix(2, "neumann", mu=0.5))
    want = np.array([[1 / 3, 1 / 6], [1 / 6, 1 / 3]])
    assert np.max(np.abs(S - want)) <= 1e-12

    # exponent 0 collapses to the facet mass matrix
    M = np.asarray(sdlab.fractional_matrix(4, "neumann", mu=0.5, exponent=0.0))
    assert np.max(np.abs(M - 0.25 * np.eye(4))) <= 1e-14

    D = np.asarray(sdlab.fractional_matrix(2, "dirichlet", mu=0.5))
    assert not np.allclose(D, S)


def test_bad_arguments_raise_value_error():
    with pytest.raises(ValueError):
        sdlab.solve(formulation="bogus")
    with pytest.raises(ValueError):
        sdlab.solve(mu=-1.0)
    with pytest.raises(ValueError):
        sdlab.solve(nx=1)
    with pytest.raises(ValueError):
        sdlab.fractional_matrix(4, "bogus")
    assert issubclass(sdlab.SdlabConfigError, ValueError)


def test_oversized_dense_request_raises():
    with pytest.raises(sdlab.SdlabCapabilityError):
        sdlab.condition_number(nx=128)
