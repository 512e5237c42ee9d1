import numpy as np
import pytest
import sympy as sp

from apo.chebyshev import (
    R_coeffs,
    R_root_set,
    branch_omega,
    omega_set,
    r_coeffs,
    r_eval,
    r_values,
    roots_of_unity_signed,
)
from apo.poly import aberth_roots, match_multisets

w = sp.symbols("w")


@pytest.mark.parametrize("k", range(0, 13))
def test_r_matches_chebyshev_u(k):
    oracle = sp.chebyshevu(k, -w / 2)
    for omega in (-1.7, -0.3, 0.0, 0.9, 1.95):
        assert r_eval(k, omega) == pytest.approx(float(oracle.subs(w, omega)), abs=1e-12)
    coeffs = sp.Poly(sp.expand(oracle), w).all_coeffs()[::-1]
    assert np.allclose(r_coeffs(k), [float(c) for c in coeffs], atol=0)


def test_r_special_values():
    assert r_eval(-1, 0.4) == 0.0
    assert r_eval(0, 0.4) == 1.0
    assert r_eval(1, 0.4) == pytest.approx(-0.4)
    with pytest.raises(ValueError):
        r_eval(-2, 0.0)
    with pytest.raises(ValueError):
        r_coeffs(-1)


def test_r_eval_vectorised():
    omega = np.linspace(-2, 2, 7)
    assert np.allclose(r_eval(5, omega), [r_eval(5, float(x)) for x in omega])
    assert r_values(4, 0.3) == pytest.approx([r_eval(k, 0.3) for k in range(5)])


@pytest.mark.parametrize("s", range(1, 9))
def test_omega_set_are_roots(s):
    om = omega_set(s)
    assert len(om) == s
    assert list(om.alphas) == list(range(1, s + 1))
    for alpha, value in om:
        assert r_eval(s, value) == pytest.approx(0.0, abs=1e-12)
        assert om.contains(value)
        assert om.distance(value) == 0.0
    assert np.all(np.diff(om.values) < 0)


def test_omega_set_small_cases():
    assert omega_set(2).values == pytest.approx((1.0, -1.0))
    assert omega_set(3).values == pytest.approx((np.sqrt(2), 0.0, -np.sqrt(2)))
    with pytest.raises(ValueError):
        omega_set(0)


def test_branch_omega_reverses_omega_set():
    for s in range(2, 7):
        fwd = omega_set(s).values
        assert [branch_omega(s, a) for a in range(1, s + 1)] == pytest.approx(fwd[::-1])
    with pytest.raises(ValueError):
        branch_omega(3, 4)


def test_roots_of_unity_signed():
    r = roots_of_unity_signed(6, -1)
    assert np.allclose(r ** 6, -1)
    assert len(set(np.round(r, 12))) == 6
    assert np.allclose(roots_of_unity_signed(4, 1) ** 4, 1)


@pytest.mark.parametrize("s", range(2, 9))
def test_R_root_set_matches_root_finder(s):
    for alpha in range(1, s + 1):
        closed = R_root_set(s, alpha)
        assert len(closed) == s - 1
        numeric = aberth_roots(R_coeffs(s, branch_omega(s, alpha)))
        assert match_multisets(closed, numeric) < 1e-10


def test_R_coeffs_are_r_values():
    assert np.allclose(R_coeffs(4, 0.7), [r_eval(k, 0.7) for k in range(4)])
