import numpy as np
import pytest
import sympy as sp

from apo.chebyshev import r_eval
from apo.exceptions import Degenerate, SingularNodes
from apo.moments import (
    MomentData,
    NodeSet,
    amplitudes_for_delta,
    bordered_poly,
    elementary_symmetric,
    generating_poly,
    hadamard_bound,
    moment_residual,
    prony_solve,
    regularity_check,
    structure_checks,
    vandermonde_solve,
)
from apo.poly import ComplexPoly, match_multisets

z_sym, w_sym = sp.symbols("z w")


def sympy_generating_poly(n, mu):
    """Exact bordered determinant with symbolic omega (oracle)."""
    sigma = {l: 0 for l in range(1 - n, n + 1)}
    sigma[0] = w_sym
    sigma[mu] = 1
    if -mu >= 1 - n:
        sigma[-mu] = 1
    S = [sigma[1 - n + l] for l in range(2 * n)]
    rows = [[z_sym ** k for k in range(n + 1)]] + [[S[j + k] for k in range(n + 1)] for j in range(n)]
    return sp.Poly(sp.expand(sp.Matrix(rows).det()), z_sym)


@pytest.mark.parametrize("n, mu", [(2, 1), (3, 1), (3, 2), (4, 2), (4, 3), (5, 2), (5, 3), (5, 5)])
def test_generating_poly_matches_symbolic_determinant(n, mu):
    P = sympy_generating_poly(n, mu)
    for omega in (-1.3, 0.0, 0.55, 1.7):
        expected = [complex(P.coeff_monomial(z_sym ** k).subs(w_sym, omega)) for k in range(n + 1)]
        got = generating_poly(MomentData.delta(n, mu, omega)).coeffs
        assert np.allclose(got, expected, atol=1e-12)


def test_generating_poly_example_n8_omega0():
    # z^8 - z^4 + 1
    g = generating_poly(MomentData.delta(8, 2, 0.0))
    assert np.allclose(g.coeffs, [1, 0, 0, 0, -1, 0, 0, 0, 1], atol=1e-12)
    P = sympy_generating_poly(8, 2)
    assert sp.expand(P.as_expr().subs(w_sym, 0)) == z_sym ** 8 - z_sym ** 4 + 1


def test_generating_poly_example_n4_sqrt2():
    g = generating_poly(MomentData.delta(4, 2, np.sqrt(2)))
    assert np.allclose(g.coeffs, [1, 0, -np.sqrt(2), 0, 1], atol=1e-12)


def test_prony_example_n4_sqrt2():
    md = MomentData.delta(4, 2, np.sqrt(2))
    ns = prony_solve(md)
    x = ns.amplitudes(4)
    assert np.allclose(x.imag, 0, atol=1e-12)
    assert np.allclose(x.real, np.sqrt(2) / 4, atol=1e-12)
    # roots of z^4 - sqrt(2) z^2 + 1 are exp(+-i pi/8), exp(+-i 7pi/8)
    expected = [np.pi / 8, -np.pi / 8, 7 * np.pi / 8, -7 * np.pi / 8]
    assert match_multisets(ns.phases, expected) < 1e-10


def test_quarter_turn_node_set_needs_negative_omega():
    # the node set rotated by a quarter turn solves the same conditions only
    # with the sign of every amplitude flipped, i.e. at omega = -sqrt(2)
    ns = prony_solve(MomentData.delta(4, 2, -np.sqrt(2)))
    expected = [3 * np.pi / 8, -3 * np.pi / 8, 5 * np.pi / 8, -5 * np.pi / 8]
    assert match_multisets(ns.phases, expected) < 1e-10
    assert np.allclose(ns.amplitudes(4), -np.sqrt(2) / 4, atol=1e-12)


def test_moment_data_validation():
    with pytest.raises(ValueError):
        MomentData(0, {})
    with pytest.raises(ValueError):
        MomentData(2, {0: 1.0})
    with pytest.raises(ValueError):
        MomentData.delta(3, 4, 0.0)


def test_delta_moments_layout():
    md = MomentData.delta(3, 2, 0.5)
    assert md.omega == 0.5
    assert md.sigma[2] == 1.0 and md.sigma[-2] == 1.0
    assert md.shifted().tolist() == [1.0, 0.0, 0.5, 0.0, 1.0, 0.0]
    assert md.hankel_rows().shape == (3, 4)
    # -mu outside the window for mu = n
    assert MomentData.delta(3, 3, 0.0).sigma[-2] == 0.0


def test_from_nodes_matches_definition(rng):
    z = np.exp(1j * rng.uniform(-np.pi, np.pi, 3))
    x = rng.normal(size=3)
    md = MomentData.from_nodes(z, x, 4)
    for l in range(-3, 5):
        assert md.sigma[l] == pytest.approx(np.sum(x * z ** l), abs=1e-14)


def test_vandermonde_routes_agree(rng):
    z = np.exp(1j * rng.uniform(-np.pi, np.pi, 6)) * rng.uniform(0.8, 1.2, 6)
    b = rng.normal(size=6) + 1j * rng.normal(size=6)
    V = np.vander(z, 6, increasing=True).T
    ref = np.linalg.solve(V, b)
    assert np.allclose(vandermonde_solve(z, b), ref, atol=1e-10)
    assert np.allclose(vandermonde_solve(z, b, method="direct"), ref, atol=1e-10)
    with pytest.raises(ValueError):
        vandermonde_solve(z, b, method="qr")
    with pytest.raises(ValueError):
        vandermonde_solve(z, b[:3])


def test_vandermonde_singular():
    with pytest.raises(SingularNodes):
        vandermonde_solve([1.0, 1.0, 2.0], [1.0, 0.0, 0.0])


@pytest.mark.parametrize("n, mu", [(3, 1), (4, 2), (5, 3), (6, 6)])
def test_amplitudes_for_delta_agrees(n, mu, rng):
    z = np.exp(1j * np.sort(rng.uniform(-np.pi, np.pi, n)))
    rhs = np.zeros(n)
    rhs[mu - 1] = 1.0
    assert np.allclose(amplitudes_for_delta(z, mu, n), vandermonde_solve(z, rhs), atol=1e-10)
    with pytest.raises(ValueError):
        amplitudes_for_delta(z[:-1], mu, n)


def test_elementary_symmetric():
    assert np.allclose(elementary_symmetric([1, 2, 3]), [1, 6, 11, 6])


def test_bordered_poly_small():
    # det([[1, z], [a, b]]) = b - a z
    assert np.allclose(bordered_poly([[2.0, 5.0]]), [5.0, -2.0])
    assert bordered_poly(np.zeros((0, 1))) == pytest.approx([1.0])
    assert hadamard_bound([[3.0, 4.0], [1.0, 0.0]]) == pytest.approx(5.0)


def test_regularity_reasons():
    assert regularity_check(ComplexPoly([0, 0, 0]), 2).reason == "zero_polynomial"
    drop = regularity_check(ComplexPoly([1.0, 2.0, 0.0]), 2)
    assert drop.reason == "degree_drop" and drop.degree == 1
    rep = regularity_check(ComplexPoly.from_roots([1.0, 1.0, -1.0]), 3)
    assert rep.reason == "repeated_roots"
    ok = regularity_check(ComplexPoly.from_roots([1.0, 1j, -1.0]), 3)
    assert ok and ok.degree == 3


def test_prony_round_trip(rng):
    for n in range(2, 8):
        z = np.exp(1j * np.linspace(0, 2 * np.pi, n, endpoint=False) + 1j * rng.uniform(0, 1))
        x = rng.uniform(0.5, 2.0, n)
        md = MomentData.from_nodes(z, x, n)
        ns = prony_solve(md)
        assert match_multisets(ns.nodes, z) < 1e-9
        got = dict(zip(np.round(ns.nodes, 6), ns.amplitudes(n)))
        for zk, xk in zip(z, x):
            assert got[np.round(zk, 6)] == pytest.approx(xk, abs=1e-8)
        assert moment_residual(ns, md) < 1e-10


def test_prony_degenerate_cases():
    with pytest.raises(Degenerate) as info:
        prony_solve(MomentData.delta(3, 2, 1.0))
    assert info.value.reason == "zero_polynomial"
    # generated by two nodes but posed with n = 3
    md = MomentData.from_nodes([1j, -1j], [1.0, 1.0], 3)
    with pytest.raises(Degenerate):
        prony_solve(md)


def test_nodeset_conventions_and_json():
    ns = NodeSet(np.array([1j, -1j]), np.array([2.0, 3.0]), "Z")
    assert np.allclose(ns.amplitudes(3), [2.0 * (1j) ** 2, 3.0 * (-1j) ** 2])
    with pytest.raises(ValueError):
        ns.amplitudes()
    y = NodeSet(np.array([1j, -1j]), np.array([2.0, 3.0]), "Y")
    assert np.allclose(y.amplitudes(), [2.0 / 1j, 3.0 / -1j])
    assert ns.is_unimodular() and ns.is_conjugation_closed()
    back = NodeSet.from_dict(ns.to_dict())
    assert np.allclose(back.nodes, ns.nodes) and back.convention == "Z"
    assert '"convention": "Z"' in ns.to_json()
    with pytest.raises(ValueError):
        NodeSet(np.array([1.0]), np.array([1.0, 2.0]))
    with pytest.raises(ValueError):
        NodeSet(np.array([1.0]), np.array([1.0]), "W")
    with pytest.raises(ValueError):
        moment_residual(y, MomentData.delta(2, 1, 0.0))


@pytest.mark.parametrize("s", range(2, 8))
def test_g1_closed_form_mu2(s):
    n = 2 * s - 1
    for omega in (-1.6, -0.4, 0.3, 1.1):
        g = generating_poly(MomentData.delta(n, 2, omega)).coeffs
        assert g[1] == pytest.approx((-1) ** (s + 1) * r_eval(s, omega), rel=1e-10)


@pytest.mark.parametrize("mu, s", [(2, 3), (3, 2), (3, 3), (4, 2), (5, 2)])
def test_chain_and_gap_structure(mu, s):
    n = s * mu - 1
    rep = structure_checks(MomentData.delta(n, mu, 0.41))
    assert rep.s == s
    assert rep.chain_residual < 1e-10
    assert rep.gap_residual < 1e-10
    assert rep.chain_ratios == pytest.approx([r_eval(k - 1, 0.41) for k in range(1, s + 1)], abs=1e-10)


def test_gap_n5_mu3():
    g = generating_poly(MomentData.delta(5, 3, 0.4)).coeffs
    assert np.allclose(g[[0, 1, 3, 4]], 0, atol=1e-14)
    assert abs(g[2]) > 1e-3


def test_structure_even_case_and_leading():
    rep = structure_checks(MomentData.delta(8, 2, 0.0))
    assert rep.even_case and rep.even_condition_holds and rep.even_sign == 1
    assert rep.regular
    assert rep.leading_residual < 1e-10
    assert rep.symmetry_sign == 1
    lines = rep.lines()
    assert "regular = True" in lines
    assert all(" = " in line for line in lines)
    odd = structure_checks(MomentData.delta(8, 2, 0.7))
    assert odd.even_case and not odd.even_condition_holds
