import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from apo.exceptions import NoConvergence
from apo.moments import REPEATED_ROOT_TOL
from apo.poly import ComplexPoly, aberth_roots, match_multisets, min_separation, poly_roots


@pytest.mark.parametrize("degree", [1, 2, 5, 10, 20, 40])
def test_aberth_matches_numpy_on_random(degree, rng):
    c = rng.normal(size=degree + 1) + 1j * rng.normal(size=degree + 1)
    ours = aberth_roots(c)
    ref = np.roots(c[::-1])
    assert match_multisets(ours, ref) < 1e-8


@pytest.mark.parametrize("m", [3, 8, 17, 33])
def test_aberth_unit_circle_roots(m):
    # z^m + 1: roots are the m-th roots of -1
    c = np.zeros(m + 1)
    c[0] = c[-1] = 1.0
    expected = np.exp(1j * np.pi * (2 * np.arange(m) + 1) / m)
    assert match_multisets(aberth_roots(c), expected) < 1e-12


def test_aberth_double_root_resolved_to_repeated_tol():
    c = np.polynomial.polynomial.polyfromroots([1.0, 1.0, -1.0, 1j])
    r = aberth_roots(c)
    assert min_separation(r) < REPEATED_ROOT_TOL
    assert match_multisets(r, [1.0, 1.0, -1.0, 1j]) < 1e-6


def test_aberth_edge_cases():
    assert aberth_roots([3.0]).size == 0
    assert aberth_roots([2.0, 4.0]) == pytest.approx([-0.5])
    with pytest.raises(ValueError):
        aberth_roots([1.0, 0.0])


def test_aberth_no_convergence():
    c = np.polynomial.polynomial.polyfromroots(np.exp(1j * np.linspace(0, 6, 12)))
    with pytest.raises(NoConvergence):
        aberth_roots(c, max_iter=1)


@settings(max_examples=30, deadline=None)
@given(st.lists(st.complex_numbers(max_magnitude=2.0, allow_nan=False, allow_infinity=False),
                min_size=1, max_size=8))
def test_roots_of_product_recovered(roots):
    roots = np.array(roots)
    if min_separation(roots) < 0.05:
        return
    c = np.polynomial.polynomial.polyfromroots(roots)
    assert match_multisets(aberth_roots(c), roots) < 1e-7


def test_complex_poly_degree_and_trim():
    p = ComplexPoly([1.0, 2.0, 1e-14, 0.0])
    assert p.degree == 1
    assert len(p.trimmed()) == 2
    assert p.normalized() == pytest.approx([0.5, 1.0])
    assert p(2.0) == pytest.approx(5.0)


def test_complex_poly_zero_tests():
    assert ComplexPoly([0.0, 0.0]).is_zero()
    assert ComplexPoly([0.0, 0.0]).degree == -1
    small = ComplexPoly([1e-13, 0.0], scale=10.0)
    assert small.is_zero()
    assert not ComplexPoly([1e-13, 0.0]).is_zero()
    with pytest.raises(ValueError):
        ComplexPoly([np.nan])


def test_complex_poly_real_and_from_roots():
    p = ComplexPoly.from_roots([1j, -1j])
    assert p.is_real()
    assert p.real == pytest.approx([1.0, 0.0, 1.0])
    assert not ComplexPoly([1.0, 1j]).is_real()


def test_poly_roots_trims():
    r = poly_roots(ComplexPoly([-1.0, 0.0, 1.0, 1e-16]))
    assert match_multisets(r, [1.0, -1.0]) < 1e-14
    with pytest.raises(ValueError):
        poly_roots(ComplexPoly([1.0]))


def test_match_multisets():
    a = np.array([1.0, 2.0, 3.0j])
    assert match_multisets(a, a[::-1]) == 0.0
    assert match_multisets(a, a[:2]) == np.inf
    assert match_multisets([], []) == 0.0
    assert match_multisets([0.0, 1.0], [1.1, 0.05]) == pytest.approx(0.1)


def test_min_separation():
    assert min_separation([0.0]) == np.inf
    assert min_separation([0.0, 1.0, 0.25]) == pytest.approx(0.25)


def test_roots_with_tiny_companion():
    # a root near zero must not drag every starting point to the origin
    c = np.polynomial.polynomial.polyfromroots([1.0, 6.3e-190])
    assert match_multisets(aberth_roots(c), [1.0, 0.0]) < 1e-12
