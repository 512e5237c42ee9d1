"""Closed-form amplitude-phase operators.

Four families are covered:

* ``solve_mu_equals_n`` -- the ``n``-th harmonic from degree ``n``: equal
  amplitudes ``1/n`` at the ``n``-th roots of unity.
* ``solve_mu_one`` -- the first harmonic from degree ``n``; one operator per
  ``alpha = 1..n+1``.
* ``solve_mu_two`` -- the second harmonic from degree ``n = 2s - 1`` with
  ``2s - 2`` terms; one operator per ``alpha = 1..s``.
* ``solve_general`` -- harmonic ``mu >= 2`` with ``n = s*mu - 1``; the operator
  has ``n - mu + 1`` terms and is exact up to degree ``n - 1``.

Branch labelling: for ``solve_mu_one`` and ``solve_general`` the branch
``alpha`` means ``omega = -2 cos(pi*alpha/(s+1))``, the labelling under which
the node sets have the closed form "roots of (-1)^alpha minus a pair".  For
``solve_mu_two`` ``alpha`` indexes :func:`apo.chebyshev.omega_set` directly,
``omega = 2 cos(pi*alpha/(s+1))``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .chebyshev import R_coeffs, branch_omega, omega_set, r_coeffs, roots_of_unity_signed
from .exceptions import ApoError, NotEvenCase, UnsupportedFamily
from .moments import MomentData, prony_solve, vandermonde_solve
from .poly import aberth_roots
from .trig import Apo

IMAG_TOL = 1e-9

FAMILIES = ("MuEqualsN", "MuOne", "MuTwo", "General")


@dataclass(frozen=True)
class FamilySpec:
    """Parameters selecting one closed-form operator."""

    family: str
    mu: int
    n: int
    s: Optional[int] = None
    alpha: int = 1

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"family must be one of {FAMILIES}")
        if self.family == "MuTwo" and not (self.mu == 2 and self.s and self.s >= 2 and self.n == 2 * self.s - 1):
            raise ValueError("MuTwo needs mu = 2, s >= 2, n = 2s - 1")
        if self.family == "General" and not (
            self.mu >= 2 and self.s and self.s >= 2 and self.n == self.s * self.mu - 1
        ):
            raise ValueError("General needs mu >= 2, s >= 2, n = s*mu - 1")

    @property
    def omega(self) -> float:
        if self.family == "MuEqualsN":
            return 1.0
        if self.family == "MuOne":
            return branch_omega(self.n + 1, self.alpha)
        if self.family == "MuTwo":
            return omega_set(self.s).values[self.alpha - 1]
        return branch_omega(self.s, self.alpha)

    def build(self) -> Apo:
        if self.family == "MuEqualsN":
            return solve_mu_equals_n(self.n)
        if self.family == "MuOne":
            return solve_mu_one(self.n, self.alpha)
        if self.family == "MuTwo":
            return solve_mu_two(self.s, self.alpha)
        return solve_general(self.mu, self.s, self.alpha)


def _real_amplitudes(x: np.ndarray, what: str) -> np.ndarray:
    resid = float(np.max(np.abs(np.imag(x)))) if len(x) else 0.0
    if resid > IMAG_TOL:
        raise ApoError(f"{what}: amplitudes have imaginary residue {resid:.3e}")
    return np.real(x)


def _check_omega(x: np.ndarray, omega: float, what: str, tol: float = 1e-10):
    total = float(np.sum(x))
    if abs(total - omega) > tol:
        raise ApoError(f"{what}: sum of amplitudes {total!r} differs from omega {omega!r}")


def solve_mu_equals_n(n: int) -> Apo:
    """Equal amplitudes ``1/n`` at phases ``2*pi*(k-1)/n``."""
    if n < 1:
        raise ValueError("n must be positive")
    phases = 2 * np.pi * np.arange(n) / n
    return Apo(tuple((1.0 / n, lam) for lam in phases), mu=n, valid_degree=n)


def mu_one_nodes(n: int, alpha: int) -> np.ndarray:
    """``(n+2)``-th roots of ``(-1)^alpha`` without ``exp(+-i*pi*alpha/(n+2))``."""
    phi = np.pi * alpha / (n + 2)
    candidates = roots_of_unity_signed(n + 2, (-1) ** alpha)
    excluded = np.exp(1j * np.array([phi, -phi]))
    return np.array([z for z in candidates if np.min(np.abs(z - excluded)) > 1e-9])


def solve_mu_one(n: int, alpha: int = 1) -> Apo:
    """First-harmonic operator of order ``n`` on branch ``alpha`` (1..n+1).

    With ``phi = pi*alpha/(n+2)`` the nodes are :func:`mu_one_nodes` and

        X_k = -sgn(sin((n+1) phi)) / (n+2) * (z_k^2 - 2 z_k cos(phi) + 1) / z_k^(n+3),

    which sum to ``omega = -2 cos(phi)``.
    """
    if n < 2:
        raise ValueError("n must be >= 2")
    if not 1 <= alpha <= n + 1:
        raise ValueError(f"alpha must lie in 1..{n + 1}")
    phi = np.pi * alpha / (n + 2)
    z = mu_one_nodes(n, alpha)
    sign = np.sign(np.sin((n + 1) * phi))
    x = -sign / (n + 2) * (z ** 2 - 2 * z * np.cos(phi) + 1) / z ** (n + 3)
    x = _real_amplitudes(x, "mu=1 family")
    _check_omega(x, -2 * np.cos(phi), "mu=1 family")
    return Apo.from_nodes(z, x, mu=1, valid_degree=n)


def solve_mu_two(s: int, alpha: int = 1) -> Apo:
    """Second-harmonic operator from degree ``2s - 1`` with ``2s - 2`` terms.

    ``omega = omega_set(s)[alpha]``; nodes are the roots of
    ``R_{s-1}(omega; z^2)`` and amplitudes solve the first ``2s - 2`` moment
    equations.
    """
    if s < 2:
        raise ValueError("s must be >= 2")
    omega = omega_set(s).values[alpha - 1] if 1 <= alpha <= s else None
    if omega is None:
        raise ValueError(f"alpha must lie in 1..{s}")
    n = 2 * s - 1
    m = n - 1
    rc = R_coeffs(s, omega)
    in_z2 = np.zeros(2 * s - 1)
    in_z2[::2] = rc
    z = aberth_roots(in_z2)
    rhs = np.zeros(m)
    rhs[1] = 1.0
    y = vandermonde_solve(z, rhs)
    x = _real_amplitudes(y / z, "mu=2 family")
    _check_omega(x, omega, "mu=2 family")
    return Apo.from_nodes(z, x, mu=2, valid_degree=n)


def general_nodes(mu: int, s: int, alpha: int) -> np.ndarray:
    """``((s+1)mu)``-th roots of ``(-1)^alpha`` minus the ``mu``-th roots of ``exp(+-i phi_alpha)``."""
    phi = np.pi * alpha / (s + 1)
    candidates = roots_of_unity_signed((s + 1) * mu, (-1) ** alpha)
    j = np.arange(mu)
    excluded = np.concatenate(
        [np.exp(1j * (phi + 2 * np.pi * j) / mu), np.exp(1j * (-phi + 2 * np.pi * j) / mu)]
    )
    return np.array([z for z in candidates if np.min(np.abs(z - excluded)) > 1e-9])


def general_weights(z: np.ndarray) -> np.ndarray:
    """``Z_k = z_k / prod_{j != k}(z_k - z_j)``."""
    return np.array([z[k] / np.prod(z[k] - np.delete(z, k)) for k in range(len(z))])


def solve_general(mu: int, s: int, alpha: int = 1) -> Apo:
    """Harmonic ``mu`` from degree ``n - 1`` where ``n = s*mu - 1``.

    Nodes from :func:`general_nodes`, ``X_k = Z_k z_k^(n-1)`` with ``Z`` from
    :func:`general_weights`; ``omega = -2 cos(pi*alpha/(s+1))``.
    """
    if mu < 2 or s < 2:
        raise ValueError("need mu >= 2 and s >= 2")
    if not 1 <= alpha <= s:
        raise ValueError(f"alpha must lie in 1..{s}")
    n = s * mu - 1
    z = general_nodes(mu, s, alpha)
    if len(z) != n - mu + 1:
        raise ApoError(f"expected {n - mu + 1} nodes, found {len(z)}")
    x = _real_amplitudes(general_weights(z) * z ** (n - 1), "general family")
    _check_omega(x, branch_omega(s, alpha), "general family")
    return Apo.from_nodes(z, x, mu=mu, valid_degree=n - 1)


@dataclass(frozen=True)
class EvenCaseCandidates:
    n: int
    mu: int
    s: int
    plus: tuple
    minus: tuple

    @property
    def candidates(self) -> tuple:
        return _dedupe(self.plus + self.minus)


def _dedupe(values, tol=1e-8):
    out = []
    for v in sorted(values):
        if not out or abs(v - out[-1]) > tol:
            out.append(v)
    return tuple(out)


def _real_roots(coeffs) -> list:
    c = np.trim_zeros(np.asarray(coeffs, dtype=float), "b")
    if len(c) < 2:
        return []
    # exact zero roots are deflated first; the iteration converges slowly on them
    zeros = 0
    while abs(c[0]) == 0.0:
        c = c[1:]
        zeros += 1
    roots = list(aberth_roots(c)) if len(c) > 1 else []
    out = [0.0] * zeros
    out += [float(r.real) for r in roots if abs(r.imag) < 1e-7]
    return out


def even_case_filter(n: int, mu: int, sign: Optional[int] = None) -> EvenCaseCandidates:
    """Necessary values of ``omega`` when ``n - mu*floor(n/mu)`` is even.

    With ``s = floor(n/mu)`` a regular solution requires ``U_s(omega/2) = +-1``.
    The real roots of both equations are returned (``sign`` restricts the
    search to one of them); each candidate still has to be confirmed, for
    instance with :func:`admissible`.
    """
    if not 1 <= mu <= n:
        raise ValueError("need 1 <= mu <= n")
    s = n // mu
    if (n - mu * s) % 2:
        raise NotEvenCase(f"n - mu*s = {n - mu * s} is odd")
    # U_s(w/2) = r_s(-w): flip the sign of odd coefficients
    u = r_coeffs(s) * (-1.0) ** np.arange(s + 1)
    branches = {}
    for sgn in (1, -1):
        if sign is not None and sgn != sign:
            branches[sgn] = ()
            continue
        c = u.copy()
        c[0] -= sgn
        branches[sgn] = _dedupe(_real_roots(c))
    return EvenCaseCandidates(n, mu, s, branches[1], branches[-1])


def admissible(n: int, mu: int, omega: float, tol: float = 1e-8) -> Optional[Apo]:
    """Operator from the generic Prony route, or ``None`` if ``omega`` fails.

    Succeeds when the moment system with this ``omega`` is regular, its nodes
    are unimodular and its amplitudes real.
    """
    try:
        ns = prony_solve(MomentData.delta(n, mu, omega))
    except ApoError:
        return None
    x = ns.amplitudes(n)
    if not ns.is_unimodular(tol) or np.max(np.abs(x.imag)) > tol:
        return None
    return Apo.from_nodes(ns.nodes, x.real, mu=mu, valid_degree=n)


def auto_family(mu: int, degree: Optional[int] = None, s: Optional[int] = None) -> FamilySpec:
    """Pick the family used when the caller does not name one.

    ``mu == degree`` -> equal-amplitude family; ``mu == 1`` -> first-harmonic
    family; ``mu == 2`` -> second-harmonic family with the smallest
    ``2s - 1 >= degree``; otherwise the general family with the smallest ``s``
    such that ``s*mu - 2 >= degree``.
    """
    if mu < 1:
        raise UnsupportedFamily("mu must be positive")
    if degree is None and s is None:
        raise UnsupportedFamily("give a degree or s")
    if degree is not None and degree < mu:
        raise UnsupportedFamily(f"harmonic {mu} is not present in degree {degree}")
    if degree is not None and mu == degree and s is None:
        return FamilySpec("MuEqualsN", mu, degree)
    if mu == 1:
        if degree is None or degree < 2:
            raise UnsupportedFamily("the mu=1 family needs degree >= 2")
        return FamilySpec("MuOne", 1, degree)
    if mu == 2:
        if s is None:
            s = max(2, -(-(degree + 1) // 2))
        return FamilySpec("MuTwo", 2, 2 * s - 1, s)
    if s is None:
        s = max(2, -(-(degree + 2) // mu))
    return FamilySpec("General", mu, s * mu - 1, s)


def family_of(spec: FamilySpec, alpha: int) -> FamilySpec:
    return FamilySpec(spec.family, spec.mu, spec.n, spec.s, alpha)


def branch_count(spec: FamilySpec) -> int:
    if spec.family == "MuEqualsN":
        return 1
    if spec.family == "MuOne":
        return spec.n + 1
    return spec.s
