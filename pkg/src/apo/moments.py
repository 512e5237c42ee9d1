"""Discrete moment problems: Vandermonde inversion and the Prony pipeline.

The operator conditions ``sum_j X_j z_j^l = delta_{l,mu}`` (``l = 1..n``) are
completed to the two-sided system

    sum_j X_j z_j^l = sigma_l,    l = 1-n, ..., n,

with ``sigma_0 = omega`` free, ``sigma_{+-mu} = 1`` and all other ``sigma``
zero.  With ``S_l = sigma_{1-n+l}`` and ``Z_j = X_j z_j^{1-n}`` this is the
classical system ``sum_j Z_j z_j^l = S_l`` for ``l = 0..2n-1``, whose nodes are
the roots of the generating polynomial: the bordered Hankel determinant with
first row ``1, z, ..., z^n`` and rows ``(S_j, ..., S_{j+n})``.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from typing import Optional

import numpy as np

from .chebyshev import r_eval
from .exceptions import Degenerate, SingularNodes
from .poly import ComplexPoly, min_separation, poly_roots

SINGULAR_TOL = 1e-12
DISTINCT_TOL = 1e-9
# roots returned for a double root differ by ~sqrt(machine eps)
REPEATED_ROOT_TOL = 1e-6
RESIDUAL_TOL = 1e-8


@dataclass(frozen=True)
class MomentData:
    """Right-hand sides ``sigma_{1-n} .. sigma_n`` of the two-sided system.

    ``mu`` is ``None`` for systems that do not come from the delta conditions.
    """

    n: int
    sigma: dict
    mu: Optional[int] = None

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be positive")
        missing = [l for l in range(1 - self.n, self.n + 1) if l not in self.sigma]
        if missing:
            raise ValueError(f"sigma is missing indices {missing}")

    @property
    def omega(self):
        return self.sigma[0]

    @classmethod
    def delta(cls, n: int, mu: int, omega: float) -> "MomentData":
        """The (B')-type right-hand side: ``sigma_0 = omega``, ``sigma_{+-mu} = 1``."""
        if not 1 <= mu <= n:
            raise ValueError(f"mu must lie in 1..{n}")
        sigma = {l: 0.0 for l in range(1 - n, n + 1)}
        sigma[0] = float(omega)
        sigma[mu] = 1.0
        if -mu >= 1 - n:
            sigma[-mu] = 1.0
        return cls(n, sigma, mu)

    @classmethod
    def from_nodes(cls, nodes, weights, n: int, mu: Optional[int] = None) -> "MomentData":
        """Exact moments ``sigma_l = sum X_j z_j^l`` of a known node set (X convention)."""
        z = np.asarray(nodes, dtype=complex)
        x = np.asarray(weights, dtype=complex)
        sigma = {}
        for l in range(1 - n, n + 1):
            v = complex(np.sum(x * z ** l))
            sigma[l] = v.real if abs(v.imag) <= 1e-14 * max(1.0, abs(v)) else v
        return cls(n, sigma, mu)

    def with_sigma(self, index: int, value) -> "MomentData":
        sigma = dict(self.sigma)
        sigma[index] = value
        return replace(self, sigma=sigma)

    def shifted(self) -> np.ndarray:
        """``S_l = sigma_{1-n+l}`` for ``l = 0..2n-1``."""
        return np.array([self.sigma[1 - self.n + l] for l in range(2 * self.n)], dtype=complex)

    def hankel_rows(self) -> np.ndarray:
        """The ``n x (n+1)`` block of the generating determinant below its first row."""
        S = self.shifted()
        n = self.n
        return np.array([[S[j + k] for k in range(n + 1)] for j in range(n)])


@dataclass(frozen=True, eq=False)
class NodeSet:
    """Nodes with weights under the ``Y`` (``X_j z_j``) or ``Z`` (``X_j z_j^{1-n}``) convention."""

    nodes: np.ndarray
    weights: np.ndarray
    convention: str = "Z"

    def __post_init__(self):
        if self.convention not in ("Y", "Z"):
            raise ValueError("convention must be 'Y' or 'Z'")
        z = np.asarray(self.nodes, dtype=complex)
        w = np.asarray(self.weights, dtype=complex)
        if z.shape != w.shape:
            raise ValueError("nodes and weights differ in length")
        object.__setattr__(self, "nodes", z)
        object.__setattr__(self, "weights", w)

    def __len__(self):
        return len(self.nodes)

    def amplitudes(self, n: Optional[int] = None) -> np.ndarray:
        """Operator amplitudes ``X_j`` (complex; real for admissible solutions)."""
        if self.convention == "Y":
            return self.weights / self.nodes
        if n is None:
            raise ValueError("n is required to convert Z weights")
        return self.weights * self.nodes ** (n - 1)

    @property
    def phases(self) -> np.ndarray:
        return -np.angle(self.nodes)

    def is_unimodular(self, tol=1e-10) -> bool:
        return bool(np.all(np.abs(np.abs(self.nodes) - 1.0) < tol))

    def is_conjugation_closed(self, tol=1e-10) -> bool:
        z = self.nodes
        return all(np.min(np.abs(z - np.conj(zj))) < tol for zj in z)

    def to_dict(self):
        return {
            "convention": self.convention,
            "nodes": [[float(z.real), float(z.imag)] for z in self.nodes],
            "weights": [[float(w.real), float(w.imag)] for w in self.weights],
        }

    @classmethod
    def from_dict(cls, data):
        nodes = [complex(re, im) for re, im in data["nodes"]]
        weights = [complex(re, im) for re, im in data["weights"]]
        return cls(np.array(nodes), np.array(weights), data.get("convention", "Z"))

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


def _check_nodes(nodes) -> np.ndarray:
    z = np.asarray(nodes, dtype=complex)
    if min_separation(z) < SINGULAR_TOL:
        raise SingularNodes(f"nodes closer than {SINGULAR_TOL}")
    return z


def vandermonde_solve(nodes, rhs, method: str = "lagrange") -> np.ndarray:
    """Weights ``Y`` with ``sum_k Y_k z_k^(l-1) = rhs_l`` for ``l = 1..n``.

    Parameters
    ----------
    nodes : array of complex
        Pairwise distinct nodes.
    rhs : array of complex
        Right-hand side, same length as ``nodes``.
    method : {"lagrange", "direct"}
        ``"lagrange"`` uses the inverse Vandermonde rows: row ``k`` holds the
        coefficients of ``prod_{j != k}(z - z_j)`` (obtained by synthetic
        division of the full node polynomial) divided by
        ``prod_{j != k}(z_k - z_j)``.  ``"direct"`` is an LU solve of the
        Vandermonde matrix.

    Raises
    ------
    SingularNodes
        If two nodes are closer than ``1e-12``.
    """
    z = _check_nodes(nodes)
    b = np.asarray(rhs, dtype=complex)
    n = len(z)
    if b.shape != (n,):
        raise ValueError("rhs must have one entry per node")
    if method == "direct":
        V = np.vander(z, n, increasing=True).T
        return np.linalg.solve(V, b)
    if method != "lagrange":
        raise ValueError(f"unknown method {method!r}")
    full = np.polynomial.polynomial.polyfromroots(z)
    out = np.empty(n, dtype=complex)
    for k in range(n):
        # synthetic division of prod(z - z_j) by (z - z_k), highest power first
        q = np.empty(n, dtype=complex)
        q[n - 1] = full[n]
        for i in range(n - 1, 0, -1):
            q[i - 1] = full[i] + z[k] * q[i]
        denom = np.prod(z[k] - np.delete(z, k))
        out[k] = np.dot(q, b) / denom
    return out


def elementary_symmetric(values) -> np.ndarray:
    """``[e_0, e_1, ..., e_m]`` of the given values."""
    e = np.zeros(len(values) + 1, dtype=complex)
    e[0] = 1.0
    for v in values:
        e[1:] = e[1:] + v * e[:-1]
    return e


def amplitudes_for_delta(nodes, mu: int, n: int) -> np.ndarray:
    """``Y_k`` solving ``sum_k Y_k z_k^(l-1) = delta_{l,mu}`` from symmetric functions.

    ``Y_k = (-1)^(n-mu) e_{n-mu}(z without z_k) / prod_{j != k}(z_k - z_j)``.
    """
    z = _check_nodes(nodes)
    if len(z) != n:
        raise ValueError(f"expected {n} nodes, got {len(z)}")
    if not 1 <= mu <= n:
        raise ValueError(f"mu must lie in 1..{n}")
    out = np.empty(n, dtype=complex)
    for k in range(n):
        others = np.delete(z, k)
        rho = elementary_symmetric(others)[n - mu]
        out[k] = (-1) ** (n - mu) * rho / np.prod(z[k] - others)
    return out


def hadamard_bound(rows) -> float:
    return float(np.prod(np.linalg.norm(np.asarray(rows), axis=1)))


def bordered_poly(rows) -> np.ndarray:
    """Coefficients of ``det([1, z, ..., z^m]; rows)`` for an ``m x (m+1)`` block.

    Coefficient ``k`` is the signed cofactor ``(-1)^k det(rows without column k)``;
    each cofactor is an LU determinant.
    """
    R = np.asarray(rows, dtype=complex)
    m1 = R.shape[1]
    if R.shape[0] == 0:
        return np.ones(1, dtype=complex)
    return np.array([(-1) ** k * np.linalg.det(np.delete(R, k, axis=1)) for k in range(m1)])


def generating_poly(md: MomentData) -> ComplexPoly:
    """Generating polynomial ``g_0 + g_1 z + ... + g_n z^n`` of ``md``.

    The result carries the Hadamard bound of the moment rows as its scale, so
    ``is_zero()`` tells an identically vanishing determinant from a small one.
    """
    rows = md.hankel_rows()
    return ComplexPoly(bordered_poly(rows), scale=hadamard_bound(rows))


@dataclass
class Regularity:
    regular: bool
    reason: Optional[str] = None
    degree: int = -1
    roots: Optional[np.ndarray] = None
    min_separation: float = np.inf

    def __bool__(self):
        return self.regular


def regularity_check(g: ComplexPoly, n: int) -> Regularity:
    """Regular iff ``deg g == n`` and the roots of ``g`` are simple.

    Reasons for a negative verdict: ``"zero_polynomial"``, ``"degree_drop"``,
    ``"repeated_roots"``.
    """
    if g.is_zero():
        return Regularity(False, "zero_polynomial")
    d = g.degree
    if d != n:
        return Regularity(False, "degree_drop", degree=d)
    roots = poly_roots(g)
    sep = min_separation(roots)
    if sep < max(DISTINCT_TOL, REPEATED_ROOT_TOL):
        return Regularity(False, "repeated_roots", degree=d, roots=roots, min_separation=sep)
    return Regularity(True, None, degree=d, roots=roots, min_separation=sep)


def moment_residual(nodeset: NodeSet, md: MomentData) -> float:
    """Largest relative residual of all ``2n`` equations ``sum Z z^l = S_l``."""
    if nodeset.convention != "Z":
        raise ValueError("expected Z-convention weights")
    S = md.shifted()
    l = np.arange(2 * md.n)
    built = (nodeset.nodes[None, :] ** l[:, None]) @ nodeset.weights
    return float(np.max(np.abs(built - S)) / max(1.0, np.max(np.abs(S))))


def prony_solve(md: MomentData) -> NodeSet:
    """Nodes and ``Z`` weights of a regular moment system.

    Nodes are the roots of the generating polynomial; weights come from the
    first ``n`` equations.  The solution is checked against all ``2n``
    equations.

    Raises
    ------
    Degenerate
        When the generating polynomial is zero, drops degree, has repeated
        roots, or the recovered weights fail the full system.
    """
    g = generating_poly(md)
    verdict = regularity_check(g, md.n)
    if not verdict:
        raise Degenerate(verdict.reason)
    nodes = verdict.roots
    weights = vandermonde_solve(nodes, md.shifted()[: md.n])
    ns = NodeSet(nodes, weights, "Z")
    res = moment_residual(ns, md)
    if res > RESIDUAL_TOL:
        raise Degenerate("inconsistent", f"moment residual {res:.3e} after Prony solve")
    if np.min(np.abs(weights)) <= 1e-12 * np.max(np.abs(weights)):
        raise Degenerate("zero_weight")
    return ns


def _rel(a, b, floor):
    return abs(a - b) / max(abs(a), abs(b), floor)


@dataclass
class StructureReport:
    """Structural identities of a generating polynomial (see :func:`structure_checks`)."""

    n: int
    mu: Optional[int]
    omega: complex
    coeffs: np.ndarray
    degree: int
    symmetry_sign: Optional[int] = None
    symmetry_residual: float = np.nan
    s: Optional[int] = None
    chain_residual: float = np.nan
    gap_residual: float = np.nan
    g1_residual: float = np.nan
    chain_ratios: list = field(default_factory=list)
    even_case: bool = False
    u_s_value: float = np.nan
    even_sign: Optional[int] = None
    regular: bool = False
    leading_residual: float = np.nan

    @property
    def even_condition_holds(self):
        return self.even_sign is not None

    def lines(self):
        out = [
            f"n = {self.n}",
            f"mu = {self.mu}",
            f"omega = {complex(self.omega).real:.15g}",
            f"degree = {self.degree}",
            f"regular = {self.regular}",
            f"symmetry_sign = {self.symmetry_sign}",
            f"symmetry_residual = {self.symmetry_residual:.3e}",
        ]
        if self.s is not None:
            out += [
                f"s = {self.s}",
                f"chain_residual = {self.chain_residual:.3e}",
                f"gap_residual = {self.gap_residual:.3e}",
            ]
            if self.mu == 2:
                out.append(f"g1_residual = {self.g1_residual:.3e}")
        if self.even_case:
            out += [f"U_s(omega/2) = {self.u_s_value:.15g}", f"even_condition_holds = {self.even_condition_holds}"]
        if self.regular:
            out.append(f"leading_residual = {self.leading_residual:.3e}")
        return out


def structure_checks(md: MomentData, tol: float = 1e-8) -> StructureReport:
    """Evaluate the structural identities of ``G_n(omega, mu; z)``.

    Reported quantities (all residuals relative to ``max|g|``):

    * coefficient symmetry ``g_k = +-g_{n-k}`` and its best sign;
    * for ``n = s*mu - 1``: ``g_{mu*k-1} = g_{mu-1} r_{k-1}(omega)`` with all
      other coefficients zero (``gap_residual`` covers the zero runs
      ``g_{m + k*mu}``, ``m <= mu-2``), and for ``mu = 2`` the closed form
      ``g_1 = (-1)^(s+1) r_s(omega)``;
    * when ``n - mu*floor(n/mu)`` is even: ``U_s(omega/2)`` and whether it is +-1;
    * for a regular system: the product formula for the leading coefficient,
      ``g_n = (-1)^n prod Z_k prod_{k<j}(z_k - z_j)^2``.
    """
    n, mu = md.n, md.mu
    g = generating_poly(md)
    c = g.coeffs
    gmax = g.max_abs
    floor = max(gmax, 1e-12 * (g.scale or 0.0), 1e-300)
    report = StructureReport(n, mu, md.omega, c, g.degree)

    res_plus = np.max(np.abs(c - c[::-1])) / floor
    res_minus = np.max(np.abs(c + c[::-1])) / floor
    report.symmetry_residual = float(min(res_plus, res_minus))
    if report.symmetry_residual < tol:
        report.symmetry_sign = 1 if res_plus <= res_minus else -1

    if mu is not None:
        omega = complex(md.omega).real
        if (n + 1) % mu == 0 and (n + 1) // mu >= 2:
            s = (n + 1) // mu
            report.s = s
            lead = c[mu - 1]
            chain = {mu * k - 1: lead * r_eval(k - 1, omega) for k in range(1, s + 1)}
            resid = [abs(c[i] - chain.get(i, 0.0)) for i in range(n + 1)]
            report.chain_residual = float(max(resid) / floor)
            zero_run = [abs(c[m + k * mu]) for m in range(mu - 1) for k in range(s) if m + k * mu <= n]
            report.gap_residual = float(max(zero_run, default=0.0) / floor)
            if abs(lead) > 1e-12 * floor:
                report.chain_ratios = [complex(c[mu * k - 1] / lead).real for k in range(1, s + 1)]
            if mu == 2:
                expected = (-1) ** (s + 1) * r_eval(s, omega)
                report.g1_residual = float(_rel(c[1], expected, 1e-12 * max(g.scale or 1.0, 1.0)))
        s_floor = n // mu
        if (n - mu * s_floor) % 2 == 0:
            report.even_case = True
            u = r_eval(s_floor, -omega)
            report.u_s_value = float(u)
            if abs(u - 1.0) < 1e-9:
                report.even_sign = 1
            elif abs(u + 1.0) < 1e-9:
                report.even_sign = -1

    verdict = regularity_check(g, n)
    report.regular = verdict.regular
    if verdict.regular:
        try:
            ns = prony_solve(md)
        except Degenerate:
            report.regular = False
        else:
            z = ns.nodes
            delta2 = np.prod([(z[a] - z[b]) ** 2 for a in range(n) for b in range(a + 1, n)])
            predicted = (-1) ** n * np.prod(ns.weights) * delta2
            report.leading_residual = float(abs(predicted - c[n]) / max(abs(c[n]), 1e-300))
    return report
