"""Degenerate moment systems.

When a consistent system of ``2n`` moments is generated by fewer than ``n``
nodes its generating polynomial vanishes identically.  Adding ``s`` small
artificial terms ``eps_k^l`` restores regularity; dividing by
``prod_{k<j}(eps_k - eps_j)^2`` and letting the ``eps_k`` go to zero gives
the non-regular generating polynomial ``G*``, whose non-zero roots are the
true nodes.

The limit is available in closed form: it is ``(-1)^s`` times the bordered
determinant with ``s`` extra unit columns (on the first ``s`` moment rows)
and ``s`` extra unit rows (on the first ``s`` power columns).  The
``"ladder"`` method instead evaluates the augmented determinants on a
geometric sequence of ``eps`` scales and extrapolates to zero.

Two further experiments validate the other routes to degenerate solutions:
perturbing ``omega`` off the admissible set (:func:`omega_perturb_validate`)
and perturbing the corner moment (:func:`tail_perturb_poly`).
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import linear_sum_assignment

from .chebyshev import R_coeffs, omega_set
from .exceptions import Degenerate, ExtrapolationUnstable, NotDegenerate
from .moments import (
    MomentData,
    NodeSet,
    bordered_poly,
    generating_poly,
    hadamard_bound,
    moment_residual,
    prony_solve,
    vandermonde_solve,
)
from .poly import ComplexPoly, aberth_roots, match_multisets, poly_roots
from .solutions import solve_mu_two

ZERO_REL = 1e-10
LADDER_LEVELS = 5
LADDER_START = 0.09
LADDER_TOL = 1e-4


@dataclass(frozen=True)
class AugmentedMoments:
    """Moments with ``s_aug`` artificial unit-weight terms at ``eps_nodes``."""

    base: MomentData
    eps_nodes: tuple

    def __post_init__(self):
        eps = np.asarray(self.eps_nodes, dtype=float)
        if np.any(eps <= 0) or np.any(eps >= 0.1):
            raise ValueError("eps nodes must lie in (0, 0.1)")
        if len(np.unique(eps)) != len(eps):
            raise ValueError("eps nodes must be distinct")
        object.__setattr__(self, "eps_nodes", tuple(float(e) for e in eps))

    @property
    def s_aug(self) -> int:
        return len(self.eps_nodes)

    def shifted(self) -> np.ndarray:
        n = self.base.n
        eps = np.asarray(self.eps_nodes)
        extra = np.array([np.sum(eps ** l) for l in range(2 * n)])
        return self.base.shifted() + extra

    def vandermonde_sq(self) -> float:
        eps = self.eps_nodes
        return float(
            np.prod([(eps[a] - eps[b]) ** 2 for a in range(len(eps)) for b in range(a + 1, len(eps))])
        )

    def scaled_generating_poly(self) -> np.ndarray:
        """Generating polynomial of the augmented moments over ``prod (eps_k - eps_j)^2``."""
        S = self.shifted()
        n = self.base.n
        rows = np.array([S[j:j + n + 1] for j in range(n)])
        return bordered_poly(rows) / self.vandermonde_sq()


def _confluent_rows(S: np.ndarray, n: int, s: int) -> np.ndarray:
    size = n + 1 + s
    rows = np.zeros((n + s, size), dtype=complex)
    for j in range(n):
        rows[j, :n + 1] = S[j:j + n + 1]
        if j < s:
            rows[j, n + 1 + j] = 1.0
    for j in range(s):
        rows[n + j, j] = 1.0
    return rows


def confluent_limit(md: MomentData, s: int) -> ComplexPoly:
    """Exact ``eps -> 0`` limit of the scaled augmented generating polynomial."""
    n = md.n
    if s == 0:
        return generating_poly(md)
    rows = _confluent_rows(md.shifted(), n, s)
    full = bordered_poly(rows)
    return ComplexPoly((-1) ** s * full[:n + 1], scale=hadamard_bound(rows))


def _neville_at_zero(xs, ys) -> np.ndarray:
    P = [np.asarray(y, dtype=complex) for y in ys]
    k = len(xs)
    for lvl in range(1, k):
        P = [(-xs[i + lvl] * P[i] + xs[i] * P[i + 1]) / (xs[i] - xs[i + lvl]) for i in range(k - lvl)]
    return P[0]


def ladder_limit(md: MomentData, s: int, levels: int = LADDER_LEVELS, start: float = LADDER_START,
                 tol: float = LADDER_TOL):
    """Extrapolated limit from ``eps_k = k*e0`` with ``e0 = start/s, start/(2s), ...``.

    Polynomial (Neville) extrapolation in ``e0`` over ``levels`` scales.  The
    relative change when the finest level is dropped is returned alongside
    the estimate.

    Raises
    ------
    ExtrapolationUnstable
        If that change exceeds ``tol``.
    """
    scales = [start / s / 2 ** i for i in range(levels)]
    values = [
        AugmentedMoments(md, tuple(e0 * np.arange(1, s + 1))).scaled_generating_poly() for e0 in scales
    ]
    est = _neville_at_zero(scales, values)
    coarse = _neville_at_zero(scales[:-1], values[:-1])
    change = float(np.max(np.abs(est - coarse)) / max(np.max(np.abs(est)), 1e-300))
    table = [{"e0": e0, "coeffs": [[float(c.real), float(c.imag)] for c in v]} for e0, v in zip(scales, values)]
    if change > tol:
        raise ExtrapolationUnstable(f"extrapolants differ by {change:.3e} relative (tolerance {tol:g})")
    return est, change, table


@dataclass
class GStarResult:
    """Non-regular generating polynomial and how it was obtained."""

    poly: ComplexPoly
    s_aug: int
    method: str
    nonzero_roots: np.ndarray
    diagnostics: dict = field(default_factory=dict)

    def to_dict(self):
        return {
            "s_aug": self.s_aug,
            "method": self.method,
            "coeffs": [[float(c.real), float(c.imag)] for c in self.poly.coeffs],
            "nonzero_roots": [[float(z.real), float(z.imag)] for z in self.nonzero_roots],
            "diagnostics": self.diagnostics,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)


def nonregular_generating_poly(md: MomentData, method: str = "exact", zero_rel: float = ZERO_REL) -> GStarResult:
    """Non-regular generating polynomial ``G*`` of a degenerate system.

    The number of artificial terms is the smallest ``s_aug = 1, 2, ...`` for
    which the confluent limit is not numerically zero (largest coefficient
    below ``zero_rel`` times the Hadamard bound); the search stops at
    ``n - 1``.  The first ``s_aug`` coefficients of ``G*`` vanish; the
    remaining ones define a polynomial whose roots are the nodes.

    Parameters
    ----------
    md : MomentData
    method : {"exact", "ladder"}
        ``"exact"`` evaluates the limit as a single determinant; ``"ladder"``
        extrapolates augmented determinants over decreasing ``eps`` scales.

    Raises
    ------
    NotDegenerate
        If the ordinary generating polynomial is not zero.
    Degenerate
        If no ``s_aug < n`` gives a non-zero polynomial (reason
        ``"inconsistent"``).
    ExtrapolationUnstable
        From the ladder method.
    """
    if method not in ("exact", "ladder"):
        raise ValueError("method must be 'exact' or 'ladder'")
    g = generating_poly(md)
    if not g.is_zero(zero_rel):
        raise NotDegenerate("generating polynomial is not zero; use prony_solve")
    n = md.n
    for s in range(1, n):
        exact = confluent_limit(md, s)
        if exact.is_zero(zero_rel):
            continue
        diagnostics = {"scale": exact.scale, "max_abs": exact.max_abs}
        if method == "ladder":
            coeffs, change, table = ladder_limit(md, s)
            poly = ComplexPoly(coeffs, scale=exact.scale)
            diagnostics.update(ladder_change=change, ladder=table)
        else:
            poly = exact
        tail = ComplexPoly(poly.coeffs[s:])
        roots = aberth_roots(tail.trimmed().coeffs) if tail.degree >= 1 else np.zeros(0, dtype=complex)
        return GStarResult(poly, s, method, roots, diagnostics)
    raise Degenerate("inconsistent", f"confluent limit vanishes for every s_aug < {n}")


def recover_system(md: MomentData, method: str = "exact") -> NodeSet:
    """Nodes from ``G*`` and weights from the first moments.

    If the generating polynomial does not vanish its own non-zero roots are
    used instead.

    Weights solve the first ``m`` equations for the ``m`` recovered nodes; the
    moment residual over all ``2n`` equations is left to the caller
    (:func:`apo.moments.moment_residual`).
    """
    try:
        z = nonregular_generating_poly(md, method=method).nonzero_roots
    except NotDegenerate:
        # non-regular through a degree drop or zero roots: keep the non-zero roots
        g = generating_poly(md)
        z = poly_roots(ComplexPoly(g.coeffs))
        z = z[np.abs(z) > 1e-8]
    Z = vandermonde_solve(z, md.shifted()[: len(z)])
    return NodeSet(z, Z, convention="Z")


def admissibility_residual(md: MomentData, method: str = "exact") -> float:
    """Moment residual of :func:`recover_system` plus the distance from the unit circle."""
    ns = recover_system(md, method=method)
    return max(moment_residual(ns, md), float(np.max(np.abs(np.abs(ns.nodes) - 1.0))))


@dataclass
class OmegaPerturbRow:
    eps: float
    vanishing_weight: float
    ratio: float
    vanishing_node: complex
    node_drift: float

    def to_dict(self):
        return {
            "eps": self.eps,
            "vanishing_weight": self.vanishing_weight,
            "ratio": self.ratio,
            "vanishing_node": [self.vanishing_node.real, self.vanishing_node.imag],
            "node_drift": self.node_drift,
        }


@dataclass
class OmegaPerturbReport:
    s: int
    alpha: int
    omega: float
    rows: list
    degenerate_at_zero: bool

    @property
    def ratio_spread(self) -> float:
        r = [row.ratio for row in self.rows]
        return max(r) / min(r)

    @property
    def drift_ok(self) -> bool:
        return all(row.node_drift < 10 * row.eps for row in self.rows)

    @property
    def ok(self) -> bool:
        return self.degenerate_at_zero and self.ratio_spread <= 10 and self.drift_ok

    def to_dict(self):
        return {
            "s": self.s,
            "alpha": self.alpha,
            "omega": self.omega,
            "degenerate_at_zero": self.degenerate_at_zero,
            "ratio_spread": self.ratio_spread,
            "drift_ok": self.drift_ok,
            "rows": [r.to_dict() for r in self.rows],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)


def omega_perturb_validate(s: int, alpha: int = 1, eps_schedule=(1e-2, 1e-3, 1e-4)) -> OmegaPerturbReport:
    """Track the regular ``mu = 2`` solutions as ``omega + eps -> omega``.

    ``omega = omega_set(s)[alpha]``.  For each ``eps`` the regular system
    of order ``n = 2s - 1`` is solved; the smallest weight should vanish like
    ``O(eps)`` while the other nodes approach those of
    :func:`apo.solutions.solve_mu_two`.
    """
    if s < 2:
        raise ValueError("s must be >= 2")
    omega = omega_set(s).values[alpha - 1]
    n = 2 * s - 1
    target = solve_mu_two(s, alpha).nodes
    try:
        prony_solve(MomentData.delta(n, 2, omega))
        degenerate = False
    except Degenerate:
        degenerate = True
    rows = []
    for eps in eps_schedule:
        ns = prony_solve(MomentData.delta(n, 2, omega + eps))
        w = np.abs(ns.weights)
        k = int(np.argmin(w))
        rest = np.delete(ns.nodes, k)
        rows.append(OmegaPerturbRow(float(eps), float(w[k]), float(w[k] / eps), complex(ns.nodes[k]),
                                    match_multisets(rest, target)))
    return OmegaPerturbReport(s, alpha, float(omega), rows, degenerate)


def corner_cofactor(md: MomentData) -> np.ndarray:
    """Derivative of the generating polynomial with respect to the last moment.

    The determinant is linear in the last moment row, so this is the bordered
    determinant with that row replaced by the last unit vector.
    """
    rows = md.hankel_rows().astype(complex)
    rows[-1] = 0.0
    rows[-1, -1] = 1.0
    return bordered_poly(rows)


def tail_perturb_poly(md: MomentData, eps: complex) -> ComplexPoly:
    """Generating polynomial after adding ``eps`` to the corner moment.

    Equal to ``G + eps*T`` with ``T`` from :func:`corner_cofactor`.
    """
    g = generating_poly(md)
    return ComplexPoly(g.coeffs + eps * corner_cofactor(md), scale=g.scale)


def mirror_roots(md: MomentData, s: int, mu: int) -> float:
    """Distance between the roots of the corner cofactor and the reciprocals
    of the roots of ``R_{s-1}(omega; z^mu)``.

    Returns ``inf`` when the cofactor is zero.
    """
    t = ComplexPoly(corner_cofactor(md), scale=hadamard_bound(md.hankel_rows()))
    if t.is_zero() or t.degree < 1:
        return np.inf
    rt = aberth_roots(t.trimmed().coeffs)
    rt = rt[np.abs(rt) > 1e-8]
    rc = R_coeffs(s, md.omega)
    spread = np.zeros((s - 1) * mu + 1)
    spread[::mu] = rc
    rr = aberth_roots(np.trim_zeros(spread, "b"))
    return match_multisets(rt, 1.0 / rr)


@dataclass
class TailPerturbRow:
    delta: float
    eps: complex
    near_nodes: float
    near_half: float
    cluster_weight: float

    def to_dict(self):
        return {
            "delta": self.delta,
            "eps": [self.eps.real, self.eps.imag],
            "near_nodes": self.near_nodes,
            "near_half": self.near_half,
            "cluster_weight": self.cluster_weight,
        }


@dataclass
class TailPerturbReport:
    mu: int
    s: int
    alpha: int
    omega: float
    rows: list

    @property
    def converging(self) -> bool:
        """Distances and cluster weights shrink as ``delta`` does."""
        keys = ("near_nodes", "near_half", "cluster_weight")
        return all(
            getattr(b, k) < getattr(a, k) for a, b in zip(self.rows, self.rows[1:]) for k in keys
        )

    def to_dict(self):
        return {
            "mu": self.mu,
            "s": self.s,
            "alpha": self.alpha,
            "omega": self.omega,
            "converging": self.converging,
            "rows": [r.to_dict() for r in self.rows],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)


def tail_perturb_validate(mu: int, s: int, alpha: int = 1, deltas=(1e-2, 1e-3, 1e-4)) -> TailPerturbReport:
    """Corner-moment regularization for ``n = s*mu - 1``, ``mu >= 3``.

    For each ``delta`` the moments are built at ``omega + delta`` with
    ``omega = -2 cos(pi*alpha/(s+1))``, and the corner moment is set to
    ``eps = -alpha_k / (2 lead(T))`` with ``alpha_k = g_{mu-1} r_{s-1}``.
    The perturbed generating polynomial then has ``mu - 1`` roots near the
    ``(mu-1)``-th roots of ``1/2`` (whose weights should vanish) and the
    others near the closed-form nodes.
    """
    from .chebyshev import branch_omega, r_eval
    from .solutions import general_nodes

    if mu < 3 or s < 2:
        raise ValueError("need mu >= 3 and s >= 2")
    n = s * mu - 1
    omega = branch_omega(s, alpha)
    nodes = general_nodes(mu, s, alpha)
    half = 0.5 ** (1.0 / (mu - 1)) * np.exp(2j * np.pi * np.arange(mu - 1) / (mu - 1))
    rows = []
    for delta in deltas:
        w = omega + delta
        md = MomentData.delta(n, mu, w)
        g = generating_poly(md).coeffs
        t = corner_cofactor(md)
        lead = t[(s - 1) * mu]
        eps = complex(-0.5 * g[mu - 1] * r_eval(s - 1, w) / lead)
        # the polynomial is tiny next to the Hadamard bound here, so the
        # generic zero test in prony_solve would reject it; solve directly
        p = tail_perturb_poly(md, eps)
        z = aberth_roots(ComplexPoly(p.coeffs).trimmed().coeffs)
        weights = vandermonde_solve(z, md.with_sigma(n, eps).shifted()[:n])
        cost = np.abs(z[:, None] - half[None, :])
        r, c = linear_sum_assignment(cost)
        near_half = float(np.max(cost[r, c]))
        rest = np.delete(z, r)
        rows.append(TailPerturbRow(float(delta), eps, match_multisets(rest, nodes), near_half,
                                   float(np.max(np.abs(weights[r])))))
    return TailPerturbReport(mu, s, alpha, float(omega), rows)
