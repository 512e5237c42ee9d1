"""Trigonometric polynomials and amplitude-phase operators.

A trigonometric polynomial of degree ``n`` is

    T(x) = a0 + sum_{k=1..n} (a_k cos kx + b_k sin kx)

and an amplitude-phase operator (APO) with terms ``(X_j, lambda_j)`` maps it to

    H(T)(x) = sum_j X_j * T(x - lambda_j).

Harmonic ``k`` of ``H(T)`` is harmonic ``k`` of ``T`` rotated and scaled by the
power sum ``p_k = sum_j X_j exp(-i k lambda_j)``, so an operator that returns
exactly the ``mu``-th harmonic is one whose power sums satisfy
``p_k = delta_{k,mu}`` for ``k = 1..n``.  The constant term is multiplied by
``omega = p_0 = sum_j X_j``.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Iterable

import numpy as np

from .exceptions import DegreeExceeded, MaskViolation

DEFAULT_GRID = None
GRID_PER_HARMONIC = 32
MIN_GRID = 256
DEFAULT_TOL = 1e-9


def wrap_phase(phase):
    """Map angles onto the half-open interval (-pi, pi]."""
    wrapped = np.pi - np.mod(np.pi - np.asarray(phase, dtype=float), 2 * np.pi)
    if np.ndim(wrapped) == 0:
        return float(wrapped)
    return wrapped


@dataclass(frozen=True)
class TrigPolynomial:
    """Real trigonometric polynomial ``a0 + sum a_k cos kx + b_k sin kx``.

    Parameters
    ----------
    coeffs : sequence of (a_k, b_k) pairs
        Harmonic coefficients for ``k = 1..n``.
    a0 : float
        Constant term.
    """

    coeffs: tuple
    a0: float = 0.0

    def __post_init__(self):
        pairs = tuple((float(a), float(b)) for a, b in self.coeffs)
        if not pairs:
            raise ValueError("a trigonometric polynomial needs at least one harmonic")
        flat = [self.a0] + [v for pair in pairs for v in pair]
        if not all(math.isfinite(v) for v in flat):
            raise ValueError("coefficients must be finite")
        object.__setattr__(self, "coeffs", pairs)
        object.__setattr__(self, "a0", float(self.a0))

    @property
    def degree(self) -> int:
        return len(self.coeffs)

    @property
    def a(self) -> np.ndarray:
        return np.array([c[0] for c in self.coeffs])

    @property
    def b(self) -> np.ndarray:
        return np.array([c[1] for c in self.coeffs])

    @classmethod
    def from_harmonics(cls, n, harmonics, a0=0.0):
        """Build a degree-``n`` polynomial from a ``{k: (a_k, b_k)}`` mapping."""
        coeffs = [(0.0, 0.0)] * n
        for k, (ak, bk) in harmonics.items():
            if not 1 <= k <= n:
                raise ValueError(f"harmonic index {k} outside 1..{n}")
            coeffs[k - 1] = (ak, bk)
        return cls(tuple(coeffs), a0)

    @classmethod
    def random(cls, n, rng=None, a0=None):
        """Coefficients drawn uniformly from [-1, 1]."""
        rng = np.random.default_rng(rng)
        ab = rng.uniform(-1.0, 1.0, size=(n, 2))
        if a0 is None:
            a0 = 0.0
        return cls(tuple(map(tuple, ab)), a0)

    def to_dict(self):
        return {"n": self.degree, "a0": self.a0, "coeffs": [list(c) for c in self.coeffs]}

    @classmethod
    def from_dict(cls, data):
        coeffs = data["coeffs"]
        if "n" in data and int(data["n"]) != len(coeffs):
            raise ValueError(f"n = {data['n']} but {len(coeffs)} coefficient pairs given")
        return cls(tuple(tuple(c) for c in coeffs), data.get("a0", 0.0))


@dataclass(frozen=True)
class Harmonic:
    mu: int
    a: float
    b: float

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        return self.a * np.cos(self.mu * x) + self.b * np.sin(self.mu * x)


@dataclass(frozen=True)
class Apo:
    """Amplitude-phase operator: ``sum_j X_j T(x - lambda_j)``.

    ``terms`` holds ``(amplitude, phase)`` pairs with phases wrapped to
    (-pi, pi].  ``mu`` is the harmonic the operator extracts and
    ``valid_degree`` the largest degree on which extraction is exact.
    """

    terms: tuple
    mu: int
    valid_degree: int

    def __post_init__(self):
        terms = tuple((float(x), wrap_phase(float(lam))) for x, lam in self.terms)
        if not all(math.isfinite(x) and math.isfinite(lam) for x, lam in terms):
            raise ValueError("amplitudes and phases must be finite reals")
        if self.mu < 1 or self.valid_degree < 1:
            raise ValueError("mu and valid_degree must be positive")
        object.__setattr__(self, "terms", terms)

    @property
    def amplitudes(self) -> np.ndarray:
        return np.array([t[0] for t in self.terms])

    @property
    def phases(self) -> np.ndarray:
        return np.array([t[1] for t in self.terms])

    @property
    def nodes(self) -> np.ndarray:
        """Unit-circle nodes ``z_j = exp(-i lambda_j)``."""
        return np.exp(-1j * self.phases)

    @property
    def omega(self) -> float:
        return float(np.sum(self.amplitudes))

    @property
    def order(self) -> int:
        """Number of non-zero terms with pairwise distinct ``exp(i lambda)``."""
        keep = self.amplitudes != 0
        z = self.nodes[keep]
        distinct = []
        for zj in z:
            if all(abs(zj - w) > 1e-12 for w in distinct):
                distinct.append(zj)
        return len(distinct)

    @classmethod
    def from_nodes(cls, nodes, amplitudes, mu, valid_degree):
        phases = -np.angle(np.asarray(nodes, dtype=complex))
        return cls(tuple(zip(np.asarray(amplitudes, dtype=float), phases)), mu, valid_degree)

    def to_dict(self):
        return {
            "mu": self.mu,
            "valid_degree": self.valid_degree,
            "terms": [list(t) for t in self.terms],
        }

    @classmethod
    def from_dict(cls, data):
        return cls(tuple(tuple(t) for t in data["terms"]), int(data["mu"]), int(data["valid_degree"]))


def dump_json(obj, path):
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(obj.to_dict(), fh, indent=2)
        fh.write("\n")


def load_apo(path) -> Apo:
    with open(path, encoding="utf-8") as fh:
        return Apo.from_dict(json.load(fh))


def load_poly(path) -> TrigPolynomial:
    with open(path, encoding="utf-8") as fh:
        return TrigPolynomial.from_dict(json.load(fh))


def eval_poly(p: TrigPolynomial, x):
    """Evaluate ``p`` at ``x`` (scalar or array)."""
    x = np.asarray(x, dtype=float)
    k = np.arange(1, p.degree + 1)
    kx = np.multiply.outer(x, k)
    out = p.a0 + np.cos(kx) @ p.a + np.sin(kx) @ p.b
    return float(out) if out.ndim == 0 else out


def apply_apo(op: Apo, p: TrigPolynomial, x):
    """Evaluate ``H(p)(x) = sum_j X_j p(x - lambda_j)``."""
    x = np.asarray(x, dtype=float)
    out = np.zeros_like(x)
    for amp, lam in op.terms:
        out = out + amp * eval_poly(p, x - lam)
    return float(out) if np.ndim(out) == 0 else out


def power_sum(op: Apo, beta: int) -> complex:
    """``sum_j X_j z_j**beta`` with ``z_j = exp(-i lambda_j)``."""
    if beta < 0:
        raise ValueError("beta must be non-negative")
    return complex(np.sum(op.amplitudes * np.exp(-1j * beta * op.phases)))


def power_spectrum(op: Apo, beta_max: int) -> np.ndarray:
    """Power sums for ``beta = 0..beta_max`` as a complex array."""
    beta = np.arange(beta_max + 1)
    return np.exp(-1j * np.multiply.outer(beta, op.phases)) @ op.amplitudes


def apply_to_coeffs(op: Apo, p: TrigPolynomial) -> TrigPolynomial:
    """Coefficients of ``H(p)``; exact for every degree."""
    n = p.degree
    spec = power_spectrum(op, n)
    c = spec[1:] * (p.a - 1j * p.b)
    return TrigPolynomial(tuple(zip(c.real, -c.imag)), p.a0 * spec[0].real)


@dataclass(frozen=True)
class ExtractionReport:
    harmonic: Harmonic
    offset: float
    max_deviation: float
    grid_size: int

    @property
    def ok(self):
        return self.max_deviation < DEFAULT_TOL


def grid_size(degree: int) -> int:
    """Default sample count: 32 points per harmonic, at least 256."""
    return max(MIN_GRID, GRID_PER_HARMONIC * (degree + 1))


def extract_harmonic(op: Apo, p: TrigPolynomial, grid: int | None = DEFAULT_GRID) -> ExtractionReport:
    """Read harmonic ``op.mu`` from ``p`` and measure how well ``op`` produces it.

    The deviation is ``max |H(p)(x) - (a0*omega + tau_mu(x))|`` over ``grid``
    uniform points on [0, 2pi) (default :func:`grid_size` of the operator's
    valid degree).  A constant term in ``p`` is not subtracted; it
    shows up as ``offset = a0 * omega``.

    Raises
    ------
    DegreeExceeded
        If ``p.degree > op.valid_degree``.
    """
    if p.degree > op.valid_degree:
        raise DegreeExceeded(
            f"polynomial degree {p.degree} exceeds operator valid_degree {op.valid_degree}"
        )
    if grid is None:
        grid = grid_size(max(op.valid_degree, p.degree))
    mu = op.mu
    if mu <= p.degree:
        harmonic = Harmonic(mu, *p.coeffs[mu - 1])
    else:
        harmonic = Harmonic(mu, 0.0, 0.0)
    offset = p.a0 * op.omega
    x = np.linspace(0.0, 2 * np.pi, grid, endpoint=False)
    dev = np.max(np.abs(apply_apo(op, p, x) - (offset + harmonic(x))))
    return ExtractionReport(harmonic, offset, float(dev), grid)


def mask_allows(beta: int, mu: int, n: int) -> bool:
    """Whether the power sum of order ``beta`` may be non-zero.

    Three periodic patterns are used, depending on the family:

    * ``mu == 1`` -- nodes are ``(n+2)``-th roots of +-1; allowed orders are
      ``1`` and ``(n+2)k - 1, (n+2)k, (n+2)k + 1``.
    * ``mu == n`` -- nodes are ``n``-th roots of unity; allowed orders are the
      multiples of ``n``.
    * otherwise ``n = s*mu - 1`` and with ``tau = n + mu + 1`` the allowed
      orders are ``mu + tau*k`` and the windows ``[n + tau*k, tau + tau*k]``.
    """
    if beta == mu:
        return True
    if mu == 1:
        period = n + 2
        return beta > 1 and beta % period in (0, 1, period - 1)
    if mu == n:
        return beta % n == 0
    tau = n + mu + 1
    if (beta - mu) % tau == 0:
        return True
    k = beta // tau
    return n + tau * k <= beta <= tau + tau * k or n + tau * (k - 1) <= beta <= tau * k


@dataclass
class MaskReport:
    mu: int
    n: int
    beta_max: int
    tol: float
    spectrum: np.ndarray
    offending: list = field(default_factory=list)

    @property
    def ok(self):
        return not self.offending

    @property
    def nonzero(self):
        return [b for b in range(1, self.beta_max + 1) if abs(self.spectrum[b]) >= self.tol]


def series_mask_check(op: Apo, mu: int, n: int, beta_max: int, tol: float = 1e-10,
                      raise_on_violation: bool = True) -> MaskReport:
    """Check the power-sum spectrum of ``op`` against its family's zero pattern.

    ``n`` is the order of the underlying moment system: the polynomial degree
    for the ``mu = n``, ``mu = 1`` and ``mu = 2`` families, and ``s*mu - 1`` for
    the general family (whose ``valid_degree`` is ``n - 1``).
    """
    spectrum = power_spectrum(op, beta_max)
    offending = [
        b for b in range(1, beta_max + 1)
        if abs(spectrum[b]) >= tol and not mask_allows(b, mu, n)
    ]
    report = MaskReport(mu, n, beta_max, tol, spectrum, offending)
    if offending and raise_on_violation:
        raise MaskViolation(offending, report)
    return report


def moment_order(op: Apo) -> int:
    """Infer the moment-system order ``n`` used by :func:`series_mask_check`."""
    mu, d = op.mu, op.valid_degree
    if mu == 1 or mu == d or (d + 1) % mu == 0:
        return d
    if (d + 2) % mu == 0:
        return d + 1
    return d


def random_polys(n, count, rng=None) -> list:
    rng = np.random.default_rng(rng)
    return [TrigPolynomial.random(n, rng) for _ in range(count)]


def max_extraction_error(op: Apo, polys: Iterable[TrigPolynomial], grid: int | None = DEFAULT_GRID) -> float:
    return max(extract_harmonic(op, p, grid).max_deviation for p in polys)


def kronecker_residual(op: Apo, degree: int | None = None) -> float:
    """``max_beta |p_beta - delta_{beta,mu}|`` over ``beta = 1..degree``."""
    degree = op.valid_degree if degree is None else degree
    spec = power_spectrum(op, degree)[1:]
    target = np.zeros(degree)
    if op.mu <= degree:
        target[op.mu - 1] = 1.0
    return float(np.max(np.abs(spec - target)))

