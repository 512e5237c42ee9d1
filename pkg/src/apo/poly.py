"""Dense complex polynomials and a simultaneous-iteration root finder."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .exceptions import NoConvergence

ZERO_THRESHOLD = 1e-10
MAX_ITER = 2000
STEP_TOL = 1e-13


@dataclass(frozen=True, eq=False)
class ComplexPoly:
    """Polynomial ``c_0 + c_1 z + ... + c_d z^d`` (constant first).

    Coefficients below ``1e-10 * max|c|`` count as zero when deciding the
    degree.  ``scale`` is an external magnitude (for a determinant, its
    Hadamard bound) against which the whole polynomial is judged to vanish;
    without it only the exactly-zero polynomial is zero.
    """

    coeffs: np.ndarray
    scale: float | None = None

    def __post_init__(self):
        c = np.atleast_1d(np.asarray(self.coeffs, dtype=complex)).copy()
        if not np.all(np.isfinite(c)):
            raise ValueError("coefficients must be finite")
        c.setflags(write=False)
        object.__setattr__(self, "coeffs", c)

    def __len__(self):
        return len(self.coeffs)

    def __getitem__(self, k):
        return self.coeffs[k]

    def __call__(self, z):
        return np.polynomial.polynomial.polyval(z, self.coeffs)

    @property
    def max_abs(self) -> float:
        return float(np.max(np.abs(self.coeffs))) if len(self.coeffs) else 0.0

    def zero_mask(self, rel=ZERO_THRESHOLD) -> np.ndarray:
        return np.abs(self.coeffs) < rel * self.max_abs

    def is_zero(self, rel=ZERO_THRESHOLD) -> bool:
        m = self.max_abs
        if m == 0.0:
            return True
        return self.scale is not None and m < rel * self.scale

    @property
    def degree(self) -> int:
        """Index of the last coefficient above the zero threshold (-1 for zero)."""
        if self.is_zero():
            return -1
        nz = np.nonzero(~self.zero_mask())[0]
        return int(nz[-1])

    def trimmed(self) -> "ComplexPoly":
        d = self.degree
        return ComplexPoly(self.coeffs[: max(d, 0) + 1], self.scale)

    def is_real(self, rel=1e-12) -> bool:
        return bool(np.max(np.abs(self.coeffs.imag)) <= rel * max(self.max_abs, 1e-300))

    @property
    def real(self) -> np.ndarray:
        return self.coeffs.real.copy()

    def normalized(self) -> np.ndarray:
        """Coefficients divided by the leading (trimmed) coefficient."""
        t = self.trimmed().coeffs
        return t / t[-1]

    @classmethod
    def from_roots(cls, roots, lead=1.0):
        return cls(lead * np.polynomial.polynomial.polyfromroots(roots))


def _initial_guesses(c: np.ndarray) -> np.ndarray:
    d = len(c) - 1
    # largest |c_k/c_d|^(1/(d-k)): of the order of the largest root modulus,
    # robust when some roots are tiny or zero
    ratios = np.abs(c[:-1] / c[-1]) ** (1.0 / (d - np.arange(d)))
    radius = float(np.max(ratios)) or 1.0
    k = np.arange(d)
    # irrational offset and a slight radial spread keep the starting points
    # off any symmetry axis of the target polynomial
    angles = 2 * np.pi * k / d + 0.4 + np.sqrt(2) * 0.1
    radii = radius * (0.9 + 0.2 * (k + 0.5) / d)
    return radii * np.exp(1j * angles)


def aberth_roots(coeffs, max_iter: int = MAX_ITER, tol: float = STEP_TOL) -> np.ndarray:
    """All roots of a polynomial given constant-first coefficients.

    Aberth-Ehrlich simultaneous iteration.  The leading coefficient must be
    non-zero.

    Raises
    ------
    NoConvergence
        If the largest Newton-Aberth correction is still above ``tol``
        (relative to the root modulus) after ``max_iter`` sweeps.
    """
    c = np.asarray(coeffs, dtype=complex)
    d = len(c) - 1
    if d < 1:
        return np.zeros(0, dtype=complex)
    if c[-1] == 0:
        raise ValueError("leading coefficient is zero")
    monic = c / c[-1]
    if d == 1:
        return np.array([-monic[0]])
    dmonic = np.polynomial.polynomial.polyder(monic)
    absc = np.abs(monic)
    z = _initial_guesses(monic)
    active = np.ones(d, dtype=bool)
    for _ in range(max_iter):
        pz = np.polynomial.polynomial.polyval(z, monic)
        dpz = np.polynomial.polynomial.polyval(z, dmonic)
        # |p(z)| at the rounding floor: further steps are noise
        floor = 8 * np.finfo(float).eps * np.polynomial.polynomial.polyval(np.abs(z), absc)
        active &= np.abs(pz) > floor
        ratio = np.zeros_like(z)
        np.divide(pz, dpz, out=ratio, where=(dpz != 0) & active)
        diff = z[:, None] - z[None, :]
        np.fill_diagonal(diff, 1.0)
        repulsion = np.sum(1.0 / diff, axis=1) - 1.0
        denom = 1.0 - ratio * repulsion
        delta = np.zeros_like(z)
        np.divide(ratio, denom, out=delta, where=denom != 0)
        z = z - delta
        rel_step = np.abs(delta) / np.maximum(1.0, np.abs(z))
        active &= rel_step >= tol
        if not active.any():
            return z
    raise NoConvergence(
        f"root iteration did not converge in {max_iter} sweeps "
        f"({int(active.sum())} roots still moving)"
    )


def poly_roots(p: ComplexPoly) -> np.ndarray:
    """Roots of ``p`` after trimming negligible leading coefficients."""
    t = p.trimmed()
    if t.degree < 1:
        raise ValueError("polynomial has degree < 1 after trimming")
    return aberth_roots(t.coeffs)


def min_separation(points) -> float:
    z = np.asarray(points, dtype=complex)
    if len(z) < 2:
        return np.inf
    diff = np.abs(z[:, None] - z[None, :])
    np.fill_diagonal(diff, np.inf)
    return float(np.min(diff))


def match_multisets(a, b) -> float:
    """Largest distance under the optimal one-to-one matching of two point sets."""
    from scipy.optimize import linear_sum_assignment

    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    if len(a) != len(b):
        return np.inf
    if len(a) == 0:
        return 0.0
    cost = np.abs(a[:, None] - b[None, :])
    rows, cols = linear_sum_assignment(cost)
    return float(np.max(cost[rows, cols]))
