"""The recurrence polynomials ``r_k`` and the admissible sets of ``omega``.

``r_{-1} = 0``, ``r_0 = 1``, ``r_k(w) = -w r_{k-1}(w) - r_{k-2}(w)``, so that
``r_k(w) = U_k(-w/2)`` with ``U_k`` the Chebyshev polynomial of the second kind.
Coefficient vectors are stored constant-first.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import comb

import numpy as np


def r_eval(k: int, omega):
    """Value of ``r_k`` at ``omega`` via the three-term recurrence.

    Works elementwise when ``omega`` is an array.
    """
    if k < -1:
        raise ValueError("k must be >= -1")
    omega = np.asarray(omega)
    prev = np.zeros_like(omega, dtype=np.result_type(omega, float))
    cur = np.ones_like(prev)
    if k == -1:
        return prev if prev.ndim else prev.item()
    for _ in range(k):
        prev, cur = cur, -omega * cur - prev
    return cur if cur.ndim else cur.item()


def r_values(k_max: int, omega) -> list:
    """``[r_0(omega), ..., r_{k_max}(omega)]``."""
    out = [1.0]
    prev, cur = 0.0, 1.0
    for _ in range(k_max):
        prev, cur = cur, -omega * cur - prev
        out.append(cur)
    return out


def r_coeffs(k: int) -> np.ndarray:
    """Coefficients of ``r_k`` from the explicit binomial form.

    ``r_k(w) = (-1)^k sum_{j=0}^{k/2} (-1)^j C(k-j, j) w^{k-2j}``.
    """
    if k < 0:
        raise ValueError("k must be >= 0")
    c = np.zeros(k + 1)
    for j in range(k // 2 + 1):
        c[k - 2 * j] = (-1) ** (k + j) * comb(k - j, j)
    return c


@dataclass(frozen=True)
class OmegaSet:
    """The ``s`` roots ``2 cos(pi*alpha/(s+1))`` of ``r_s``, indexed by ``alpha``."""

    s: int
    values: tuple
    alphas: tuple

    def __iter__(self):
        return iter(zip(self.alphas, self.values))

    def __len__(self):
        return self.s

    def contains(self, omega, tol=1e-12):
        return any(abs(omega - v) <= tol for v in self.values)

    def distance(self, omega):
        return min(abs(omega - v) for v in self.values)


def omega_set(s: int) -> OmegaSet:
    if s < 1:
        raise ValueError("s must be >= 1")
    alphas = tuple(range(1, s + 1))
    values = tuple(2.0 * np.cos(np.pi * a / (s + 1)) for a in alphas)
    return OmegaSet(s, values, alphas)


def branch_omega(s: int, alpha: int) -> float:
    """``omega = -2 cos(phi_alpha)`` with ``phi_alpha = pi*alpha/(s+1)``.

    This is the labelling under which :func:`R_root_set` describes the roots
    of ``R_{s-1}``; note that it runs through ``omega_set(s)`` in reverse.
    """
    if not 1 <= alpha <= s:
        raise ValueError(f"alpha must lie in 1..{s}")
    return -2.0 * np.cos(np.pi * alpha / (s + 1))


def R_coeffs(s: int, omega: float) -> np.ndarray:
    """Coefficients of ``R_{s-1}(omega; t) = sum_{k<s} r_k(omega) t^k``."""
    if s < 1:
        raise ValueError("s must be >= 1")
    return np.array(r_values(s - 1, omega), dtype=float)


def roots_of_unity_signed(count: int, sign: int) -> np.ndarray:
    """All ``count``-th roots of ``sign`` (``+1`` or ``-1``), by increasing angle."""
    offset = 0 if sign > 0 else 1
    return np.exp(1j * np.pi * (2 * np.arange(count) + offset) / count)


def R_root_set(s: int, alpha: int) -> np.ndarray:
    """Roots of ``R_{s-1}(-2cos phi_alpha; t)`` in closed form.

    They are the ``(s+1)``-th roots of ``(-1)^alpha`` with the pair
    ``exp(+-i phi_alpha)`` removed, ``phi_alpha = pi*alpha/(s+1)``.
    """
    if not 1 <= alpha <= s:
        raise ValueError(f"alpha must lie in 1..{s}")
    phi = np.pi * alpha / (s + 1)
    candidates = roots_of_unity_signed(s + 1, (-1) ** alpha)
    excluded = np.exp(1j * np.array([phi, -phi]))
    keep = [t for t in candidates if np.min(np.abs(t - excluded)) > 1e-9]
    return np.array(keep)
