"""Eigenvalues of the intersection matrix and derived spectral quantities."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from scipy.linalg import eigh_tridiagonal

from .arrays import IntersectionArray
from .errors import DegenerateSpectrum, GapViolation

MATCH_TOL = 1e-9
GAP_TOL = 1e-6


@dataclass(frozen=True)
class Spectrum:
    """Distinct eigenvalues, descending, with ``eigenvalues[0] == k`` exactly."""

    eigenvalues: tuple[float, ...]
    m_integer: int | None = None

    @property
    def k(self) -> float:
        return self.eigenvalues[0]

    @property
    def theta(self) -> float:
        return self.eigenvalues[1]

    @property
    def m(self) -> float:
        return self.eigenvalues[-1]

    @property
    def xi(self) -> float:
        return max(self.theta, -self.m)


def intersection_matrix(array: IntersectionArray) -> list[list[int]]:
    """Tridiagonal matrix with rows (c_i, a_i, b_i)."""
    d = array.d
    L = [[0] * (d + 1) for _ in range(d + 1)]
    for i in range(d + 1):
        if i > 0:
            L[i][i - 1] = array.c_at(i)
        L[i][i] = array.a_at(i)
        if i < d:
            L[i][i + 1] = array.b_at(i)
    return L


def char_poly_at(array: IntersectionArray, z: int | Fraction) -> int | Fraction:
    """det(zI - L) by the three-term recurrence, in exact arithmetic."""
    prev, cur = 1, z - array.a_at(0)
    for i in range(1, array.d + 1):
        prev, cur = cur, (z - array.a_at(i)) * cur - array.b_at(i - 1) * array.c_at(i) * prev
    return cur


def exact_integer_root(array: IntersectionArray, x: float) -> int | None:
    """``round(x)`` when it is an exact root of the characteristic polynomial."""
    z = round(x)
    if abs(x - z) < GAP_TOL and char_poly_at(array, z) == 0:
        return int(z)
    return None


def spectrum(array: IntersectionArray) -> Spectrum:
    k, d = array.k, array.d
    diag = np.array(array.a, dtype=float)
    off = np.array([math.sqrt(array.b_at(i) * array.c_at(i + 1)) for i in range(d)])
    if d == 0:
        vals = diag
    else:
        vals = eigh_tridiagonal(diag, off, eigvals_only=True)
    vals = sorted(vals.tolist(), reverse=True)
    if abs(vals[0] - k) > MATCH_TOL * k:
        raise DegenerateSpectrum(f"largest eigenvalue {vals[0]!r} differs from k = {k}")
    vals[0] = float(k)
    for i in range(1, len(vals)):
        z = exact_integer_root(array, vals[i])
        if z is not None:
            vals[i] = float(z)
    for x, y in zip(vals, vals[1:]):
        if x - y < GAP_TOL * k:
            raise DegenerateSpectrum(f"eigenvalues {x!r} and {y!r} are not distinct")
    if not vals[-1] < 0:
        raise DegenerateSpectrum(f"smallest eigenvalue {vals[-1]!r} is not negative")
    return Spectrum(tuple(vals), exact_integer_root(array, vals[-1]))


def smallest_eigenvalue_integer(array: IntersectionArray, spec: Spectrum) -> int | None:
    return exact_integer_root(array, spec.m)


def delsarte_bound(array: IntersectionArray, spec: Spectrum) -> Fraction | float:
    """Upper bound 1 - k/m on clique size; exact when m is an integer."""
    if spec.m_integer is not None:
        return 1 - Fraction(array.k, spec.m_integer)
    return 1 - array.k / spec.m


def delsarte_clique_cap(array: IntersectionArray, spec: Spectrum) -> int:
    bound = delsarte_bound(array, spec)
    if isinstance(bound, Fraction):
        return math.floor(bound)
    return math.floor(bound + MATCH_TOL * array.k)


@dataclass(frozen=True)
class EigenGap:
    theta: float
    bound: Fraction  # k (1 - 1/(8 d^2))
    slack: float


def check_eigen_gap(array: IntersectionArray, spec: Spectrum) -> EigenGap:
    """theta <= k(1 - 1/(8d^2)), with a 1e-9 k guard band."""
    k, d = array.k, array.d
    bound = k * (1 - Fraction(1, 8 * d * d))
    slack = float(bound) - spec.theta
    if slack < -MATCH_TOL * k:
        raise GapViolation(f"theta = {spec.theta!r} exceeds k(1 - 1/(8d^2)) = {bound}")
    return EigenGap(spec.theta, bound, slack)
