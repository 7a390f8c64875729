"""Dense complex numerics: smallest singular values and univariate roots.

These back the analytic side of the toolkit.  For a linear map A from C^n to
C^m (m <= n), the quantity computed by :func:`smallest_singular_value` is
inf over unit functionals phi of ||A^* phi||, i.e. the smallest of the m
singular values; it vanishes exactly when A drops rank.  For a scalar-valued
map (one row), it reduces to the Euclidean norm of the gradient.

Root finding uses companion-matrix eigenvalues with Newton polishing and
cluster merging, which is robust through the desk-scale degrees (~30) this
package targets.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .poly import Polynomial
from .scalar import GaussianRational


def smallest_singular_value(matrix) -> float:
    """Smallest singular value of a complex m x n matrix with m <= n.

    Parameters
    ----------
    matrix : array_like
        Complex matrix; must be nonempty, finite, and have no more rows
        than columns.

    Returns
    -------
    float
        sigma_min(A), which is 0 (to machine precision) iff rank(A) < m.
    """
    a = np.asarray(matrix, dtype=complex)
    if a.ndim != 2 or a.size == 0:
        raise ValueError("expected a nonempty 2-d matrix")
    m, n = a.shape
    if m > n:
        raise ValueError(f"expected no more rows than columns, got {m}x{n}")
    if not np.all(np.isfinite(a)):
        raise ValueError("matrix entries must be finite")
    return float(np.linalg.svd(a, compute_uv=False)[-1])


@dataclass(frozen=True)
class Root:
    value: complex
    multiplicity: int
    residual: float  # |p(value)|, unnormalized


@dataclass(frozen=True)
class RootSet:
    """All roots of a univariate polynomial, clustered by multiplicity."""

    roots: tuple[Root, ...]
    degree: int
    coeff_norm: float  # max |coefficient|, the normalization for tolerances

    def total_multiplicity(self) -> int:
        return sum(r.multiplicity for r in self.roots)

    def values(self) -> list[complex]:
        """Roots repeated with multiplicity."""
        out: list[complex] = []
        for r in self.roots:
            out.extend([r.value] * r.multiplicity)
        return out


def univariate_roots(
    coeffs: Sequence[complex],
    tol: float = 1e-8,
    cluster_radius: float = 1e-6,
) -> RootSet:
    """All complex roots of sum(coeffs[k] * z^k).

    Parameters
    ----------
    coeffs : sequence of complex
        Ascending-degree coefficients; the leading coefficient must be
        nonzero after trimming trailing zeros.
    tol : float
        Residual quality target relative to the max coefficient magnitude.
        Roots are never silently dropped (multiplicities always sum to the
        degree); callers compare ``residual / coeff_norm`` against this.
    cluster_radius : float
        Roots closer than this merge into one root with a multiplicity
        estimate.
    """
    c = [complex(x) for x in coeffs]
    while c and c[-1] == 0:
        c.pop()
    if not c:
        raise ValueError("the zero polynomial has no well-defined roots")
    deg = len(c) - 1
    if deg == 0:
        raise ValueError("a nonzero constant has no roots")
    norm = max(abs(x) for x in c)
    arr = np.array(c, dtype=complex) / norm

    # companion matrix of the monic normalization
    monic = arr / arr[-1]
    comp = np.zeros((deg, deg), dtype=complex)
    if deg > 1:
        comp[1:, :-1] = np.eye(deg - 1)
    comp[:, -1] = -monic[:-1]
    raw = np.linalg.eigvals(comp)

    dp = np.polynomial.polynomial.polyder(arr)
    polished = [_newton_polish(z, arr, dp) for z in raw]
    clusters = _cluster(polished, cluster_radius)
    roots = []
    for pts in clusters:
        center = sum(pts) / len(pts)
        residual = abs(np.polynomial.polynomial.polyval(center, arr)) * norm
        roots.append(Root(complex(center), len(pts), float(residual)))
    roots.sort(key=lambda r: (r.value.real, r.value.imag))
    return RootSet(tuple(roots), deg, float(norm))


def _newton_polish(z: complex, coeffs: np.ndarray, dcoeffs: np.ndarray, iters: int = 12) -> complex:
    best = z
    best_val = abs(np.polynomial.polynomial.polyval(z, coeffs))
    for _ in range(iters):
        fz = np.polynomial.polynomial.polyval(z, coeffs)
        dz = np.polynomial.polynomial.polyval(z, dcoeffs)
        if dz == 0 or not np.isfinite(dz) or not np.isfinite(fz):
            break
        z = z - fz / dz
        val = abs(np.polynomial.polynomial.polyval(z, coeffs))
        if val < best_val:
            best, best_val = z, val
        if val == 0.0:
            break
    return complex(best)


def _cluster(points: Sequence[complex], radius: float) -> list[list[complex]]:
    """Greedy union of points at pairwise distance < radius (transitively)."""
    order = sorted(range(len(points)), key=lambda i: (points[i].real, points[i].imag))
    clusters: list[list[complex]] = []
    for i in order:
        z = points[i]
        for cl in clusters:
            if any(abs(z - w) < radius for w in cl):
                cl.append(z)
                break
        else:
            clusters.append([z])
    return clusters


def poly_to_coeffs(p: Polynomial) -> list[complex]:
    """Ascending complex coefficients of a polynomial in a single variable.

    The polynomial may live in a larger context as long as only one variable
    occurs.  Coefficients are rescaled before float conversion when their
    magnitudes would overflow, which leaves the roots unchanged.
    """
    support = p.support_vars()
    if len(support) > 1:
        raise ValueError(f"polynomial involves several variables: {support}")
    if p.is_zero():
        return []
    if not support:
        return [p.constant_value().to_complex()]
    i = p.vars.index(support[0])
    deg = max(e[i] for e in p.terms)
    exact: list[GaussianRational] = [GaussianRational(0)] * (deg + 1)
    for e, c in p.terms.items():
        exact[e[i]] = c
    shift = _scaling_shift(exact)
    return [_shifted_float(c, shift) for c in exact]


def _scaling_shift(coeffs: Sequence[GaussianRational]) -> int:
    """Power-of-two shift that brings the largest coefficient near 1."""
    top = -(10**9)
    for c in coeffs:
        for part in (c.re, c.im):
            if part:
                mag = part.numerator.bit_length() - part.denominator.bit_length()
                top = max(top, mag)
    if top < -(10**8):
        return 0
    return -top if abs(top) > 500 else 0


def _shifted_float(c: GaussianRational, shift: int) -> complex:
    if shift == 0:
        return c.to_complex()
    return complex(
        _fraction_shift_float(c.re, shift), _fraction_shift_float(c.im, shift)
    )


def _fraction_shift_float(x: Fraction, shift: int) -> float:
    if not x:
        return 0.0
    if shift >= 0:
        return float(Fraction(x.numerator << shift, x.denominator))
    return float(Fraction(x.numerator, x.denominator << (-shift)))


def min_gram_eigenvalue(matrix) -> float:
    """Least eigenvalue of A A^*; independent cross-check for sigma_min^2."""
    a = np.asarray(matrix, dtype=complex)
    gram = a @ a.conj().T
    return float(np.min(np.linalg.eigvalsh(gram)))


def norm2(vector) -> float:
    return float(math.sqrt(sum(abs(x) ** 2 for x in vector)))
