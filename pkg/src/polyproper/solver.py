"""Numeric solving of square polynomial systems f(x) = y and fiber counting.

The pipeline is exact elimination first, floating point second: the target
y enters the coefficient field exactly (floats are rationals), the system is
cascaded down to one variable, and only root extraction, back-substitution,
and Newton refinement run in floating point.  Extraneous candidates that
resultants introduce are killed by the final residual check against the full
system.

Scale contract: square maps with n <= 3 and component degrees <= 10.
Targets for degree estimation are drawn from a box with re/im uniform in
[-2, 2], snapped to a dyadic grid (multiples of 1/4096) so the exact
elimination never sees 53-bit denominators.  Sampling is seeded and split
per target, so a fixed seed reproduces the estimate no matter how targets
are scheduled.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .elimination import EliminationStage, as_univariate, degree_in, eliminate
from .numlin import norm2, poly_to_coeffs, univariate_roots
from .poly import Polynomial
from .polymap import PolyMap
from .scalar import GaussianRational

MAX_DIM = 3
MAX_COMPONENT_DEGREE = 10
DEDUP_RADIUS = 1e-6
_CANDIDATE_CAP = 20000


class PositiveDimensionalFiberError(Exception):
    """The fiber is not a finite point set (elimination degenerated)."""


@dataclass(frozen=True)
class FiberSolution:
    point: tuple[complex, ...]
    residual: float  # ||f(point) - y||
    multiple: bool  # solution absorbed several root branches


@dataclass(frozen=True)
class DegreeEstimate:
    """Sampled fiber counts and the resulting geometric-degree estimate."""

    mu: int
    histogram: dict[int, int]
    samples: int
    seed: int
    degenerate: int
    box: float

    def to_dict(self) -> dict:
        return {
            "mu": self.mu,
            "histogram": {str(k): v for k, v in sorted(self.histogram.items())},
            "samples": self.samples,
            "seed": self.seed,
            "degenerate": self.degenerate,
            "box": self.box,
        }


def bezout_bound(f: PolyMap) -> int:
    """Product of component total degrees: bound on isolated fiber points."""
    bound = 1
    for c in f.components:
        bound *= c.total_degree() if not c.is_zero() else 0
    return bound


def _check_scale(f: PolyMap) -> None:
    if not f.is_square:
        raise ValueError("fiber solving requires a square map")
    if f.source_dim > MAX_DIM:
        raise ValueError(f"desk-scale contract: dimension {f.source_dim} > {MAX_DIM}")
    for c in f.components:
        if not c.is_zero() and c.total_degree() > MAX_COMPONENT_DEGREE:
            raise ValueError(
                f"desk-scale contract: component degree {c.total_degree()} > "
                f"{MAX_COMPONENT_DEGREE}"
            )


def _shifted_system(f: PolyMap, y: Sequence[complex]) -> list[Polynomial]:
    """The polynomials f_j - y_j with the target folded in exactly."""
    if len(y) != f.target_dim:
        raise ValueError(f"target has dimension {len(y)}, expected {f.target_dim}")
    return [
        c - Polynomial.constant(f.vars, GaussianRational.coerce(complex(v)))
        for c, v in zip(f.components, y)
    ]


def solve_fiber(
    f: PolyMap, y: Sequence[complex], tol: float = 1e-8
) -> list[FiberSolution]:
    """All isolated solutions of f(x) = y, Newton-refined and deduplicated.

    Raises :class:`PositiveDimensionalFiberError` when the elimination
    detects a non-isolated fiber.  Every returned solution has
    ||f(x) - y|| < tol.
    """
    _check_scale(f)
    system = _shifted_system(f, y)
    retained = f.vars[-1]
    kill = list(f.vars[:-1])
    res = eliminate(system, kill)

    if res.inconsistent:
        return []
    if res.degenerate:
        raise PositiveDimensionalFiberError(
            f"elimination degenerated to zero at variable {res.degenerate_var!r}"
        )
    if res.free_vars:
        raise PositiveDimensionalFiberError(
            f"variables {res.free_vars} are unconstrained on this fiber"
        )
    if not res.finals:
        raise PositiveDimensionalFiberError(
            f"no equation constrains {retained!r} on this fiber"
        )

    phi = min(res.finals, key=lambda p: degree_in(p, retained))
    roots = univariate_roots(poly_to_coeffs(phi), tol=tol)
    candidates: list[tuple[dict[str, complex], int]] = [
        ({retained: r.value}, r.multiplicity) for r in roots.roots
    ]

    dead_degenerate = False
    for stage in reversed(res.stages):
        new_candidates: list[tuple[dict[str, complex], int]] = []
        for assignment, mult in candidates:
            coeffs = _specialize(stage, assignment)
            if coeffs is None:
                dead_degenerate = True
                continue
            if len(coeffs) == 1:
                continue  # nonzero constant: branch has no extension
            for r in univariate_roots(coeffs, tol=tol).roots:
                ext = dict(assignment)
                ext[stage.var] = r.value
                new_candidates.append((ext, mult * r.multiplicity))
        candidates = new_candidates
        if len(candidates) > _CANDIDATE_CAP:
            raise RuntimeError("candidate explosion; system outside desk scale")

    target = [complex(v) for v in y]
    solutions = _refine_and_filter(f, target, candidates, tol)
    if not solutions and dead_degenerate:
        raise PositiveDimensionalFiberError(
            "all candidate branches degenerated during back-substitution"
        )
    return solutions


def specialize_univariate(
    p: Polynomial, var: str, assignment: dict[str, complex]
) -> list[complex] | None:
    """View p at a numeric partial point as univariate in ``var``.

    Every variable of p except ``var`` must be assigned.  Returns ascending
    complex coefficients with numerically-zero leading entries trimmed, or
    None when the whole polynomial collapses to zero relative to the
    magnitude of the terms that were summed (a degenerate specialization).
    """
    u = as_univariate(p, var)
    point = [assignment.get(v, 0j) for v in p.vars]
    coeffs = []
    bound = 0.0
    for k in range(max(u) + 1):
        cp = u.get(k)
        if cp is None:
            coeffs.append(0j)
            continue
        coeffs.append(cp.evaluate(point))
        for e, c in cp.terms.items():
            mag = abs(c.to_complex())
            for vi, exp in enumerate(e):
                if exp:
                    mag *= abs(point[vi]) ** exp
            bound = max(bound, mag)
    top = max(abs(c) for c in coeffs)
    if top <= 1e-9 * max(bound, 1e-280):
        return None
    while coeffs and abs(coeffs[-1]) <= 1e-12 * top:
        coeffs.pop()
    if not coeffs:
        return None
    return coeffs


def _specialize(stage: EliminationStage, assignment: dict[str, complex]):
    return specialize_univariate(stage.pivot, stage.var, assignment)


def _refine_and_filter(
    f: PolyMap,
    y: list[complex],
    candidates: list[tuple[dict[str, complex], int]],
    tol: float,
) -> list[FiberSolution]:
    jac = f.jacobian()
    y_arr = np.array(y, dtype=complex)
    refined: list[tuple[tuple[complex, ...], float, int]] = []
    for assignment, mult in candidates:
        x = np.array([assignment[v] for v in f.vars], dtype=complex)
        x, residual = _newton(f, jac, y_arr, x)
        if residual < tol:
            refined.append((tuple(complex(c) for c in x), residual, mult))

    merged: list[list] = []  # [point, residual, total_mult, branches]
    for point, residual, mult in sorted(
        refined, key=lambda t: tuple((c.real, c.imag) for c in t[0])
    ):
        for entry in merged:
            if max(abs(a - b) for a, b in zip(entry[0], point)) < DEDUP_RADIUS:
                entry[2] += mult
                entry[3] += 1
                if residual < entry[1]:
                    entry[0], entry[1] = point, residual
                break
        else:
            merged.append([point, residual, mult, 1])

    return [
        FiberSolution(point, residual, multiple=(total_mult > 1 or branches > 1))
        for point, residual, total_mult, branches in merged
    ]


def _newton(f: PolyMap, jac, y_arr, x, iters: int = 40):
    best = x
    best_res = norm2(np.array(f.evaluate(x)) - y_arr)
    scale = 1.0 + norm2(y_arr)
    for _ in range(iters):
        r = np.array(f.evaluate(x)) - y_arr
        res = norm2(r)
        if res < best_res:
            best, best_res = x, res
        if res < 1e-15 * scale:
            break
        a = np.array(jac.evaluate(x))
        try:
            step = np.linalg.solve(a, r)
        except np.linalg.LinAlgError:
            break
        x = x - step
        if not np.all(np.isfinite(x)):
            x = best
            break
    r = np.array(f.evaluate(x)) - y_arr
    res = norm2(r)
    if res < best_res:
        best, best_res = x, res
    return best, best_res


def fiber_count(f: PolyMap, y: Sequence[complex], tol: float = 1e-8) -> int:
    """Cardinality of the isolated solution set of f(x) = y.

    Propagates :class:`PositiveDimensionalFiberError` for non-isolated
    fibers.
    """
    return len(solve_fiber(f, y, tol))


def sample_target(rng: np.random.Generator, n: int, box: float = 2.0) -> tuple[complex, ...]:
    """One target point: re/im uniform in [-box, box] on a dyadic grid."""
    vals = np.round(rng.uniform(-box, box, size=2 * n) * 4096.0) / 4096.0
    return tuple(complex(vals[2 * k], vals[2 * k + 1]) for k in range(n))


def geometric_degree(
    f: PolyMap,
    n_samples: int = 50,
    seed: int = 0,
    tol: float = 1e-8,
    box: float = 2.0,
) -> DegreeEstimate:
    """Estimate the geometric degree by sampling fiber counts.

    The estimate is the maximum finite fiber count over seeded random
    targets; for a map that restricts to a cover off its nonproperness set,
    generic targets all attain it.  Degenerate samples (positive-dimensional
    fibers) are tallied separately; it is an error if every sample
    degenerates or no sample has a nonzero count.
    """
    _check_scale(f)
    if n_samples < 1:
        raise ValueError("need at least one sample")
    children = np.random.SeedSequence(seed).spawn(n_samples)
    histogram: dict[int, int] = {}
    degenerate = 0
    for child in children:
        rng = np.random.default_rng(child)
        y = sample_target(rng, f.target_dim, box)
        try:
            count = fiber_count(f, y, tol)
        except PositiveDimensionalFiberError:
            degenerate += 1
            continue
        histogram[count] = histogram.get(count, 0) + 1
    if not histogram:
        raise ValueError("every sampled fiber was degenerate")
    mu = max(histogram)
    if mu == 0:
        raise ValueError("no sample produced a nonzero fiber count; map looks non-dominant")
    return DegreeEstimate(
        mu=mu,
        histogram=histogram,
        samples=n_samples,
        seed=seed,
        degenerate=degenerate,
        box=box,
    )
