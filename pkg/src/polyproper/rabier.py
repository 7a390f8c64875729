"""Certified asymptotic-critical-value witnesses along Laurent paths.

A witness for a map g consists of a curve t -> x(t) with Laurent-polynomial
coordinates such that, as t -> infinity,

* ||x(t)|| diverges (some coordinate has positive degree: exact check),
* g(x(t)) converges (every composed component has nonpositive degree; the
  limit is the exact vector of constant terms), and
* the smallest singular value of the Jacobian of g at x(t) decays to below
  a tolerance along a geometric grid of t values.

The accepted limit is then a member of the asymptotic critical set of g
(the set of target values reachable with gradient degeneration at
infinity), which in particular refutes any claim that this set is empty.

Jacobian entries are composed with the path symbolically before any number
is produced, so the huge cancellations typical of these curves happen
exactly and the numeric decay rates are clean.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from .numlin import smallest_singular_value
from .parser import parse_path
from .poly import LaurentPoly
from .polymap import PolyMap
from .scalar import GaussianRational

DEFAULT_TOL = 1e-3
DEFAULT_T_MAX = 1e4
#: Relative slack for the strict-decrease test on sampled singular values.
DECREASE_SLACK = 1e-9


class LaurentPath:
    """A curve with one Laurent-polynomial coordinate per source variable."""

    __slots__ = ("coordinates",)

    def __init__(self, coordinates: Sequence[LaurentPoly]):
        coords = tuple(coordinates)
        if not coords:
            raise ValueError("a path needs at least one coordinate")
        if all(c.is_zero() for c in coords):
            raise ValueError("a path needs at least one nonzero coordinate")
        var = coords[0].var
        for c in coords:
            if c.var != var:
                raise ValueError("path coordinates must share one parameter variable")
        object.__setattr__(self, "coordinates", coords)

    def __setattr__(self, name, value):
        raise AttributeError("LaurentPath is immutable")

    @classmethod
    def from_text(cls, text: str, var: str = "t") -> "LaurentPath":
        return cls(parse_path(text, var))

    @property
    def dim(self) -> int:
        return len(self.coordinates)

    def evaluate(self, t: complex) -> tuple[complex, ...]:
        return tuple(c.evaluate(t) for c in self.coordinates)

    def __eq__(self, other) -> bool:
        if isinstance(other, LaurentPath):
            return self.coordinates == other.coordinates
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.coordinates)

    def __str__(self) -> str:
        return ", ".join(str(c) for c in self.coordinates)

    def __repr__(self) -> str:
        return f"LaurentPath({str(self)!r})"


@dataclass(frozen=True)
class PathDivergence:
    diverges: bool
    coordinates: tuple[int, ...]  # 1-based indices with positive degree

    def __bool__(self) -> bool:
        return self.diverges


def path_diverges(path: LaurentPath) -> PathDivergence:
    """Exact check that ||x(t)|| -> infinity: some coordinate degree >= 1."""
    hits = tuple(
        k + 1
        for k, c in enumerate(path.coordinates)
        if not c.is_zero() and c.degree() >= 1
    )
    return PathDivergence(bool(hits), hits)


@dataclass(frozen=True)
class ImageLimit:
    """Limit of g along the path: finite exact vector, or the component that blows up."""

    finite: bool
    value: tuple[GaussianRational, ...] | None
    diverging_component: int | None  # 1-based
    compositions: tuple[LaurentPoly, ...]
    decay_order: int | None  # max degree of (composition - limit); None if identically constant

    def value_complex(self) -> tuple[complex, ...]:
        if self.value is None:
            raise ValueError("image diverges; no limit value")
        return tuple(v.to_complex() for v in self.value)


def image_limit(g: PolyMap, path: LaurentPath) -> ImageLimit:
    """Exact image limit of g along the path as t -> infinity."""
    if path.dim != g.source_dim:
        raise ValueError(
            f"path dimension {path.dim} does not match source dimension {g.source_dim}"
        )
    comps = tuple(c.substitute_path(path.coordinates) for c in g.components)
    for k, comp in enumerate(comps):
        if not comp.is_zero() and comp.degree() >= 1:
            return ImageLimit(False, None, k + 1, comps, None)
    limit = tuple(comp.constant_term() for comp in comps)
    decay = None
    for comp, lim in zip(comps, limit):
        tail = comp - LaurentPoly(comp.var, {0: lim})
        if not tail.is_zero():
            decay = tail.degree() if decay is None else max(decay, tail.degree())
    return ImageLimit(True, limit, None, comps, decay)


def witness_grid(t_max: float = DEFAULT_T_MAX, base: float = 10.0) -> list[float]:
    """Geometric sample grid 10, 100, ... capped at t_max."""
    if t_max < base:
        raise ValueError(f"t_max must be at least {base}")
    ts = []
    t = base
    while t <= t_max * (1 + 1e-12):
        ts.append(float(t))
        t *= base
    if ts[-1] < t_max * (1 - 1e-12):
        ts.append(float(t_max))
    return ts


def _path_jacobian_entries(g: PolyMap, path: LaurentPath):
    if path.dim != g.source_dim:
        raise ValueError("path dimension does not match the map")
    jac = g.jacobian()
    rows, cols = jac.shape
    return [
        [jac[i, j].substitute_path(path.coordinates) for j in range(cols)]
        for i in range(rows)
    ]


def _sample_sigma(entries, t: float) -> tuple[float, float]:
    """(sigma_min, numerical floor) at one t; sigma is inf on overflow.

    The floor is the absolute accuracy double-precision SVD can promise,
    a modest multiple of machine epsilon times the largest entry; values at
    or below it are indistinguishable from zero.
    """
    matrix = [[e.evaluate(t) for e in row] for row in entries]
    flat = [x for row in matrix for x in row]
    if not all(math.isfinite(x.real) and math.isfinite(x.imag) for x in flat):
        return math.inf, 0.0
    scale = max(abs(x) for x in flat)
    return smallest_singular_value(matrix), 20.0 * math.ulp(1.0) * scale


def sigma_min_along_path(
    g: PolyMap, path: LaurentPath, t_values: Sequence[float]
) -> list[tuple[float, float]]:
    """Smallest singular value of Jac(g) at path(t) for each t.

    The Jacobian entries are simplified exactly along the path first, so no
    catastrophic cancellation pollutes the samples.  Overflowing samples are
    reported with value ``inf`` rather than raised.
    """
    ts = [float(t) for t in t_values]
    if any(t <= 0 for t in ts) or any(b <= a for a, b in zip(ts, ts[1:])):
        raise ValueError("t values must be positive and increasing")
    entries = _path_jacobian_entries(g, path)
    return [(t, _sample_sigma(entries, t)[0]) for t in ts]


@dataclass(frozen=True)
class RabierWitness:
    """An accepted witness; every clause is re-checkable from the fields."""

    map: PolyMap
    path: LaurentPath
    limit: tuple[GaussianRational, ...]
    nu_samples: tuple[tuple[float, float], ...]
    divergence_coordinates: tuple[int, ...]
    decay_order: int | None
    tol: float
    t_max: float

    accepted = True

    @property
    def refutes_rabier_condition(self) -> bool:
        """The witness limit lies in the asymptotic critical set, so that
        set is nonempty and the map cannot satisfy the Rabier condition."""
        return True

    def limit_complex(self) -> tuple[complex, ...]:
        return tuple(v.to_complex() for v in self.limit)


@dataclass(frozen=True)
class Rejection:
    reason: str
    clause: str
    details: dict[str, object]

    accepted = False


def check_rabier_witness(
    g: PolyMap,
    path: LaurentPath,
    tol: float = DEFAULT_TOL,
    t_max: float = DEFAULT_T_MAX,
) -> RabierWitness | Rejection:
    """Accept or reject a path as an asymptotic-critical-value witness.

    Acceptance requires all of: the path diverges in norm (exact), the image
    limit is finite (exact), and the sampled smallest singular values on the
    geometric grid up to t_max strictly decrease to below tol.  Rejections
    name the first failed clause.
    """
    div = path_diverges(path)
    if not div:
        return Rejection("path bounded", "norm divergence", {"degrees": _degrees(path)})
    lim = image_limit(g, path)
    if not lim.finite:
        return Rejection(
            "image diverges",
            "image limit",
            {"component": lim.diverging_component},
        )
    entries = _path_jacobian_entries(g, path)
    grid = witness_grid(t_max)
    sampled = [_sample_sigma(entries, t) for t in grid]
    samples = [(t, nu) for t, (nu, _) in zip(grid, sampled)]
    for t, nu in samples:
        if not math.isfinite(nu):
            return Rejection("evaluation overflow", "singular value decay", {"t": t})
    for (a, _), (b, floor_b) in zip(sampled, sampled[1:]):
        # strict decrease, except below the SVD's absolute accuracy floor,
        # where consecutive samples can both flush to zero
        if not b < max(a * (1 - DECREASE_SLACK), floor_b):
            return Rejection(
                "singular values not strictly decreasing",
                "singular value decay",
                {"samples": samples},
            )
    final = samples[-1][1]
    if not final < tol:
        return Rejection(
            "final singular value above tolerance",
            "singular value decay",
            {"final": final, "tol": tol},
        )
    return RabierWitness(
        map=g,
        path=path,
        limit=lim.value,
        nu_samples=tuple(samples),
        divergence_coordinates=div.coordinates,
        decay_order=lim.decay_order,
        tol=tol,
        t_max=t_max,
    )


def _degrees(path: LaurentPath) -> list[int | None]:
    return [None if c.is_zero() else c.degree() for c in path.coordinates]
