"""The nonproperness locus of a square polynomial map, and what it certifies.

A map is proper at a target point when some neighborhood has compact
preimage closure; the failure points form the nonproperness locus, which for
a dominant map is empty or a hypersurface.  This module computes a defining
polynomial for that hypersurface by elimination: for each source variable
x_i, the other source variables are eliminated from (f_1 - y_1, ...,
f_n - y_n), and the vanishing of the leading coefficient (in x_i) of the
resulting relation marks targets where a preimage coordinate escapes to
infinity.

Resultant-based elimination can introduce extraneous factors, so every
candidate component is validated numerically: for a map with constant
nonzero Jacobian determinant a fiber-count drop against the geometric degree
is decisive, otherwise a direct probe checks that preimages of a shrinking
ball are unbounded.  Unvalidated factors are dropped and noted on the
result.

Two consequences are packaged as certificates:

* empty locus + constant nonzero Jacobian determinant implies the map is an
  automorphism (Hadamard global inversion / Cynk-Rusek);
* a nonsingular test hypersurface Z = {h = 0} biregular to C^(n-1) that
  misses the locus implies the same (the hyperplane-clearance criterion).

Biregularity of Z is not decidable here; it is caller-asserted, except for
graph hypersurfaces h = y_k - p(other targets), which are biregular by
construction.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .elimination import (
    as_univariate,
    degree_in,
    eliminate,
    exact_div,
    gcd_poly,
    leading_coeff_in,
    normalized,
    resultant,
    squarefree_part,
)
from .poly import Polynomial
from .polymap import PolyMap
from .solver import (
    DegreeEstimate,
    PositiveDimensionalFiberError,
    fiber_count,
    geometric_degree,
    sample_target,
    solve_fiber,
    specialize_univariate,
)
from .numlin import norm2, univariate_roots

_TARGET_PREFIXES = ("y", "w", "u", "tv")

EMPTY = "empty"
HYPERSURFACE = "hypersurface"
UNKNOWN = "unknown"


def target_variables(f: PolyMap) -> tuple[str, ...]:
    """Deterministic target coordinate names that avoid the source names."""
    for prefix in _TARGET_PREFIXES:
        names = tuple(f"{prefix}{k}" for k in range(1, f.target_dim + 1))
        if not set(names) & set(f.vars):
            return names
    raise ValueError(f"could not pick target variable names disjoint from {f.vars}")


@dataclass(frozen=True)
class Hypersurface:
    """Empty / hypersurface / unknown status with a defining polynomial.

    The defining polynomial lives in the target coordinates and is
    squarefree and monic-normalized, so equal loci have equal
    representations.
    """

    status: str
    target_vars: tuple[str, ...]
    poly: Polynomial | None = None
    reason: str | None = None
    notes: tuple[str, ...] = ()

    @classmethod
    def empty(cls, target_vars: Sequence[str], notes: Sequence[str] = ()) -> "Hypersurface":
        return cls(EMPTY, tuple(target_vars), None, None, tuple(notes))

    @classmethod
    def of(cls, poly: Polynomial, notes: Sequence[str] = ()) -> "Hypersurface":
        if poly.is_zero() or poly.is_constant():
            raise ValueError("a hypersurface needs a nonconstant defining polynomial")
        return cls(HYPERSURFACE, poly.vars, normalized(squarefree_part(poly)), None, tuple(notes))

    @classmethod
    def unknown(cls, target_vars: Sequence[str], reason: str) -> "Hypersurface":
        return cls(UNKNOWN, tuple(target_vars), None, reason, ())

    @property
    def is_empty(self) -> bool:
        return self.status == EMPTY

    @property
    def is_hypersurface(self) -> bool:
        return self.status == HYPERSURFACE

    @property
    def is_unknown(self) -> bool:
        return self.status == UNKNOWN

    def __str__(self) -> str:
        if self.is_empty:
            return "empty"
        if self.is_hypersurface:
            return f"{{ {self.poly} = 0 }}"
        return f"unknown ({self.reason})"


@dataclass(frozen=True)
class Certificate:
    """A machine-checkable verdict and the hypotheses behind it."""

    claim: str
    criterion: str
    hypotheses: dict[str, str]
    evidence: dict[str, object] = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "claim": self.claim,
            "criterion": self.criterion,
            "hypotheses": dict(sorted(self.hypotheses.items())),
            "evidence": {k: v for k, v in sorted(self.evidence.items())},
        }


@dataclass(frozen=True)
class SampleDiagnostic:
    """Fiber-count comparison against the geometric degree at one target."""

    verdict: str  # "in-locus" | "off-locus" | "undetermined"
    count: int | None
    mu: int
    warnings: tuple[str, ...] = ()


_SINGULAR_WARNING = (
    "fiber-count diagnostics are decisive only for maps with constant nonzero "
    "Jacobian determinant; this map is singular, so count drops are diagnostic only"
)


def fiber_count_diagnostic(
    f: PolyMap, y: Sequence[complex], mu: int, tol: float = 1e-8
) -> SampleDiagnostic:
    """Classify a target as on or off the nonproperness locus by count drop.

    For a map with constant nonzero Jacobian determinant, a fiber count
    different from the geometric degree happens exactly on the locus.  On
    singular maps the same test runs in diagnostic mode with a warning.
    A positive-dimensional fiber counts as "in-locus" (its cardinality is
    certainly not mu); other solver failures give "undetermined".
    """
    warnings: tuple[str, ...] = ()
    if not f.nonsingularity().is_nonsingular:
        warnings = (_SINGULAR_WARNING,)
    try:
        count = fiber_count(f, y, tol)
    except PositiveDimensionalFiberError:
        return SampleDiagnostic("in-locus", None, mu, warnings)
    except (ValueError, RuntimeError) as exc:
        return SampleDiagnostic("undetermined", None, mu, warnings + (str(exc),))
    verdict = "in-locus" if count != mu else "off-locus"
    return SampleDiagnostic(verdict, count, mu, warnings)


# -- symbolic computation of the locus -----------------------------------------


def _lift(p: Polynomial, combined: tuple[str, ...]) -> Polynomial:
    pad = len(combined) - len(p.vars)
    return Polynomial._raw(combined, {e + (0,) * pad: c for e, c in p.terms.items()})


def _project_to_targets(p: Polynomial, n_source: int, targets: tuple[str, ...]) -> Polynomial:
    terms = {}
    for e, c in p.terms.items():
        if any(e[:n_source]):
            raise ValueError("polynomial still involves source variables")
        terms[e[n_source:]] = c
    return Polynomial(targets, terms)


def _monomial_split(p: Polynomial) -> list[Polynomial]:
    """Split off variable factors shared by every term: y1^2*y2 -> [y1, y2]."""
    mins = None
    for e in p.terms:
        mins = e if mins is None else tuple(min(a, b) for a, b in zip(mins, e))
    if mins is None or not any(mins):
        return [p]
    parts = [Polynomial.variable(p.vars, v) for v, m in zip(p.vars, mins) if m > 0]
    cofactor = Polynomial(p.vars, {tuple(a - b for a, b in zip(e, mins)): c for e, c in p.terms.items()})
    if not cofactor.is_constant():
        parts.append(cofactor)
    return parts


def gcd_free_basis(polys: Sequence[Polynomial]) -> list[Polynomial]:
    """Pairwise-coprime nonconstant refinement of the input factors."""
    basis: list[Polynomial] = []
    queue = [normalized(p) for p in polys if not p.is_zero() and not p.is_constant()]
    while queue:
        q = queue.pop(0)
        if q.is_constant():
            continue
        for i, b in enumerate(basis):
            g = gcd_poly(q, b)
            if g.is_constant():
                continue
            del basis[i]
            for piece in (g, exact_div(b, g), exact_div(q, g)):
                if not piece.is_constant():
                    queue.append(normalized(piece))
            break
        else:
            basis.append(q)
    # drop exact duplicates, keep first occurrence
    seen: list[Polynomial] = []
    for b in basis:
        if b not in seen:
            seen.append(b)
    return seen


def _points_on_zero_set(
    poly: Polynomial, rng: np.random.Generator, max_points: int = 3
) -> list[tuple[complex, ...]]:
    """A few numeric points on the zero set of a nonconstant polynomial."""
    support = poly.support_vars()
    v = max(support, key=lambda name: poly.degree_in(name))
    base = sample_target(rng, len(poly.vars))
    assignment = {name: base[i] for i, name in enumerate(poly.vars) if name != v}
    coeffs = specialize_univariate(poly, v, assignment)
    if coeffs is None or len(coeffs) < 2:
        return []
    points = []
    for root in univariate_roots(coeffs).roots[:max_points]:
        full = dict(assignment)
        full[v] = root.value
        points.append(tuple(full[name] for name in poly.vars))
    return points


def _unbounded_preimage_probe(
    f: PolyMap, y0: tuple[complex, ...], rng: np.random.Generator, tol: float
) -> bool:
    """Check that preimages blow up as targets shrink toward y0."""
    direction = rng.normal(size=2 * len(y0))
    u = np.array([complex(direction[2 * k], direction[2 * k + 1]) for k in range(len(y0))])
    u = u / norm2(u)
    norms = []
    for eps in (1e-2, 1e-4, 1e-6):
        target = tuple(np.array(y0, dtype=complex) + eps * u)
        try:
            sols = solve_fiber(f, target, max(tol, 1e-6))
        except PositiveDimensionalFiberError:
            continue
        if sols:
            norms.append(max(norm2(s.point) for s in sols))
    return len(norms) >= 2 and all(b > a for a, b in zip(norms, norms[1:])) and norms[-1] >= 50 * norms[0]


def nonproperness_set(
    f: PolyMap,
    seed: int = 0,
    samples: int = 20,
    tol: float = 1e-8,
    degree_estimate: DegreeEstimate | None = None,
) -> Hypersurface:
    """Defining data for the nonproperness locus of a dominant square map.

    Dominance is checked by sampling (geometric degree > 0) unless a
    precomputed estimate is supplied.  Degenerate eliminations yield an
    ``unknown`` result rather than an exception.
    """
    if not f.is_square:
        raise ValueError("the nonproperness locus is computed for square maps")
    if f.source_dim > 3:
        raise ValueError("desk-scale contract: dimension must be at most 3")
    targets = target_variables(f)
    if degree_estimate is None:
        degree_estimate = geometric_degree(f, n_samples=samples, seed=seed, tol=tol)
    mu = degree_estimate.mu

    n = f.source_dim
    combined = f.vars + targets
    system = [
        _lift(c, combined) - Polynomial.variable(combined, targets[j])
        for j, c in enumerate(f.components)
    ]

    candidates: list[Polynomial] = []
    for i, x_i in enumerate(f.vars):
        kill = [v for v in f.vars if v != x_i]
        res = eliminate(system, kill)
        if res.inconsistent:
            return Hypersurface.unknown(targets, "elimination reached an inconsistency")
        if res.degenerate:
            return Hypersurface.unknown(
                targets, f"elimination degenerated to zero at {res.degenerate_var!r}"
            )
        relations = [p for p in res.finals if degree_in(p, x_i) > 0]
        if not relations:
            return Hypersurface.unknown(
                targets, f"no relation ties {x_i!r} to the target coordinates"
            )
        phi = min(relations, key=lambda p: (degree_in(p, x_i), str(p)))
        lead = leading_coeff_in(phi, x_i)
        if lead.is_constant():
            continue
        lead_t = _project_to_targets(lead, n, targets)
        for part in _monomial_split(normalized(lead_t)):
            candidates.append(squarefree_part(part))

    if not candidates:
        return Hypersurface.empty(targets)

    basis = gcd_free_basis(candidates)
    rng = np.random.default_rng(np.random.SeedSequence([seed, 0x5F]))
    nonsingular = f.nonsingularity().is_nonsingular
    kept: list[Polynomial] = []
    notes: list[str] = []
    for cand in basis:
        validated = False
        points = _points_on_zero_set(cand, rng)
        for y0 in points:
            if nonsingular:
                diag = fiber_count_diagnostic(f, y0, mu, tol)
                if diag.verdict == "in-locus":
                    validated = True
                    break
            else:
                if _unbounded_preimage_probe(f, y0, rng, tol):
                    validated = True
                    break
        if validated:
            kept.append(cand)
        else:
            notes.append(f"dropped unvalidated elimination factor: {cand}")

    if not kept:
        return Hypersurface.empty(targets, notes)
    defining = kept[0]
    for extra in kept[1:]:
        defining = defining * extra
    return Hypersurface(HYPERSURFACE, targets, normalized(defining), None, tuple(notes))


def automorphism_from_empty_locus(f: PolyMap, locus: Hypersurface) -> Certificate | None:
    """Global-inversion certificate: nonsingular plus empty locus.

    Returns None when the hypotheses do not hold.
    """
    ns = f.nonsingularity()
    if not (ns.is_nonsingular and locus.is_empty):
        return None
    return Certificate(
        claim="automorphism",
        criterion="global inversion: constant nonzero Jacobian determinant and empty nonproperness locus (Hadamard / Cynk-Rusek)",
        hypotheses={
            "jacobian determinant": f"verified constant {ns.constant}",
            "nonproperness locus": "verified empty by elimination",
        },
        evidence={"determinant": str(ns.determinant)},
    )


def is_cylinder(locus: Hypersurface, k: int) -> bool:
    """Whether the locus is a cylinder along the k-th target coordinate.

    True iff the reduced defining polynomial has zero partial derivative in
    that coordinate (so the variety is invariant under translating it);
    an empty locus is vacuously a cylinder.  The answer is scale invariant
    because the stored polynomial is normalized.
    """
    if locus.is_unknown:
        raise ValueError(f"cylinder test on unknown locus: {locus.reason}")
    if not 1 <= k <= len(locus.target_vars):
        raise ValueError(f"coordinate index {k} out of range")
    if locus.is_empty:
        return True
    return locus.poly.diff(locus.target_vars[k - 1]).is_zero()


# -- hyperplane clearance -------------------------------------------------------


@dataclass(frozen=True)
class ClearanceVerdict:
    """Does the locus meet the test set {h = 0}?  With certificate if not."""

    intersects: str  # "yes" | "no" | "undetermined"
    certificate: Certificate | None
    evidence: dict[str, object]
    warnings: tuple[str, ...] = ()


def is_graph_hypersurface(h: Polynomial) -> str | None:
    """The coordinate over which {h=0} is a polynomial graph, if any."""
    for v in h.vars:
        if degree_in(h, v) == 1:
            u = as_univariate(h, v)
            if u[1].is_constant():
                return v
    return None


def hyperplane_clearance(
    f: PolyMap,
    h: Polynomial,
    assert_biregular: bool = False,
    mode: str = "symbolic",
    locus: Hypersurface | None = None,
    seed: int = 0,
    samples: int = 20,
    tol: float = 1e-8,
) -> ClearanceVerdict:
    """Test whether the nonproperness locus misses the hypersurface {h = 0}.

    In symbolic mode the locus is computed by elimination and intersected
    with {h = 0} exactly where possible (shared-variable resultants,
    univariate gcds), with numeric lifting of the elimination output
    otherwise.  In sampling mode, points of {h = 0} are tested by
    fiber-count diagnostics against the geometric degree.

    A "no" verdict yields an automorphism certificate only when the map has
    constant nonzero Jacobian determinant and the test set is biregular to
    C^(n-1): asserted by the caller, or automatic for graph hypersurfaces
    h = y_k - p(other coordinates).  Singular maps still get a verdict, but
    never a certificate.
    """
    if h.is_constant():
        raise ValueError("the test hypersurface needs a nonconstant polynomial")
    ns = f.nonsingularity()
    warnings: list[str] = []
    if not ns.is_nonsingular:
        warnings.append(
            "map is singular: clearance verdicts carry no automorphism claim"
        )

    graph_var = is_graph_hypersurface(h)
    biregular = assert_biregular or graph_var is not None

    if mode == "symbolic":
        if locus is None:
            locus = nonproperness_set(f, seed=seed, samples=samples, tol=tol)
        if h.vars != locus.target_vars:
            raise ValueError(
                f"test polynomial context {h.vars} does not match target context "
                f"{locus.target_vars}"
            )
        if locus.is_unknown:
            return ClearanceVerdict(
                "undetermined", None, {"locus": str(locus)}, tuple(warnings)
            )
        if locus.is_empty:
            verdict = "no"
            evidence: dict[str, object] = {"locus": "empty", "mode": "symbolic"}
        else:
            verdict, evidence = _varieties_intersect(locus.poly, h, seed)
            evidence["locus"] = str(locus.poly)
            evidence["mode"] = "symbolic"
    elif mode == "sampling":
        est = geometric_degree(f, n_samples=samples, seed=seed, tol=tol)
        rng = np.random.default_rng(np.random.SeedSequence([seed, 0xC1]))
        verdicts = []
        for _ in range(samples):
            pts = _points_on_zero_set(h, rng, max_points=1)
            if not pts:
                continue
            diag = fiber_count_diagnostic(f, pts[0], est.mu, tol)
            if diag.verdict != "undetermined":
                verdicts.append(diag.verdict)
        if not verdicts:
            return ClearanceVerdict(
                "undetermined", None, {"mode": "sampling", "usable_samples": 0}, tuple(warnings)
            )
        verdict = "yes" if "in-locus" in verdicts else "no"
        evidence = {
            "mode": "sampling",
            "usable_samples": len(verdicts),
            "count_drops": sum(v == "in-locus" for v in verdicts),
            "mu": est.mu,
        }
    else:
        raise ValueError(f"unknown mode {mode!r}")

    certificate = None
    if verdict == "no" and ns.is_nonsingular and biregular:
        how = (
            f"automatic (graph over the other coordinates in {graph_var})"
            if graph_var is not None
            else "asserted by caller"
        )
        certificate = Certificate(
            claim="automorphism",
            criterion="hyperplane clearance: nonsingular map whose nonproperness locus misses a test hypersurface biregular to C^(n-1)",
            hypotheses={
                "jacobian determinant": f"verified constant {ns.constant}",
                "test set biregular to C^(n-1)": how,
                "locus does not meet test set": f"verified ({evidence.get('mode')})",
            },
            evidence={"test_polynomial": str(h), **{k: str(v) for k, v in evidence.items()}},
        )
    return ClearanceVerdict(verdict, certificate, evidence, tuple(warnings))


def _varieties_intersect(s: Polynomial, h: Polynomial, seed: int) -> tuple[str, dict]:
    """Decide (or probe) whether two hypersurfaces share a point in C^n."""
    s = normalized(s)
    h_n = normalized(h)
    if s == h_n:
        return "yes", {"reason": "identical defining polynomials"}
    g = gcd_poly(s, h_n)
    if not g.is_constant():
        return "yes", {"reason": f"common component {g}"}

    sup_s, sup_h = set(s.support_vars()), set(h_n.support_vars())
    union = sup_s | sup_h
    if len(union) == 1:
        # parallel families of hyperplanes; coprimality already ruled out overlap
        return "no", {"reason": "coprime univariate defining polynomials"}
    if not (sup_s & sup_h):
        return "yes", {"reason": "independent variables: zeros combine freely"}

    v = next(name for name in s.vars if name in (sup_s & sup_h))
    r = resultant(s, h_n, v)
    if r.is_zero():
        return "yes", {"reason": "vanishing resultant"}
    if r.is_constant():
        return "no", {"reason": f"constant resultant eliminating {v}"}

    # nonconstant resultant: look for a numeric witness point on both surfaces
    rng = np.random.default_rng(np.random.SeedSequence([seed, 0xD2]))
    for _ in range(5):
        for base in _points_on_zero_set(r, rng):
            assignment = {name: val for name, val in zip(r.vars, base) if name != v}
            cs = specialize_univariate(s, v, assignment)
            if cs is None or len(cs) < 2:
                continue
            ch_bound = max(abs(c.to_complex()) for c in h_n.terms.values())
            for root in univariate_roots(cs).roots:
                point = [assignment.get(name, 0j) for name in s.vars]
                point[s.vars.index(v)] = root.value
                if abs(h_n.evaluate(point)) < 1e-6 * max(1.0, ch_bound):
                    return "yes", {
                        "reason": "numeric witness point",
                        "witness": [[z.real, z.imag] for z in point],
                    }
    return "undetermined", {"reason": "no witness found on the elimination output"}
