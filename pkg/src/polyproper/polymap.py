"""Polynomial mappings C^n -> C^m: Jacobians, composition, inverse checks.

A ``PolyMap`` is an ordered tuple of polynomials over one shared source
variable context.  The Jacobian determinant is computed fraction free
(Bareiss), so statements like "the determinant is the constant 1" are exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .elimination import poly_matrix_det
from .parser import parse_polynomial
from .poly import Polynomial
from .scalar import GaussianRational


class PolyMap:
    """Immutable polynomial mapping given by component polynomials."""

    __slots__ = ("vars", "components")

    def __init__(self, variables: Sequence[str], components: Sequence[Polynomial]):
        vs = tuple(variables)
        comps = tuple(components)
        if not vs or not comps:
            raise ValueError("a map needs at least one variable and one component")
        for c in comps:
            if c.vars != vs:
                raise ValueError(
                    f"component context {c.vars} does not match map context {vs}"
                )
        object.__setattr__(self, "vars", vs)
        object.__setattr__(self, "components", comps)

    def __setattr__(self, name, value):
        raise AttributeError("PolyMap is immutable")

    @classmethod
    def identity(cls, variables: Sequence[str]) -> "PolyMap":
        vs = tuple(variables)
        return cls(vs, [Polynomial.variable(vs, v) for v in vs])

    @classmethod
    def from_exprs(cls, variables: Sequence[str], exprs: Sequence[str]) -> "PolyMap":
        vs = tuple(variables)
        return cls(vs, [parse_polynomial(e, vs) for e in exprs])

    @property
    def source_dim(self) -> int:
        return len(self.vars)

    @property
    def target_dim(self) -> int:
        return len(self.components)

    @property
    def is_square(self) -> bool:
        return self.source_dim == self.target_dim

    def evaluate(self, point: Sequence[complex]) -> tuple[complex, ...]:
        return tuple(c.evaluate(point) for c in self.components)

    def evaluate_exact(self, point) -> tuple[GaussianRational, ...]:
        return tuple(c.evaluate_exact(point) for c in self.components)

    def jacobian(self) -> "PolyMatrix":
        """Matrix of partial derivatives, entry (i, j) = d components[i] / d vars[j]."""
        rows = [[c.diff(v) for v in self.vars] for c in self.components]
        return PolyMatrix(rows)

    def jacobian_det(self) -> Polynomial:
        if not self.is_square:
            raise ValueError("Jacobian determinant requires a square map")
        return self.jacobian().det()

    def nonsingularity(self) -> "NonsingularityVerdict":
        """Decide whether the Jacobian determinant is a nonzero constant."""
        det = self.jacobian_det()
        if det.is_constant() and not det.is_zero():
            return NonsingularityVerdict(True, det.constant_value(), det)
        return NonsingularityVerdict(False, None, det)

    def drop_component(self, k: int) -> "PolyMap":
        """Delete the k-th component (1-based, matching the usual notation)."""
        if not 1 <= k <= self.target_dim:
            raise ValueError(f"component index {k} out of range 1..{self.target_dim}")
        comps = self.components[: k - 1] + self.components[k:]
        return PolyMap(self.vars, comps)

    def compose(self, inner: "PolyMap") -> "PolyMap":
        """The composition self(inner(x)); inner's target feeds self's source."""
        if inner.target_dim != self.source_dim:
            raise ValueError(
                f"cannot compose: inner target dimension {inner.target_dim} != "
                f"outer source dimension {self.source_dim}"
            )
        assignment = dict(zip(self.vars, inner.components))
        return PolyMap(inner.vars, [c.substitute(assignment) for c in self.components])

    def __eq__(self, other) -> bool:
        if isinstance(other, PolyMap):
            return self.vars == other.vars and self.components == other.components
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.vars, self.components))

    def __repr__(self) -> str:
        comps = ", ".join(str(c) for c in self.components)
        return f"PolyMap({self.vars!r}: {comps})"


class PolyMatrix:
    """Rectangular matrix of polynomials over one variable context."""

    __slots__ = ("entries",)

    def __init__(self, rows: Sequence[Sequence[Polynomial]]):
        entries = tuple(tuple(r) for r in rows)
        if not entries or not entries[0]:
            raise ValueError("matrix must be nonempty")
        width = len(entries[0])
        ctx = entries[0][0].vars
        for r in entries:
            if len(r) != width:
                raise ValueError("ragged matrix rows")
            for p in r:
                if p.vars != ctx:
                    raise ValueError("matrix entries use inconsistent variable contexts")
        object.__setattr__(self, "entries", entries)

    def __setattr__(self, name, value):
        raise AttributeError("PolyMatrix is immutable")

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.entries), len(self.entries[0])

    def __getitem__(self, ij: tuple[int, int]) -> Polynomial:
        i, j = ij
        return self.entries[i][j]

    def det(self) -> Polynomial:
        rows, cols = self.shape
        if rows != cols:
            raise ValueError("determinant of a non-square matrix")
        return poly_matrix_det(self.entries)

    def evaluate(self, point: Sequence[complex]) -> list[list[complex]]:
        return [[p.evaluate(point) for p in row] for row in self.entries]

    def __repr__(self) -> str:
        body = "; ".join("[" + ", ".join(str(p) for p in row) + "]" for row in self.entries)
        return f"PolyMatrix({body})"


@dataclass(frozen=True)
class NonsingularityVerdict:
    """Whether the Jacobian determinant is a nonzero constant, and which one."""

    is_nonsingular: bool
    constant: GaussianRational | None
    determinant: Polynomial

    def __bool__(self) -> bool:
        return self.is_nonsingular


def verify_inverse(f: PolyMap, g: PolyMap) -> bool:
    """True iff f and g are exact two-sided inverses (symbolic expansion)."""
    if not (f.is_square and g.is_square) or f.source_dim != g.source_dim:
        raise ValueError("inverse verification requires square maps of equal dimension")
    if f.compose(g) != PolyMap.identity(g.vars):
        return False
    return g.compose(f) == PolyMap.identity(f.vars)


def parse_map_text(text: str) -> PolyMap:
    """Parse the line-oriented map format.

    Format: a ``vars:`` line naming the source variables, then one
    ``name = expression`` line per component, in order.  Blank lines and
    ``#`` comments are ignored::

        vars: x y z
        f1 = x + y*(z - 3*x^5*y + 2*x^7*y^2)
        f2 = y
        f3 = z - 3*x^5*y + 2*x^7*y^2
    """
    variables: tuple[str, ...] | None = None
    exprs: list[str] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if variables is None:
            if not line.startswith("vars:"):
                raise ValueError(f"line {lineno}: expected a 'vars:' line first")
            variables = tuple(line[len("vars:") :].split())
            if not variables:
                raise ValueError(f"line {lineno}: no variables declared")
            continue
        if "=" not in line:
            raise ValueError(f"line {lineno}: expected 'name = expression'")
        _, expr = line.split("=", 1)
        exprs.append(expr.strip())
    if variables is None:
        raise ValueError("map text has no 'vars:' line")
    if not exprs:
        raise ValueError("map text declares no components")
    return PolyMap.from_exprs(variables, exprs)


def load_map_file(path) -> PolyMap:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_map_text(fh.read())
