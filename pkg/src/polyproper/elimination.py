"""Exact polynomial elimination machinery.

Everything here works over the Gaussian rationals with no floating point:
exact division, fraction-free determinants, subresultant resultants,
multivariate gcd, squarefree parts, and a deterministic variable-elimination
cascade.  The cascade is shared by the fiber solver (numeric targets enter
as exact rationals) and by the nonproperness computation (targets stay
symbolic).

The cascade eliminates variables one at a time.  Degree-1 pivots with a
constant leading coefficient are eliminated by direct substitution, which is
the resultant up to a nonzero constant factor and costs almost nothing; this
keeps triangular systems (the common shape for automorphism candidates) fast.
Remaining pivots go through subresultant resultants.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .poly import Polynomial, grlex_key
from .scalar import GaussianRational, ONE


class NotDivisibleError(ArithmeticError):
    """Exact polynomial division was requested but does not exist."""


def exact_div(p: Polynomial, q: Polynomial) -> Polynomial:
    """Return p / q when q divides p exactly; raise otherwise."""
    if q.is_zero():
        raise ZeroDivisionError("polynomial division by zero")
    if q.is_constant():
        return p.scale(ONE / q.constant_value())
    if p.is_zero():
        return p
    n = len(p.vars)
    qe, qc = q.leading_term()
    rem = dict(p.terms)
    quot: dict[tuple, GaussianRational] = {}
    while rem:
        re = max(rem, key=grlex_key)
        rc = rem[re]
        de = tuple(a - b for a, b in zip(re, qe))
        if any(d < 0 for d in de):
            raise NotDivisibleError(f"{q} does not divide {p}")
        c = rc / qc
        quot[de] = c
        # rem -= c * x^de * q
        for e2, c2 in q.terms.items():
            e = tuple(a + b for a, b in zip(de, e2))
            s = rem.get(e, GaussianRational(0)) - c * c2
            if s.is_zero():
                rem.pop(e, None)
            else:
                rem[e] = s
    return Polynomial(p.vars, quot)


# -- univariate views ---------------------------------------------------------


def as_univariate(p: Polynomial, var: str) -> dict[int, Polynomial]:
    """View p as a polynomial in ``var`` with polynomial coefficients.

    Coefficients stay in the full variable context (with ``var`` absent from
    their support), so all arithmetic remains in one ring.
    """
    i = p.vars.index(var)
    buckets: dict[int, dict] = {}
    for e, c in p.terms.items():
        stripped = e[:i] + (0,) + e[i + 1 :]
        buckets.setdefault(e[i], {})[stripped] = c
    return {k: Polynomial(p.vars, t) for k, t in buckets.items()}


def from_univariate(coeffs: dict[int, Polynomial], var: str, variables) -> Polynomial:
    i = list(variables).index(var)
    total = Polynomial.zero(variables)
    for k, cp in coeffs.items():
        shifted = {e[:i] + (k,) + e[i + 1 :]: c for e, c in cp.terms.items()}
        total = total + Polynomial(variables, shifted)
    return total


def degree_in(p: Polynomial, var: str) -> int:
    """Degree of p in one variable; -1 for the zero polynomial."""
    if p.is_zero():
        return -1
    return p.degree_in(var)


def leading_coeff_in(p: Polynomial, var: str) -> Polynomial:
    """Leading coefficient of p viewed as univariate in ``var``."""
    u = as_univariate(p, var)
    return u[max(u)]


def pseudo_rem(f: Polynomial, g: Polynomial, var: str) -> Polynomial:
    """Pseudo-remainder prem(f, g) = lc(g)^(deg f - deg g + 1) * f  mod  g.

    The exact power of lc(g) matters: the subresultant algorithm's exact
    divisions rely on it, so unused reduction steps are paid for at the end.
    """
    df, dg = degree_in(f, var), degree_in(g, var)
    if dg < 0:
        raise ZeroDivisionError("pseudo-division by zero polynomial")
    if df < dg:
        return f
    gu = as_univariate(g, var)
    lcg = gu[dg]
    steps = df - dg + 1
    r = f
    while not r.is_zero():
        dr = degree_in(r, var)
        if dr < dg:
            break
        ru = as_univariate(r, var)
        lead = ru[dr]
        # r := lc(g)*r - lead * var^(dr-dg) * g
        shift = _mul_power(g, var, dr - dg)
        r = r * lcg - shift * lead
        steps -= 1
    for _ in range(steps):
        r = r * lcg
    return r


def _mul_power(p: Polynomial, var: str, k: int) -> Polynomial:
    if k == 0:
        return p
    i = p.vars.index(var)
    return Polynomial._raw(
        p.vars, {e[:i] + (e[i] + k,) + e[i + 1 :]: c for e, c in p.terms.items()}
    )


# -- resultants ---------------------------------------------------------------


def resultant(f: Polynomial, g: Polynomial, var: str) -> Polynomial:
    """Resultant of f and g with respect to one variable.

    Subresultant polynomial-remainder-sequence algorithm: fraction free, all
    intermediate divisions exact.  Degree-1 inputs short-circuit to the
    substitution formula Res(a*v + b, g) = a^deg(g) * g(-b/a).
    """
    if f.is_zero() or g.is_zero():
        return Polynomial.zero(f.vars)
    df, dg = degree_in(f, var), degree_in(g, var)
    if df == 0 and dg == 0:
        return Polynomial.constant(f.vars, 1)
    if df == 0:
        return f**dg
    if dg == 0:
        return g**df
    if df == 1 or dg == 1:
        lin, other = (f, g) if df == 1 else (g, f)
        res = _resultant_linear(lin, other, var)
        if df > 1 and (df & 1) and (dg & 1):
            res = -res
        return res
    s = 1
    a, b = f, g
    da, db = df, dg
    if da < db:
        a, b = b, a
        da, db = db, da
        if (df & 1) and (dg & 1):
            s = -s
    glc = Polynomial.constant(f.vars, 1)
    h = Polynomial.constant(f.vars, 1)
    while True:
        delta = da - db
        if (da & 1) and (db & 1):
            s = -s
        r = pseudo_rem(a, b, var)
        a = b
        da = db
        b = exact_div(r, glc * h**delta)
        if b.is_zero():
            return Polynomial.zero(f.vars)
        db = degree_in(b, var)
        glc = leading_coeff_in(a, var)
        if delta == 1:
            h = glc
        elif delta > 1:
            h = exact_div(glc**delta, h ** (delta - 1))
        if db == 0:
            num = b**da
            res = num if da <= 1 else exact_div(num, h ** (da - 1))
            return res.scale(s) if s < 0 else res


def _resultant_linear(lin: Polynomial, g: Polynomial, var: str) -> Polynomial:
    """Res_var(a*v + b, g) = a^deg(g) * g evaluated at v = -b/a, fraction free."""
    u = as_univariate(lin, var)
    aa = u[1]
    bb = u.get(0, Polynomial.zero(lin.vars))
    gu = as_univariate(g, var)
    dg = max(gu)
    total = Polynomial.zero(lin.vars)
    # sum_k g_k * (-b)^k * a^(dg-k)
    neg_b = -bb
    pow_b = Polynomial.constant(lin.vars, 1)
    pows_a = [Polynomial.constant(lin.vars, 1)]
    for _ in range(dg):
        pows_a.append(pows_a[-1] * aa)
    for k in range(dg + 1):
        ck = gu.get(k)
        if ck is not None:
            total = total + ck * pow_b * pows_a[dg - k]
        if k < dg:
            pow_b = pow_b * neg_b
    return total


def sylvester_matrix(f: Polynomial, g: Polynomial, var: str) -> list[list[Polynomial]]:
    """Sylvester matrix with polynomial entries; independent oracle for tests."""
    fu, gu = as_univariate(f, var), as_univariate(g, var)
    df, dg = max(fu), max(gu)
    if df == 0 or dg == 0:
        raise ValueError("Sylvester matrix needs positive degrees in the variable")
    zero = Polynomial.zero(f.vars)
    size = df + dg
    rows = []
    for shift in range(dg):
        row = [zero] * size
        for k, c in fu.items():
            row[shift + df - k] = c
        rows.append(row)
    for shift in range(df):
        row = [zero] * size
        for k, c in gu.items():
            row[shift + dg - k] = c
        rows.append(row)
    return rows


def poly_matrix_det(rows: Sequence[Sequence[Polynomial]]) -> Polynomial:
    """Fraction-free Bareiss determinant of a square polynomial matrix."""
    n = len(rows)
    if n == 0 or any(len(r) != n for r in rows):
        raise ValueError("determinant requires a nonempty square matrix")
    ctx = rows[0][0].vars
    m = [list(r) for r in rows]
    sign = 1
    prev = Polynomial.constant(ctx, 1)
    for k in range(n - 1):
        if m[k][k].is_zero():
            for i in range(k + 1, n):
                if not m[i][k].is_zero():
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return Polynomial.zero(ctx)
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = exact_div(m[i][j] * m[k][k] - m[i][k] * m[k][j], prev)
            m[i][k] = Polynomial.zero(ctx)
        prev = m[k][k]
    det = m[n - 1][n - 1]
    return det.scale(-1) if sign < 0 else det


# -- gcd and squarefree parts -------------------------------------------------


def normalized(p: Polynomial) -> Polynomial:
    """Scale so the graded-lex leading coefficient is 1 (zero passes through)."""
    if p.is_zero():
        return p
    _, c = p.leading_term()
    return p if c.is_one() else p.scale(ONE / c)


def gcd_poly(p: Polynomial, q: Polynomial) -> Polynomial:
    """Monic-normalized gcd over the Gaussian rationals (field coefficients)."""
    if p.is_zero():
        return normalized(q)
    if q.is_zero():
        return normalized(p)
    if p.is_constant() or q.is_constant():
        return Polynomial.constant(p.vars, 1)
    support = [v for v in p.vars if v in set(p.support_vars()) | set(q.support_vars())]
    main = support[0]
    if len(support) == 1:
        return _gcd_univariate(p, q, main)
    cp, pp = _content_primitive(p, main)
    cq, pq = _content_primitive(q, main)
    cont = gcd_poly(cp, cq)
    a, b = (pp, pq) if degree_in(pp, main) >= degree_in(pq, main) else (pq, pp)
    while True:
        if degree_in(b, main) == 0:
            prim = Polynomial.constant(p.vars, 1)
            break
        r = pseudo_rem(a, b, main)
        if r.is_zero():
            prim = _content_primitive(b, main)[1]
            break
        a, b = b, _content_primitive(r, main)[1]
    return normalized(cont * prim)


def _gcd_univariate(p: Polynomial, q: Polynomial, var: str) -> Polynomial:
    a, b = p, q
    while not b.is_zero():
        a, b = b, _univariate_rem(a, b, var)
    return normalized(a)


def _univariate_rem(a: Polynomial, b: Polynomial, var: str) -> Polynomial:
    db = degree_in(b, var)
    lcb = leading_coeff_in(b, var).constant_value()
    r = a
    while not r.is_zero():
        dr = degree_in(r, var)
        if dr < db:
            break
        lcr = leading_coeff_in(r, var).constant_value()
        r = r - _mul_power(b, var, dr - db).scale(lcr / lcb)
    return r


def _content_primitive(p: Polynomial, main: str) -> tuple[Polynomial, Polynomial]:
    """Content (gcd of coefficients w.r.t. ``main``) and primitive part."""
    coeffs = list(as_univariate(p, main).values())
    content = Polynomial.zero(p.vars)
    for c in coeffs:
        content = gcd_poly(content, c)
        if content.is_constant():
            break
    if content.is_constant():
        return Polynomial.constant(p.vars, 1), normalized(p)
    return content, exact_div(p, content)


def squarefree_part(p: Polynomial) -> Polynomial:
    """Reduced (squarefree) representative of p, monic-normalized.

    Divides by the gcd of p with its partial derivatives, folded over every
    occurring variable: the first variable alone would silently drop any
    repeated factor that does not involve it.
    """
    if p.is_zero():
        raise ValueError("squarefree part of the zero polynomial is undefined")
    support = p.support_vars()
    if not support:
        return Polynomial.constant(p.vars, 1)
    g = p
    for v in support:
        g = gcd_poly(g, p.diff(v))
        if g.is_constant():
            return normalized(p)
    return normalized(exact_div(p, g))


# -- variable elimination cascade ---------------------------------------------


@dataclass(frozen=True)
class EliminationStage:
    """One eliminated variable with the pivot equation that constrained it."""

    var: str
    pivot: Polynomial
    mode: str  # "substitution" | "single" | "resultant"


@dataclass
class EliminationResult:
    finals: list[Polynomial] = field(default_factory=list)
    stages: list[EliminationStage] = field(default_factory=list)
    free_vars: list[str] = field(default_factory=list)
    inconsistent: bool = False
    degenerate_var: str | None = None

    @property
    def degenerate(self) -> bool:
        return self.degenerate_var is not None


def _substitute_var(p: Polynomial, var: str, image: Polynomial) -> Polynomial:
    if degree_in(p, var) <= 0:
        return p
    assignment = {v: Polynomial.variable(p.vars, v) for v in p.vars}
    assignment[var] = image
    return p.substitute(assignment)


def _linear_const_solution(p: Polynomial, var: str) -> Polynomial | None:
    """If p = c*var + r with constant c != 0 and r free of var, return -r/c."""
    if degree_in(p, var) != 1:
        return None
    u = as_univariate(p, var)
    lead = u[1]
    if not lead.is_constant():
        return None
    rest = u.get(0, Polynomial.zero(p.vars))
    return rest.scale(GaussianRational(-1) / lead.constant_value())


def eliminate(
    system: Sequence[Polynomial],
    kill_vars: Sequence[str],
) -> EliminationResult:
    """Eliminate ``kill_vars`` from the system, deterministically.

    Strategy, in priority order, repeated to a fixpoint:

    1. substitute out a kill-variable that some equation constrains linearly
       with a constant leading coefficient (pivot dropped, stage recorded);
    2. use an equation that is linear with constant leading coefficient in a
       *retained* variable to rewrite the other equations (the pivot itself
       stays; this is an ideal-preserving inter-reduction);
    3. eliminate the first remaining kill-variable by resultants against a
       minimal-degree pivot.

    Equations reducing to zero are dropped; a nonzero constant marks the
    system inconsistent; a vanishing resultant marks the cascade degenerate.
    Both flags short-circuit.
    """
    result = EliminationResult()
    sys_polys: list[Polynomial] = []

    def admit(p: Polynomial) -> bool:
        """Add an equation; returns False when it proves inconsistency."""
        if p.is_zero():
            return True
        if p.is_constant():
            result.inconsistent = True
            return False
        sys_polys.append(p)
        return True

    for p in system:
        if not admit(p):
            result.finals = []
            return result

    remaining = list(kill_vars)
    retained = [v for v in (system[0].vars if system else ()) if v not in set(kill_vars)]

    guard = 0
    while remaining:
        guard += 1
        if guard > 1000:
            raise RuntimeError("elimination cascade failed to make progress")
        # 1. cheap exact substitution of a kill-variable
        action = None
        for idx, eq in enumerate(sys_polys):
            for v in remaining:
                image = _linear_const_solution(eq, v)
                if image is not None:
                    action = (idx, v, image)
                    break
            if action:
                break
        if action:
            idx, v, image = action
            pivot = sys_polys.pop(idx)
            result.stages.append(EliminationStage(v, pivot, "substitution"))
            remaining.remove(v)
            old = sys_polys[:]
            sys_polys.clear()
            for p in old:
                if not admit(_substitute_var(p, v, image)):
                    result.finals = []
                    return result
            continue

        # 2. inter-reduction via a retained-variable linear pivot.  Each
        # equation proposes only its first such variable: letting one
        # equation pivot on several retained variables can swap a pair of
        # them back and forth between the other equations forever.
        action = None
        for idx, eq in enumerate(sys_polys):
            for w in retained:
                image = _linear_const_solution(eq, w)
                if image is None:
                    continue
                if any(degree_in(p, w) > 0 for j, p in enumerate(sys_polys) if j != idx):
                    action = (idx, w, image)
                break
            if action:
                break
        if action:
            idx, w, image = action
            old = sys_polys[:]
            sys_polys.clear()
            for j, p in enumerate(old):
                p2 = p if j == idx else _substitute_var(p, w, image)
                if not admit(p2):
                    result.finals = []
                    return result
            continue

        # 3. resultant elimination of the first remaining kill-variable
        v = remaining.pop(0)
        involving = [(i, p) for i, p in enumerate(sys_polys) if degree_in(p, v) > 0]
        if not involving:
            result.free_vars.append(v)
            continue
        if len(involving) == 1:
            i, pivot = involving[0]
            sys_polys.pop(i)
            result.stages.append(EliminationStage(v, pivot, "single"))
            continue
        pivot_i, pivot = min(involving, key=lambda ip: (degree_in(ip[1], v), ip[0]))
        others = [p for i, p in involving if i != pivot_i]
        keep = [p for i, p in enumerate(sys_polys) if degree_in(p, v) == 0]
        result.stages.append(EliminationStage(v, pivot, "resultant"))
        sys_polys.clear()
        sys_polys.extend(keep)
        for p in others:
            r = resultant(pivot, p, v)
            if r.is_zero():
                result.degenerate_var = v
                result.finals = []
                return result
            if not admit(r):
                result.finals = []
                return result

    result.finals = sys_polys
    return result
