"""Sparse multivariate polynomials with exact Gaussian-rational coefficients.

A polynomial is a map from exponent tuples to nonzero scalars, over a fixed
ordered tuple of variable names:

    Polynomial(("x", "y"), {(2, 0): 1, (0, 1): -1})   # x^2 - y

Zero coefficients are never stored, so structural equality is polynomial
identity.  The canonical term order is graded lexicographic with respect to
the declared variable order; printing, hashing, and leading-term extraction
all use it, making the printed form stable across runs.

``LaurentPoly`` is the single-variable companion used for curves
t -> (x_1(t), ..., x_n(t)) with integer (possibly negative) exponents.
"""

from __future__ import annotations

from typing import Iterable, Mapping, Sequence, Union

from .scalar import GaussianRational, ONE, ScalarLike, ZERO

Exponents = tuple  # tuple[int, ...], one entry per variable

#: Reserved token for the imaginary unit in parsed and printed expressions.
IMAGINARY_UNIT = "i"


def _coerce_coeff(value: ScalarLike) -> GaussianRational:
    return GaussianRational.coerce(value)


def grlex_key(exponents: Exponents):
    """Sort key for graded lexicographic order (ascending)."""
    return (sum(exponents), exponents)


class Polynomial:
    """Immutable sparse polynomial over Gaussian rationals.

    All arithmetic requires both operands to share the same variable
    context (identical names, identical order); mixing contexts raises
    ``ValueError``.  Every operation returns a canonical polynomial: no
    zero terms stored, exponent tuples of the right length.
    """

    __slots__ = ("vars", "terms", "_hash")

    def __init__(self, variables: Sequence[str], terms: Mapping[Exponents, ScalarLike]):
        vs = tuple(variables)
        if len(set(vs)) != len(vs):
            raise ValueError(f"duplicate variable names in {vs}")
        if IMAGINARY_UNIT in vs:
            raise ValueError(f"{IMAGINARY_UNIT!r} is reserved for the imaginary unit")
        n = len(vs)
        clean: dict[Exponents, GaussianRational] = {}
        for exps, coeff in terms.items():
            e = tuple(exps)
            if len(e) != n or any((not isinstance(k, int)) or k < 0 for k in e):
                raise ValueError(f"bad exponent tuple {e} for {n} variables")
            c = _coerce_coeff(coeff)
            if not c.is_zero():
                if e in clean:
                    c = clean[e] + c
                    if c.is_zero():
                        del clean[e]
                        continue
                clean[e] = c
        object.__setattr__(self, "vars", vs)
        object.__setattr__(self, "terms", clean)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("Polynomial is immutable")

    # -- constructors ---------------------------------------------------

    @classmethod
    def zero(cls, variables: Sequence[str]) -> "Polynomial":
        return cls(variables, {})

    @classmethod
    def constant(cls, variables: Sequence[str], value: ScalarLike) -> "Polynomial":
        vs = tuple(variables)
        return cls(vs, {(0,) * len(vs): value})

    @classmethod
    def variable(cls, variables: Sequence[str], name: str) -> "Polynomial":
        vs = tuple(variables)
        if name not in vs:
            raise ValueError(f"unknown variable {name!r} in context {vs}")
        exps = tuple(1 if v == name else 0 for v in vs)
        return cls(vs, {exps: 1})

    # -- basic queries ----------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def constant_value(self) -> GaussianRational:
        """The scalar value of a constant polynomial (zero included)."""
        if not self.is_constant():
            raise ValueError("polynomial is not constant")
        if not self.terms:
            return ZERO
        return next(iter(self.terms.values()))

    def total_degree(self) -> int:
        if not self.terms:
            raise ValueError("degree of the zero polynomial is undefined")
        return max(sum(e) for e in self.terms)

    def degree_in(self, var: str) -> int:
        """Degree in one variable; 0 when the variable does not occur."""
        i = self._index(var)
        if not self.terms:
            raise ValueError("degree of the zero polynomial is undefined")
        return max(e[i] for e in self.terms)

    def support_vars(self) -> tuple[str, ...]:
        """Variables that actually occur, in declared order."""
        used = [False] * len(self.vars)
        for e in self.terms:
            for k, exp in enumerate(e):
                if exp:
                    used[k] = True
        return tuple(v for v, u in zip(self.vars, used) if u)

    def leading_term(self) -> tuple[Exponents, GaussianRational]:
        """Greatest term under graded lex; errors on the zero polynomial."""
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        e = max(self.terms, key=grlex_key)
        return e, self.terms[e]

    def sorted_terms(self) -> list[tuple[Exponents, GaussianRational]]:
        """Terms in descending graded-lex order (the printing order)."""
        return sorted(self.terms.items(), key=lambda t: grlex_key(t[0]), reverse=True)

    def _index(self, var: str) -> int:
        try:
            return self.vars.index(var)
        except ValueError:
            raise ValueError(f"unknown variable {var!r} in context {self.vars}") from None

    def _check_context(self, other: "Polynomial") -> None:
        if self.vars != other.vars:
            raise ValueError(f"variable context mismatch: {self.vars} vs {other.vars}")

    # -- ring arithmetic ---------------------------------------------------

    def __add__(self, other: Union["Polynomial", ScalarLike]) -> "Polynomial":
        other = self._coerce_operand(other)
        self._check_context(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e, ZERO) + c
            if s.is_zero():
                out.pop(e, None)
            else:
                out[e] = s
        return self._raw(self.vars, out)

    __radd__ = __add__

    def __sub__(self, other: Union["Polynomial", ScalarLike]) -> "Polynomial":
        other = self._coerce_operand(other)
        return self + (-other)

    def __rsub__(self, other: ScalarLike) -> "Polynomial":
        return self._coerce_operand(other) - self

    def __neg__(self) -> "Polynomial":
        return self._raw(self.vars, {e: -c for e, c in self.terms.items()})

    def __mul__(self, other: Union["Polynomial", ScalarLike]) -> "Polynomial":
        other = self._coerce_operand(other)
        self._check_context(other)
        out: dict[Exponents, GaussianRational] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = out.get(e, ZERO) + c1 * c2
                if s.is_zero():
                    out.pop(e, None)
                else:
                    out[e] = s
        return self._raw(self.vars, out)

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> "Polynomial":
        if not isinstance(exponent, int) or exponent < 0:
            raise ValueError("exponent must be a nonnegative integer")
        result = Polynomial.constant(self.vars, 1)
        base = self
        e = exponent
        while e:
            if e & 1:
                result = result * base
            base = base * base if e > 1 else base
            e >>= 1
        return result

    def scale(self, factor: ScalarLike) -> "Polynomial":
        c = _coerce_coeff(factor)
        if c.is_zero():
            return Polynomial.zero(self.vars)
        return self._raw(self.vars, {e: v * c for e, v in self.terms.items()})

    def _coerce_operand(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            return other
        return Polynomial.constant(self.vars, other)

    @classmethod
    def _raw(cls, variables, terms) -> "Polynomial":
        """Internal: wrap an already-canonical term dict without re-checking."""
        p = object.__new__(cls)
        object.__setattr__(p, "vars", variables)
        object.__setattr__(p, "terms", terms)
        object.__setattr__(p, "_hash", None)
        return p

    # -- calculus and substitution -----------------------------------------

    def diff(self, var: str) -> "Polynomial":
        """Exact formal partial derivative."""
        i = self._index(var)
        out: dict[Exponents, GaussianRational] = {}
        for e, c in self.terms.items():
            if e[i] == 0:
                continue
            d = list(e)
            d[i] -= 1
            out[tuple(d)] = c * e[i]
        return self._raw(self.vars, out)

    def substitute(self, assignment: Mapping[str, "Polynomial"]) -> "Polynomial":
        """Replace every variable by a polynomial and expand exactly.

        All assigned polynomials must share one variable context, which
        becomes the context of the result.  Every variable of this
        polynomial must be assigned (missing assignments raise).
        """
        missing = [v for v in self.vars if v not in assignment]
        if missing:
            raise ValueError(f"missing assignment for {missing}")
        images = [assignment[v] for v in self.vars]
        target = images[0].vars if images else ()
        for img in images:
            if img.vars != target:
                raise ValueError("assigned polynomials use inconsistent variable contexts")
        return self._substitute_images(images, target)

    def _substitute_images(self, images: Sequence["Polynomial"], target) -> "Polynomial":
        # Power tables keep the degree-7 compositions in the verification
        # corpus cheap: each image power is computed once.
        powers: list[dict[int, Polynomial]] = [
            {0: Polynomial.constant(target, 1)} for _ in images
        ]

        def image_pow(i: int, k: int) -> Polynomial:
            table = powers[i]
            if k not in table:
                table[k] = image_pow(i, k - 1) * images[i]
            return table[k]

        result = Polynomial.zero(target)
        for e, c in self.terms.items():
            term = Polynomial.constant(target, c)
            for idx, exp in enumerate(e):
                if exp:
                    term = term * image_pow(idx, exp)
            result = result + term
        return result

    def substitute_path(self, path: Sequence["LaurentPoly"]) -> "LaurentPoly":
        """Compose with a curve whose coordinates are Laurent polynomials.

        The path supplies one Laurent polynomial per variable; the result is
        the exact Laurent polynomial p(x_1(t), ..., x_n(t)).
        """
        coords = tuple(path)
        if len(coords) != len(self.vars):
            raise ValueError(
                f"path has {len(coords)} coordinates for {len(self.vars)} variables"
            )
        t_var = coords[0].var if coords else "t"
        powers: list[dict[int, LaurentPoly]] = [{0: LaurentPoly.one(t_var)} for _ in coords]

        def coord_pow(i: int, k: int) -> "LaurentPoly":
            table = powers[i]
            if k not in table:
                table[k] = coord_pow(i, k - 1) * coords[i]
            return table[k]

        result = LaurentPoly(t_var, {})
        for e, c in self.terms.items():
            term = LaurentPoly(t_var, {0: c})
            for idx, exp in enumerate(e):
                if exp:
                    term = term * coord_pow(idx, exp)
            result = result + term
        return result

    # -- evaluation ---------------------------------------------------------

    def evaluate(self, point: Sequence[complex]) -> complex:
        """Numeric evaluation by nested Horner recursion on the variables."""
        values = [complex(p) for p in point]
        if len(values) != len(self.vars):
            raise ValueError(f"point has dimension {len(values)}, expected {len(self.vars)}")
        if not self.terms:
            return 0j
        items = [(e, c.to_complex()) for e, c in self.terms.items()]
        return _horner(items, 0, len(self.vars), values, 0j)

    def evaluate_exact(self, point: Sequence[ScalarLike]) -> GaussianRational:
        """Exact evaluation at Gaussian-rational coordinates."""
        values = [GaussianRational.coerce(p) for p in point]
        if len(values) != len(self.vars):
            raise ValueError(f"point has dimension {len(values)}, expected {len(self.vars)}")
        if not self.terms:
            return ZERO
        items = list(self.terms.items())
        return _horner(items, 0, len(self.vars), values, ZERO)

    # -- comparison and printing --------------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, Polynomial):
            return self.vars == other.vars and self.terms == other.terms
        return NotImplemented

    def __hash__(self) -> int:
        h = self._hash
        if h is None:
            h = hash((self.vars, tuple(sorted(self.terms.items(), key=lambda t: t[0]))))
            object.__setattr__(self, "_hash", h)
        return h

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __repr__(self) -> str:
        return f"Polynomial({self.vars!r}, {str(self)!r})"

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        pieces = []
        for e, c in self.sorted_terms():
            neg, body = _term_str(c, self._mono_str(e))
            if not pieces:
                pieces.append(("-" + body) if neg else body)
            else:
                pieces.append((" - " if neg else " + ") + body)
        return "".join(pieces)

    def _mono_str(self, exponents: Exponents) -> str:
        parts = []
        for v, e in zip(self.vars, exponents):
            if e == 1:
                parts.append(v)
            elif e > 1:
                parts.append(f"{v}^{e}")
        return "*".join(parts)


def _horner(items, vi, nvars, values, zero):
    """Evaluate grouped terms by Horner's rule, one variable at a time."""
    if vi == nvars:
        acc = zero
        for _, c in items:
            acc = acc + c
        return acc
    groups: dict[int, list] = {}
    for e, c in items:
        groups.setdefault(e[vi], []).append((e, c))
    exps = sorted(groups, reverse=True)
    v = values[vi]
    acc = _horner(groups[exps[0]], vi + 1, nvars, values, zero)
    prev = exps[0]
    for e in exps[1:]:
        acc = acc * v ** (prev - e) + _horner(groups[e], vi + 1, nvars, values, zero)
        prev = e
    if prev:
        acc = acc * v**prev
    return acc


def _term_str(coeff: GaussianRational, mono: str) -> tuple[bool, str]:
    """Split a term into (is_negative, printable body without sign)."""
    neg = coeff.re < 0 or (coeff.re == 0 and coeff.im < 0)
    mag = -coeff if neg else coeff
    mixed = bool(mag.re) and bool(mag.im)
    if not mono:
        s = str(mag)
        return neg, f"({s})" if mixed else s
    if mag.is_one():
        return neg, mono
    if mag.re == 0 and mag.im == 1:
        return neg, f"{IMAGINARY_UNIT}*{mono}"
    s = str(mag)
    return neg, (f"({s})*{mono}" if mixed else f"{s}*{mono}")


class LaurentPoly:
    """Univariate Laurent polynomial: finite map exponent -> nonzero scalar.

    Exponents are arbitrary integers.  ``degree`` and ``order`` (max and min
    exponent) are defined only for nonzero polynomials.
    """

    __slots__ = ("var", "terms")

    def __init__(self, var: str, terms: Mapping[int, ScalarLike]):
        clean: dict[int, GaussianRational] = {}
        for e, c in terms.items():
            if not isinstance(e, int):
                raise ValueError(f"Laurent exponent must be an integer, got {e!r}")
            coeff = _coerce_coeff(c)
            if not coeff.is_zero():
                clean[e] = coeff
        object.__setattr__(self, "var", var)
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("LaurentPoly is immutable")

    @classmethod
    def zero(cls, var: str = "t") -> "LaurentPoly":
        return cls(var, {})

    @classmethod
    def one(cls, var: str = "t") -> "LaurentPoly":
        return cls(var, {0: 1})

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        if not self.terms:
            raise ValueError("degree of the zero Laurent polynomial is undefined")
        return max(self.terms)

    def order(self) -> int:
        if not self.terms:
            raise ValueError("order of the zero Laurent polynomial is undefined")
        return min(self.terms)

    def coefficient(self, exponent: int) -> GaussianRational:
        return self.terms.get(exponent, ZERO)

    def constant_term(self) -> GaussianRational:
        return self.terms.get(0, ZERO)

    def _check(self, other: "LaurentPoly") -> None:
        if self.var != other.var:
            raise ValueError(f"Laurent variable mismatch: {self.var!r} vs {other.var!r}")

    def __add__(self, other: Union["LaurentPoly", ScalarLike]) -> "LaurentPoly":
        if not isinstance(other, LaurentPoly):
            other = LaurentPoly(self.var, {0: other})
        self._check(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e, ZERO) + c
            if s.is_zero():
                out.pop(e, None)
            else:
                out[e] = s
        return LaurentPoly(self.var, out)

    def __sub__(self, other: Union["LaurentPoly", ScalarLike]) -> "LaurentPoly":
        if not isinstance(other, LaurentPoly):
            other = LaurentPoly(self.var, {0: other})
        return self + (-other)

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly(self.var, {e: -c for e, c in self.terms.items()})

    def __mul__(self, other: Union["LaurentPoly", ScalarLike]) -> "LaurentPoly":
        if not isinstance(other, LaurentPoly):
            other = LaurentPoly(self.var, {0: other})
        self._check(other)
        out: dict[int, GaussianRational] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = e1 + e2
                s = out.get(e, ZERO) + c1 * c2
                if s.is_zero():
                    out.pop(e, None)
                else:
                    out[e] = s
        return LaurentPoly(self.var, out)

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> "LaurentPoly":
        # 0**0 is the empty product: the constant 1.
        if not isinstance(exponent, int):
            raise ValueError("exponent must be an integer")
        if exponent < 0:
            # negative powers exist only for single-term polynomials, e.g. t^-2
            if len(self.terms) != 1:
                raise ValueError("negative power of a multi-term Laurent polynomial")
            ((e, c),) = self.terms.items()
            return LaurentPoly(self.var, {e * exponent: ONE / c ** (-exponent)})
        result = LaurentPoly.one(self.var)
        for _ in range(exponent):
            result = result * self
        return result

    def evaluate(self, t: complex) -> complex:
        tc = complex(t)
        if tc == 0 and any(e < 0 for e in self.terms):
            raise ZeroDivisionError("Laurent polynomial with poles cannot be evaluated at 0")
        return sum((c.to_complex() * tc**e for e, c in sorted(self.terms.items())), 0j)

    def __eq__(self, other) -> bool:
        if isinstance(other, LaurentPoly):
            return self.var == other.var and self.terms == other.terms
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.var, tuple(sorted(self.terms.items()))))

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __repr__(self) -> str:
        return f"LaurentPoly({self.var!r}, {str(self)!r})"

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        pieces = []
        for e in sorted(self.terms, reverse=True):
            mono = "" if e == 0 else (self.var if e == 1 else f"{self.var}^{e}")
            neg, body = _term_str(self.terms[e], mono)
            if not pieces:
                pieces.append(("-" + body) if neg else body)
            else:
                pieces.append((" - " if neg else " + ") + body)
        return "".join(pieces)
