"""Exact division, resultants (against a Sylvester oracle), gcd, cascades."""

import random

import pytest

from polyproper import Polynomial, parse_polynomial
from polyproper.elimination import (
    NotDivisibleError,
    eliminate,
    exact_div,
    gcd_poly,
    normalized,
    poly_matrix_det,
    resultant,
    squarefree_part,
    sylvester_matrix,
)
from conftest import random_nonzero_polynomial

V = ("x", "y")
V3 = ("x", "y", "z")


def P(text, variables=V):
    return parse_polynomial(text, variables)


class TestExactDivision:
    def test_simple(self):
        assert exact_div(P("x^2 - y^2"), P("x - y")) == P("x + y")

    def test_not_divisible(self):
        with pytest.raises(NotDivisibleError):
            exact_div(P("x^2 + 1"), P("x - y"))

    def test_random_products(self):
        rng = random.Random(13)
        for _ in range(80):
            a = random_nonzero_polynomial(rng, V, max_degree=3)
            b = random_nonzero_polynomial(rng, V, max_degree=3)
            assert exact_div(a * b, b) == a


class TestDeterminant:
    def test_two_by_two(self):
        m = [[P("x"), P("y")], [P("1"), P("x")]]
        assert poly_matrix_det(m) == P("x^2 - y")

    def test_row_swap_sign(self):
        m = [[P("0"), P("1")], [P("1"), P("0")]]
        assert poly_matrix_det(m) == P("-1")

    def test_zero_column(self):
        m = [[P("0"), P("x")], [P("0"), P("y")]]
        assert poly_matrix_det(m).is_zero()

    def test_matches_cofactor_expansion_random(self):
        rng = random.Random(37)
        for _ in range(25):
            m = [
                [random_nonzero_polynomial(rng, V, max_degree=2, max_terms=3) for _ in range(3)]
                for _ in range(3)
            ]
            bareiss = poly_matrix_det(m)
            cof = Polynomial.zero(V)
            for j in range(3):
                minor = poly_matrix_det([row[:j] + row[j + 1 :] for row in m[1:]])
                term = m[0][j] * minor
                cof = cof + (term if j % 2 == 0 else -term)
            assert bareiss == cof


class TestResultant:
    def test_univariate_values(self):
        # res(x - a, x - b) = a - b with a, b numbers
        assert resultant(P("x - 2"), P("x - 5"), "x") == P("-3")
        # res(x^2 + 1, x + 1) = (i+1)(-i+1) = 2
        assert resultant(P("x^2 + 1"), P("x + 1"), "x") == P("2")

    def test_common_factor_gives_zero(self):
        f = P("(x - y)*(x + y)")
        g = P("(x - y)*(x + 1)")
        assert resultant(f, g, "x").is_zero()

    def test_classical_discriminant_shape(self):
        # res_x(x^2 - y, 2x) = 4y up to sign
        r = resultant(P("x^2 - y"), P("x^2 - y").diff("x"), "x")
        assert normalized(r) == P("y")

    def test_against_sylvester_oracle(self):
        rng = random.Random(41)
        agreements = 0
        for _ in range(40):
            f = random_nonzero_polynomial(rng, V, max_degree=4, max_terms=4)
            g = random_nonzero_polynomial(rng, V, max_degree=4, max_terms=4)
            if f.is_constant() or g.is_constant():
                continue
            if "x" not in f.support_vars() or "x" not in g.support_vars():
                continue
            prs = resultant(f, g, "x")
            syl = poly_matrix_det(sylvester_matrix(f, g, "x"))
            assert prs == syl
            agreements += 1
        assert agreements >= 20


class TestGcd:
    def test_univariate(self):
        assert gcd_poly(P("x^2 - 1"), P("x - 1")) == P("x - 1")

    def test_coprime(self):
        assert gcd_poly(P("x - 1"), P("x + 1")).is_constant()

    def test_multivariate(self):
        g = P("x + y")
        a = g * P("x - 2*y")
        b = g * P("x*y + 1")
        assert gcd_poly(a, b) == normalized(g)

    def test_random_common_factor(self):
        rng = random.Random(53)
        for _ in range(30):
            g = random_nonzero_polynomial(rng, V, max_degree=2, max_terms=2)
            if g.is_constant():
                continue
            a = g * random_nonzero_polynomial(rng, V, max_degree=2, max_terms=2)
            b = g * random_nonzero_polynomial(rng, V, max_degree=2, max_terms=2)
            d = gcd_poly(a, b)
            # the common factor divides the gcd
            exact_div(d, gcd_poly(d, normalized(g)))  # no exception
            assert not (exact_div(a, d).is_zero() or exact_div(b, d).is_zero())


class TestSquarefree:
    def test_strips_multiplicity(self):
        assert squarefree_part(P("(x - y)^3")) == normalized(P("x - y"))

    def test_already_squarefree(self):
        p = P("x^2 - y")
        assert squarefree_part(p) == normalized(p)

    def test_keeps_factors_missing_the_first_variable(self):
        p = P("(x + y)^2 * (y - 1)^2")
        assert squarefree_part(p) == normalized(P("(x + y)*(y - 1)"))
        assert squarefree_part(P("x^2*y^2", ("x", "y"))) == P("x*y", ("x", "y"))


class TestCascade:
    def test_triangular_substitution(self):
        system = [P("x - 2", V3), P("x*y - 6", V3), P("z - y", V3)]
        res = eliminate(system, ["x", "y"])
        assert not res.degenerate and not res.inconsistent
        assert len(res.finals) == 1
        assert normalized(res.finals[0]) == normalized(P("z - 3", V3))

    def test_inconsistency_detected(self):
        system = [P("x", V), P("x - 1", V)]
        res = eliminate(system, ["x"])
        assert res.inconsistent

    def test_free_variable_detected(self):
        system = [P("y - 1", V)]
        res = eliminate(system, ["x"])
        assert res.free_vars == ["x"]

    def test_resultant_stage(self):
        system = [P("x^2 + y^2 - 1"), P("x - y")]
        res = eliminate(system, ["x"])
        assert len(res.finals) == 1
        assert normalized(res.finals[0]) == normalized(P("2*y^2 - 1"))
