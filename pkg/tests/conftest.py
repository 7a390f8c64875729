"""Shared generators and fixtures for the test suite.

Random objects are produced from explicit ``random.Random`` instances so
every test is reproducible; numeric assertions use numpy only where the
code under test already does.
"""

from __future__ import annotations

import random
from fractions import Fraction

import pytest

from polyproper import GaussianRational, PolyMap, Polynomial
from polyproper.corpus import example_3_6_inverse, example_3_6_map


def random_rational(rng: random.Random, span: int = 6) -> Fraction:
    num = rng.randint(-span, span)
    den = rng.randint(1, 4)
    return Fraction(num, den)


def random_scalar(rng: random.Random, complex_ok: bool = True, span: int = 6) -> GaussianRational:
    re = random_rational(rng, span)
    im = random_rational(rng, span) if complex_ok and rng.random() < 0.4 else 0
    return GaussianRational(re, im)


def random_polynomial(
    rng: random.Random,
    variables: tuple[str, ...],
    max_degree: int = 3,
    max_terms: int = 5,
    complex_ok: bool = True,
) -> Polynomial:
    n = len(variables)
    terms = {}
    for _ in range(rng.randint(1, max_terms)):
        budget = rng.randint(0, max_degree)
        exps = [0] * n
        for _ in range(budget):
            exps[rng.randrange(n)] += 1
        terms[tuple(exps)] = random_scalar(rng, complex_ok)
    return Polynomial(variables, terms)


def random_nonzero_polynomial(rng, variables, max_degree=3, max_terms=5, complex_ok=True):
    while True:
        p = random_polynomial(rng, variables, max_degree, max_terms, complex_ok)
        if not p.is_zero():
            return p


def random_map(
    rng: random.Random,
    variables: tuple[str, ...],
    max_degree: int = 3,
    max_terms: int = 4,
    complex_ok: bool = True,
) -> PolyMap:
    comps = [
        random_nonzero_polynomial(rng, variables, max_degree, max_terms, complex_ok)
        for _ in variables
    ]
    return PolyMap(variables, comps)


def random_point(rng: random.Random, n: int, scale: float = 1.5) -> tuple[complex, ...]:
    return tuple(
        complex(rng.uniform(-scale, scale), rng.uniform(-scale, scale)) for _ in range(n)
    )


@pytest.fixture(scope="session")
def shear_map() -> PolyMap:
    """The degree-10 triangular shear automorphism of C^3."""
    return example_3_6_map()


@pytest.fixture(scope="session")
def shear_inverse() -> PolyMap:
    return example_3_6_inverse()


@pytest.fixture(scope="session")
def x_xy() -> PolyMap:
    return PolyMap.from_exprs(("x", "y"), ["x", "x*y"])


@pytest.fixture(scope="session")
def x2_y() -> PolyMap:
    return PolyMap.from_exprs(("x", "y"), ["x^2", "y"])
