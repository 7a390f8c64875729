"""Asymptotic-critical-value witnesses: divergence, limits, decay, verdicts."""

import math

import pytest

from polyproper import (
    LaurentPath,
    PolyMap,
    check_rabier_witness,
    image_limit,
    path_diverges,
    sigma_min_along_path,
    smallest_singular_value,
    witness_grid,
)
from polyproper.numlin import min_gram_eigenvalue

LAMBDA = "t, t^-2, 0"
GAMMA = "t^-1, t^2, t^-3"
DELTA = "t, t^-2, t^3"


def path(text):
    return LaurentPath.from_text(text)


class TestPathDivergence:
    def test_escape_path(self):
        d = path_diverges(path(LAMBDA))
        assert d.diverges and d.coordinates == (1,)

    def test_bounded_path(self):
        assert not path_diverges(path("t^-1, t^-2"))

    def test_two_coordinates_diverge(self):
        d = path_diverges(path(DELTA))
        assert d.coordinates == (1, 3)

    def test_all_zero_rejected(self):
        with pytest.raises(ValueError, match="nonzero"):
            LaurentPath.from_text("0, 0")


class TestImageLimit:
    def test_first_two_components_along_lambda(self, shear_map):
        g = shear_map.drop_component(3)
        lim = image_limit(g, path(LAMBDA))
        assert lim.finite
        assert [str(v) for v in lim.value] == ["0", "0"]
        assert lim.decay_order == -2

    def test_outer_components_along_gamma(self, shear_map):
        g = shear_map.drop_component(2)  # (f1, f3)
        lim = image_limit(g, path(GAMMA))
        assert lim.finite
        assert [str(v) for v in lim.value] == ["0", "0"]

    def test_wrong_pair_diverges_along_delta(self, shear_map):
        wrong = PolyMap(shear_map.vars, (shear_map.components[0], shear_map.components[2]))
        lim = image_limit(wrong, path(DELTA))
        assert not lim.finite
        assert lim.diverging_component == 1

    def test_dimension_mismatch(self, shear_map):
        with pytest.raises(ValueError, match="dimension"):
            image_limit(shear_map, path("t, t^-2"))

    def test_limit_approximates_float_evaluation(self, shear_map):
        # the exact Laurent order bounds the numeric convergence rate
        for drop, text in ((3, LAMBDA), (2, GAMMA), (1, DELTA)):
            g = shear_map.drop_component(drop)
            lim = image_limit(g, path(text))
            t0 = 1e3
            numeric = g.evaluate(path(text).evaluate(t0))
            for a, b in zip(numeric, lim.value_complex()):
                assert abs(a - b) <= 10.0 / t0


class TestSigmaAlongPath:
    def test_exact_inverse_square_decay(self, shear_map):
        g = shear_map.drop_component(3)
        samples = sigma_min_along_path(g, path(LAMBDA), [10.0, 100.0])
        for (t, nu), expected in zip(samples, (1e-2, 1e-4)):
            assert nu == pytest.approx(expected, rel=1e-9)

    def test_cubic_decay_pair(self, shear_map):
        g = shear_map.drop_component(1)  # (f2, f3)
        samples = sigma_min_along_path(g, path(DELTA), [10.0, 100.0])
        # sigma = t^-3 * (1 + O(t^-4)) here, so compare at matching slack
        assert samples[0][1] == pytest.approx(10.0**-3, rel=1e-3)
        assert samples[1][1] == pytest.approx(100.0**-3, rel=1e-3)
        assert samples[1][1] < samples[0][1]

    def test_identity_is_flat(self):
        ident = PolyMap.identity(("x", "y"))
        samples = sigma_min_along_path(ident, path("t, 0"), [10.0, 100.0, 1000.0])
        assert all(nu == pytest.approx(1.0, rel=1e-12) for _, nu in samples)

    def test_monotonicity_validation(self, shear_map):
        with pytest.raises(ValueError, match="positive and increasing"):
            sigma_min_along_path(shear_map, path(LAMBDA), [100.0, 10.0])

    def test_matches_gram_cross_check(self, shear_map):
        g = shear_map.drop_component(3)
        jac = g.jacobian()
        pts = [path(LAMBDA).evaluate(t) for t in (10.0, 100.0)]
        samples = sigma_min_along_path(g, path(LAMBDA), [10.0, 100.0])
        for (t, nu), pt in zip(samples, pts):
            gram = min_gram_eigenvalue(jac.evaluate(pt))
            assert nu**2 == pytest.approx(gram, rel=1e-9, abs=1e-18)


class TestWitnessGrid:
    def test_powers_of_ten(self):
        assert witness_grid(1e4) == [10.0, 100.0, 1000.0, 10000.0]

    def test_cap_appended(self):
        assert witness_grid(500.0) == [10.0, 100.0, 500.0]

    def test_too_small(self):
        with pytest.raises(ValueError):
            witness_grid(5.0)


class TestCheckWitness:
    def test_three_accepted_witnesses(self, shear_map):
        for drop, text in ((3, LAMBDA), (2, GAMMA), (1, DELTA)):
            g = shear_map.drop_component(drop)
            outcome = check_rabier_witness(g, path(text), tol=1e-3, t_max=1e4)
            assert outcome.accepted, (drop, getattr(outcome, "reason", None))
            assert [str(v) for v in outcome.limit] == ["0", "0"]
            assert outcome.nu_samples[-1][1] < 1e-3
            values = [nu for _, nu in outcome.nu_samples]
            assert all(b < a for a, b in zip(values, values[1:]))
            assert outcome.refutes_rabier_condition

    def test_negative_control_image_diverges(self, shear_map):
        wrong = PolyMap(shear_map.vars, (shear_map.components[0], shear_map.components[2]))
        outcome = check_rabier_witness(wrong, path(DELTA))
        assert not outcome.accepted
        assert outcome.reason == "image diverges"

    def test_bounded_path_rejected(self, shear_map):
        outcome = check_rabier_witness(shear_map.drop_component(3), path("t^-1, t^-2, 0"))
        assert not outcome.accepted
        assert outcome.reason == "path bounded"

    def test_flat_sigma_rejected(self):
        # single component y along (t, 0): image converges to 0, but the
        # gradient (0, 1) keeps sigma pinned at 1
        g = PolyMap(("x", "y"), (PolyMap.identity(("x", "y")).components[1],))
        outcome = check_rabier_witness(g, path("t, 0"))
        assert not outcome.accepted
        assert "decreasing" in outcome.reason

    def test_witness_clauses_reassertable(self, shear_map):
        g = shear_map.drop_component(3)
        w = check_rabier_witness(g, path(LAMBDA))
        # every clause of the acceptance is recomputable from the fields
        assert path_diverges(w.path).coordinates == w.divergence_coordinates
        lim = image_limit(w.map, w.path)
        assert lim.finite and lim.value == w.limit
        resampled = sigma_min_along_path(w.map, w.path, [t for t, _ in w.nu_samples])
        for (t1, n1), (t2, n2) in zip(resampled, w.nu_samples):
            assert t1 == t2 and n1 == pytest.approx(n2, rel=1e-12)
        assert w.nu_samples[-1][1] < w.tol


def test_sigma_min_vs_row_norm_identity():
    # one-row Jacobians: the singular value equals the gradient norm
    g = PolyMap.from_exprs(("x", "y"), ["x^2 + y"])
    jac = g.jacobian()
    for pt in ((1.0, 2.0), (0.5j, -1.0), (2.0 + 1.0j, 0.25)):
        row = jac.evaluate(pt)
        nu = smallest_singular_value(row)
        norm = math.sqrt(sum(abs(v) ** 2 for v in row[0]))
        assert nu == pytest.approx(norm, rel=1e-12)
