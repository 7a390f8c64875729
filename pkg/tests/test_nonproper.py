"""Nonproperness locus, cylinder structure, clearance, and certificates."""

import pytest

from polyproper import (
    GaussianRational,
    Hypersurface,
    PolyMap,
    automorphism_from_empty_locus,
    fiber_count_diagnostic,
    hyperplane_clearance,
    is_cylinder,
    nonproperness_set,
    parse_polynomial,
    target_variables,
)

T2 = ("y1", "y2")


class TestLocusComputation:
    def test_blowdown_locus(self, x_xy):
        locus = nonproperness_set(x_xy, seed=0)
        assert locus.is_hypersurface
        assert str(locus.poly) == "y1"

    def test_double_cover_is_proper(self, x2_y):
        assert nonproperness_set(x2_y, seed=0).is_empty

    def test_linear_invertible_map(self):
        f = PolyMap.from_exprs(("x", "y"), ["x + 2*y", "x - y"])
        assert nonproperness_set(f, seed=0).is_empty

    def test_shear_map_empty_locus(self, shear_map):
        assert nonproperness_set(shear_map, seed=0).is_empty

    def test_nonsingular_locus_is_empty_or_hypersurface(self, shear_map):
        locus = nonproperness_set(shear_map, seed=0)
        assert locus.is_empty or (
            locus.is_hypersurface and not locus.poly.is_constant()
        )

    def test_target_variable_naming_avoids_source(self):
        f = PolyMap.from_exprs(("y1", "y2"), ["y1", "y1*y2"])
        assert target_variables(f) == ("w1", "w2")
        locus = nonproperness_set(f, seed=0)
        assert locus.is_hypersurface and str(locus.poly) == "w1"

    def test_swapped_components_follow_the_other_axis(self):
        f = PolyMap.from_exprs(("x", "y"), ["x*y", "x"])
        locus = nonproperness_set(f, seed=0)
        assert str(locus.poly) == "y2"

    def test_quadratic_cover_with_escape_locus(self):
        f = PolyMap.from_exprs(("x", "y"), ["x^2", "x*y"])
        locus = nonproperness_set(f, seed=0)
        assert str(locus.poly) == "y1"

    def test_triangular_three_variable_automorphism(self):
        f = PolyMap.from_exprs(
            ("x", "y", "z"), ["x + (y + z^2)^2", "y + z^2", "z"]
        )
        assert f.nonsingularity().is_nonsingular
        assert nonproperness_set(f, seed=0).is_empty

    def test_gaussian_coefficients(self):
        f = PolyMap.from_exprs(("x", "y"), ["x", "(x - i)*y"])
        locus = nonproperness_set(f, seed=0)
        assert locus.is_hypersurface
        assert str(locus.poly) == "y1 - i"


class TestSampleDiagnostic:
    def test_shear_targets_off_locus(self, shear_map):
        diag = fiber_count_diagnostic(shear_map, (0.3 + 0.2j, -1.0, 0.5j), mu=1)
        assert diag.verdict == "off-locus"
        assert diag.count == 1
        assert diag.warnings == ()

    def test_identity_off_locus(self):
        ident = PolyMap.identity(("x", "y"))
        assert fiber_count_diagnostic(ident, (5, -3), mu=1).verdict == "off-locus"

    def test_count_drop_on_singular_map_warns(self, x_xy):
        diag = fiber_count_diagnostic(x_xy, (0, 1), mu=1)
        assert diag.verdict == "in-locus"
        assert diag.count == 0
        assert any("singular" in w for w in diag.warnings)

    def test_positive_dimensional_fiber_is_in_locus(self, x_xy):
        diag = fiber_count_diagnostic(x_xy, (0, 0), mu=1)
        assert diag.verdict == "in-locus"
        assert diag.count is None


class TestCylinder:
    def test_axis_aligned_examples(self):
        s = Hypersurface.of(parse_polynomial("y1", T2))
        assert is_cylinder(s, 2)
        assert not is_cylinder(s, 1)
        s2 = Hypersurface.of(parse_polynomial("y2", T2))
        assert not is_cylinder(s2, 2)

    def test_computed_locus_is_cylinder(self, x_xy):
        locus = nonproperness_set(x_xy, seed=0)
        assert is_cylinder(locus, 2)

    def test_empty_is_vacuously_cylindrical(self):
        assert is_cylinder(Hypersurface.empty(T2), 1)

    def test_scaling_invariance(self):
        p = parse_polynomial("y1", T2)
        scaled = p.scale(GaussianRational(3, -2))
        assert is_cylinder(Hypersurface.of(p), 2) == is_cylinder(Hypersurface.of(scaled), 2)

    def test_unknown_rejected(self):
        with pytest.raises(ValueError, match="unknown"):
            is_cylinder(Hypersurface.unknown(T2, "degenerate"), 1)


class TestClearance:
    def test_empty_locus_clears_and_certifies(self, shear_map):
        targets = target_variables(shear_map)
        h = parse_polynomial("y1", targets)
        verdict = hyperplane_clearance(shear_map, h, seed=0)
        assert verdict.intersects == "no"
        assert verdict.certificate is not None
        assert verdict.certificate.claim == "automorphism"
        # graph hypersurface: biregularity is automatic, not caller-asserted
        assert "automatic" in verdict.certificate.hypotheses["test set biregular to C^(n-1)"]

    def test_identical_hypersurface_intersects(self, x_xy):
        h = parse_polynomial("y1", T2)
        verdict = hyperplane_clearance(x_xy, h, seed=0)
        assert verdict.intersects == "yes"
        assert verdict.certificate is None  # singular map never certifies

    def test_parallel_hyperplane_clears_without_certificate(self, x_xy):
        h = parse_polynomial("y1 - 1", T2)
        verdict = hyperplane_clearance(x_xy, h, seed=0)
        assert verdict.intersects == "no"
        assert verdict.certificate is None
        assert any("singular" in w for w in verdict.warnings)

    def test_constant_hyperplane_rejected(self, x_xy):
        with pytest.raises(ValueError, match="nonconstant"):
            hyperplane_clearance(x_xy, parse_polynomial("3", T2))

    def test_symbolic_and_sampling_agree_on_corpus(self, shear_map, x_xy):
        # (x^2, y) with h = y1 is deliberately absent: its fiber count drops
        # on the discriminant even though the map is proper there, and the
        # count diagnostic is only decisive for nonsingular maps
        cases = [
            (shear_map, "y1", target_variables(shear_map)),
            (x_xy, "y1", T2),
            (x_xy, "y1 - 1", T2),
        ]
        for f, expr, targets in cases:
            h = parse_polynomial(expr, targets)
            sym = hyperplane_clearance(f, h, mode="symbolic", seed=0)
            samp = hyperplane_clearance(f, h, mode="sampling", seed=0)
            assert sym.intersects == samp.intersects, (str(f), expr)

    def test_disjoint_variable_supports_always_meet(self, x_xy):
        h = parse_polynomial("y2 - 4", T2)
        verdict = hyperplane_clearance(x_xy, h, seed=0)
        assert verdict.intersects == "yes"


class TestCertificates:
    def test_empty_locus_certificate(self, shear_map):
        locus = nonproperness_set(shear_map, seed=0)
        cert = automorphism_from_empty_locus(shear_map, locus)
        assert cert is not None
        assert cert.claim == "automorphism"
        assert "determinant" in cert.evidence
        payload = cert.to_dict()
        assert payload["hypotheses"]["nonproperness locus"].startswith("verified")

    def test_singular_map_never_certified(self, x2_y):
        locus = nonproperness_set(x2_y, seed=0)
        assert locus.is_empty
        assert automorphism_from_empty_locus(x2_y, locus) is None

    def test_agreement_counts_off_locus(self, x_xy, x2_y):
        # generic targets off the computed locus attain the geometric degree
        import numpy as np

        from polyproper import fiber_count, geometric_degree
        from polyproper.solver import sample_target

        for f, mu in ((x_xy, 1), (x2_y, 2)):
            locus = nonproperness_set(f, seed=0)
            rng = np.random.default_rng(77)
            hits = 0
            while hits < 25:
                y = sample_target(rng, 2)
                if locus.is_hypersurface:
                    exact = locus.poly.evaluate_exact(
                        tuple(GaussianRational.coerce(v) for v in y)
                    )
                    if exact.is_zero():
                        continue
                assert fiber_count(f, y) == mu
                hits += 1
            est = geometric_degree(f, n_samples=30, seed=3)
            assert est.mu == mu
