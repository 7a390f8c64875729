"""Where a polynomial map fails to be proper, and what that certifies.

The locus is computed by exact elimination and validated numerically;
an empty locus plus a constant nonzero Jacobian determinant certifies an
automorphism (global inversion), and so does a locus that misses a test
hypersurface biregular to C^(n-1) (hyperplane clearance).
"""

from polyproper import (
    PolyMap,
    automorphism_from_empty_locus,
    fiber_count_diagnostic,
    hyperplane_clearance,
    is_cylinder,
    nonproperness_set,
    parse_polynomial,
    target_variables,
)
from polyproper.corpus import example_3_6_map

print("== blowdown (x, xy): a nonempty locus ==")
g = PolyMap.from_exprs(("x", "y"), ["x", "x*y"])
locus = nonproperness_set(g, seed=0)
print("locus:", locus)
print("cylinder along y2:", is_cylinder(locus, 2), "| along y1:", is_cylinder(locus, 1))
print("count diagnostic at (0, 1):", fiber_count_diagnostic(g, (0, 1), mu=1).verdict)

h_on = parse_polynomial("y1", ("y1", "y2"))
h_off = parse_polynomial("y1 - 1", ("y1", "y2"))
print("does {y1=0} meet the locus?   ", hyperplane_clearance(g, h_on, locus=locus).intersects)
print("does {y1-1=0} meet the locus? ", hyperplane_clearance(g, h_off, locus=locus).intersects)
print("(no certificates here: the map is singular)")

print()
print("== proper but singular (x^2, y) ==")
f2 = PolyMap.from_exprs(("x", "y"), ["x^2", "y"])
print("locus:", nonproperness_set(f2, seed=0))
print("still no automorphism: the Jacobian determinant 2x is not constant")

print()
print("== the shear automorphism: empty locus, two certificates ==")
shear = example_3_6_map()
locus = nonproperness_set(shear, seed=0)
print("locus:", locus)
cert = automorphism_from_empty_locus(shear, locus)
print("certificate 1:", cert.criterion)

h = parse_polynomial("y1", target_variables(shear))
verdict = hyperplane_clearance(shear, h, locus=locus)
print("clearance of {y1=0}:", verdict.intersects)
print("certificate 2:", verdict.certificate.criterion)
for name, status in verdict.certificate.hypotheses.items():
    print(f"   {name}: {status}")
