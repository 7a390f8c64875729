"""Jacobian determinants and exact inverse verification.

The star exhibit: a degree-10 triangular shear of C^3 whose Jacobian
determinant is the constant 1 and whose polynomial inverse (degree 16) is
verified by expanding both compositions symbolically, no floating point.
"""

import time

from polyproper import PolyMap, verify_inverse
from polyproper.corpus import example_3_6_inverse, example_3_6_map

f = example_3_6_map()
print("f :", ", ".join(str(c) for c in f.components))

print()
print("== Jacobian ==")
jac = f.jacobian()
for i in range(3):
    print("  [", " | ".join(str(jac[i, j]) for j in range(3)), "]")
verdict = f.nonsingularity()
print("det Jac(f) =", verdict.determinant, "-> nonsingular:", verdict.is_nonsingular)

print()
print("== inverse verification ==")
g = example_3_6_inverse()
print("claimed inverse:", ", ".join(str(c) for c in g.components))
t0 = time.perf_counter()
ok = verify_inverse(f, g)
print(f"f o g == id and g o f == id (exact expansion): {ok}  [{time.perf_counter()-t0:.3f}s]")

print()
print("== controls ==")
ident = PolyMap.identity(("p", "q", "r"))
print("f with identity as 'inverse':", verify_inverse(f, ident))
singular = PolyMap.from_exprs(("x", "y"), ["x", "x*y"])
sv = singular.nonsingularity()
print("(x, xy) determinant:", sv.determinant, "-> nonsingular:", sv.is_nonsingular)

print()
print("== deleting components ==")
for k in (1, 2, 3):
    dropped = f.drop_component(k)
    print(f"delete #{k}: ({', '.join(str(c) for c in dropped.components)})")
