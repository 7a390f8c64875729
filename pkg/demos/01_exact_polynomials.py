"""Exact polynomial arithmetic, parsing, and Laurent composition.

Walks through the symbolic kernel: Gaussian-rational coefficients, the
expression grammar, formal derivatives, substitution, and composing a
polynomial with a Laurent curve where enormous cancellations happen exactly.
"""

from polyproper import parse_laurent, parse_path, parse_polynomial

V = ("x", "y", "z")

print("== parsing and canonical form ==")
h = parse_polynomial("z - 3*x^5*y + 2*x^7*y^2", V)
print("h            =", h)
print("terms        =", len(h.terms), "| total degree =", h.total_degree())

p = parse_polynomial("x + y*(z - 3*x^5*y + 2*x^7*y^2)", V)
print("x + y*h      =", p, " (products expand on parse)")

q = parse_polynomial("(1/2 - i)*x^2 + 2/3", ("x",))
print("gaussian-rational coefficients:", q)
print("round trip: parse(str(p)) == p ->", parse_polynomial(str(p), V) == p)

print()
print("== formal derivatives ==")
print("dh/dy =", h.diff("y"))
print("dh/dz =", h.diff("z"))

print()
print("== substitution ==")
target = ("u", "v", "w")
image = h.substitute(
    {
        "x": parse_polynomial("u - v*w", target),
        "y": parse_polynomial("v", target),
        "z": parse_polynomial("w", target),
    }
)
print("h(u - v*w, v, w) has", len(image.terms), "terms, degree", image.total_degree())

print()
print("== Laurent curves ==")
print("a coordinate:", parse_laurent("t^-2"), "| a path:", ", ".join(map(str, parse_path("t, t^-2, 0"))))
path = parse_path("t^-1, t^2, t^-3")
composed = h.substitute_path(path)
print("h(1/t, t^2, 1/t^3) =", composed, " (three t^-3 terms cancel exactly)")

f1 = parse_polynomial("x + y*(z - 3*x^5*y + 2*x^7*y^2)", V)
lam = parse_path("t, t^-2, 0")
print("f1 along (t, t^-2, 0) =", f1.substitute_path(lam), " (t - t cancels)")

print()
print("== evaluation ==")
print("h(0, 0, 5)  =", h.evaluate((0, 0, 5)))
print("h(1+2i, 1, 0) =", h.evaluate((1 + 2j, 1, 0)))
