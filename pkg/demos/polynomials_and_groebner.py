"""
Polynomials over F_p and Groebner bases
=======================================

Arithmetic in F_p[x, y] is exact, and the Frobenius map is a ring map:
(f + g)^p = f^p + g^p. Ideals compare through reduced Groebner bases.
"""

from frobkit import Ideal, PolynomialRing, buchberger, digit_decompose, ideal_equal, ideal_member

R = PolynomialRing(3, ["x", "y"], order="grevlex")
f, g = R("x^2 + 2*x*y"), R("y^3 + 1")

# freshman's dream holds in characteristic 3
print("(f+g)^3         =", (f + g) ** 3)
print("f^3 + g^3       =", f**3 + g**3)

# every polynomial splits along the monomials x^i y^j with i, j < 3
h = R("x^5*y + x^4 + 2*y^7")
for mu, c in digit_decompose(h, 1).items():
    print(f"  x^{mu[0]} y^{mu[1]} * ({c})^3")

# the twisted cubic's equations, and a reduced basis for them
a = Ideal(R, [R("x^2 - y"), R("x*y - 1")])
G = buchberger(a)
print("reduced basis  :", [str(p) for p in G])

# membership returns the cofactors that witness it
ok, cof = ideal_member(R("y^2 - x"), a)
print("y^2 - x in a   :", ok, [str(c) for c in cof])

# two presentations of the same ideal
b = Ideal(R, [R("x - y^2"), R("y^3 - 1")])
print("a == b         :", ideal_equal(a, b))
