"""
Frobenius roots of ideals
=========================

The root I_e(a) is the smallest ideal J with a inside J^[p^e]. It is read
off from the coefficients of the generators in the basis of monomials with
exponents below p^e.
"""

from frobkit import Ideal, PolynomialRing, bracket_power, descending_chain, frobenius_root, ideal_subset

R = PolynomialRing(2, ["x", "y"])

a = Ideal(R, [R("x^3 + x*y^2")])
root = frobenius_root(a, 1)
print("I_1(x^3 + x y^2) =", [str(g) for g in root.generators])
print("a inside root^[2]:", ideal_subset(a, bracket_power(root, 1)))

# the maximal ideal has unit root: x = x^1 * 1^2
print("I_1((x, y)) is (1):", frobenius_root(Ideal.maximal(R), 1).is_unit())

# the chain I_e(x^(p^e - 1)) descends and then stops moving
for text in ("x*y", "x^2*y", "x^5 + y^3"):
    rep = descending_chain(R(text), 4)
    levels = [[str(g) for g in J.reduced_generators()] for _, J in rep.levels]
    print(f"{text:10s} levels {levels}  stable from e = {rep.stabilization_index}")
