"""
Certificates that 1/x generates R_x as a D-module
=================================================

When two consecutive levels of the root chain of x agree, there is an
operator linear over the Q-th powers that sends x^(Q-1) to x^(Q-p). Since
delta commutes with 1/x^Q, it sends 1/x to 1/x^p. The package
builds it explicitly, and an independent check replays it on the basis.
"""

from frobkit import PolynomialRing, construct_delta, generation_report, verify_delta

R = PolynomialRing(2, ["x", "y"])
x = R("x^2*y")

print("level 0 operator:", construct_delta(x, 0))
cert = construct_delta(x, 1)
print("level 2 operator verified:", verify_delta(cert))
Q = cert.Q
print(f"delta(x^{Q - 1}) = {cert.apply(x ** (Q - 1))}   x^{Q - 2} = {x ** (Q - 2)}")

# the report decides within a horizon and never claims more than it checked
for text in ("x*y", "x*y*(x+y)", "x^5+y^3"):
    for e_max in (2, 6):
        rep = generation_report(R(text), e_max)
        print(f"{text:10s} e_max={e_max}: {rep.conclusion:9s} {rep.message}")

# certificates serialize to JSON and round-trip
print(cert.to_json(indent=None))
