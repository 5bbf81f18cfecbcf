"""
Frobenius pushforwards of semigroup rings
=========================================

For R = k[t^s : s in S], the module R^(1/q) splits by residue classes of
exponents mod q. Once q reaches the conductor every class is a copy of the
normalization, shifted by its least element.
"""

from frobkit import FracIdeal, NumericalSemigroup, chain_stabilize_frac, ffrt_decompose, frac_hom

S = NumericalSemigroup([3, 5])
print(S, "conductor", S.conductor, "gaps", sorted(S.gaps))

for q in (4, 8, 9):
    dec = ffrt_decompose(S, q)
    print(f"q={q}: least elements {dec.least_elements}  copies of M: {dec.isomorphic_to_M_sum}")

M = FracIdeal.normalization(S)
R = FracIdeal.ring(S)
print("Hom(M, R) =", frac_hom(M, R), " (the conductor ideal)")

for p in (2, 3):
    rep = chain_stabilize_frac(5, M, 6, p)
    print(f"p={p}: chain for t^5 on M stabilizes at e = {rep.stabilization_index}")
