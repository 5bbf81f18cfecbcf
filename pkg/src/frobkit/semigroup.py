"""Numerical semigroups and their fractional ideals (monomial curves k[t^S]).

Everything is integer combinatorics: a graded fractional ideal of the
semigroup ring ``k[S]`` is a set ``G + S`` of exponents with ``G`` finite.
For ``q = p^e`` the ring ``R^(1/q)`` splits by residue class mod ``q``;
exponents of ``R^(1/q)`` are stored multiplied by ``q`` so they stay integral.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from typing import Dict, FrozenSet, Iterable, List, Optional, Tuple


class NumericalSemigroup:
    """The additive monoid generated by positive integers with gcd 1.

    Generators with a common factor ``g > 1`` are divided by ``g``; the
    factor is kept in ``scale``.
    """

    def __init__(self, generators: Iterable[int]):
        gens = [int(n) for n in generators]
        if not gens:
            raise ValueError("a numerical semigroup needs at least one generator")
        if any(n <= 0 for n in gens):
            raise ValueError("generators must be positive")
        g = reduce(math.gcd, gens)
        self.scale = g
        self.generators: Tuple[int, ...] = tuple(sorted(set(n // g for n in gens)))
        self._sieve()

    def _sieve(self) -> None:
        gens = self.generators
        smallest = gens[0]
        if smallest == 1:
            self.conductor = 0
            self._members = [True]
            self.gaps: FrozenSet[int] = frozenset()
            return
        size = 4 * smallest * gens[-1]
        while True:
            member = [False] * size
            member[0] = True
            for n in range(1, size):
                member[n] = any(n >= g and member[n - g] for g in gens)
            # a run of `smallest` consecutive members means everything after is in S
            run = 0
            conductor = None
            for n in range(size):
                run = run + 1 if member[n] else 0
                if run == smallest:
                    conductor = n - smallest + 1
                    break
            if conductor is not None:
                break
            size *= 2
        self.conductor = conductor
        self._members = member[: conductor + 1]
        self.gaps = frozenset(n for n in range(conductor) if not member[n])

    @property
    def frobenius_number(self) -> int:
        return self.conductor - 1

    @property
    def multiplicity(self) -> int:
        return self.generators[0]

    @property
    def minimal_generators(self) -> Tuple[int, ...]:
        out = []
        for n in self.generators:
            if not self._sum_of(n, out):
                out.append(n)
        return tuple(out)

    def _sum_of(self, n: int, gens: List[int]) -> bool:
        reach = [False] * (n + 1)
        reach[0] = True
        for k in range(1, n + 1):
            reach[k] = any(k >= g and reach[k - g] for g in gens)
        return reach[n]

    def __contains__(self, n) -> bool:
        n = int(n)
        if n < 0:
            return False
        if n >= self.conductor:
            return True
        return bool(self._members[n])

    def elements(self, bound: int) -> List[int]:
        """Members in ``[0, bound]``."""
        return [n for n in range(bound + 1) if n in self]

    def apery(self, q: int) -> List[int]:
        """Least member in each residue class mod ``q`` (the Apery set when ``q`` is in S)."""
        if q < 1:
            raise ValueError("q must be positive")
        least: List[Optional[int]] = [None] * q
        n, found = 0, 0
        while found < q:
            if n in self and least[n % q] is None:
                least[n % q] = n
                found += 1
            n += 1
        return least

    def __eq__(self, other):
        return isinstance(other, NumericalSemigroup) and self.generators == other.generators

    def __hash__(self):
        return hash(self.generators)

    def __repr__(self):
        return f"NumericalSemigroup({list(self.generators)})"

    def __str__(self):
        return "<" + ",".join(map(str, self.generators)) + ">"


def build_semigroup(gens: Iterable[int]) -> NumericalSemigroup:
    return NumericalSemigroup(gens)


class FracIdeal:
    """A graded fractional ideal ``G + S``, stored by its minimal generators ``G``."""

    __slots__ = ("semigroup", "generators")

    def __init__(self, generators: Iterable[int], semigroup: NumericalSemigroup):
        gens = sorted(set(int(g) for g in generators))
        if not gens:
            raise ValueError("a fractional ideal needs at least one generator")
        minimal: List[int] = []
        for g in gens:
            if not any((g - h) in semigroup for h in minimal):
                minimal.append(g)
        self.semigroup = semigroup
        self.generators: Tuple[int, ...] = tuple(minimal)

    @classmethod
    def ring(cls, S: NumericalSemigroup) -> "FracIdeal":
        return cls([0], S)

    @classmethod
    def normalization(cls, S: NumericalSemigroup) -> "FracIdeal":
        """``{0, ..., c-1} + S``, i.e. all nonnegative integers."""
        return cls(range(max(S.conductor, 1)), S)

    @property
    def min(self) -> int:
        return self.generators[0]

    @property
    def bound(self) -> int:
        """Every integer at or above this is a member."""
        return self.min + self.semigroup.conductor

    def __contains__(self, z) -> bool:
        z = int(z)
        return any((z - g) in self.semigroup for g in self.generators)

    def elements(self, lo: int, hi: int) -> List[int]:
        return [z for z in range(lo, hi + 1) if z in self]

    def translate(self, k: int) -> "FracIdeal":
        return FracIdeal([g + k for g in self.generators], self.semigroup)

    def normalized(self) -> Tuple[int, "FracIdeal"]:
        """``(shift, I')`` with ``I = I' + shift`` and ``min(I') = 0``."""
        return self.min, self.translate(-self.min)

    def _same_ring(self, other: "FracIdeal") -> None:
        if other.semigroup != self.semigroup:
            raise ValueError(f"fractional ideals over {self.semigroup} and {other.semigroup}")

    def issubset(self, other: "FracIdeal") -> bool:
        self._same_ring(other)
        return all(g in other for g in self.generators)

    __le__ = issubset

    def __add__(self, other: "FracIdeal") -> "FracIdeal":
        """Module sum (union of generator sets)."""
        self._same_ring(other)
        return FracIdeal(self.generators + other.generators, self.semigroup)

    def __mul__(self, other: "FracIdeal") -> "FracIdeal":
        self._same_ring(other)
        return FracIdeal([g + h for g in self.generators for h in other.generators], self.semigroup)

    def __eq__(self, other):
        return (
            isinstance(other, FracIdeal)
            and self.semigroup == other.semigroup
            and self.generators == other.generators
        )

    def __hash__(self):
        return hash((self.semigroup, self.generators))

    def __repr__(self):
        return f"FracIdeal({list(self.generators)}, {self.semigroup})"

    def __str__(self):
        return "{" + ",".join(map(str, self.generators)) + "}"


def frac_hom(I: FracIdeal, J: FracIdeal) -> FracIdeal:
    """``Hom_R(I, J)`` as the fractional ideal ``{z : z + I ⊆ J}``."""
    S = I.semigroup
    if J.semigroup != S:
        raise ValueError("fractional ideals over different semigroups")
    lo = J.min - I.min
    hi = J.min + S.conductor - I.min  # every z >= hi works
    members = [z for z in range(lo, hi) if all((z + g) in J for g in I.generators)]
    return FracIdeal(members + list(range(hi, hi + S.multiplicity)), S)


@dataclass
class ResidueClass:
    """One summand ``sum_{v in S_i} R t^(v/q)`` of ``R^(1/q)``.

    ``least`` is ``r_i``; ``summand`` is the isomorphic fractional ideal
    ``(S_i + qS - r_i) / q`` (so the summand is ``summand`` shifted by ``r_i/q``).
    """

    residue: int
    least: int
    module_generators: Tuple[int, ...]
    summand: FracIdeal
    isomorphism_verified: Optional[bool] = None


@dataclass
class FFRTDecomposition:
    semigroup: NumericalSemigroup
    q: int
    classes: List[ResidueClass]
    M: Optional[FracIdeal]  # the common summand when q >= conductor
    check_bound: int

    @property
    def least_elements(self) -> List[int]:
        return [c.least for c in self.classes]

    @property
    def shifts(self) -> List[Fraction]:
        return [Fraction(c.least, self.q) for c in self.classes]

    @property
    def isomorphic_to_M_sum(self) -> bool:
        """``R^(1/q) ≅ M^(⊕q)`` was verified class by class."""
        return self.M is not None and all(c.isomorphism_verified for c in self.classes)

    def distinct_summands(self) -> List[FracIdeal]:
        seen: List[FracIdeal] = []
        for c in self.classes:
            if c.summand not in seen:
                seen.append(c.summand)
        return seen

    def to_dict(self) -> dict:
        return {
            "semigroup": list(self.semigroup.generators),
            "conductor": self.semigroup.conductor,
            "q": self.q,
            "least_elements": self.least_elements,
            "classes": [
                {
                    "residue": c.residue,
                    "least": c.least,
                    "module_generators": list(c.module_generators),
                    "summand": list(c.summand.generators),
                    "isomorphism_verified": c.isomorphism_verified,
                }
                for c in self.classes
            ],
            "M": None if self.M is None else list(self.M.generators),
            "isomorphic_to_M_sum": self.isomorphic_to_M_sum,
            "check_bound": self.check_bound,
        }


def _class_elements(S: NumericalSemigroup, q: int, i: int, bound: int) -> List[int]:
    # S_i + qS restricted to [0, bound]
    S_i = [v for v in range(i, bound + 1, q) if v in S]
    qS = [q * s for s in S.elements(bound // q)]
    return sorted({v + w for v in S_i for w in qS if v + w <= bound})


def ffrt_decompose(S: NumericalSemigroup, q: int) -> FFRTDecomposition:
    """Split ``R^(1/q)`` into its ``q`` residue-class summands.

    When ``q >= c`` each class is checked to satisfy
    ``S_i + qS = (r_i + q Z_{>=0})`` up to ``max(gens) + c + q``, which is
    the statement that ``t^(r_i/q)`` generates the class freely over the
    normalization ``M = {0..c-1} + S``.
    """
    if q < 1:
        raise ValueError("q must be positive")
    c = S.conductor
    bound = S.generators[-1] + c + q
    least = S.apery(q)
    M = FracIdeal.normalization(S) if q >= c else None
    classes = []
    for i in range(q):
        r = least[i]
        # minimal generators of S_i as a module over the subring qS
        S_i = [v for v in range(i, r + q * (c + 1) + 1, q) if v in S]
        mod_gens: List[int] = []
        for v in S_i:
            if not any((v - g) % q == 0 and ((v - g) // q) in S for g in mod_gens):
                mod_gens.append(v)
        summand = FracIdeal([(v - r) // q for v in mod_gens], S)
        verified = None
        if M is not None:
            lhs = _class_elements(S, q, i, bound)
            rhs = list(range(r, bound + 1, q))
            verified = lhs == rhs
        classes.append(ResidueClass(i, r, tuple(mod_gens), summand, verified))
    return FFRTDecomposition(S, q, classes, M, bound)


def frobenius_root_frac(m: int, M: FracIdeal, e: int, p: int) -> FracIdeal:
    """``I_e((t^m), M) = Hom_R(^eR, M) · t^m R`` for a monomial ``t^m``.

    ``^eR`` is split by :func:`ffrt_decompose`; on the summand of residue
    ``i`` every homomorphism is multiplication by some ``t^z`` with ``z`` in
    ``frac_hom(summand_i, M)``.
    """
    S = M.semigroup
    if m not in S:
        raise ValueError(f"{m} is not in {S}")
    if e < 0:
        raise ValueError("e must be nonnegative")
    if e == 0:
        return FracIdeal([m + g for g in M.generators], S)
    q = p**e
    dec = ffrt_decompose(S, q)
    homs: Dict[int, FracIdeal] = {}
    gens: List[int] = []
    # t^(m+s) for s beyond c + q*multiplicity is an R^q-multiple of a smaller one
    for s in S.elements(S.conductor + q * S.multiplicity):
        w = m + s
        i = w % q
        cls = dec.classes[i]
        if i not in homs:
            homs[i] = frac_hom(cls.summand, M)
        offset = (w - cls.least) // q
        gens.extend(offset + z for z in homs[i].generators)
    return FracIdeal(gens, S)


@dataclass
class FracChainReport:
    x: int
    M: FracIdeal
    p: int
    e_max: int
    levels: List[Tuple[int, FracIdeal]] = field(default_factory=list)
    descending: bool = True
    stabilization_index: Optional[int] = None

    @property
    def stabilized(self) -> bool:
        return self.stabilization_index is not None

    def to_dict(self) -> dict:
        return {
            "semigroup": list(self.M.semigroup.generators),
            "x": self.x,
            "M": list(self.M.generators),
            "p": self.p,
            "e_max": self.e_max,
            "levels": [{"e": e, "generators": list(I.generators)} for e, I in self.levels],
            "descending": self.descending,
            "stabilization_index": self.stabilization_index,
            "stabilized": self.stabilized,
        }


def chain_stabilize_frac(x: int, M: FracIdeal, e_max: int, p: int) -> FracChainReport:
    """The chain ``I_e(t^((p^e - 1) x), M)``, ``e = 1..e_max``, with descent and stabilization checks."""
    if e_max < 1:
        raise ValueError("e_max must be at least 1")
    S = M.semigroup
    if x not in S:
        raise ValueError(f"{x} is not in {S}")
    levels = [(e, frobenius_root_frac((p**e - 1) * x, M, e, p)) for e in range(1, e_max + 1)]
    ideals = [I for _, I in levels]
    descending = all(ideals[k + 1] <= ideals[k] for k in range(len(ideals) - 1))
    index = None
    k = len(ideals) - 1
    while k > 0 and ideals[k - 1] == ideals[k]:
        k -= 1
    if k < len(ideals) - 1:
        index = k + 1
    return FracChainReport(x, M, p, e_max, levels, descending, index)
