"""Frobenius roots ``I_e(a, R)`` of ideals in F_p[x_1..x_n] and their descending chains.

Over a polynomial ring, ``R`` is free over ``R^(p^e)`` on the monomials with
all exponents below ``p^e``, so ``I_e(a, R)`` is the ideal generated by every
coefficient that :func:`~frobkit.polyring.digit_decompose` produces from
the generators of ``a``. It is the smallest ideal ``J`` with
``a ⊆ J^[p^e]``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Dict, List, Optional, Tuple

from .groebner import Ideal, ideal_equal, ideal_power, ideal_subset, linear_basis
from .polyring import Polynomial, digit_decompose, format_polynomial


def frobenius_root(a: Ideal, e: int) -> Ideal:
    """Return ``I_e(a, R)``; ``e = 0`` is the identity and the zero ideal is fixed.

    Monomial ideals take a shortcut (floor every exponent by ``p^e``); all
    other ideals go through :func:`root_by_digits`.
    """
    if e < 0:
        raise ValueError("e must be nonnegative")
    if e == 0 or a.is_zero():
        return a
    if a.is_monomial():
        return _monomial_root(a, a.ring.p**e)
    return root_by_digits(a, e)


def root_by_digits(a: Ideal, e: int) -> Ideal:
    """``I_e(a, R)`` from the digit coefficients of every generator."""
    if e < 0:
        raise ValueError("e must be nonnegative")
    if e == 0 or a.is_zero():
        return a
    coeffs: List[Polynomial] = []
    for g in a.generators:
        coeffs.extend(digit_decompose(g, e).values())
    return Ideal(a.ring, linear_basis(coeffs))


def _monomial_root(a: Ideal, q: int) -> Ideal:
    # each monomial is its own single digit coefficient: x^floor(m/q)
    floors = sorted({tuple(x // q for x in next(iter(g.terms))) for g in a.generators},
                    key=lambda m: (sum(m), m))
    minimal: List[Tuple[int, ...]] = []
    for m in floors:
        if not any(all(x <= y for x, y in zip(u, m)) for u in minimal):
            minimal.append(m)
    return Ideal(a.ring, [Polynomial(a.ring, {m: 1}, _checked=True) for m in minimal])


def _times(f: Polynomial, J: Ideal) -> Ideal:
    return Ideal(J.ring, [f * g for g in J.reduced_generators()])


def root_of_power(a: Ideal, n: int, e: int) -> Ideal:
    """``I_e(a^n, R)`` without expanding the power.

    With generators ``g_1..g_m`` of ``a``, grouping each product of ``n``
    generators by its exponents modulo ``p`` gives the exact identity
    ``a^n = sum_r g^r (a^((n - |r|)/p))^[p]`` over digit vectors ``r`` with
    entries below ``p`` and ``|r| = n mod p``. Hence
    ``I_1(a^n J) = sum_r a^((n - |r|)/p) I_1(g^r J)``, and ``e`` such steps
    only ever take roots of small products. For ``(f)`` this is the usual
    digit-by-digit recursion on ``f^n``.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    if e < 0:
        raise ValueError("e must be nonnegative")
    ring = a.ring
    if n == 0:
        return frobenius_root(Ideal.unit(ring), e)
    if a.is_zero():
        return a
    if e == 0:
        return ideal_power(a, n)
    gens = min((tuple(g for g in a.generators if g.terms), a.reduced_generators()), key=len)
    p = ring.p
    digits = [r for r in product(range(p), repeat=len(gens))]
    # state: exponent k -> ideal J_k, standing for sum_k a^k J_k
    state: Dict[int, Ideal] = {n: Ideal.unit(ring)}
    for _ in range(e):
        collected: Dict[int, List[Polynomial]] = {}
        for k, J in state.items():
            Jgens = J.reduced_generators()
            for r in digits:
                s = sum(r)
                if s > k or (k - s) % p:
                    continue
                gr = ring.one()
                for g, d in zip(gens, r):
                    if d:
                        gr = gr * g**d
                root = frobenius_root(Ideal(ring, [gr * h for h in Jgens]), 1)
                collected.setdefault((k - s) // p, []).extend(root.generators)
        state = {k: Ideal(ring, linear_basis(fs)) for k, fs in collected.items()}
    total: List[Polynomial] = []
    for k, J in sorted(state.items()):
        if J.is_zero():
            continue
        total.extend((ideal_power(a, k) * J).generators if k else J.generators)
    return Ideal(ring, total or [ring.zero()])


def root_compose_check(a: Ideal, e1: int, e2: int) -> bool:
    """``I_{e1+e2}(a) == I_{e2}(I_{e1}(a))``."""
    return ideal_equal(frobenius_root(a, e1 + e2), frobenius_root(frobenius_root(a, e1), e2))


@dataclass
class FrobeniusChainReport:
    """The chain ``I_e(x^(p^e - 1), R)`` for ``e = 1..e_max``.

    ``stabilization_index`` is the least ``e < e_max`` from which every
    computed level equals the next; ``None`` means no stabilization was
    observed within the horizon ``e_max``.
    """

    x: Polynomial
    e_max: int
    levels: List[Tuple[int, Ideal]] = field(default_factory=list)
    stabilization_index: Optional[int] = None

    @property
    def p(self) -> int:
        return self.x.ring.p

    def level(self, e: int) -> Ideal:
        return self.levels[e - 1][1]

    @property
    def stabilized(self) -> bool:
        return self.stabilization_index is not None

    def is_descending(self) -> bool:
        return all(
            ideal_subset(self.levels[i + 1][1], self.levels[i][1]) for i in range(len(self.levels) - 1)
        )

    def to_dict(self) -> dict:
        return {
            "x": format_polynomial(self.x),
            "p": self.p,
            "e_max": self.e_max,
            "levels": [
                {"e": e, "ideal": [format_polynomial(g) for g in J.reduced_generators()]}
                for e, J in self.levels
            ],
            "stabilization_index": self.stabilization_index,
            "stabilized": self.stabilized,
        }


def stabilization_index(levels: List[Ideal], first: int = 1) -> Optional[int]:
    """Least index from which all consecutive pairs are equal; needs at least one pair."""
    if len(levels) < 2:
        return None
    k = len(levels) - 1
    while k > 0 and ideal_equal(levels[k - 1], levels[k]):
        k -= 1
    if k == len(levels) - 1:
        return None
    return first + k


def descending_chain(x: Polynomial, e_max: int, *, method: str = "recursive") -> FrobeniusChainReport:
    """Compute ``I_e((x^(p^e - 1)), e)`` for ``1 <= e <= e_max``.

    ``method="recursive"`` uses ``I_e = I_1(x^(p-1) I_{e-1})`` and never forms
    ``x^(p^e - 1)``; ``method="direct"`` expands the power and decomposes it.
    """
    if not x.terms:
        raise ValueError("x must be nonzero")
    if e_max < 1:
        raise ValueError("e_max must be at least 1")
    ring = x.ring
    p = ring.p
    ring.check_exponent((p**e_max - 1) * max(x.max_exponents()))
    levels: List[Tuple[int, Ideal]] = []
    if method == "recursive":
        xp = x ** (p - 1)
        J = Ideal.unit(ring)
        for e in range(1, e_max + 1):
            J = frobenius_root(_times(xp, J), 1)
            levels.append((e, J))
    elif method == "direct":
        for e in range(1, e_max + 1):
            levels.append((e, frobenius_root(Ideal(ring, [x ** (p**e - 1)]), e)))
    else:
        raise ValueError(f"unknown method {method!r}")
    index = stabilization_index([J for _, J in levels])
    return FrobeniusChainReport(x, e_max, levels, index)
