"""Explicit differential operators with ``delta(1/x) = 1/x^p``.

An operator in ``D^(e)`` is an ``R^(p^e)``-linear endomorphism of ``R``. On a
polynomial ring it is determined by where it sends the free basis of
monomials with exponents below ``p^e``, so a certificate is just that table.
Writing ``Q = p^(e+1)`` and ``x^(Q-1) = sum c_mu^Q mu``, the operator with
``mu -> g_mu`` sends ``x^(Q-1)`` to ``sum c_mu^Q g_mu``; dividing by ``x^Q``
turns ``delta(x^(Q-1)) = x^(Q-p)`` into ``delta(1/x) = 1/x^p``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Dict, Optional

from .frobroot import FrobeniusChainReport, descending_chain, root_of_power
from .groebner import Ideal, buchberger, ideal_equal, lift
from .polyring import (
    Monomial,
    Polynomial,
    PolynomialRing,
    digit_decompose,
    format_monomial,
    format_polynomial,
    frobenius_power,
)


@dataclass
class DeltaCertificate:
    """Basis-image table of ``delta in D^(level)``, ``level = e + 1``.

    ``images`` maps basis monomials (all exponents ``< p^level``) to their
    nonzero images; omitted monomials go to 0.
    """

    x: Polynomial
    level: int
    images: Dict[Monomial, Polynomial] = field(default_factory=dict)

    @property
    def ring(self) -> PolynomialRing:
        return self.x.ring

    @property
    def p(self) -> int:
        return self.ring.p

    @property
    def Q(self) -> int:
        return self.p**self.level

    def apply(self, f: Polynomial) -> Polynomial:
        """Evaluate the operator on ``f`` using ``R^Q``-linearity."""
        out = self.ring.zero()
        for mu, c in digit_decompose(f, self.level).items():
            g = self.images.get(mu)
            if g is not None:
                out = out + frobenius_power(c, self.level) * g
        return out

    def to_dict(self) -> dict:
        ring = self.ring
        return {
            "p": ring.p,
            "vars": list(ring.variables),
            "x": format_polynomial(self.x),
            "level": self.level,
            "images": [
                {"basis": format_monomial(mu, ring.variables), "image": format_polynomial(g)}
                for mu, g in sorted(self.images.items(), key=lambda kv: ring.key(kv[0]), reverse=True)
            ],
        }

    def to_json(self, indent: Optional[int] = 2) -> str:
        return json.dumps(self.to_dict(), indent=indent, sort_keys=True)

    @classmethod
    def from_dict(cls, data: dict, ring: Optional[PolynomialRing] = None) -> "DeltaCertificate":
        if ring is None:
            ring = PolynomialRing(int(data["p"]), data["vars"])
        images = {}
        for item in data["images"]:
            mono = ring(item["basis"])
            if not mono.is_monomial() or mono.leading_coefficient() != 1:
                raise ValueError(f"basis entry {item['basis']!r} is not a monomial")
            (mu,) = mono.terms
            g = ring(item["image"])
            if g.terms:
                images[mu] = g
        return cls(ring(data["x"]), int(data["level"]), images)

    @classmethod
    def from_json(cls, text: str, ring: Optional[PolynomialRing] = None) -> "DeltaCertificate":
        return cls.from_dict(json.loads(text), ring)


def construct_delta(x: Polynomial, e: int) -> Optional[DeltaCertificate]:
    """Build ``delta in D^(e+1)`` with ``delta(x^(Q-1)) = x^(Q-p)``, or return ``None``.

    ``None`` means ``x^(Q-p)`` is not in the bracket power of
    ``J = I_{e+1}(x^(Q-1))``, so no operator of this level exists.

    Each digit ``d_nu`` of ``x^(Q-p)`` is written as ``sum_mu a_{nu,mu} c_mu``
    via the division-algorithm witness over ``J``; then
    ``g_mu = sum_nu a_{nu,mu}^Q nu``.
    """
    if not x.terms:
        raise ValueError("x must be nonzero")
    if e < 0:
        raise ValueError("e must be nonnegative")
    ring = x.ring
    p = ring.p
    level = e + 1
    Q = p**level
    ring.check_exponent((Q - 1) * max(x.max_exponents()))
    digits = digit_decompose(x ** (Q - 1), level)
    basis = list(digits)
    J = Ideal(ring, [digits[mu] for mu in basis])
    G = buchberger(J, track=True)
    images: Dict[Monomial, Polynomial] = {}
    for nu, d in digit_decompose(x ** (Q - p), level).items():
        coeffs = lift(d, J, G)
        if coeffs is None:
            return None
        for mu, a in zip(basis, coeffs):
            if a.terms:
                term = frobenius_power(a, level).mul_term(nu)
                images[mu] = images[mu] + term if mu in images else term
    images = {mu: g for mu, g in images.items() if g.terms}
    return DeltaCertificate(x, level, images)


def verify_delta(cert: DeltaCertificate) -> bool:
    """Recheck ``sum c_mu^Q g_mu == x^(Q-p)`` by exact arithmetic."""
    ring = cert.ring
    Q = cert.Q
    if cert.level < 1 or not cert.x.terms:
        return False
    for mu, g in cert.images.items():
        if len(mu) != ring.nvars or any(a < 0 or a >= Q for a in mu):
            return False
        if not g.ring.same_ambient(ring):
            return False
    return cert.apply(cert.x ** (Q - 1)) == cert.x ** (Q - cert.p)


def chain_level(x: Polynomial, e: int) -> Ideal:
    """``I_e(x^(p^e - 1))`` with the convention ``I_0 = (1)``."""
    return root_of_power(Ideal(x.ring, [x]), x.ring.p**e - 1, e)


def delta_exists_criterion(x: Polynomial, e: int) -> bool:
    """Chain levels ``e`` and ``e+1`` agree -- equivalent to a level ``e+1`` operator existing."""
    return ideal_equal(chain_level(x, e), chain_level(x, e + 1))


def is_fpure_pair(x: Polynomial, e: int) -> bool:
    """Whether ``I_e(x^(p^e - 1)) = (1)``, i.e. ``x^((q-1)/q) R -> R^(1/q)`` splits."""
    if not x.terms:
        raise ValueError("x must be nonzero")
    if e < 1:
        raise ValueError("e must be at least 1")
    return chain_level(x, e).is_unit()


@dataclass
class GenerationReport:
    x: Polynomial
    chain: FrobeniusChainReport
    delta: Optional[DeltaCertificate]
    verified: bool
    conclusion: str  # "generated" or "unknown"
    message: str

    @property
    def stabilization_index(self) -> Optional[int]:
        return self.chain.stabilization_index

    @property
    def positive(self) -> bool:
        return self.conclusion == "generated"

    def to_dict(self) -> dict:
        return {
            "x": format_polynomial(self.x),
            "p": self.x.ring.p,
            "e_max": self.chain.e_max,
            "chain": self.chain.to_dict(),
            "delta": None if self.delta is None else self.delta.to_dict(),
            "verified": self.verified,
            "conclusion": self.conclusion,
            "message": self.message,
        }


def generation_report(x: Polynomial, e_max: int) -> GenerationReport:
    """Decide whether ``1/x`` generates ``R_x`` over ``D_R``, within the horizon ``e_max``.

    The operator is built at level ``e* + 1`` where ``e*`` is the chain's
    stabilization index, or at level 1 when the chain is ``(1)`` throughout.
    A positive conclusion is only drawn from a certificate that passed
    :func:`verify_delta`.
    """
    chain = descending_chain(x, e_max)
    e_star = chain.stabilization_index
    if e_star is None:
        return GenerationReport(
            x, chain, None, False, "unknown", f"chain not stabilized within e_max={e_max}"
        )
    # with I_0 = (1), a chain that is (1) from the start already stabilizes at 0
    e = 0 if e_star == 1 and chain.level(1).is_unit() else e_star
    cert = construct_delta(x, e)
    if cert is None:
        return GenerationReport(
            x, chain, None, False, "unknown",
            f"no operator found at level {e + 1} although the chain stabilized at {e_star}",
        )
    ok = verify_delta(cert)
    if not ok:
        return GenerationReport(x, chain, cert, False, "unknown", "certificate failed verification")
    return GenerationReport(
        x, chain, cert, True, "generated",
        f"R_x generated by 1/x, witnessed at level {cert.level}",
    )
