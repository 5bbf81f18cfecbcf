"""Generalized test ideals, F-thresholds and F-jumping exponents over F_p[x].

The test ideal is the stable value of the ascending chain
``I_e(a^ceil(t p^e))``. Exponents are rationals (:class:`fractions.Fraction`);
jump locations are only ever reported as intervals on a ``p^-e_max`` grid.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Tuple, Union

from .errors import UnstabilizedError
from .frobroot import root_of_power
from .groebner import Ideal, ideal_equal, ideal_member, ideal_power, ideal_subset
from .polyring import format_polynomial

Rational = Union[int, str, Fraction]

DEFAULT_MAX_EXTRA_LEVELS = 12


def as_exponent(t: Rational) -> Fraction:
    """Parse ``t`` ("3/2", 2, Fraction) into a reduced positive-or-zero Fraction."""
    try:
        value = Fraction(t)
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"malformed rational {t!r}") from exc
    if value < 0:
        raise ValueError(f"exponent must be nonnegative, got {value}")
    return value


def fraction_text(t: Fraction) -> str:
    """Always ``"num/den"``, integers included."""
    return f"{t.numerator}/{t.denominator}"


def _p_power_exponent(n: int, p: int) -> Optional[int]:
    e = 0
    while n % p == 0:
        n //= p
        e += 1
    return e if n == 1 else None


@dataclass
class TestIdealResult:
    """Outcome of a test ideal computation, with how it was certified."""

    ideal: Ideal
    t: Fraction
    level: int  # the level e at which the chain was declared stable
    start_level: int
    heuristic: bool  # True when only a run of equal levels backs the answer
    levels: List[Ideal] = field(default_factory=list, repr=False)
    skoda_shift: int = 0  # tau(a^t) = a^shift * tau(a^(t - shift))

    __test__ = False  # not a pytest class


HEURISTIC_RUN = 3


def upper_root_exponent(t: Fraction, q: int, ngens: int) -> int:
    """Exponent ``n`` with ``tau(a^t) ⊆ I_e(a^n)`` when ``a`` has ``ngens`` generators.

    A product of ``N Q`` generators out of ``ngens`` has at least
    ``N - ngens + 1`` factors grouped into full ``Q``-th powers, which gives
    ``tau(a^t) ⊆ I_e(a^(floor(t q) - ngens + 1))`` at every level ``e``.
    """
    return max(0, math.floor(t * q) - ngens + 1)


def test_ideal_info(a: Ideal, t: Rational, *, max_extra_levels: int = DEFAULT_MAX_EXTRA_LEVELS) -> TestIdealResult:
    """Compute ``tau(a^t)`` and report the stabilization evidence.

    The chain ``L_e = I_e(a^ceil(t p^e))`` ascends to ``tau(a^t)`` and
    :func:`upper_root_exponent` bounds it from above, so ``tau`` is certified
    once the two agree. Principal ideals close at the first level. When the
    bounds stay apart, a run of three equal ``L_e`` is accepted instead and
    the result is flagged heuristic; a single equality is not enough, since
    the chain can pause and then grow again.

    For ``t`` at least the number ``m`` of generators, Skoda's theorem
    ``tau(a^t) = a tau(a^(t-1))`` first lowers ``t`` below ``m``.
    """
    t = as_exponent(t)
    if t <= 0:
        raise ValueError("t must be positive")
    if a.is_zero():
        raise ValueError("the zero ideal has no test ideals")
    ring = a.ring
    p = ring.p
    if a.is_unit():
        return TestIdealResult(Ideal.unit(ring), t, 0, 0, False, [Ideal.unit(ring)])
    den = t.denominator
    e0 = _p_power_exponent(den, p)
    if e0 is None:
        e0 = 0
        while p**e0 < den:
            e0 += 1
    ngens = min(len(a.generators), len(a.reduced_generators()))
    shift = math.floor(t) - ngens + 1 if t >= ngens else 0
    if shift > 0 and t == shift:
        tau = ideal_power(a, shift)
        return TestIdealResult(Ideal(ring, tau.reduced_generators()), t, 0, 0, False, [], shift)
    if shift > 0:
        inner = test_ideal_info(a, t - shift, max_extra_levels=max_extra_levels)
        tau = ideal_power(a, shift) * inner.ideal
        return TestIdealResult(
            Ideal(ring, tau.reduced_generators()), t, inner.level, inner.start_level,
            inner.heuristic, inner.levels, shift,
        )
    levels: List[Ideal] = []
    equal_run = 0
    e = e0
    while True:
        q = p**e
        n = math.ceil(t * q)
        J = root_of_power(a, n, e)
        if levels and ideal_equal(levels[-1], J):
            equal_run += 1
        else:
            equal_run = 0
        levels.append(J)
        upper = upper_root_exponent(t, q, ngens)
        if upper == n or ideal_subset(root_of_power(a, upper, e), J):
            return TestIdealResult(Ideal(ring, J.reduced_generators()), t, e, e0, False, levels)
        if equal_run >= HEURISTIC_RUN:
            tau = Ideal(ring, J.reduced_generators())
            return TestIdealResult(tau, t, e - HEURISTIC_RUN, e0, True, levels)
        if e - e0 >= max_extra_levels:
            raise UnstabilizedError(
                f"test ideal of exponent {t} not stable by level {e} (started at {e0})"
            )
        e += 1


def test_ideal(a: Ideal, t: Rational, **kwargs) -> Ideal:
    """``tau(a^t)`` for rational ``t > 0``."""
    return test_ideal_info(a, t, **kwargs).ideal


test_ideal.__test__ = False
test_ideal_info.__test__ = False


def _in_bracket_of_maximal(f, q: int) -> bool:
    # f in (x_1^q, ..., x_n^q)
    m = Ideal.maximal(f.ring)
    return ideal_member(f, _bracket_maximal(m, q))[0]


_BRACKET_CACHE: Dict[Tuple, Ideal] = {}


def _bracket_maximal(m: Ideal, q: int) -> Ideal:
    key = (m.ring.p, m.ring.variables, q)
    J = _BRACKET_CACHE.get(key)
    if J is None:
        J = Ideal(m.ring, [g ** q for g in m.generators])
        _BRACKET_CACHE[key] = J
    return J


def nu(a: Ideal, e: int) -> int:
    """Largest ``r >= 0`` with ``a^r`` not inside ``(x_1^q, ..., x_n^q)``, ``q = p^e``.

    Binary search over ``[0, n(q-1)]``; containment of ``a^r`` is checked by
    ideal membership of each generator.
    """
    if e < 1:
        raise ValueError("e must be at least 1")
    if a.is_zero():
        raise ValueError("a must be nonzero")
    ring = a.ring
    if not ideal_subset(a, Ideal.maximal(ring)):
        raise ValueError("a must lie in the homogeneous maximal ideal")
    q = ring.p**e

    def contained(r: int) -> bool:
        return all(_in_bracket_of_maximal(g, q) for g in ideal_power(a, r).generators)

    lo, hi = 0, ring.nvars * (q - 1) + 1  # a^lo escapes, a^hi is contained
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if contained(mid):
            hi = mid
        else:
            lo = mid
    return lo


@dataclass(frozen=True)
class FptInterval:
    """The F-pure threshold lies in the half-open interval ``(lower, upper]``."""

    lower: Fraction
    upper: Fraction
    nu: int
    e: int

    def __contains__(self, t) -> bool:
        t = Fraction(t)
        return self.lower < t <= self.upper

    @property
    def width(self) -> Fraction:
        return self.upper - self.lower

    def __iter__(self):
        return iter((self.lower, self.upper))


def fpt_interval(a: Ideal, e_max: int) -> FptInterval:
    """Bracket the F-pure threshold: ``(nu/q, (nu+1)/q]`` with ``q = p^e_max``."""
    v = nu(a, e_max)
    q = a.ring.p**e_max
    return FptInterval(Fraction(v, q), Fraction(v + 1, q), v, e_max)


@dataclass
class Plateau:
    """Grid points ``lo..hi`` (closed, in units of ``1/q``) sharing one test ideal."""

    lo: Fraction
    hi: Fraction
    tau: Ideal
    samples: List[Fraction] = field(default_factory=list)
    samples_ok: bool = True


@dataclass(frozen=True)
class JumpInterval:
    """A jump occurs in the half-open interval ``(lo, hi]``."""

    lo: Fraction
    hi: Fraction

    def __contains__(self, t) -> bool:
        t = Fraction(t)
        return self.lo < t <= self.hi


@dataclass
class JumpReport:
    a: Ideal
    T: Fraction
    e_max: int
    plateaus: List[Plateau]
    jumps: List[JumpInterval]
    heuristic: bool
    evaluations: int
    p_multiple_evidence: List[dict] = field(default_factory=list)

    @property
    def resolution(self) -> Fraction:
        return Fraction(1, self.a.ring.p**self.e_max)

    def jump_containing(self, t) -> Optional[JumpInterval]:
        for j in self.jumps:
            if t in j:
                return j
        return None

    def to_dict(self) -> dict:
        ring = self.a.ring
        return {
            "p": ring.p,
            "vars": list(ring.variables),
            "generators": [format_polynomial(g) for g in self.a.generators],
            "T": fraction_text(self.T),
            "e_max": self.e_max,
            "resolution": fraction_text(self.resolution),
            "plateaus": [
                {
                    "from": fraction_text(pl.lo),
                    "to": fraction_text(pl.hi),
                    "tau_generators": [format_polynomial(g) for g in pl.tau.reduced_generators()],
                    "samples": [fraction_text(s) for s in pl.samples],
                    "samples_ok": pl.samples_ok,
                }
                for pl in self.plateaus
            ],
            "jumps": [
                {
                    "interval_lo": fraction_text(j.lo),
                    "interval_hi": fraction_text(j.hi),
                    "tau_left": [format_polynomial(g) for g in left.tau.reduced_generators()],
                    "tau_right": [format_polynomial(g) for g in right.tau.reduced_generators()],
                }
                for j, left, right in zip(self.jumps, self.plateaus, self.plateaus[1:])
            ],
            "heuristic_stabilization": self.heuristic,
            "p_multiple_evidence": self.p_multiple_evidence,
        }


def jumping_exponents(a: Ideal, T: Rational, e_max: int, *, check_plateaus: bool = True) -> JumpReport:
    """Locate the F-jumping exponents of ``a`` in ``(0, T]`` at resolution ``p^-e_max``.

    ``tau`` is weakly decreasing in ``t``, so equal values at two grid points
    pin every grid point between them; the grid ``k/p^e_max`` is therefore
    bisected rather than scanned. ``k = 0`` stands for ``tau(a^0) = (1)``.
    """
    T = as_exponent(T)
    if T <= 0:
        raise ValueError("T must be positive")
    ring = a.ring
    q = ring.p**e_max
    K = math.ceil(T * q)
    cache: Dict[int, Ideal] = {0: Ideal.unit(ring)}
    heuristic = False

    def tau(k: int) -> Ideal:
        nonlocal heuristic
        if k not in cache:
            info = test_ideal_info(a, Fraction(k, q))
            heuristic |= info.heuristic
            cache[k] = info.ideal
        return cache[k]

    # breakpoints: k such that tau(k-1) != tau(k)
    breaks: List[int] = []
    stack = [(0, K)]
    while stack:
        lo, hi = stack.pop()
        if hi - lo < 1 or ideal_equal(tau(lo), tau(hi)):
            continue
        if hi - lo == 1:
            breaks.append(hi)
            continue
        mid = (lo + hi) // 2
        stack.append((mid, hi))
        stack.append((lo, mid))
    breaks.sort()

    starts = [0] + breaks
    ends = [b - 1 for b in breaks] + [K]
    plateaus = []
    for s, t_end in zip(starts, ends):
        plateaus.append(Plateau(Fraction(s, q), Fraction(t_end, q), tau(s)))
    jumps = [JumpInterval(Fraction(b - 1, q), Fraction(b, q)) for b in breaks]

    if check_plateaus:
        for pl in plateaus:
            if pl.hi <= pl.lo:
                continue
            samples = sorted({(pl.lo + pl.hi) / 2, pl.lo + Fraction(1, 2 * q)})
            samples = [s for s in samples if s > 0]
            pl.samples = samples
            for s in samples:
                info = test_ideal_info(a, s)
                heuristic |= info.heuristic
                if not ideal_equal(info.ideal, pl.tau):
                    pl.samples_ok = False

    evidence = []
    p = ring.p
    for j in jumps:
        lo, hi = j.lo * p, j.hi * p
        if hi > T:
            overlap = None
        else:
            overlap = any(other.lo < hi and lo < other.hi for other in jumps)
        evidence.append(
            {
                "interval": [fraction_text(j.lo), fraction_text(j.hi)],
                "scaled_by_p": [fraction_text(lo), fraction_text(hi)],
                "overlaps_reported_jump": overlap,
            }
        )
    return JumpReport(a, T, e_max, plateaus, jumps, heuristic, len(cache) - 1, evidence)


def degree_bound_check(a: Ideal, t: Rational, r: int) -> bool:
    """Every reduced generator of ``tau(a^t)`` has degree at most ``t*d + r``.

    ``d`` is the largest generator degree of ``a``. The bound is a theorem
    for homogeneous ``a``; for other ideals this is only a check.
    """
    t = as_exponent(t)
    if a.is_unit():
        return True
    d = a.max_degree()
    tau = test_ideal(a, t)
    bound = t * d + r
    return all(g.total_degree() <= bound for g in tau.reduced_generators())


def skoda_containment(a: Ideal, t: Rational) -> bool:
    """``a^ceil(t)`` is contained in ``tau(a^t)``."""
    t = as_exponent(t)
    return ideal_subset(ideal_power(a, math.ceil(t)), test_ideal(a, t))
