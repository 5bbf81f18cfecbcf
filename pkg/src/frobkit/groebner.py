"""Ideals, reduced Groebner bases, membership and equality.

Buchberger's algorithm with the Gebauer-Moeller pair criteria and the
normal selection strategy. The reduced basis is the canonical form of an
ideal for a fixed order, so every ideal equality in the package is decided
here by :func:`ideal_equal`.
"""

from __future__ import annotations

import contextlib
import heapq
import os
from dataclasses import dataclass, field, replace
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import AmbientMismatchError, ResourceLimitError
from .polyring import (
    Monomial,
    MonomialOrder,
    Polynomial,
    PolynomialRing,
    as_order,
    format_polynomial,
    frobenius_power,
)


@dataclass(frozen=True)
class Limits:
    """Resource caps for a single Buchberger run.

    ``max_degree`` bounds the degree of S-pair lcms; inputs whose own degree
    is already large get headroom of twice their maximal generator degree.
    """

    spair_cap: int = 10**6
    max_degree: int = 512


def _env_limits() -> Limits:
    cap = os.environ.get("FROBKIT_SPAIR_CAP")
    if cap:
        return Limits(spair_cap=int(cap))
    return Limits()


_active_limits: Optional[Limits] = None


def current_limits() -> Limits:
    return _active_limits if _active_limits is not None else _env_limits()


def set_limits(limits: Optional[Limits]) -> None:
    """Install process-wide limits (``None`` restores env/defaults)."""
    global _active_limits
    _active_limits = limits


@contextlib.contextmanager
def limits(**overrides):
    """Temporarily override resource caps: ``with limits(spair_cap=100): ...``."""
    global _active_limits
    previous = _active_limits
    _active_limits = replace(current_limits(), **overrides)
    try:
        yield _active_limits
    finally:
        _active_limits = previous


# -- dict-level kernels -----------------------------------------------------

def _divides(a: Monomial, b: Monomial) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(max(x, y) for x, y in zip(a, b))


def _monic(terms: Dict[Monomial, int], lm: Monomial, p: int) -> Dict[Monomial, int]:
    c = terms[lm]
    if c == 1:
        return terms
    inv = pow(c, -1, p)
    return {m: (v * inv) % p for m, v in terms.items()}


def _reduce(terms, basis, lms, neg_key, p, want_quotients):
    """Fully reduce ``terms`` by monic ``basis``; returns (remainder, quotients)."""
    work = dict(terms)
    heap = [(neg_key(m), m) for m in work]
    heapq.heapify(heap)
    rem: Dict[Monomial, int] = {}
    quotients = [dict() for _ in basis] if want_quotients else None
    while heap:
        _, m = heapq.heappop(heap)
        c = work.pop(m, 0)
        if not c:
            continue
        for i, lm in enumerate(lms):
            if _divides(lm, m):
                shift = tuple(x - y for x, y in zip(m, lm))
                for gm, gc in basis[i].items():
                    if gm == lm:
                        continue
                    nm = tuple(x + y for x, y in zip(gm, shift))
                    old = work.get(nm)
                    v = ((old or 0) - c * gc) % p
                    if v:
                        work[nm] = v
                        if old is None:
                            heapq.heappush(heap, (neg_key(nm), nm))
                    elif old is not None:
                        del work[nm]
                if want_quotients:
                    qd = quotients[i]
                    v = (qd.get(shift, 0) + c) % p
                    if v:
                        qd[shift] = v
                    else:
                        qd.pop(shift, None)
                break
        else:
            rem[m] = c
    return rem, quotients


def _add_scaled(acc, terms, shift, c, p):
    # acc += c * x^shift * terms, in place
    for m, v in terms.items():
        nm = tuple(x + y for x, y in zip(m, shift))
        w = (acc.get(nm, 0) + c * v) % p
        if w:
            acc[nm] = w
        else:
            acc.pop(nm, None)


def _mul_dicts(a, b, p):
    out: Dict[Monomial, int] = {}
    for m1, c1 in a.items():
        _add_scaled(out, b, m1, c1, p)
    return out


@dataclass(frozen=True)
class GroebnerBasis:
    """A Groebner basis together with the order it was computed for.

    ``cofactors[i][j]`` (when tracked) is the coefficient of input generator
    ``j`` in the expression of ``elements[i]``.
    """

    elements: Tuple[Polynomial, ...]
    order: MonomialOrder
    reduced: bool = True
    generators: Tuple[Polynomial, ...] = ()
    cofactors: Optional[Tuple[Tuple[Polynomial, ...], ...]] = field(default=None, repr=False)

    @property
    def ring(self) -> PolynomialRing:
        return self.generators[0].ring if self.generators else self.elements[0].ring

    def leading_monomials(self) -> List[Monomial]:
        return [g.leading_monomial(self.order) for g in self.elements]

    def is_unit(self) -> bool:
        return len(self.elements) == 1 and self.elements[0].is_constant() and bool(self.elements[0])

    def is_zero(self) -> bool:
        return not self.elements

    def key(self) -> Tuple:
        """Hashable canonical form (meaningful when ``reduced``)."""
        return tuple(tuple(sorted(g.terms.items())) for g in self.elements)

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)


def _gm_update(G, lms, P, new_index, key):
    """Gebauer-Moeller update of the pair set when ``G[new_index]`` is added."""
    lmf = lms[new_index]
    # drop old pairs whose lcm is strictly divisible by lm(f) (chain criterion)
    kept = set()
    for i, j in P:
        l_ij = _lcm(lms[i], lms[j])
        if (
            not _divides(lmf, l_ij)
            or l_ij == _lcm(lms[i], lmf)
            or l_ij == _lcm(lms[j], lmf)
        ):
            kept.add((i, j))
    # new pairs: keep one representative per minimal lcm, skip coprime lcms
    candidates: Dict[Monomial, List[int]] = {}
    for i in range(new_index):
        if G[i] is None:
            continue
        candidates.setdefault(_lcm(lms[i], lmf), []).append(i)
    minimal = []
    for L in sorted(candidates, key=key):
        if not any(_divides(M, L) for M in minimal):
            minimal.append(L)
    for L in minimal:
        group = candidates[L]
        coprime = [i for i in group if all(a == 0 or b == 0 for a, b in zip(lms[i], lmf))]
        if coprime:
            continue
        kept.add((group[0], new_index))
    return kept


def buchberger(
    ideal: "Ideal",
    order=None,
    *,
    track: bool = False,
    limits: Optional[Limits] = None,
) -> GroebnerBasis:
    """Return the reduced Groebner basis of ``ideal``.

    With ``track=True`` each basis element carries its expression in the
    input generators. Raises :class:`ResourceLimitError` if the S-pair or
    degree cap is exceeded.
    """
    ring = ideal.ring
    order = as_order(order if order is not None else ring.order)
    limits = limits or current_limits()
    p = ring.p
    n = ring.nvars
    key = order.key_function(n)
    neg_key = order.neg_key_function(n)
    gens = list(ideal.generators)
    inputs = [g.terms for g in gens if g.terms]
    if not inputs:
        return GroebnerBasis((), order, True, tuple(gens), () if track else None)

    k = len(gens)
    zero_vec = lambda: [dict() for _ in range(k)]

    G: List[Optional[Dict]] = []
    lms: List[Monomial] = []
    cof: List[Optional[List[Dict]]] = []
    for j, g in enumerate(gens):
        if not g.terms:
            continue
        lm = max(g.terms, key=key)
        inv = pow(g.terms[lm], -1, p)
        G.append({m: (v * inv) % p for m, v in g.terms.items()})
        lms.append(lm)
        if track:
            vec = zero_vec()
            vec[j] = {(0,) * n: inv}
            cof.append(vec)

    degree_cap = max(limits.max_degree, 2 * max(sum(m) for t in inputs for m in t))

    if all(len(t) == 1 for t in G):
        # monomial ideal: minimal generators already form the reduced basis
        pass
    else:
        P = set()
        current: List[Optional[Dict]] = []
        cur_lms: List[Monomial] = []
        for idx in range(len(G)):
            current.append(G[idx])
            cur_lms.append(lms[idx])
            P = _gm_update(current, cur_lms, P, idx, key)
        G, lms = current, cur_lms
        reductions = 0
        while P:
            pair = min(P, key=lambda ij: (key(_lcm(lms[ij[0]], lms[ij[1]])), ij))
            P.discard(pair)
            i, j = pair
            L = _lcm(lms[i], lms[j])
            if sum(L) > degree_cap:
                raise ResourceLimitError(
                    f"S-pair degree {sum(L)} exceeds the degree cap {degree_cap}"
                )
            reductions += 1
            if reductions > limits.spair_cap:
                raise ResourceLimitError(f"more than {limits.spair_cap} S-pair reductions")
            si = tuple(a - b for a, b in zip(L, lms[i]))
            sj = tuple(a - b for a, b in zip(L, lms[j]))
            s: Dict[Monomial, int] = {}
            _add_scaled(s, G[i], si, 1, p)
            _add_scaled(s, G[j], sj, p - 1, p)
            active = [t for t in range(len(G)) if G[t] is not None]
            rem, quo = _reduce(s, [G[t] for t in active], [lms[t] for t in active], neg_key, p, track)
            if not rem:
                continue
            lm = max(rem, key=key)
            inv = pow(rem[lm], -1, p)
            rem = {m: (v * inv) % p for m, v in rem.items()}
            if track:
                vec = zero_vec()
                for c_idx in range(k):
                    acc: Dict[Monomial, int] = {}
                    _add_scaled(acc, cof[i][c_idx], si, inv, p)
                    _add_scaled(acc, cof[j][c_idx], sj, (p - inv) % p, p)
                    for pos, t in enumerate(active):
                        if quo[pos]:
                            prod = _mul_dicts(quo[pos], cof[t][c_idx], p)
                            _add_scaled(acc, prod, (0,) * n, (p - inv) % p, p)
                    vec[c_idx] = acc
                cof.append(vec)
            G.append(rem)
            lms.append(lm)
            P = _gm_update(G, lms, P, len(G) - 1, key)

    # minimalize
    idxs = [t for t in range(len(G)) if G[t] is not None]
    keep = []
    for t in sorted(idxs, key=lambda t: (key(lms[t]), t)):
        if any(_divides(lms[s], lms[t]) for s in keep):
            continue
        keep.append(t)
    # dedupe equal leading monomials is handled above (the earlier index wins)
    # interreduce tails
    reduced_elems = []
    reduced_cof = []
    for t in keep:
        others = [s for s in keep if s != t]
        tail = {m: v for m, v in G[t].items() if m != lms[t]}
        rem, quo = _reduce(tail, [G[s] for s in others], [lms[s] for s in others], neg_key, p, track)
        rem[lms[t]] = 1
        reduced_elems.append((lms[t], rem))
        if track:
            vec = []
            for c_idx in range(k):
                acc = dict(cof[t][c_idx])
                for pos, s in enumerate(others):
                    if quo[pos]:
                        prod = _mul_dicts(quo[pos], cof[s][c_idx], p)
                        _add_scaled(acc, prod, (0,) * n, p - 1, p)
                vec.append(acc)
            reduced_cof.append(vec)
    order_idx = sorted(range(len(reduced_elems)), key=lambda i: key(reduced_elems[i][0]), reverse=True)
    elements = tuple(Polynomial(ring, reduced_elems[i][1], _checked=True) for i in order_idx)
    cofactors = None
    if track:
        cofactors = tuple(
            tuple(Polynomial(ring, d, _checked=True) for d in reduced_cof[i]) for i in order_idx
        )
    return GroebnerBasis(elements, order, True, tuple(gens), cofactors)


def normal_form(f: Polynomial, G: GroebnerBasis) -> Tuple[Polynomial, List[Polynomial]]:
    """Divide ``f`` by ``G``: returns ``(remainder, quotients)``.

    ``f == sum(q_i * g_i) + remainder`` and no term of the remainder is
    divisible by a leading monomial of ``G``.
    """
    ring = f.ring
    if G.elements and not ring.same_ambient(G.elements[0].ring):
        raise AmbientMismatchError("polynomial and basis live in different rings")
    n = ring.nvars
    neg_key = G.order.neg_key_function(n)
    key = G.order.key_function(n)
    basis = []
    lms = []
    scales = []
    for g in G.elements:
        lm = max(g.terms, key=key)
        c = g.terms[lm]
        scales.append(c)
        basis.append(_monic(g.terms, lm, ring.p))
        lms.append(lm)
    rem, quo = _reduce(f.terms, basis, lms, neg_key, ring.p, True)
    quotients = []
    for qd, c in zip(quo, scales):
        q = Polynomial(ring, qd, _checked=True)
        quotients.append(q if c == 1 else q.scale(ring.field.inv(c)))
    return Polynomial(ring, rem, _checked=True), quotients


def linear_basis(polys: Sequence[Polynomial]) -> List[Polynomial]:
    """Row-reduced F_p-basis of the linear span of ``polys``.

    Generates the same ideal with at most as many elements; used to shrink
    generator lists before a Groebner computation.
    """
    polys = [f for f in polys if f.terms]
    if not polys:
        return []
    ring = polys[0].ring
    p = ring.p
    key = ring.key
    rows: List[Tuple[Monomial, Dict]] = []  # (pivot, row) with pivot coefficient 1
    for f in polys:
        row = dict(f.terms)
        for pivot, r in rows:
            c = row.get(pivot)
            if c:
                _add_scaled(row, r, (0,) * ring.nvars, p - c, p)
        if not row:
            continue
        pivot = max(row, key=key)
        row = _monic(row, pivot, p)
        # keep rows fully reduced with respect to each other
        new_rows = []
        for pv, r in rows:
            c = r.get(pivot)
            if c:
                r = dict(r)
                _add_scaled(r, row, (0,) * ring.nvars, p - c, p)
            new_rows.append((pv, r))
        new_rows.append((pivot, row))
        rows = new_rows
    rows.sort(key=lambda pr: key(pr[0]), reverse=True)
    return [Polynomial(ring, r, _checked=True) for _, r in rows]


def minimal_monomials(monomials) -> List[Monomial]:
    """Minimal elements under divisibility (deduplicated)."""
    ms = sorted(set(monomials), key=lambda m: (sum(m), m))
    out: List[Monomial] = []
    for m in ms:
        if not any(_divides(a, m) for a in out):
            out.append(m)
    return out


class Ideal:
    """A finitely generated ideal of a polynomial ring over F_p.

    Generators are stored as given (zeros dropped; the zero ideal keeps the
    single generator 0). Equality is ideal equality, decided through reduced
    Groebner bases.
    """

    __slots__ = ("ring", "generators", "_gb")

    def __init__(self, ring: PolynomialRing, generators=()):
        gens = []
        for g in generators:
            g = ring(g)
            if g.terms:
                gens.append(g)
        if not gens:
            gens = [ring.zero()]
        self.ring = ring
        self.generators: Tuple[Polynomial, ...] = tuple(gens)
        self._gb: Dict[MonomialOrder, GroebnerBasis] = {}

    @classmethod
    def unit(cls, ring: PolynomialRing) -> "Ideal":
        return cls(ring, [ring.one()])

    @classmethod
    def zero(cls, ring: PolynomialRing) -> "Ideal":
        return cls(ring, [])

    @classmethod
    def maximal(cls, ring: PolynomialRing) -> "Ideal":
        """The homogeneous maximal ideal ``(x_1, ..., x_n)``."""
        return cls(ring, ring.gens)

    def groebner(self, order=None) -> GroebnerBasis:
        order = as_order(order if order is not None else self.ring.order)
        gb = self._gb.get(order)
        if gb is None:
            gb = buchberger(self, order)
            self._gb[order] = gb
        return gb

    def is_zero(self) -> bool:
        return not self.generators[0].terms

    def is_unit(self) -> bool:
        if any(g.is_constant() and g.terms for g in self.generators):
            return True
        return self.groebner().is_unit()

    def is_monomial(self) -> bool:
        return all(len(g.terms) <= 1 for g in self.generators)

    def is_principal_presentation(self) -> bool:
        return len(self.generators) == 1

    def is_homogeneous(self) -> bool:
        return all(g.is_homogeneous() for g in self.generators)

    def max_degree(self) -> int:
        return max(g.total_degree() for g in self.generators)

    def reduced_generators(self, order=None) -> Tuple[Polynomial, ...]:
        gb = self.groebner(order)
        return gb.elements if gb.elements else (self.ring.zero(),)

    def __contains__(self, f) -> bool:
        return ideal_member(self.ring(f), self)[0]

    def issubset(self, other: "Ideal") -> bool:
        return ideal_subset(self, other)

    __le__ = issubset

    def __eq__(self, other):
        if not isinstance(other, Ideal):
            return NotImplemented
        return ideal_equal(self, other)

    def __hash__(self):
        return hash((self.ring.p, self.ring.variables, self.groebner().key()))

    def __add__(self, other: "Ideal") -> "Ideal":
        return ideal_sum(self, other)

    def __mul__(self, other: "Ideal") -> "Ideal":
        return ideal_product(self, other)

    def __pow__(self, k: int) -> "Ideal":
        return ideal_power(self, k)

    def __str__(self):
        return "(" + ", ".join(format_polynomial(g) for g in self.generators) + ")"

    def __repr__(self):
        return f"Ideal{self}"


def _check_same(a: Ideal, b: Ideal) -> None:
    if not a.ring.same_ambient(b.ring):
        raise AmbientMismatchError("ideals live in different rings")


def ideal_member(f: Polynomial, a: Ideal) -> Tuple[bool, Optional[List[Polynomial]]]:
    """Decide ``f in a``; on success also return quotients over ``a``'s reduced basis."""
    if not f.ring.same_ambient(a.ring):
        raise AmbientMismatchError("polynomial and ideal live in different rings")
    G = a.groebner()
    if G.is_zero():
        return (not f.terms, [] if not f.terms else None)
    rem, quotients = normal_form(f, G)
    if rem.terms:
        return False, None
    return True, quotients


def lift(f: Polynomial, a: Ideal, G: Optional[GroebnerBasis] = None) -> Optional[List[Polynomial]]:
    """Express ``f`` in the stored generators of ``a``, or ``None`` if ``f`` is not in ``a``.

    Returns ``h`` with ``f == sum(h_j * a.generators[j])``. Pass a basis
    computed with ``buchberger(a, track=True)`` to reuse it across calls.
    """
    ring = a.ring
    if G is None or G.cofactors is None:
        G = buchberger(a, track=True)
    if G.is_zero():
        return [ring.zero() for _ in a.generators] if not f.terms else None
    rem, quotients = normal_form(f, G)
    if rem.terms:
        return None
    out = []
    for j in range(len(a.generators)):
        acc = ring.zero()
        for q, row in zip(quotients, G.cofactors):
            if q.terms and row[j].terms:
                acc = acc + q * row[j]
        out.append(acc)
    return out


def ideal_subset(a: Ideal, b: Ideal) -> bool:
    """``a`` is contained in ``b``."""
    _check_same(a, b)
    if b.is_unit():
        return True
    return all(ideal_member(g, b)[0] for g in a.generators)


def ideal_equal(a: Ideal, b: Ideal, order=None) -> bool:
    """Equal as ideals: identical reduced Groebner bases under a common order."""
    _check_same(a, b)
    order = as_order(order if order is not None else a.ring.order)
    return a.groebner(order).key() == b.groebner(order).key()


def ideal_sum(a: Ideal, b: Ideal) -> Ideal:
    _check_same(a, b)
    return Ideal(a.ring, a.generators + b.generators)


def _shrink(ring: PolynomialRing, polys: List[Polynomial]) -> List[Polynomial]:
    polys = [f for f in polys if f.terms]
    if all(len(f.terms) == 1 for f in polys):
        return [ring.monomial(m) for m in minimal_monomials(next(iter(f.terms)) for f in polys)]
    return linear_basis(polys)


def ideal_product(a: Ideal, b: Ideal) -> Ideal:
    _check_same(a, b)
    prods = [f * g for f in a.generators for g in b.generators]
    return Ideal(a.ring, _shrink(a.ring, prods))


def ideal_power(a: Ideal, k: int) -> Ideal:
    """``a^k`` with ``a^0 = (1)``; generator lists are shrunk along the way."""
    if k < 0:
        raise ValueError("power must be nonnegative")
    ring = a.ring
    if k == 0:
        return Ideal.unit(ring)
    if a.is_zero():
        return a
    if len(a.generators) == 1:
        return Ideal(ring, [a.generators[0] ** k])
    result: Optional[Ideal] = None
    base = a
    while k:
        if k & 1:
            result = base if result is None else ideal_product(result, base)
        k >>= 1
        if k:
            base = ideal_product(base, base)
    return result


def ideal_combine(a: Ideal, b: Optional[Ideal] = None, op: str = "sum", k: Optional[int] = None) -> Ideal:
    """Generator-level sum, product or power (``op='power'`` uses ``k``, ignores ``b``)."""
    if op == "sum":
        return ideal_sum(a, b)
    if op == "product":
        return ideal_product(a, b)
    if op == "power":
        if k is None:
            raise ValueError("power needs k")
        return ideal_power(a, k)
    raise ValueError(f"unknown op {op!r}")


def bracket_power(a: Ideal, e: int) -> Ideal:
    """The Frobenius power ``a^[p^e]``: generated by ``g^(p^e)`` for the stored generators."""
    if e < 0:
        raise ValueError("e must be nonnegative")
    return Ideal(a.ring, [frobenius_power(g, e) for g in a.generators])


def s_pair_check(G: GroebnerBasis) -> bool:
    """Exhaustive Buchberger criterion: every S-polynomial reduces to zero."""
    elems = list(G.elements)
    if not elems:
        return True
    ring = elems[0].ring
    p = ring.p
    n = ring.nvars
    key = G.order.key_function(n)
    neg_key = G.order.neg_key_function(n)
    lms = [max(g.terms, key=key) for g in elems]
    basis = [_monic(g.terms, lm, p) for g, lm in zip(elems, lms)]
    for i in range(len(basis)):
        for j in range(i + 1, len(basis)):
            L = _lcm(lms[i], lms[j])
            s: Dict[Monomial, int] = {}
            _add_scaled(s, basis[i], tuple(a - b for a, b in zip(L, lms[i])), 1, p)
            _add_scaled(s, basis[j], tuple(a - b for a, b in zip(L, lms[j])), p - 1, p)
            rem, _ = _reduce(s, basis, lms, neg_key, p, False)
            if rem:
                return False
    return True


def is_reduced(G: GroebnerBasis) -> bool:
    """Monic leading coefficients and no term divisible by another element's leading monomial."""
    elems = list(G.elements)
    lms = G.leading_monomials()
    for g, lm in zip(elems, lms):
        if g.terms[lm] != 1:
            return False
    for i, g in enumerate(elems):
        for j, lm in enumerate(lms):
            if i != j and any(_divides(lm, m) for m in g.terms):
                return False
    return True
