"""Sparse multivariate polynomials over a prime field F_p.

A polynomial is a map from exponent tuples to nonzero residues mod p.
Everything here is exact; nothing is ever reduced modulo anything but p.

Besides the ring operations this module provides the two Frobenius
primitives the rest of the package is built on:

* :func:`frobenius_power` -- ``f -> f^(p^e)``, which over F_p is pure
  exponent scaling;
* :func:`digit_decompose` -- write ``f = sum_mu c_mu^(p^e) * mu`` where
  ``mu`` runs over monomials with every exponent below ``p^e``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Dict, Iterable, Iterator, Mapping, Optional, Sequence, Tuple, Union

from sympy import isprime

from .errors import AmbientMismatchError, ExponentOverflowError, ParseError

Monomial = Tuple[int, ...]

DEFAULT_MAX_EXPONENT = 2**32


class PrimeField:
    """The prime field F_p."""

    __slots__ = ("p",)

    def __init__(self, p: int):
        if not isinstance(p, int) or isinstance(p, bool) or p < 2 or not isprime(p):
            raise ValueError(f"p must be prime, got {p!r}")
        self.p = p

    def __call__(self, value: int) -> int:
        return value % self.p

    def inv(self, value: int) -> int:
        value %= self.p
        if value == 0:
            raise ZeroDivisionError("0 has no inverse in F_p")
        return pow(value, -1, self.p)

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("F", self.p))

    def __repr__(self):
        return f"PrimeField({self.p})"


@dataclass(frozen=True)
class MonomialOrder:
    """A monomial order: ``grevlex`` or ``lex`` with an optional variable permutation.

    ``permutation[0]`` is the most significant variable. The sort key is a
    tuple compared with Python's ordinary tuple order; bigger key, bigger monomial.
    """

    kind: str = "grevlex"
    permutation: Optional[Tuple[int, ...]] = None

    def __post_init__(self):
        if self.kind not in ("grevlex", "lex"):
            raise ValueError(f"unknown monomial order {self.kind!r}")
        if self.permutation is not None:
            object.__setattr__(self, "permutation", tuple(self.permutation))

    def _perm(self, n: int) -> Tuple[int, ...]:
        if self.permutation is None:
            return tuple(range(n))
        if sorted(self.permutation) != list(range(n)):
            raise ValueError(f"permutation {self.permutation} does not fit {n} variables")
        return self.permutation

    def key_function(self, n: int):
        perm = self._perm(n)
        if self.kind == "lex":
            if perm == tuple(range(n)):
                return lambda m: m
            return lambda m: tuple(m[i] for i in perm)
        rev = tuple(reversed(perm))
        return lambda m: (sum(m), tuple(-m[i] for i in rev))

    def neg_key_function(self, n: int):
        """Key whose ascending order is the descending monomial order (for heaps)."""
        perm = self._perm(n)
        if self.kind == "lex":
            return lambda m: tuple(-m[i] for i in perm)
        rev = tuple(reversed(perm))
        return lambda m: (-sum(m), tuple(m[i] for i in rev))

    def __str__(self):
        return self.kind


GREVLEX = MonomialOrder("grevlex")
LEX = MonomialOrder("lex")


def as_order(order: Union[str, MonomialOrder, None]) -> MonomialOrder:
    if order is None:
        return GREVLEX
    if isinstance(order, MonomialOrder):
        return order
    return MonomialOrder(order)


class PolynomialRing:
    """F_p[x_1, ..., x_n] with a default monomial order.

    Two rings are the same ambient ring when they share p and the variable
    names; the order only affects presentation and leading terms.
    """

    def __init__(
        self,
        p: int,
        variables: Union[str, Sequence[str]],
        order: Union[str, MonomialOrder, None] = None,
        max_exponent: int = DEFAULT_MAX_EXPONENT,
    ):
        self.field = PrimeField(p)
        if isinstance(variables, str):
            variables = [v for v in re.split(r"[,\s]+", variables) if v]
        variables = tuple(variables)
        if not variables:
            raise ValueError("at least one variable is required")
        for v in variables:
            if not re.fullmatch(r"[A-Za-z_][A-Za-z_0-9]*", v):
                raise ValueError(f"invalid variable name {v!r}")
        if len(set(variables)) != len(variables):
            raise ValueError("variable names must be distinct")
        self.variables = variables
        self.nvars = len(variables)
        self.order = as_order(order)
        self.key = self.order.key_function(self.nvars)
        self.max_exponent = max_exponent
        self._one = (0,) * self.nvars

    @property
    def p(self) -> int:
        return self.field.p

    def same_ambient(self, other: "PolynomialRing") -> bool:
        return self is other or (self.p == other.p and self.variables == other.variables)

    def with_order(self, order) -> "PolynomialRing":
        order = as_order(order)
        if order == self.order:
            return self
        return PolynomialRing(self.p, self.variables, order, self.max_exponent)

    def __eq__(self, other):
        return isinstance(other, PolynomialRing) and self.same_ambient(other)

    def __hash__(self):
        return hash((self.p, self.variables))

    def __repr__(self):
        return f"PolynomialRing({self.p}, {','.join(self.variables)!r}, order={self.order.kind!r})"

    # constructors

    def zero(self) -> "Polynomial":
        return Polynomial(self, {}, _checked=True)

    def one(self) -> "Polynomial":
        return Polynomial(self, {self._one: 1}, _checked=True)

    @property
    def gens(self) -> Tuple["Polynomial", ...]:
        out = []
        for i in range(self.nvars):
            m = [0] * self.nvars
            m[i] = 1
            out.append(Polynomial(self, {tuple(m): 1}, _checked=True))
        return tuple(out)

    def monomial(self, exponents: Sequence[int], coeff: int = 1) -> "Polynomial":
        return Polynomial(self, {tuple(exponents): coeff})

    def __call__(self, value) -> "Polynomial":
        if isinstance(value, Polynomial):
            if not self.same_ambient(value.ring):
                raise AmbientMismatchError("polynomial belongs to a different ring")
            return value if value.ring is self else Polynomial(self, value.terms, _checked=True)
        if isinstance(value, int):
            return Polynomial(self, {self._one: value})
        if isinstance(value, str):
            return parse_polynomial(self, value)
        raise TypeError(f"cannot convert {type(value).__name__} to a polynomial")

    def parse(self, text: str) -> "Polynomial":
        return parse_polynomial(self, text)

    def check_exponent(self, e: int) -> None:
        if e > self.max_exponent:
            raise ExponentOverflowError(
                f"exponent {e} exceeds the configured bound {self.max_exponent}"
            )


class Polynomial:
    """An element of a :class:`PolynomialRing`.

    Treat instances as immutable; ``terms`` is never modified after
    construction and contains no zero coefficients.
    """

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: PolynomialRing, terms: Mapping[Monomial, int], _checked: bool = False):
        self.ring = ring
        if _checked:
            self.terms = dict(terms) if not isinstance(terms, dict) else terms
        else:
            p = ring.p
            n = ring.nvars
            clean: Dict[Monomial, int] = {}
            for m, c in terms.items():
                m = tuple(int(a) for a in m)
                if len(m) != n:
                    raise ValueError(f"monomial {m} has wrong length for {n} variables")
                if any(a < 0 for a in m):
                    raise ValueError(f"negative exponent in {m}")
                if any(a > ring.max_exponent for a in m):
                    raise ExponentOverflowError(f"exponent in {m} exceeds {ring.max_exponent}")
                c = (clean.get(m, 0) + c) % p
                if c:
                    clean[m] = c
                else:
                    clean.pop(m, None)
            self.terms = clean
        self._hash = None

    # basic queries

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and self.ring._one in self.terms)

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def __len__(self):
        return len(self.terms)

    def total_degree(self) -> int:
        if not self.terms:
            return -1
        return max(sum(m) for m in self.terms)

    def max_exponents(self) -> Monomial:
        n = self.ring.nvars
        if not self.terms:
            return (0,) * n
        return tuple(max(m[i] for m in self.terms) for i in range(n))

    def is_homogeneous(self) -> bool:
        return len({sum(m) for m in self.terms}) <= 1

    def sorted_terms(self, order=None) -> list:
        key = self.ring.key if order is None else as_order(order).key_function(self.ring.nvars)
        return sorted(self.terms.items(), key=lambda t: key(t[0]), reverse=True)

    def __iter__(self) -> Iterator[Tuple[Monomial, int]]:
        return iter(self.sorted_terms())

    def leading_monomial(self, order=None) -> Monomial:
        if not self.terms:
            raise ValueError("the zero polynomial has no leading monomial")
        key = self.ring.key if order is None else as_order(order).key_function(self.ring.nvars)
        return max(self.terms, key=key)

    def leading_coefficient(self, order=None) -> int:
        return self.terms[self.leading_monomial(order)]

    def monic(self, order=None) -> "Polynomial":
        if not self.terms:
            return self
        inv = self.ring.field.inv(self.leading_coefficient(order))
        return self.scale(inv)

    def coefficient(self, monomial: Sequence[int]) -> int:
        return self.terms.get(tuple(monomial), 0)

    # arithmetic

    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.ring is not self.ring and not self.ring.same_ambient(other.ring):
                raise AmbientMismatchError(
                    f"cannot combine polynomials over {self.ring!r} and {other.ring!r}"
                )
            return other
        if isinstance(other, int):
            return Polynomial(self.ring, {self.ring._one: other})
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        p = self.ring.p
        out = dict(self.terms)
        for m, c in other.terms.items():
            v = (out.get(m, 0) + c) % p
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return Polynomial(self.ring, out, _checked=True)

    __radd__ = __add__

    def __neg__(self):
        p = self.ring.p
        return Polynomial(self.ring, {m: p - c for m, c in self.terms.items()}, _checked=True)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def scale(self, c: int) -> "Polynomial":
        p = self.ring.p
        c %= p
        if c == 0:
            return self.ring.zero()
        return Polynomial(self.ring, {m: (v * c) % p for m, v in self.terms.items()}, _checked=True)

    def mul_term(self, monomial: Monomial, c: int = 1) -> "Polynomial":
        p = self.ring.p
        c %= p
        if c == 0:
            return self.ring.zero()
        if any(monomial):
            self._check_product_exponents(monomial)
        out = {tuple(a + b for a, b in zip(m, monomial)): (v * c) % p for m, v in self.terms.items()}
        return Polynomial(self.ring, out, _checked=True)

    def _check_product_exponents(self, other_max: Sequence[int]) -> None:
        bound = self.ring.max_exponent
        mine = self.max_exponents()
        for a, b in zip(mine, other_max):
            if a + b > bound:
                raise ExponentOverflowError(f"exponent {a + b} exceeds the configured bound {bound}")

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not self.terms or not other.terms:
            return self.ring.zero()
        if len(other.terms) == 1:
            (m, c), = other.terms.items()
            return self.mul_term(m, c)
        if len(self.terms) == 1:
            (m, c), = self.terms.items()
            return other.mul_term(m, c)
        self._check_product_exponents(other.max_exponents())
        p = self.ring.p
        acc: Dict[Monomial, int] = {}
        get = acc.get
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                acc[m] = get(m, 0) + c1 * c2
        out = {m: c % p for m, c in acc.items() if c % p}
        return Polynomial(self.ring, out, _checked=True)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a nonnegative integer")
        if n == 0:
            return self.ring.one()
        if not self.terms:
            return self
        bound = self.ring.max_exponent
        if any(a * n > bound for a in self.max_exponents()):
            raise ExponentOverflowError(f"power {n} exceeds the exponent bound {bound}")
        if len(self.terms) == 1:
            (m, c), = self.terms.items()
            return Polynomial(
                self.ring, {tuple(a * n for a in m): pow(c, n, self.ring.p)}, _checked=True
            )
        # f^n = prod_i frob(f^{d_i}, i) for the base-p digits d_i of n
        p = self.ring.p
        result = self.ring.one()
        level = 0
        while n:
            n, d = divmod(n, p)
            if d:
                result = result * frobenius_power(_small_power(self, d), level)
            level += 1
        return result

    # comparison / hashing

    def __eq__(self, other):
        if isinstance(other, int):
            other = Polynomial(self.ring, {self.ring._one: other})
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.ring.same_ambient(other.ring) and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring.p, self.ring.variables, frozenset(self.terms.items())))
        return self._hash

    # text

    def __str__(self):
        return format_polynomial(self)

    def __repr__(self):
        return f"Polynomial({format_polynomial(self)!r}, p={self.ring.p})"


def _small_power(f: Polynomial, d: int) -> Polynomial:
    result = f.ring.one()
    base = f
    while d:
        if d & 1:
            result = result * base
        d >>= 1
        if d:
            base = base * base
    return result


def frobenius_power(f: Polynomial, e: int) -> Polynomial:
    """Return ``f^(p^e)``.

    Coefficients lie in F_p and are fixed by Frobenius, so this only scales
    exponents.
    """
    if e < 0:
        raise ValueError("e must be nonnegative")
    if e == 0:
        return f
    ring = f.ring
    q = ring.p**e
    if f.terms:
        top = max(max(m) for m in f.terms) * q
        ring.check_exponent(top)
    return Polynomial(ring, {tuple(a * q for a in m): c for m, c in f.terms.items()}, _checked=True)


def digit_decompose(f: Polynomial, e: int) -> Dict[Monomial, Polynomial]:
    """Split ``f`` along the free basis of F_p[x] over its subring of ``q``-th powers.

    Returns ``{mu: c_mu}`` with every exponent of ``mu`` below ``q = p^e`` and
    ``f == sum(frobenius_power(c_mu, e) * mu)``. Only nonzero ``c_mu`` appear;
    keys are sorted by the ring's monomial order, largest first.
    """
    if e < 0:
        raise ValueError("e must be nonnegative")
    ring = f.ring
    q = ring.p**e
    buckets: Dict[Monomial, Dict[Monomial, int]] = {}
    for m, c in f.terms.items():
        mu = tuple(a % q for a in m)
        base = tuple(a // q for a in m)
        buckets.setdefault(mu, {})[base] = c
    key = ring.key
    return {
        mu: Polynomial(ring, buckets[mu], _checked=True)
        for mu in sorted(buckets, key=key, reverse=True)
    }


def recompose(parts: Mapping[Monomial, Polynomial], e: int, ring: PolynomialRing) -> Polynomial:
    """Inverse of :func:`digit_decompose`."""
    out = ring.zero()
    for mu, c in parts.items():
        out = out + frobenius_power(c, e).mul_term(mu)
    return out


# -- text syntax ------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\*\*|[-+*^()]))")


def _tokenize(text: str):
    pos = 0
    tokens = []
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        match = _TOKEN.match(text, pos)
        if not match:
            col = pos + len(text[pos:]) - len(text[pos:].lstrip())
            raise ParseError(f"unexpected character {text[col]!r}", column=col + 1)
        start = match.start(match.lastindex)
        if match.group(1) is not None:
            tokens.append(("num", int(match.group(1)), start))
        elif match.group(2) is not None:
            tokens.append(("id", match.group(2), start))
        else:
            op = match.group(3)
            tokens.append(("op", "^" if op == "**" else op, start))
        pos = match.end()
    tokens.append(("end", None, len(text)))
    return tokens


def _split_identifier(name: str, variables: Sequence[str]) -> Optional[list]:
    # longest-match split of juxtaposed variable names, e.g. "xy" -> [x, y]
    if name in variables:
        return [name]
    for v in sorted(variables, key=len, reverse=True):
        if name.startswith(v):
            rest = _split_identifier(name[len(v):], variables)
            if rest is not None:
                return [v] + rest
    return None


class _Parser:
    def __init__(self, ring: PolynomialRing, text: str):
        self.ring = ring
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def error(self, msg, tok=None):
        tok = tok or self.peek()
        return ParseError(msg, column=tok[2] + 1)

    def parse(self) -> Polynomial:
        if self.peek()[0] == "end":
            raise self.error("empty polynomial")
        out = self.expr()
        if self.peek()[0] != "end":
            raise self.error(f"unexpected token {self.peek()[1]!r}")
        return out

    def expr(self) -> Polynomial:
        sign = 1
        tok = self.peek()
        if tok[0] == "op" and tok[1] in "+-":
            self.take()
            sign = -1 if tok[1] == "-" else 1
        acc = self.term().scale(sign)
        while True:
            tok = self.peek()
            if tok[0] == "op" and tok[1] in "+-":
                self.take()
                t = self.term()
                acc = acc + t if tok[1] == "+" else acc - t
            else:
                return acc

    def _starts_factor(self, tok) -> bool:
        return tok[0] in ("num", "id") or (tok[0] == "op" and tok[1] == "(")

    def term(self) -> Polynomial:
        acc = self.factor()
        while True:
            tok = self.peek()
            if tok[0] == "op" and tok[1] == "*":
                self.take()
                acc = acc * self.factor()
            elif self._starts_factor(tok):
                acc = acc * self.factor()
            else:
                return acc

    def factor(self) -> Polynomial:
        # in juxtaposed names like "xy^2" the power binds to the last variable only
        prefix, base = self.atom()
        tok = self.peek()
        if tok[0] == "op" and tok[1] == "^":
            self.take()
            exp = self.take()
            if exp[0] != "num":
                raise self.error("expected a nonnegative integer exponent", exp)
            base = base ** exp[1]
        return base if prefix is None else prefix * base

    def atom(self) -> Polynomial:
        tok = self.take()
        kind, value, _ = tok
        if kind == "num":
            return None, self.ring(value)
        if kind == "id":
            parts = _split_identifier(value, self.ring.variables)
            if parts is None:
                raise self.error(f"unknown variable {value!r}", tok)
            gens = dict(zip(self.ring.variables, self.ring.gens))
            prefix = None
            for name in parts[:-1]:
                prefix = gens[name] if prefix is None else prefix * gens[name]
            return prefix, gens[parts[-1]]
        if kind == "op" and value == "(":
            inner = self.expr()
            close = self.take()
            if close[1] != ")":
                raise self.error("expected ')'", close)
            return None, inner
        raise self.error(f"unexpected token {value!r}" if value else "unexpected end of input", tok)


def parse_polynomial(ring: PolynomialRing, text: str) -> Polynomial:
    """Parse text like ``x^2*y + 3*y^3 - 1`` (juxtaposition and parentheses allowed)."""
    return _Parser(ring, text).parse()


def format_monomial(m: Monomial, variables: Sequence[str]) -> str:
    parts = []
    for name, a in zip(variables, m):
        if a == 1:
            parts.append(name)
        elif a > 1:
            parts.append(f"{name}^{a}")
    return "*".join(parts) if parts else "1"


def format_polynomial(f: Polynomial) -> str:
    """Canonical text: terms largest first, coefficients in ``[1, p)``."""
    if not f.terms:
        return "0"
    out = []
    for m, c in f.sorted_terms():
        mono = format_monomial(m, f.ring.variables)
        if mono == "1":
            out.append(str(c))
        elif c == 1:
            out.append(mono)
        else:
            out.append(f"{c}*{mono}")
    return " + ".join(out)


def polynomials(ring: PolynomialRing, items: Iterable) -> list:
    return [ring(x) for x in items]
