
import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from frobkit import (
    Ideal,
    Limits,
    PolynomialRing,
    ResourceLimitError,
    buchberger,
    ideal_combine,
    ideal_equal,
    ideal_member,
    ideal_power,
    ideal_subset,
    is_reduced,
    lift,
    limits,
    normal_form,
    s_pair_check,
)
from frobkit.groebner import current_limits, linear_basis

from oracles import member_bounded, poly_dict
from strategies import ideals, polys, ring_and_ideal, rings


def sympy_reduced_basis(a: Ideal, order="grevlex"):
    R = a.ring
    gens = sympy.symbols(R.variables)
    exprs = [
        sum(c * sympy.prod(v**k for v, k in zip(gens, m)) for m, c in g.terms.items())
        for g in a.generators
    ]
    G = sympy.groebner(exprs, *gens, modulus=R.p, order=order)
    out = set()
    for e in G.exprs:
        P = sympy.Poly(e, *gens, modulus=R.p)
        out.add(tuple(sorted((m, int(c) % R.p) for m, c in P.terms() if int(c) % R.p)))
    return out


def our_basis(a: Ideal, order=None):
    G = buchberger(a, order)
    return {tuple(sorted(g.terms.items())) for g in G.elements}


@pytest.fixture
def R2():
    return PolynomialRing(2, ["x", "y"])


@pytest.fixture
def R5():
    return PolynomialRing(5, ["x", "y"])


class TestBuchberger:
    def test_principal(self, R2):
        assert buchberger(Ideal(R2, [R2("x")])).elements == (R2("x"),)

    def test_hand_reduction(self, R2):
        G = buchberger(Ideal(R2, [R2("x+y"), R2("y")]))
        assert set(G.elements) == {R2("x"), R2("y")}

    def test_monomial_ideal(self, R2):
        a = Ideal(R2, [R2("x^2"), R2("x*y"), R2("y^2")])
        assert set(buchberger(a).elements) == {R2("x^2"), R2("x*y"), R2("y^2")}

    def test_nontrivial(self, R5):
        G = buchberger(Ideal(R5, [R5("x^2+y^2"), R5("x*y")]))
        assert set(G.elements) == {R5("y^3"), R5("x^2+y^2"), R5("x*y")}
        assert s_pair_check(G) and is_reduced(G)

    def test_zero_and_unit(self, R2):
        assert buchberger(Ideal.zero(R2)).is_zero()
        assert buchberger(Ideal(R2, [R2("x+1"), R2("x")])).is_unit()

    @given(ring_and_ideal(primes=(2, 3, 5), max_vars=3, max_gens=3, max_terms=3, max_exp=2))
    @settings(max_examples=60)
    def test_matches_sympy(self, data):
        R, a = data
        assert our_basis(a) == sympy_reduced_basis(a)

    @given(ring_and_ideal(primes=(2, 3), max_vars=2, max_gens=3, max_terms=3, max_exp=3))
    @settings(max_examples=40)
    def test_matches_sympy_lex(self, data):
        R, a = data
        assert our_basis(a, "lex") == sympy_reduced_basis(a, "lex")

    @given(ring_and_ideal(max_vars=3, max_terms=3, max_exp=3))
    @settings(max_examples=60)
    def test_s_pairs_and_reducedness(self, data):
        R, a = data
        G = buchberger(a)
        assert s_pair_check(G)
        assert is_reduced(G)
        # idempotent on its own output
        assert buchberger(Ideal(R, list(G.elements) or [R.zero()])).elements == G.elements

    def test_resource_cap_is_explicit(self):
        R = PolynomialRing(3, ["x", "y", "z"])
        a = Ideal(R, [R("x^3*y + y^3*z + z^3*x"), R("x^2*y^2 + z^4 + x*y*z"), R("x^5 + y^4 + z")])
        with pytest.raises(ResourceLimitError):
            buchberger(a, limits=Limits(spair_cap=3))
        with limits(spair_cap=3):
            with pytest.raises(ResourceLimitError):
                buchberger(a)

    def test_degree_cap(self):
        # the cap never drops below twice the input degree, here 4
        R = PolynomialRing(3, ["x", "y", "z"])
        a = Ideal(R, [R("x^2+y*z"), R("y^2+x*z+x"), R("x*y+z^2+y")])
        with pytest.raises(ResourceLimitError, match="degree"):
            buchberger(a, limits=Limits(max_degree=1))
        assert s_pair_check(buchberger(a))

    def test_env_cap(self, monkeypatch):
        monkeypatch.setenv("FROBKIT_SPAIR_CAP", "17")
        assert current_limits().spair_cap == 17
        with limits(spair_cap=5):
            assert current_limits().spair_cap == 5
        monkeypatch.delenv("FROBKIT_SPAIR_CAP")
        assert current_limits().spair_cap == 10**6


class TestNormalForm:
    def test_divisible(self, R2):
        G = buchberger(Ideal(R2, [R2("x")]))
        rem, quo = normal_form(R2("x^2"), G)
        assert rem == 0 and quo == [R2("x")]

    def test_constant_survives(self, R2):
        rem, _ = normal_form(R2.one(), buchberger(Ideal.maximal(R2)))
        assert rem == 1

    def test_known_member(self, R5):
        G = buchberger(Ideal(R5, [R5("x^2+y^2"), R5("x*y")]))
        rem, quo = normal_form(R5("y^3"), G)
        assert rem == 0
        assert sum((q * g for q, g in zip(quo, G.elements)), R5.zero()) == R5("y^3")

    @given(st.data())
    @settings(max_examples=60)
    def test_division_identity(self, data):
        R, a = data.draw(ring_and_ideal(max_vars=3, max_terms=3))
        f = data.draw(polys(R, max_terms=5, max_exp=4))
        G = buchberger(a)
        rem, quo = normal_form(f, G)
        assert sum((q * g for q, g in zip(quo, G.elements)), rem) == f
        lms = G.leading_monomials()
        assert not any(all(x <= y for x, y in zip(lm, m)) for m in rem.terms for lm in lms)


class TestMembership:
    def test_examples(self, R2, R5):
        assert ideal_member(R2("x^2"), Ideal(R2, [R2("x")]))[0]
        assert not ideal_member(R2.one(), Ideal.maximal(R2))[0]
        ok, witness = ideal_member(R5("y^3"), Ideal(R5, [R5("x^2+y^2"), R5("x*y")]))
        assert ok and witness is not None

    @given(st.data())
    @settings(max_examples=80)
    def test_against_linear_algebra(self, data):
        R = data.draw(rings(primes=(2, 3), max_vars=2))
        a = data.draw(ideals(R, max_gens=3, max_terms=3, max_exp=3))
        # combinations of degree <= 6 are found by both; anything the
        # bounded search finds must be a member
        f = data.draw(polys(R, max_terms=4, max_exp=3))
        if data.draw(st.booleans()):
            hs = [data.draw(polys(R, max_terms=2, max_exp=2)) for _ in a.generators]
            f = sum((h * g for h, g in zip(hs, a.generators)), f * 0)
        gens = [poly_dict(g) for g in a.generators]
        brute = member_bounded(poly_dict(f), gens, R.p, R.nvars, 6)
        ours, _ = ideal_member(f, a)
        if brute:
            assert ours
        if ours:
            coeffs = lift(f, a)
            assert sum((c * g for c, g in zip(coeffs, a.generators)), R.zero()) == f

    @given(st.data())
    @settings(max_examples=60)
    def test_homogeneous_exact(self, data):
        # for homogeneous inputs membership of f is decided in degree deg(f)
        R = data.draw(rings(primes=(2, 3), max_vars=2))
        n = R.nvars
        def homog(d):
            monos = [m for m in _monos(n, d)]
            coeffs = data.draw(st.lists(st.integers(0, R.p - 1), min_size=len(monos), max_size=len(monos)))
            return sum((R.monomial(m, c) for m, c in zip(monos, coeffs) if c), R.zero())
        gens = [homog(data.draw(st.integers(1, 3))) for _ in range(data.draw(st.integers(1, 3)))]
        gens = [g for g in gens if g.terms] or [R.gens[0]]
        a = Ideal(R, gens)
        f = homog(data.draw(st.integers(1, 5)))
        deg = max((sum(m) for m in f.terms), default=0)
        brute = member_bounded(poly_dict(f), [poly_dict(g) for g in gens], R.p, n, deg)
        assert ideal_member(f, a)[0] == brute


def _monos(n, d):
    if n == 1:
        return [(d,)]
    return [(i,) + rest for i in range(d + 1) for rest in _monos(n - 1, d - i)]


class TestEquality:
    def test_examples(self, R2):
        assert ideal_equal(Ideal(R2, [R2("x+y"), R2("y")]), Ideal(R2, [R2("x"), R2("y")]))
        assert not ideal_equal(Ideal(R2, [R2("x")]), Ideal(R2, [R2("x^2")]))
        assert ideal_equal(Ideal.zero(R2), Ideal.zero(R2))

    @given(ring_and_ideal(max_vars=3, max_terms=3), st.randoms(use_true_random=False))
    @settings(max_examples=50)
    def test_shuffle_and_scale(self, data, rnd):
        R, a = data
        gens = list(a.generators)
        rnd.shuffle(gens)
        gens = [g.scale(rnd.randrange(1, R.p)) for g in gens]
        b = Ideal(R, gens)
        assert ideal_equal(a, b) and ideal_equal(b, a)
        assert a == b and hash(a) == hash(b)

    @given(ring_and_ideal(max_vars=2, max_terms=3), st.data())
    @settings(max_examples=40)
    def test_order_independent(self, data, draw):
        R, a = data
        b = draw.draw(ideals(R, max_terms=3))
        assert ideal_equal(a, b) == ideal_equal(a, b, order="lex")

    @given(ring_and_ideal(max_vars=2, max_terms=3), st.data())
    @settings(max_examples=40)
    def test_equivalence_relation(self, data, draw):
        R, a = data
        b = draw.draw(ideals(R, max_terms=2))
        c = a + b
        assert ideal_equal(a, a)
        assert ideal_equal(c, b + a)
        assert ideal_subset(a, c) and ideal_subset(b, c)
        if ideal_equal(a, c):
            assert ideal_subset(b, a)


class TestCombine:
    def test_power(self, R2):
        assert ideal_equal(ideal_combine(Ideal.maximal(R2), op="power", k=2),
                           Ideal(R2, [R2("x^2"), R2("x*y"), R2("y^2")]))
        assert ideal_power(Ideal.maximal(R2), 0).is_unit()

    def test_sum_with_zero(self, R2):
        a = Ideal(R2, [R2("x^2+y")])
        assert ideal_equal(ideal_combine(a, Ideal.zero(R2), op="sum"), a)

    def test_product(self, R2):
        p = ideal_combine(Ideal(R2, [R2("x")]), Ideal(R2, [R2("y")]), op="product")
        assert ideal_equal(p, Ideal(R2, [R2("x*y")]))

    @given(ring_and_ideal(primes=(2, 3), max_vars=2, max_gens=2, max_terms=2, max_exp=2), st.integers(0, 4))
    @settings(max_examples=30)
    def test_power_is_repeated_product(self, data, k):
        R, a = data
        expected = Ideal.unit(R)
        for _ in range(k):
            expected = expected * a
        assert ideal_equal(ideal_power(a, k), expected)


def test_linear_basis_spans():
    R = PolynomialRing(3, ["x", "y"])
    fs = [R("x+y"), R("2x+2y"), R("x"), R("y"), R("x^2")]
    basis = linear_basis(fs)
    assert len(basis) == 3
    assert ideal_equal(Ideal(R, basis), Ideal(R, fs))
