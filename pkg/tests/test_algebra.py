import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from weilstat.algebra import polyf as F
from weilstat.algebra.factor_z import factor_over_z
from weilstat.algebra.polyf import PolyF, PrimeFieldCtx, factor_mod_l, is_irreducible_mod
from weilstat.algebra.polyz import (
    PolyZ,
    cauchy_bound,
    composed_product,
    discriminant,
    from_power_sums,
    gcd,
    graeffe_power,
    power_sums,
    real_root_count,
    resultant,
    squarefree_decomposition,
    squarefree_part,
    sturm_roots_in_interval,
)
from weilstat.algebra.primes import (
    euler_phi,
    is_prime,
    is_prime_power,
    legendre,
    primes_up_to,
    sqrt_mod,
    square_table,
)
from weilstat.errors import AlgebraError

x = sympy.symbols("x")


def to_sympy(p: PolyZ):
    return sympy.Poly(list(reversed(p.coeffs)), x)


def poly_strategy(max_deg=6, lo=-20, hi=20, monic=False):
    def build(cs):
        cs = list(cs)
        if monic:
            cs.append(1)
        return PolyZ(tuple(cs))

    return st.lists(st.integers(lo, hi), min_size=1, max_size=max_deg + (0 if monic else 1)).map(build)


# --- primes ---------------------------------------------------------------------


def test_is_prime_matches_sympy():
    for n in list(range(-5, 3000)) + [2**61 - 1, 2**61 + 1, 3215031751, 3825123056546413051]:
        assert is_prime(n) == bool(sympy.isprime(n)), n


def test_primes_up_to():
    assert primes_up_to(50) == list(sympy.primerange(2, 51))
    assert primes_up_to(1) == []


def test_prime_powers_and_phi():
    assert is_prime_power(49) and is_prime_power(2) and not is_prime_power(12)
    assert [euler_phi(n) for n in (1, 5, 12, 120)] == [1, 4, 4, 32]


def test_legendre_and_sqrt():
    for p in (3, 5, 13, 101):
        table = square_table(p)
        for a in range(p):
            assert legendre(a, p) == sympy.legendre_symbol(a, p) if a else legendre(a, p) == 0
            assert table[a] == legendre(a, p)
            if legendre(a, p) == 1:
                r = sqrt_mod(a, p)
                assert r * r % p == a


def test_prime_field_ctx_rejects_composite():
    with pytest.raises(AlgebraError) as e:
        PrimeFieldCtx(15)
    assert e.value.code == "NOT_PRIME"


# --- PolyZ basics ----------------------------------------------------------------------


def test_polyz_trims_and_arithmetic():
    p = PolyZ((1, 2, 0, 0))
    assert p.coeffs == (1, 2) and p.degree == 1
    assert PolyZ(()).is_zero() and PolyZ(()).degree == -1
    a, b = PolyZ((-1, 1)), PolyZ((1, 1))
    assert (a * b).coeffs == (-1, 0, 1)
    assert (a + b).coeffs == (0, 2)
    assert ((a * b) // a) == b
    assert (PolyZ((2, 3, 1)) ** 2)(2) == 144


def test_squarefree_decomposition_examples():
    p = PolyZ((19, 0, 1)) ** 2 * PolyZ((-1, 1))
    parts = squarefree_decomposition(p)
    assert sorted((s.coeffs, m) for s, m in parts) == [((-1, 1), 1), ((19, 0, 1), 2)]
    assert squarefree_part(p) == PolyZ((19, 0, 1)) * PolyZ((-1, 1))


@settings(max_examples=300)
@given(poly_strategy(5), poly_strategy(4))
def test_gcd_matches_sympy(a, b):
    if a.is_zero() or b.is_zero():
        return
    ours = gcd(a * b, a)
    theirs = sympy.gcd(to_sympy(a * b), to_sympy(a))
    assert ours.degree == theirs.degree()


# --- resultant and discriminant -----------------------------------------------------------


def test_resultant_convention():
    assert resultant(PolyZ((-2, 1)), PolyZ((-3, 1))) == -1
    assert discriminant(PolyZ((5, 3, 1))) == -11
    assert resultant(PolyZ((-1, 0, 1)), PolyZ((-4, 0, 1))) == 9


def test_resultant_zero_poly():
    with pytest.raises(AlgebraError) as e:
        resultant(PolyZ(()), PolyZ((1, 1)))
    assert e.value.code == "ZERO_POLY"


@settings(max_examples=200)
@given(poly_strategy(4, -9, 9), poly_strategy(4, -9, 9), poly_strategy(3, -9, 9))
def test_resultant_laws(a, b, c):
    if a.degree < 1 or b.degree < 1 or c.degree < 1:
        return
    assert resultant(a, b) * (-1) ** (a.degree * b.degree) == resultant(b, a)
    assert resultant(a, b * c) == resultant(a, b) * resultant(a, c)
    # sympy's resultant uses the same convention
    assert resultant(a, b) == sympy.resultant(to_sympy(a).as_expr(), to_sympy(b).as_expr(), x)


@settings(max_examples=200)
@given(poly_strategy(6, -9, 9))
def test_discriminant_matches_sympy(p):
    if p.degree < 1:
        return
    assert discriminant(p) == sympy.discriminant(to_sympy(p).as_expr(), x)


# --- Graeffe transform and composed product --------------------------------------------------


def _graeffe_oracle(p: PolyZ, n: int) -> PolyZ:
    # Res_y(p(y), x - y^n), normalised to be monic
    y = sympy.symbols("y")
    r = sympy.resultant(to_sympy(p).as_expr().subs(x, y), x - y**n, y)
    poly = sympy.Poly(r, x)
    cs = [int(c) for c in reversed(poly.all_coeffs())]
    lc = cs[-1]
    return PolyZ(tuple(c // lc for c in cs))


def test_graeffe_examples():
    assert graeffe_power(PolyZ((2, -3, 1)), 2) == PolyZ((4, -5, 1))
    p = 19
    assert graeffe_power(PolyZ((p, 0, 1)), 2) == PolyZ((p * p, 2 * p, 1))
    assert graeffe_power(PolyZ((-7, 1)), 3) == PolyZ((-343, 1))
    with pytest.raises(AlgebraError) as e:
        graeffe_power(PolyZ((1, 2)), 2)
    assert e.value.code == "NOT_MONIC"


@settings(max_examples=60)
@given(poly_strategy(4, -6, 6, monic=True), st.integers(1, 4))
def test_graeffe_matches_resultant_oracle(p, n):
    assert graeffe_power(p, n) == _graeffe_oracle(p, n)


@settings(max_examples=1000)
@given(poly_strategy(6, -5, 5, monic=True), st.integers(1, 5), st.integers(1, 5))
def test_graeffe_composition_law(p, m, n):
    g = graeffe_power(p, m * n)
    assert g == graeffe_power(graeffe_power(p, m), n)
    assert g.degree == p.degree


def test_composed_product_examples():
    assert composed_product(PolyZ((-2, 1)), PolyZ((-3, 1))) == PolyZ((-6, 1))
    assert composed_product(PolyZ((-1, 0, 1)), PolyZ((-5, 1))) == PolyZ((-25, 0, 1))
    assert composed_product(PolyZ((1, 0, 1)), PolyZ((1, 0, 1))) == PolyZ((-1, 0, 1)) ** 2
    with pytest.raises(AlgebraError):
        composed_product(PolyZ((1, 2)), PolyZ((1, 1)))


@settings(max_examples=60)
@given(poly_strategy(3, -6, 6, monic=True), poly_strategy(3, -6, 6, monic=True))
def test_composed_product_matches_resultant(a, b):
    if a.degree < 1 or b.degree < 1:
        return
    y = sympy.symbols("y")
    db = b.degree
    bx = sum(c * x**i * y ** (db - i) for i, c in enumerate(b.coeffs))  # y^db b(x/y)
    r = sympy.Poly(sympy.resultant(to_sympy(a).as_expr().subs(x, y), bx, y), x)
    cs = [int(c) for c in reversed(r.all_coeffs())]
    assert composed_product(a, b) == PolyZ(tuple(c // cs[-1] for c in cs))


@settings(max_examples=200)
@given(poly_strategy(6, -9, 9, monic=True))
def test_power_sums_roundtrip(p):
    s = power_sums(p, p.degree)
    assert from_power_sums(s, p.degree) == p


# --- Sturm ---------------------------------------------------------------------------------------


def test_sturm_examples():
    assert sturm_roots_in_interval(PolyZ((-2, 0, 1)), -2, 2) == 2
    assert sturm_roots_in_interval(PolyZ((1, 0, 1)), -10, 10) == 0
    assert sturm_roots_in_interval(PolyZ((-8, -1, 1)), Fraction(-9, 2), Fraction(9, 2)) == 2
    # interval is half-open (lo, hi]
    assert sturm_roots_in_interval(PolyZ((-1, 1)), 0, 1) == 1
    assert sturm_roots_in_interval(PolyZ((-1, 1)), 1, 2) == 0


def test_sturm_errors():
    with pytest.raises(AlgebraError) as e:
        sturm_roots_in_interval(PolyZ((1, 2, 1)), -5, 5)
    assert e.value.code == "NOT_SQUAREFREE"
    with pytest.raises(AlgebraError) as e:
        sturm_roots_in_interval(PolyZ((-2, 0, 1)), 3, 1)
    assert e.value.code == "BAD_INTERVAL"


@settings(max_examples=200)
@given(st.lists(st.integers(-6, 6), min_size=0, max_size=3), st.lists(st.tuples(st.integers(-5, 5), st.integers(1, 9)), max_size=2))
def test_sturm_counts_distinct_real_roots(roots, quads):
    p = PolyZ((1,))
    for r in roots:
        p = p * PolyZ((-r, 1))
    for b, c in quads:
        p = p * PolyZ((c, b, 1))
    if p.degree < 1:
        return
    sq = squarefree_part(p)
    if sq.lc < 0:
        sq = -sq
    B = cauchy_bound(sq) + 1
    expected = len(sympy.real_roots(to_sympy(sq)))
    assert sturm_roots_in_interval(sq, -B, B) == expected == real_root_count(sq)
    # cross-check with factorization into linear factors
    linear = sum(1 for f, _ in factor_over_z(p).factors if f.degree == 1)
    quad_real = sum(1 for f, _ in factor_over_z(p).factors if f.degree == 2 and discriminant(f) > 0)
    assert expected == linear + 2 * quad_real


# --- factorization over F_ell ------------------------------------------------------------------------


def test_factor_mod_l_examples():
    ctx5 = PrimeFieldCtx(5)
    fac = factor_mod_l(PolyF(ctx5, (-1, 0, 1)))
    assert [(f.coeffs, m) for f, m in fac.factors] == [((1, 1), 1), ((4, 1), 1)]
    ctx3 = PrimeFieldCtx(3)
    fac = factor_mod_l(PolyF(ctx3, (361, 0, 38, 0, 1)))
    assert [(f.coeffs, m) for f, m in fac.factors] == [((1, 0, 1), 2)]
    assert is_irreducible_mod([1, 0, 1], 3)
    fac = factor_mod_l(PolyF(ctx5, (1, 1, 1)))
    assert [(f.coeffs, m) for f, m in fac.factors] == [((1, 1, 1), 1)]
    with pytest.raises(AlgebraError) as e:
        factor_mod_l(PolyF(ctx5, ()))
    assert e.value.code == "ZERO_POLY"


def test_factor_mod_l_deterministic():
    ctx = PrimeFieldCtx(101, seed=7)
    p = PolyF(ctx, (3, 1, 4, 1, 5, 9, 2, 6, 1))
    assert factor_mod_l(p) == factor_mod_l(p)


@settings(max_examples=1000)
@given(st.sampled_from([2, 3, 5, 7, 11, 13, 101]), st.lists(st.integers(0, 200), min_size=1, max_size=9))
def test_factor_mod_l_reconstructs(ell, cs):
    ctx = PrimeFieldCtx(ell)
    p = PolyF(ctx, tuple(cs))
    if p.is_zero():
        return
    fac = factor_mod_l(p)
    assert fac.expand() == p
    for f, _ in fac.factors:
        assert f.coeffs[-1] == 1 and is_irreducible_mod(list(f.coeffs), ell)
    assert len({f for f, _ in fac.factors}) == len(fac.factors)


@settings(max_examples=150)
@given(st.sampled_from([3, 5, 7, 13]), st.lists(st.integers(0, 12), min_size=2, max_size=7))
def test_factor_mod_l_matches_sympy(ell, cs):
    p = PolyF(PrimeFieldCtx(ell), tuple(cs))
    if p.degree < 1:
        return
    ours = sorted(f.degree for f, m in factor_mod_l(p).factors for _ in range(m))
    _, theirs = sympy.factor_list(sympy.Poly(list(reversed(p.coeffs)), x, modulus=ell))
    assert ours == sorted(f.degree() for f, m in theirs for _ in range(m))


def test_equal_degree_splitting_char_two():
    # x^4 + x over F_2 = x (x+1) (x^2+x+1)
    unit, facs = F.factor_list([0, 1, 0, 0, 1], 2, random.Random(0))
    assert sorted(len(h) - 1 for h, _ in facs) == [1, 1, 2]


# --- factorization over Z ------------------------------------------------------------------------


def test_factor_over_z_examples():
    fac = factor_over_z(PolyZ((-1, 0, 0, 0, 1)))
    assert [f.coeffs for f, _ in fac.factors] == [(-1, 1), (1, 1), (1, 0, 1)]
    fac = factor_over_z(PolyZ((19, 0, 1)) ** 2)
    assert [(f.coeffs, m) for f, m in fac.factors] == [((19, 0, 1), 2)]
    assert factor_over_z(PolyZ((25, -5, 2, -1, 1))).is_irreducible()


def test_factor_over_z_degree_cap():
    with pytest.raises(AlgebraError) as e:
        factor_over_z(PolyZ((1,) * 18))
    assert e.value.code == "DEGREE_TOO_LARGE"


def test_factor_over_z_unit_and_sign():
    p = PolyZ((2, 0, -2))  # -2 (x-1)(x+1)
    fac = factor_over_z(p)
    assert fac.unit == -2 and fac.expand() == p


@settings(max_examples=1000)
@given(st.lists(st.integers(-12, 12), min_size=2, max_size=9))
def test_factor_over_z_reconstructs(cs):
    p = PolyZ(tuple(cs))
    if p.degree < 1:
        return
    fac = factor_over_z(p)
    assert fac.expand() == p
    assert len({f for f, _ in fac.factors}) == len(fac.factors)


@settings(max_examples=150)
@given(st.lists(st.tuples(st.lists(st.integers(-5, 5), min_size=1, max_size=3), st.integers(1, 2)), min_size=1, max_size=3))
def test_factor_over_z_matches_sympy(parts):
    p = PolyZ((1,))
    for cs, m in parts:
        p = p * PolyZ(tuple(cs) + (1,)) ** m
    if p.degree > 16:
        return
    ours = sorted((f.coeffs, m) for f, m in factor_over_z(p).factors)
    _, theirs = sympy.factor_list(to_sympy(p))
    theirs = sorted((tuple(int(c) for c in reversed(f.all_coeffs())), m) for f, m in theirs)
    assert ours == theirs
