import json
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from weilstat.algebra.polyz import PolyZ, power_sums
from weilstat.algebra.primes import primes_up_to
from weilstat.curves import (
    HyperellipticCurve,
    Jacobian,
    a2_window,
    count_points_fp,
    count_points_fp2,
    frobenius_poly,
    hasse_witt,
    jacobian_order_bsgs,
    jacobian_order_from,
    point_counts,
)
from weilstat.errors import CurveError


def naive_count_fp(f, p):
    """Brute force over all (x, y) pairs plus the point at infinity."""
    pts = 1
    for x in range(p):
        fx = sum(c * pow(x, i, p) for i, c in enumerate(f)) % p
        pts += sum(1 for y in range(p) if y * y % p == fx)
    return pts


def naive_count_fp2(f, p):
    """Enumerate F_{p^2} = F_p[t]/(t^2 - u); squares found by Euler's criterion."""
    u = next(a for a in range(2, p) if pow(a, (p - 1) // 2, p) == p - 1)

    def mul(a, b):
        return ((a[0] * b[0] + u * a[1] * b[1]) % p, (a[0] * b[1] + a[1] * b[0]) % p)

    def power(a, e):
        r = (1, 0)
        while e:
            if e & 1:
                r = mul(r, a)
            a = mul(a, a)
            e >>= 1
        return r

    half = (p * p - 1) // 2
    pts = 1
    for a0 in range(p):
        for a1 in range(p):
            z = (0, 0)
            for c in reversed(f):
                z = mul(z, (a0, a1))
                z = ((z[0] + c) % p, z[1])
            if z == (0, 0):
                pts += 1
            elif power(z, half) == (1, 0):
                pts += 2
    return pts


CM = (-1, 0, 0, 0, 0, 1)
GENERIC = (1, -1, 0, 0, 0, 1)
ELLIPTIC = (1, 1, 0, 1)


def test_curve_validation():
    with pytest.raises(CurveError) as e:
        HyperellipticCurve(2, (1, 0, 0, 0, 0, 0, 1))
    assert e.value.code == "BAD_DEGREE"
    with pytest.raises(CurveError) as e:
        HyperellipticCurve(1, (0, 0, 0, 1))
    assert e.value.code == "SINGULAR"
    with pytest.raises(CurveError) as e:
        HyperellipticCurve(1, (1, 1, 0, 2))
    assert e.value.code == "NOT_MONIC"
    with pytest.raises(CurveError) as e:
        HyperellipticCurve(3, (1,) * 8)
    assert e.value.code == "BAD_GENUS"


def test_curve_json_roundtrip(cm_curve):
    text = cm_curve.to_json()
    assert json.loads(text) == {"label": "y^2=x^5-1", "genus": 2, "f": [-1, 0, 0, 0, 0, 1]}
    assert HyperellipticCurve.from_json(text) == cm_curve


def test_bad_reduction(cm_curve):
    for p in (2, 5, 9):
        with pytest.raises(CurveError) as e:
            count_points_fp(cm_curve, p)
        assert e.value.code == "BAD_REDUCTION"


def test_count_fp_examples(cm_curve, elliptic_curve):
    assert count_points_fp(elliptic_curve, 5) == 9
    assert count_points_fp(cm_curve, 7) == 8
    assert count_points_fp(cm_curve, 11) == 16


def test_count_fp2_examples(cm_curve, elliptic_curve):
    assert count_points_fp2(cm_curve, 7) == 50
    assert count_points_fp2(elliptic_curve, 5) == 27
    assert count_points_fp2(cm_curve, 19) == 438
    with pytest.raises(CurveError) as e:
        count_points_fp2(cm_curve, 503)
    assert e.value.code == "BUDGET_EXCEEDED"


@pytest.mark.parametrize("f", [CM, GENERIC, ELLIPTIC, (3, 0, 2, 0, 0, 1)])
def test_counts_match_brute_force(f):
    curve = HyperellipticCurve(2 if len(f) == 6 else 1, f)
    for p in primes_up_to(31):
        if not curve.has_good_reduction(p):
            continue
        assert count_points_fp(curve, p) == naive_count_fp(f, p)
        if p <= 23:
            assert count_points_fp2(curve, p) == naive_count_fp2(f, p)


def test_frobenius_examples(cm_curve, elliptic_curve):
    assert frobenius_poly(elliptic_curve, 5).poly == PolyZ((5, 3, 1))
    assert frobenius_poly(cm_curve, 19).poly == PolyZ((361, 0, 38, 0, 1))
    assert frobenius_poly(cm_curve, 11).poly == PolyZ((121, 44, 6, 4, 1))


def test_sign_convention(elliptic_curve):
    # sum of Frobenius roots = p + 1 - #C(F_p)
    P = frobenius_poly(elliptic_curve, 5)
    assert -P.coeffs[-2] == 5 + 1 - count_points_fp(elliptic_curve, 5)
    pc = point_counts(elliptic_curve, 5)
    assert pc.a1 == P.coeffs[-2]


def test_bsgs_examples(cm_curve, elliptic_curve):
    assert jacobian_order_bsgs(cm_curve, 19, 0) == (38, 400)
    assert jacobian_order_bsgs(cm_curve, 7, 0) == (0, 50)
    with pytest.raises(CurveError) as e:
        jacobian_order_bsgs(elliptic_curve, 5, 3)
    assert e.value.code == "BAD_GENUS"


def test_a2_window_contains_truth(generic_curve):
    for p in primes_up_to(200)[3:]:
        if generic_curve.has_good_reduction(p):
            pc = point_counts(generic_curve, p)
            lo, hi = a2_window(pc.a1, p)
            assert lo <= pc.a2 <= hi


@pytest.mark.parametrize("f", [CM, GENERIC])
def test_power_sums_match_counts(f):
    curve = HyperellipticCurve(2, f)
    for p in primes_up_to(200):
        if not curve.has_good_reduction(p):
            continue
        P = frobenius_poly(curve, p)
        s = power_sums(P.poly, 2)
        assert count_points_fp(curve, p) == p + 1 - s[1]
        assert count_points_fp2(curve, p) == p * p + 1 - s[2]


def test_power_sums_match_counts_genus_one(elliptic_curve):
    for p in primes_up_to(200):
        if not elliptic_curve.has_good_reduction(p):
            continue
        P = frobenius_poly(elliptic_curve, p)
        s = power_sums(P.poly, 2)
        assert count_points_fp2(elliptic_curve, p) == p * p + 1 - s[2]


@pytest.mark.parametrize("f", [CM, GENERIC])
def test_hasse_witt_congruences(f):
    curve = HyperellipticCurve(2, f)
    for p in primes_up_to(150):
        if not curve.has_good_reduction(p):
            continue
        pc = point_counts(curve, p)
        tr, det = hasse_witt(curve, p)
        assert (pc.a1 + tr) % p == 0
        assert (pc.a2 - det) % p == 0


def test_frobenius_methods(generic_curve):
    with pytest.raises(CurveError) as e:
        frobenius_poly(generic_curve, 7, method="magic")
    assert e.value.code == "BAD_METHOD"
    assert frobenius_poly(generic_curve, 101, method="both") == frobenius_poly(generic_curve, 101)


def test_bsgs_above_fallback_threshold(cm_curve):
    # p = 4 mod 5 beyond the enumeration fallback: (x^2 + p)^2
    p = 5009
    assert frobenius_poly(cm_curve, p).poly == PolyZ((p, 0, 1)) ** 2


@settings(max_examples=100)
@given(st.integers(0, 10**6), st.sampled_from([11, 13, 31, 101]))
def test_cantor_group_law(seed, p):
    curve = HyperellipticCurve(2, GENERIC)
    J = Jacobian(curve, p)
    rng = random.Random(seed)
    D, E, G = (J.random_element(rng) for _ in range(3))
    for X in (D, E, G):
        assert J.is_valid(X)
    assert J.add(J.add(D, D), J.neg(D)) == D
    assert J.add(D, J.zero) == D
    assert J.add(D, J.neg(D)) == J.zero
    assert J.add(D, E) == J.add(E, D)
    assert J.add(J.add(D, E), G) == J.add(D, J.add(E, G))
    pc = point_counts(curve, p, with_fp2=True)
    order = jacobian_order_from(pc.a1, pc.a2, p)
    assert J.mul(order, D) == J.zero
    assert order % J.order_of(D, order) == 0
