import itertools
import math
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from weilstat.errors import GroupError
from weilstat.weyl import (
    SignedCycleType,
    SignedPerm,
    build_group,
    class_equation_holds,
    conjugacy_classes,
    element_order_profile,
    lemma42_check,
    wdn_generation_check,
    overgroup_classes_in_subgroup,
    subgroup,
    subgroups_meeting_all_classes,
    weight_action_check,
    weight_points,
    point_permutation,
    permutation_cycles,
)


def all_signed_images(n):
    """Oracle: every signed permutation as a tuple of 1-based signed images."""
    for p in itertools.permutations(range(1, n + 1)):
        for s in itertools.product((1, -1), repeat=n):
            yield tuple(a * b for a, b in zip(p, s))


def compose_images(x, y):
    """Oracle composition on image tuples, y applied first."""
    out = []
    for i in range(len(y)):
        j = y[i]
        k = x[abs(j) - 1]
        out.append(k if j > 0 else -k)
    return tuple(out)


def signed_perms(n):
    return st.tuples(st.permutations(range(n)), st.lists(st.sampled_from((1, -1)), min_size=n, max_size=n)).map(
        lambda t: SignedPerm(tuple(t[0]), tuple(t[1]))
    )


# --- composition lock -------------------------------------------------------------------


def test_composition_convention():
    s = SignedPerm.from_images((2, 1))  # swap
    f = SignedPerm.from_images((-1, 2))  # flip e1
    # right factor first: e1 -> -e1 -> -e2
    assert (s * f).images() == (-2, 1)
    assert (f * s).images() == (2, -1)
    assert (s * f).apply((1, 0)) == s.apply(f.apply((1, 0)))


def test_inverse_of_product_random_pairs():
    rng = random.Random(7)
    B = sorted(build_group("B", 4).elements)
    for _ in range(1000):
        g, h = rng.choice(B), rng.choice(B)
        assert (g * h).inverse() == h.inverse() * g.inverse()
        assert (g * h).images() == compose_images(g.images(), h.images())


@given(signed_perms(5), signed_perms(5), signed_perms(5))
def test_associativity(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert a * a.inverse() == SignedPerm.identity(5)


@given(signed_perms(5), signed_perms(5))
def test_cycle_type_conjugation_invariant(g, x):
    assert (x * g * x.inverse()).cycle_type() == g.cycle_type()
    assert sum(k for k, _ in g.cycle_type().cycles) == 5


def test_cycle_type_text_roundtrip():
    for g in build_group("B", 3).elements:
        t = g.cycle_type()
        assert SignedCycleType.parse(str(t)) == t


# --- groups --------------------------------------------------------------------------------------


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_orders(n):
    B = build_group("B", n)
    D = build_group("D", n)
    assert B.order == 2**n * math.factorial(n)
    assert D.order * 2 == B.order
    assert B.is_closed() and D.is_closed()
    assert class_equation_holds(B) and class_equation_holds(D)


def test_examples_orders():
    assert build_group("B", 2).order == 8
    assert build_group("D", 4).order == 192
    assert build_group("MUMFORD_PI").order == 48
    assert build_group("MUMFORD_PI_A3").order == 24


def test_b_matches_oracle_enumeration():
    assert {g.images() for g in build_group("B", 3).elements} == set(all_signed_images(3))


@pytest.mark.parametrize("n", [2, 3, 4])
def test_d_is_normal_even_sign_subgroup(n):
    B = build_group("B", n)
    D = build_group("D", n)
    assert D.element_set == {g for g in B.elements if g.sign_product() == 1}
    for x in B.gens:
        assert {x * d * x.inverse() for d in D.elements} == D.element_set


def test_errors():
    with pytest.raises(GroupError) as e:
        build_group("B", 7)
    assert e.value.code == "TOO_LARGE"
    with pytest.raises(GroupError) as e:
        build_group("E", 3)
    assert e.value.code == "UNKNOWN_GROUP"
    B2 = build_group("B", 2)
    with pytest.raises(GroupError) as e:
        subgroup(build_group("S", 2), B2.gens)
    assert e.value.code == "NOT_SUBGROUP"
    with pytest.raises(GroupError) as e:
        overgroup_classes_in_subgroup(build_group("D", 2), B2)
    assert e.value.code == "NOT_SUBGROUP"


# --- classes -----------------------------------------------------------------------------------


def test_b2_classes():
    classes = conjugacy_classes(build_group("B", 2))
    assert sorted(c.size for c in classes) == [1, 1, 2, 2, 2]
    assert {str(c.type) for c in classes} == {"[1+1+]", "[1-1-]", "[1+1-]", "[2+]", "[2-]"}


def test_trivial_group():
    T = build_group("TRIVIAL", 3)
    assert len(conjugacy_classes(T)) == 1
    assert element_order_profile(T) == {1: 1}


def test_d4_class_sizes():
    classes = conjugacy_classes(build_group("D", 4))
    assert sum(c.size for c in classes) == 192
    assert all(192 % c.size == 0 for c in classes)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_classes_biject_with_types(n):
    # oracle: conjugation orbits computed on image tuples
    elems = list(all_signed_images(n))
    inv = {}
    for x in elems:
        for y in elems:
            if compose_images(x, y) == tuple(range(1, n + 1)):
                inv[x] = y
                break
    seen, orbits = set(), []
    for g in elems:
        if g in seen:
            continue
        orb = {compose_images(compose_images(x, g), inv[x]) for x in elems}
        seen |= orb
        orbits.append(orb)
    classes = conjugacy_classes(build_group("B", n))
    assert len(classes) == len(orbits)
    assert {frozenset(x.images() for x in c.elements) for c in classes} == {frozenset(o) for o in orbits}
    assert len({c.type for c in classes}) == len(classes)


def test_overgroup_classes_b2_d2():
    B2, D2 = build_group("B", 2), build_group("D", 2)
    got = {str(c.type) for c in overgroup_classes_in_subgroup(B2, D2)}
    assert got == {"[1+1+]", "[1-1-]", "[2+]"}
    assert len(overgroup_classes_in_subgroup(B2, B2)) == 5


def test_overgroup_classes_b4_d4():
    B4, D4 = build_group("B", 4), build_group("D", 4)
    got = {c.type for c in overgroup_classes_in_subgroup(B4, D4)}
    want = {c.type for c in conjugacy_classes(B4) if c.type.negative_cycles() % 2 == 0}
    assert got == want


# --- W(D_n) generation check and controls -----------------------------------------------------------------


def test_wdn_generation_n4():
    rep = wdn_generation_check(4)
    assert rep["ok"] and rep["counterexamples"] == []
    assert rep["order_W"] == 192 and rep["order_B"] == 384


def test_contract_alias():
    assert lemma42_check is wdn_generation_check


def test_wdn_generation_bad_n():
    with pytest.raises(GroupError):
        wdn_generation_check(3)


@pytest.mark.slow
def test_wdn_generation_n5():
    assert wdn_generation_check(5)["ok"]


def test_jordan_control_s3():
    S3 = build_group("S", 3)
    hits = subgroups_meeting_all_classes(S3, conjugacy_classes(S3))
    assert [len(H) for H in hits] == [6]


def test_cyclic_control_c4():
    g = SignedPerm.from_images((2, 3, 4, 1))
    C4 = build_group("S", 4)
    C4 = subgroup(C4, [g], "C4")
    classes = conjugacy_classes(C4)
    assert len(classes) == 4
    sq = frozenset({SignedPerm.identity(4), g * g})
    assert not all(sq & c.elements for c in classes)
    assert [len(H) for H in subgroups_meeting_all_classes(C4, classes)] == [4]


# --- Mumford-type group ------------------------------------------------------------------------


def test_mumford_orders():
    prof = element_order_profile(build_group("MUMFORD_PI"))
    assert set(prof) <= {1, 2, 3, 4, 6} and 8 not in prof
    assert sum(prof.values()) == 48
    assert max(element_order_profile(build_group("B", 2))) == 4


def test_mumford_normal_sign_subgroup():
    G = build_group("MUMFORD_PI")
    N = {g for g in G.elements if g.perm == (0, 1, 2)}
    assert len(N) == 8 and G.order // len(N) == 6
    for x in G.elements:
        assert {x * n * x.inverse() for n in N} == N


def test_weight_action():
    rep = weight_action_check()
    assert rep["transitive"] and not rep["full_cycle_present"]
    assert rep["max_cycle"] <= 6
    pts = weight_points(3)
    assert permutation_cycles(point_permutation(SignedPerm.identity(3), pts)) == [1] * 8
    x = SignedPerm((1, 2, 0), (-1, -1, -1))
    assert permutation_cycles(point_permutation(x, pts)) == [6, 2]
