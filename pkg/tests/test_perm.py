"""Permutation group engine tests."""

import math
import random

import pytest
from hypothesis import given, settings, strategies as st

from ntcodes.geometry import group_generators, wreath_stabilizer
from ntcodes.perm import (PermError, PermGroup, Permutation,
                          ResourceCapError, bits, mask_of)


def random_element(G, rng, length=6):
    g = Permutation.identity(G.degree)
    for _ in range(length):
        g = g * rng.choice(G.generators)
    return g


# ---- Permutation basics -----------------------------------------------------

def test_identity_and_inverse():
    p = Permutation.parse("(0 1 2)(3 4)", 6)
    assert (p * p.inverse()).is_identity()
    assert p.inverse().inverse() == p
    assert Permutation.identity(5).is_identity()


def test_parse_and_format_roundtrip():
    for text in ["(0 1 2)(3 4)", "(2 5)(0 3 4)", "()"]:
        p = Permutation.parse(text, 6)
        assert Permutation.parse(repr(p) if p.cycles() else "()", 6) == p


def test_parse_rejects_garbage():
    with pytest.raises(PermError):
        Permutation.parse("0 1 2", 5)
    with pytest.raises(PermError):
        Permutation.parse("(0 1 1)", 5)
    with pytest.raises(PermError):
        Permutation.parse("(0 9)", 5)


def test_non_bijection_rejected():
    with pytest.raises(PermError):
        Permutation([0, 0, 1])
    with pytest.raises(PermError):
        Permutation([0, 3])


def test_apply_mask_matches_pointwise():
    p = Permutation.parse("(0 1 2)(3 4)", 6)
    mask = mask_of([0, 1, 5])
    assert set(bits(p.apply_mask(mask))) == {p(x) for x in [0, 1, 5]}
    assert p.apply_mask(mask_of([0, 1])) == mask_of([1, 2])


def test_composition_convention():
    # x^(p*q) = (x^p)^q on 100 random triples
    rng = random.Random(0)
    for _ in range(100):
        a = list(range(7))
        b = list(range(7))
        rng.shuffle(a)
        rng.shuffle(b)
        p, q = Permutation(a), Permutation(b)
        x = rng.randrange(7)
        assert (p * q)(x) == q(p(x))
        m = rng.getrandbits(7)
        assert (p * q).apply_mask(m) == q.apply_mask(p.apply_mask(m))


# ---- orders against closed forms ---------------------------------------------

@pytest.mark.parametrize("n", range(1, 9))
def test_symmetric_order(n):
    assert PermGroup.symmetric(n).order() == math.factorial(n)


@pytest.mark.parametrize("n", range(3, 9))
def test_alternating_order(n):
    assert PermGroup.alternating(n).order() == math.factorial(n) // 2


@pytest.mark.parametrize("a,b", [(2, 2), (3, 2), (2, 3), (3, 3), (4, 3),
                                 (2, 5), (3, 4)])
def test_wreath_order(a, b):
    expected = math.factorial(a) ** b * math.factorial(b)
    assert wreath_stabilizer(a, b).order() == expected


@pytest.mark.parametrize("q,d", [(3, 1), (4, 1)])
def test_unitary_order_closed_form(q, d):
    G = group_generators("pgu", q=q)
    assert G.order() * d == q ** 3 * (q ** 3 + 1) * (q * q - 1)


def test_trivial_group():
    G = PermGroup.trivial(5)
    assert G.order() == 1
    assert list(G.elements()) == [Permutation.identity(5)]


# ---- membership sifting --------------------------------------------------------

def test_sifting_soundness():
    rng = random.Random(1)
    pool = [PermGroup.symmetric(6), PermGroup.alternating(7),
            wreath_stabilizer(3, 3), group_generators("pgl", n=2, q=9)]
    for G in pool:
        for _ in range(10):
            g = Permutation.identity(G.degree)
            for _ in range(rng.randint(1, 3)):
                g = g * rng.choice(G.generators)
            assert g in G
    # permutations outside a proper subgroup must fail
    A7 = PermGroup.alternating(7)
    odd = Permutation.from_cycles(7, [(0, 1)])
    assert odd not in A7
    W = wreath_stabilizer(3, 3)
    across = Permutation.from_cycles(9, [(0, 3)])
    assert across not in W


def test_elements_enumeration_matches_order():
    for G in (PermGroup.symmetric(5), wreath_stabilizer(2, 3),
              PermGroup.alternating(5)):
        els = list(G.elements())
        assert len(els) == G.order()
        assert len({e.images for e in els}) == G.order()
        assert all(e in G for e in els)


def test_elements_cap():
    with pytest.raises(ResourceCapError):
        list(PermGroup.symmetric(12).elements(cap=10 ** 6))


# ---- orbits and stabilizers ---------------------------------------------------

def test_orbit_basics():
    assert PermGroup.symmetric(4).orbit(0) == {0, 1, 2, 3}
    G = PermGroup(4, [Permutation.from_cycles(4, [(0, 1)])])
    assert G.orbit(2) == {2}
    from ntcodes.geometry import subset_stabilizer
    S = subset_stabilizer(9, range(3))
    assert S.orbit(0) == {0, 1, 2}


def test_point_stabilizer():
    S4 = PermGroup.symmetric(4)
    st = S4.point_stabilizer(0)
    assert st.order() == 6
    assert all(g(0) == 0 for g in st.generators)
    psu = group_generators("pgu", q=3)
    assert psu.point_stabilizer(0).order() == 6048 // 28


def test_setwise_stabilizer():
    S4 = PermGroup.symmetric(4)
    st = S4.setwise_stabilizer(mask_of([0, 1]))
    assert st.order() == 4
    full = (1 << 4) - 1
    assert S4.setwise_stabilizer(full).order() == 24


def test_orbit_stabilizer_identity_random():
    rng = random.Random(42)
    pool = [PermGroup.symmetric(7), PermGroup.alternating(6),
            wreath_stabilizer(3, 3), wreath_stabilizer(2, 4),
            group_generators("agammal", n=1, q=16),
            group_generators("pgl", n=2, q=9)]
    for _ in range(100):
        G = rng.choice(pool)
        k = rng.randint(1, G.degree - 1)
        mask = mask_of(rng.sample(range(G.degree), k))
        orb = G.subset_orbit(mask)
        stab = G.setwise_stabilizer(mask)
        assert len(orb) * stab.order() == G.order()


def test_subset_orbit_schreier_words():
    G = wreath_stabilizer(3, 3)
    mask = mask_of([0, 1, 3])
    orb = G.subset_orbit(mask)
    for m in orb.members:
        g = orb.transversal(m)
        assert g.apply_mask(mask) == m
        assert g in G


def test_subset_orbit_cap():
    with pytest.raises(ResourceCapError):
        PermGroup.symmetric(20).subset_orbit(mask_of(range(10)), cap=100)


# ---- transitivity tests ---------------------------------------------------------

def test_transitive_on_product():
    from ntcodes.geometry import subset_stabilizer
    G = subset_stabilizer(4, [0, 1])
    assert G.is_transitive_on_product({0, 1}, {2, 3})
    T = PermGroup.trivial(4)
    assert not T.is_transitive_on_product({0, 1}, {2, 3})
    assert T.is_transitive_on_product({0}, {1})


def test_transitive_on_product_conjugation_invariant():
    rng = random.Random(3)
    from ntcodes.geometry import subset_stabilizer
    G = subset_stabilizer(6, [0, 1, 2])
    A, B = {0, 1, 2}, {3, 4, 5}
    base = G.is_transitive_on_product(A, B)
    for _ in range(10):
        imgs = list(range(6))
        rng.shuffle(imgs)
        c = Permutation(imgs)
        conj = PermGroup(6, [c.inverse() * g * c for g in G.generators])
        assert conj.is_transitive_on_product(
            {c(x) for x in A}, {c(x) for x in B}) == base


def test_primitivity_classification():
    assert PermGroup.symmetric(5).primitivity()[0] == "primitive"
    status, block = wreath_stabilizer(3, 3).primitivity()
    assert status == "imprimitive"
    assert len(block) == 3
    # witness block system must partition the domain into G-translates
    W = wreath_stabilizer(3, 3)
    system = W.block_system(block)
    assert sorted(len(s) for s in system) == [3, 3, 3]
    from ntcodes.geometry import subset_stabilizer
    assert subset_stabilizer(6, [0, 1]).primitivity()[0] == "intransitive"
    # a regular cyclic group of prime order is primitive
    C5 = PermGroup(5, [Permutation.from_cycles(5, [tuple(range(5))])])
    assert C5.primitivity()[0] == "primitive"


def test_2transitivity():
    assert PermGroup.symmetric(3).is_2transitive()
    assert not wreath_stabilizer(3, 3).is_2transitive()
    assert group_generators("agammal", n=1, q=16).is_2transitive()
    assert not PermGroup.trivial(3).is_2transitive()


def test_bsgs_invariants():
    for G in (PermGroup.symmetric(6), wreath_stabilizer(3, 3),
              group_generators("pgu", q=3)):
        base, _, transversals = G.bsgs()
        prod = 1
        for tr in transversals:
            prod *= len(tr)
        assert prod == G.order()
        assert all(g in G for g in G.generators)


@settings(max_examples=50)
@given(st.permutations(list(range(6))), st.permutations(list(range(6))))
def test_product_inverse_property(a, b):
    p, q = Permutation(a), Permutation(b)
    assert (p * q).inverse() == q.inverse() * p.inverse()
    assert p.order() >= 1
