"""Finite geometry and group construction tests."""

from itertools import combinations

import pytest

from ntcodes import geometry
from ntcodes.geometry import (GeometryError, baer_sublines, build_space,
                              group_generators, hermitian_form,
                              hyperoval_setting, line_class, lines,
                              restrict_group, standard_baer_subline,
                              unital_blocks)
from ntcodes.perm import Permutation, bits, mask_of


# ---- point sets ---------------------------------------------------------------

@pytest.mark.parametrize("n,q,count", [(1, 16, 16), (2, 4, 16), (3, 2, 8),
                                       (2, 9, 81)])
def test_affine_point_counts(n, q, count):
    assert len(build_space("affine", n=n, q=q)) == count


@pytest.mark.parametrize("n,q,count", [(2, 9, 10), (3, 4, 21), (3, 2, 7),
                                       (3, 3, 13), (2, 4, 5)])
def test_projective_point_counts(n, q, count):
    space = build_space("projective", n=n, q=q)
    assert len(space) == count == (q ** n - 1) // (q - 1)
    # normalization: first nonzero coordinate is 1, order is lexicographic
    for pt in space.points:
        assert next(c for c in pt if c) == 1
    assert list(space.points) == sorted(space.points)


@pytest.mark.parametrize("q", [2, 3, 4])
def test_hermitian_isotropic_counts(q):
    space = build_space("hermitian_isotropic", q=q)
    assert len(space) == q ** 3 + 1
    F = space.field
    for pt in space.points:
        assert hermitian_form(F, pt, pt) == 0


def test_space_size_cap():
    with pytest.raises(GeometryError):
        build_space("affine", n=4, q=9)


# ---- lines --------------------------------------------------------------------

def test_line_counts():
    ag24 = build_space("affine", n=2, q=4)
    ls = lines(ag24)
    assert len(ls) == 20
    assert all(len(l) == 4 for l in ls)
    pg24 = build_space("projective", n=3, q=4)
    ls2 = lines(pg24)
    assert len(ls2) == 21
    assert all(len(l) == 5 for l in ls2)
    ag1 = build_space("affine", n=1, q=7)
    assert lines(ag1) == [tuple(range(7))]


def test_two_projective_lines_meet_in_one_point():
    space = build_space("projective", n=3, q=3)
    ls = lines(space)
    for a, b in combinations(ls, 2):
        assert len(set(a) & set(b)) == 1


def test_line_class():
    space = build_space("projective", n=3, q=4)
    ls = lines(space)
    # a projective line meets every other line, so 0 never occurs
    assert line_class(space, mask_of(ls[0])) == [1, 5]
    assert line_class(space, 1) == [0, 1]
    _, hmask, _, _ = hyperoval_setting()
    assert line_class(space, hmask) == [0, 2]


# ---- groups -------------------------------------------------------------------

GROUP_ORDERS = [
    (("agammal", {"n": 1, "q": 16}), 960),
    (("agl", {"n": 1, "q": 16}), 240),
    (("agl", {"n": 2, "q": 3}), 9 * 48),
    (("pgl", {"n": 2, "q": 9}), 720),
    (("pgammal", {"n": 2, "q": 9}), 1440),
    (("psl2", {"q": 9}), 360),
    (("pgl", {"n": 3, "q": 4}), 60480),
    (("pgammal", {"n": 3, "q": 4}), 120960),
    (("pgu", {"q": 3}), 6048),
    (("pgammau", {"q": 3}), 12096),
    (("pgammau", {"q": 4}), 249600),
]


@pytest.mark.parametrize("spec,order", GROUP_ORDERS)
def test_group_orders(spec, order):
    family, params = spec
    assert group_generators(family, **params).order() == order


@pytest.mark.parametrize("spec", [("agammal", {"n": 1, "q": 16}),
                                  ("agammal", {"n": 2, "q": 3}),
                                  ("pgammal", {"n": 2, "q": 9}),
                                  ("pgammal", {"n": 3, "q": 2}),
                                  ("pgammau", {"q": 3})])
def test_groups_are_2transitive(spec):
    family, params = spec
    assert group_generators(family, **params).is_2transitive()


def test_generators_are_bijections_on_the_space():
    # perm_from_map raises if a generator image leaves the point set, so a
    # successful build already certifies isotropy preservation; re-check.
    G = group_generators("pgammau", q=3)
    space = build_space("hermitian_isotropic", q=3)
    F = space.field
    iso = set(space.points)
    for g in G.generators:
        assert sorted(g.images) == list(range(28))
        for i, pt in enumerate(space.points):
            assert space.points[g(i)] in iso


def test_unknown_family_rejected():
    with pytest.raises(GeometryError):
        group_generators("sporadic", q=5)


def test_wreath_blocks():
    blocks = geometry.partition_blocks(3, 3)
    G = geometry.wreath_stabilizer(3, 3)
    bset = set(blocks)
    for g in G.generators:
        assert {g.apply_mask(b) for b in blocks} == bset


# ---- derived structures ---------------------------------------------------------

@pytest.mark.parametrize("q,blocks", [(3, 63), (4, 208)])
def test_unital_block_counts(q, blocks):
    code = unital_blocks(q)
    assert code.v == q ** 3 + 1
    assert code.k == q + 1
    assert len(code) == blocks


def test_unital_is_a_2_design():
    code = unital_blocks(3)
    for pair in combinations(range(28), 2):
        pm = mask_of(pair)
        assert sum(1 for b in code.codewords if b & pm == pm) == 1


def test_baer_sublines():
    code = baer_sublines(3)
    assert (code.v, code.k, len(code)) == (10, 4, 30)
    assert not code.degenerate
    code2 = baer_sublines(2)
    assert len(code2) == 10 and code2.degenerate


def test_standard_baer_subline_contains_infinity_zero_one():
    space, mask = standard_baer_subline(3)
    pts = {space.points[i] for i in bits(mask)}
    assert (0, 1) in pts and (1, 0) in pts and (1, 1) in pts


def test_hyperoval_setting():
    space, hmask, ext, externals = hyperoval_setting()
    assert bin(hmask).count("1") == 6
    assert len(externals) == 6
    assert ext == min(externals)
    assert all(not (e & hmask) for e in externals)


def test_restrict_group():
    big = group_generators("pgammal", n=3, q=4)
    _, hmask, ext, _ = hyperoval_setting()
    stab = big.setwise_stabilizer(ext)
    small = restrict_group(stab, ((1 << 21) - 1) ^ ext)
    assert small.degree == 16
    assert small.order() == stab.order() == 5760
    with pytest.raises(GeometryError):
        restrict_group(big, ext)  # not invariant under the full group
