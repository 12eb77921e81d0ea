"""Construction catalog, transitivity property checkers, and the exhaustive
desk-scale classification search.

Every family builds a (Code, PermGroup) pair: the code in J(v,k) and the
acting group used to verify its properties.  All checks are exact orbit
computations; resource caps surface as "not computed" (None), never as a
silently false flag.
"""

from functools import reduce
from itertools import combinations
from math import comb, gcd

from . import geometry, johnson
from .johnson import Code, jdistance, min_distance, neighbour_set
from .perm import (DEFAULT_ORBIT_CAP, PermGroup, Permutation,
                   ResourceCapError, bits, mask_of)


class ConstructionError(ValueError):
    pass


# ---------------------------------------------------------------------------
# constructions
# ---------------------------------------------------------------------------

def build_intransitive(v, u, k):
    """All k-subsets of a u-set (u>k), the u-set itself (u=k), or all
    k-subsets containing it (u<k); group = Stab(U) = Sym(U) x Sym(rest)."""
    if not (0 < u < v) or not (2 <= k <= v - 2):
        raise ConstructionError("need 0 < u < v and 2 <= k <= v-2")
    umask = mask_of(range(u))
    if u > k:
        words = [mask_of(c) for c in combinations(range(u), k)]
        variant = "a"
    elif u == k:
        words = [umask]
        variant = "b"
    else:
        words = [umask | mask_of(c) for c in combinations(range(u, v), k - u)]
        variant = "c"
    G = geometry.subset_stabilizer(v, range(u))
    code = Code(v, k, words, name=f"intransitive(v={v},u={u},k={k})",
                params={"v": v, "u": u, "k": k, "variant": variant})
    return code, G


def utype_target(a, b, line, k=None, c=None):
    """The part-intersection type for one line of the type table, and k."""
    v = a * b
    if line == 1:
        if k is None or not 2 <= k <= a:
            raise ConstructionError("line 1 needs 2 <= k <= a")
        return (k,), k
    if line == 2:
        if k is None or not (v - a + 1 <= k <= v - 2):
            raise ConstructionError("line 2 needs v-a < k <= v-2")
        return tuple(sorted((k - v + a,) + (a,) * (b - 1))), k
    if line == 3:
        if k is None or not 2 <= k <= b:
            raise ConstructionError("line 3 needs 2 <= k <= b")
        return (1,) * k, k
    if line == 4:
        if k is None or not (v - b <= k <= v - 2) or k - v + b < 0:
            raise ConstructionError("line 4 needs v-b <= k <= v-2")
        return tuple(sorted((a - 1,) * (v - k) + (a,) * (b - v + k))), k
    if line == 5:
        if c is None or not 1 < c <= a - 1:
            raise ConstructionError("line 5 needs 1 < c <= a-1")
        return (c,) * b, c * b
    if line == 6:
        if b != 2 or a < 3 or k is None or k % 2 == 0:
            raise ConstructionError("line 6 needs b=2, a>=3, k odd")
        return ((k - 1) // 2, (k + 1) // 2), k
    if line == 7:
        if a != 2 or b < 3 or k is None or k % 2 == 0:
            raise ConstructionError("line 7 needs a=2, b>=3, k odd")
        return tuple(sorted((1,) + (2,) * ((k - 1) // 2))), k
    raise ConstructionError(f"no type-table line {line}")


def utype_gamma1_target(a, b, line, k=None, c=None):
    """The expected single type of the neighbour set, zero entries dropped."""
    v = a * b
    if line == 1:
        raw = (1, k - 1)
    elif line == 2:
        raw = (k - v + a + 1, a - 1) + (a,) * (b - 2)
    elif line == 3:
        raw = (1,) * (k - 2) + (2,)
    elif line == 4:
        raw = (a - 2,) + (a - 1,) * (v - k - 2) + (a,) * (b - v + k + 1)
    elif line == 5:
        raw = (c - 1, c + 1) + (c,) * (b - 2)
    elif line == 6:
        raw = ((k - 3) // 2, (k + 3) // 2)
    elif line == 7:
        raw = (1, 1, 1) + (2,) * ((k - 3) // 2)
    else:
        raise ConstructionError(f"no type-table line {line}")
    return tuple(sorted(x for x in raw if x > 0))


def build_utype(a, b, line, k=None, c=None):
    """All k-subsets of one fixed part-intersection type; group = the
    partition stabilizer S_a wr S_b."""
    if a < 2 or b < 2:
        raise ConstructionError("need a > 1 and b > 1")
    target, k = utype_target(a, b, line, k=k, c=c)
    v = a * b
    parts = geometry.partition_blocks(a, b)
    words = [m for m in johnson.all_ksubsets(v, k)
             if johnson.u_type(m, parts) == target]
    if not words:
        raise ConstructionError("type class is empty")
    G = geometry.wreath_stabilizer(a, b)
    code = Code(v, k, words,
                name=f"utype(a={a},b={b},line={line},k={k})",
                params={"a": a, "b": b, "line": line, "k": k, "c": c})
    return code, G


def blowup_code(a, gamma0):
    """Blow each codeword of a code in J(b,k0) up to a union of a-blocks."""
    if a < 2:
        raise ConstructionError("need a >= 2")
    b = gamma0.v
    parts = geometry.partition_blocks(a, b)
    words = []
    for w0 in gamma0.codewords:
        m = 0
        for i in bits(w0):
            m |= parts[i]
        words.append(m)
    return Code(a * b, a * gamma0.k, words,
                name=f"blowup(a={a},{gamma0.name or 'inner'})",
                params={"a": a, "b": b, "k0": gamma0.k})


def build_blowup(a, b, k0):
    """Blow-up of the full vertex set of J(b,k0); group = S_a wr S_b."""
    if b < 4 or not 1 <= k0 <= b - 1:
        raise ConstructionError("need b >= 4 and 1 <= k0 <= b-1")
    gamma0 = Code(b, k0, johnson.all_ksubsets(b, k0), name=f"J({b},{k0})")
    return blowup_code(a, gamma0), geometry.wreath_stabilizer(a, b)


def build_affine_subspace(n, q, s):
    """All affine s-dimensional subspaces of AG(n,q); group = AGammaL(n,q)."""
    if not 1 <= s < n:
        raise ConstructionError("need 1 <= s < n")
    space = geometry.build_space("affine", n=n, q=q)
    rep = mask_of(space.index[pt] for pt in space.points
                  if all(e == 0 for e in pt[s:]))
    G = geometry.group_generators("agammal", n=n, q=q)
    orb = G.subset_orbit(rep)
    code = Code(len(space), q ** s, orb.members,
                name=f"affine_subspace(n={n},q={q},s={s})",
                params={"n": n, "q": q, "s": s})
    return code, G


def build_subfield_line():
    """Orbit of the order-4 subfield of GF(16) under AGammaL(1,16)."""
    from .gf import GF
    F = GF(16)
    rep = mask_of(F.subfield_elements(2))
    G = geometry.group_generators("agammal", n=1, q=16)
    orb = G.subset_orbit(rep)
    code = Code(16, 4, orb.members, name="subfield_line",
                params={"q": 16, "subfield": 4})
    return code, G


def build_hyperoval_ag24():
    """Orbit of the PG(2,4) hyperoval inside the 16 points off an external
    line, under the stabilizer of that line in PGammaL(3,4)."""
    space, hmask, ext, _ = geometry.hyperoval_setting()
    big = geometry.group_generators("pgammal", n=3, q=4)
    line_stab = big.setwise_stabilizer(ext)
    full = (1 << len(space)) - 1
    G = geometry.restrict_group(line_stab, full ^ ext)
    pts = [i for i in range(len(space)) if not (ext >> i) & 1]
    relabel = {p: i for i, p in enumerate(pts)}
    rep = mask_of(relabel[p] for p in bits(hmask))
    orb = G.subset_orbit(rep)
    code = Code(16, 6, orb.members, name="hyperoval_ag24",
                params={"q": 4})
    return code, G


def build_projective_subspace(n, q, s):
    """All (s-1)-dimensional subspaces of PG(n-1,q); group = PGammaL(n,q)."""
    if not 1 <= s < n:
        raise ConstructionError("need 1 <= s < n")
    space = geometry.build_space("projective", n=n, q=q)
    rep = mask_of(space.index[pt] for pt in space.points
                  if all(e == 0 for e in pt[s:]))
    G = geometry.group_generators("pgammal", n=n, q=q)
    orb = G.subset_orbit(rep)
    code = Code(len(space), (q ** s - 1) // (q - 1), orb.members,
                name=f"projective_subspace(n={n},q={q},s={s})",
                params={"n": n, "q": q, "s": s})
    return code, G


_BAER_NOTE = ("pairwise subline intersections of size at most 1 would give "
              "minimum distance q0; the computed minimum distance is "
              "reported instead and may be smaller (for q0=3 it is 2, since "
              "two blocks of the 3-(10,4,1) design can share 2 points)")


def build_baer_subline(q0):
    code = geometry.baer_sublines(q0)
    code.notes.append(_BAER_NOTE)
    G = geometry.group_generators("pgammal", n=2, q=q0 * q0)
    return code, G


def build_unital(q):
    code = geometry.unital_blocks(q)
    G = geometry.group_generators("pgammau", q=q)
    return code, G


def build_ovoid_circles():
    """The 30 'circles' on a 10-point ovoid: realized as the PGL(2,9)-orbit
    of a Baer subline of PG(1,9), re-checked as a 3-(10,4,1) design."""
    space, rep = geometry.standard_baer_subline(3)
    G = geometry.group_generators("pgl", n=2, q=9)
    orb = G.subset_orbit(rep)
    words = list(orb.members)
    for triple in combinations(range(10), 3):
        tm = mask_of(triple)
        if sum(1 for w in words if w & tm == tm) != 1:
            raise ConstructionError("circle orbit is not a 3-(10,4,1) design")
    code = Code(10, 4, words, name="ovoid_circles", params={},
                notes=[_BAER_NOTE])
    return code, G


def build_psl2_orbit(q):
    """One of the two PSL(2,q)-orbits on 3-subsets of PG(1,q), q = 1 mod 4."""
    if q % 4 != 1 or q <= 5:
        raise ConstructionError("need q = 1 mod 4 and q > 5")
    space = geometry.build_space("projective", n=2, q=q)
    rep = mask_of([space.index[(0, 1)], space.index[(1, 0)],
                   space.index[(1, 1)]])
    G = geometry.group_generators("psl2", q=q)
    orb = G.subset_orbit(rep)
    if 2 * len(orb) != comb(q + 1, 3):
        raise ConstructionError("expected two equal orbits on 3-subsets")
    code = Code(q + 1, 3, orb.members, name=f"psl2_orbit(q={q})",
                params={"q": q})
    return code, G


def build_j93():
    """The J(9,3) union code: the 27 transversals of a 3x3 partition plus the
    3 parts; group = S_3 wr S_3 (transitive on the neighbour set only)."""
    parts = geometry.partition_blocks(3, 3)
    words = list(parts)
    words += [m for m in johnson.all_ksubsets(9, 3)
              if johnson.u_type(m, parts) == (1, 1, 1)]
    G = geometry.wreath_stabilizer(3, 3)
    code = Code(9, 3, words, name="j93", params={})
    return code, G


def _elements_by_order(G, n, cap=DEFAULT_ORBIT_CAP):
    return [g for g in G.elements(cap=cap) if _perm_order(g) == n]


def _perm_order(g):
    from math import lcm
    return reduce(lcm, (len(c) for c in g.cycles()), 1)


def build_unitary_bases(max_candidates=200):
    """The 63 'bases' of the 28-point unitary geometry for q=3: k=12 subsets
    whose stabilizer normalizes a Z4 x Z4 subgroup of PSU(3,3).

    Deterministic search: enumerate PSU(3,3) in chain-traversal order, take
    the first commuting pair of order-4 elements generating an abelian group
    of order 16 whose normalizer in PGammaU(3,3) has point-orbit sizes
    {12,16}; the 12-orbit is the representative codeword.
    """
    G = geometry.group_generators("pgammau", q=3)
    T = geometry.group_generators("pgu", q=3)
    order4 = _elements_by_order(T, 4)
    big = list(G.elements())
    tried = 0
    for i, g in enumerate(order4):
        gpow = {g.images}
        h0 = g
        for _ in range(2):
            h0 = h0 * g
            gpow.add(h0.images)
        for h in order4[i + 1:]:
            if h.images in gpow or (g * h).images != (h * g).images:
                continue
            E = set()
            gi = Permutation.identity(G.degree)
            for _ in range(4):
                hj = gi
                for _ in range(4):
                    E.add(hj.images)
                    hj = hj * h
                gi = gi * g
            if len(E) != 16:
                continue
            tried += 1
            if tried > max_candidates:
                raise ConstructionError(
                    "no Z4 x Z4 with normalizer orbit sizes {12,16} found")
            eperms = [Permutation(im, check=False) for im in sorted(E)]
            norm_gens = [x for x in big
                         if all((x.inverse() * e * x).images in E
                                for e in eperms)]
            N = PermGroup(G.degree, [g2 for g2 in norm_gens
                                     if not g2.is_identity()])
            sizes = sorted(len(o) for o in N.orbits())
            if sizes != [12, 16]:
                continue
            rep = mask_of(min((o for o in N.orbits()), key=len))
            orb = G.subset_orbit(rep)
            code = Code(28, 12, orb.members, name="unitary_bases",
                        params={"q": 3})
            return code, G
    raise ConstructionError(
        "no Z4 x Z4 with normalizer orbit sizes {12,16} found")


_FAMILIES = {
    "intransitive": build_intransitive,
    "utype": build_utype,
    "blowup": build_blowup,
    "affine_subspace": build_affine_subspace,
    "subfield_line": build_subfield_line,
    "hyperoval_ag24": build_hyperoval_ag24,
    "projective_subspace": build_projective_subspace,
    "baer_subline": build_baer_subline,
    "unital": build_unital,
    "ovoid_circles": build_ovoid_circles,
    "psl2_orbit": build_psl2_orbit,
    "j93": build_j93,
    "unitary_bases": build_unitary_bases,
}

FAMILY_PARAMS = {
    "intransitive": "v, u, k (variant a/b/c chosen by u vs k)",
    "utype": "a, b, line (1-7), k or c",
    "blowup": "a, b, k0 (full inner vertex set; b >= 4)",
    "affine_subspace": "n, q, s (1 <= s < n)",
    "subfield_line": "none (fixed: order-4 subfield of GF(16))",
    "hyperoval_ag24": "none (fixed: PG(2,4) hyperoval off an external line)",
    "projective_subspace": "n, q, s (1 <= s < n)",
    "baer_subline": "q0 in {2,3} (q0=2 is degenerate)",
    "unital": "q in {3,4,5}",
    "ovoid_circles": "none (fixed: 30 circles on a 10-point ovoid)",
    "psl2_orbit": "q = 1 mod 4, q > 5",
    "j93": "none (fixed: 27 transversals + 3 parts in J(9,3))",
    "unitary_bases": "none (fixed: 63 12-subsets of 28 points)",
}

FAMILY_DESCRIPTIONS = {
    "intransitive": "k-subsets of, equal to, or containing a fixed u-set",
    "utype": "all k-subsets with one fixed part-intersection type",
    "blowup": "unions of whole parts indexed by a smaller code",
    "affine_subspace": "affine s-dimensional subspaces of AG(n,q)",
    "subfield_line": "AGammaL(1,16)-orbit of the GF(4) subfield",
    "hyperoval_ag24": "hyperoval orbit in the 16 points off an external line",
    "projective_subspace": "(s-1)-dimensional subspaces of PG(n-1,q)",
    "baer_subline": "PGammaL(2,q0^2)-orbit of the standard Baer subline",
    "unital": "blocks of the classical unital on q^3+1 isotropic points",
    "ovoid_circles": "blocks of the 3-(10,4,1) design of ovoid circles",
    "psl2_orbit": "one PSL(2,q)-orbit on 3-subsets of the projective line",
    "j93": "transversals plus parts of a 3x3 partition of 9 points",
    "unitary_bases": "normalizer-defined 12-subsets in the unitary geometry",
}

_BUILD_CACHE = {}


def build(family, **params):
    """Memoized (Code, PermGroup) construction by family name."""
    if family not in _FAMILIES:
        raise ConstructionError(f"unknown family {family!r}")
    key = (family, tuple(sorted(params.items())))
    if key not in _BUILD_CACHE:
        _BUILD_CACHE[key] = _FAMILIES[family](**params)
    return _BUILD_CACHE[key]


# Catalog entries covered by the theorem-consistency suite.
CATALOG = [
    ("intransitive", {"v": 8, "u": 5, "k": 3}),
    ("intransitive", {"v": 8, "u": 3, "k": 3}),
    ("intransitive", {"v": 9, "u": 2, "k": 4}),
    ("utype", {"a": 3, "b": 2, "line": 1, "k": 2}),
    ("utype", {"a": 3, "b": 2, "line": 1, "k": 3}),
    ("utype", {"a": 3, "b": 2, "line": 2, "k": 4}),
    ("utype", {"a": 2, "b": 3, "line": 3, "k": 3}),
    ("utype", {"a": 2, "b": 3, "line": 4, "k": 4}),
    ("utype", {"a": 3, "b": 3, "line": 5, "c": 2}),
    ("utype", {"a": 3, "b": 2, "line": 6, "k": 3}),
    ("utype", {"a": 2, "b": 4, "line": 7, "k": 3}),
    ("blowup", {"a": 2, "b": 5, "k0": 2}),
    ("blowup", {"a": 3, "b": 4, "k0": 2}),
    ("affine_subspace", {"n": 3, "q": 2, "s": 2}),
    ("affine_subspace", {"n": 2, "q": 4, "s": 1}),
    ("subfield_line", {}),
    ("hyperoval_ag24", {}),
    ("projective_subspace", {"n": 3, "q": 2, "s": 2}),
    ("projective_subspace", {"n": 3, "q": 3, "s": 2}),
    ("baer_subline", {"q0": 3}),
    ("unital", {"q": 3}),
    ("ovoid_circles", {}),
    ("psl2_orbit", {"q": 9}),
    ("j93", {}),
    ("unitary_bases", {}),
]


# ---------------------------------------------------------------------------
# property checking
# ---------------------------------------------------------------------------

def _transitive_with_witness(G, masks):
    """(True, None) or (False, (reached_rep, unreached)) on a mask set."""
    masks = set(masks)
    start = min(masks)
    seen = {start}
    queue = [start]
    for m in queue:
        for g in G.generators:
            im = g.apply_mask(m)
            if im not in masks:
                return False, (start, im)
            if im not in seen:
                seen.add(im)
                queue.append(im)
    if len(seen) == len(masks):
        return True, None
    return False, (start, min(masks - seen))


def _incidence_transitive(code, G, gamma1, cap=DEFAULT_ORBIT_CAP):
    """Single G-orbit on adjacent (codeword, neighbour) pairs.

    Uses the explicit pair orbit when the incidence set is small, else the
    equivalent test via the stabilizer of one codeword (both require the
    code itself to be a single orbit, checked by the caller).
    """
    if len(code) * code.k * (code.v - code.k) <= cap:
        total = 0
        start = None
        for w in code.codewords:
            for nb in sorted(johnson.vertex_neighbours(w, code.v)):
                if nb in gamma1:
                    total += 1
                    if start is None:
                        start = (w, nb)
        if start is None:
            return True, None
        seen = {start}
        queue = [start]
        for (cw, nb) in queue:
            for g in G.generators:
                pair = (g.apply_mask(cw), g.apply_mask(nb))
                if pair not in seen:
                    seen.add(pair)
                    queue.append(pair)
        if len(seen) == total:
            return True, None
        return False, ("incidence orbit covers", len(seen), "of", total)
    gamma = code.codewords[0]
    stab = G.setwise_stabilizer(gamma, cap=cap)
    local = johnson.vertex_neighbours(gamma, code.v) & gamma1
    if not local:
        return True, None
    return _transitive_with_witness(stab, local)


def _strongly_incidence_transitive(code, G, cap=DEFAULT_ORBIT_CAP):
    """G_gamma transitive on (point of gamma) x (point outside gamma)."""
    gamma = code.codewords[0]
    stab = G.setwise_stabilizer(gamma, cap=cap)
    inside = list(bits(gamma))
    outside = [x for x in range(code.v) if not (gamma >> x) & 1]
    ok = stab.is_transitive_on_product(inside, outside)
    return ok, None if ok else ("pair action on gamma x complement splits",)


class PropertyReport:
    """Verified facts about a (Code, PermGroup) pair.

    Flags are True, False, or None when a resource cap prevented the
    computation.  Every False flag carries a witness.
    """

    FLAG_ORDER = ("code_transitive", "neighbour_transitive",
                  "incidence_transitive", "strongly_incidence_transitive",
                  "completely_transitive", "completely_regular")

    def __init__(self, code, group_order, flags, witnesses, delta, gamma1_size,
                 group_facts, intersection_numbers=None, notes=None):
        self.code = code
        self.group_order = group_order
        self.flags = flags
        self.witnesses = witnesses
        self.delta = delta
        self.gamma1_size = gamma1_size
        self.group_facts = group_facts
        self.intersection_numbers = intersection_numbers
        self.notes = list(notes or [])

    def as_dict(self):
        d = {
            "v": self.code.v,
            "k": self.code.k,
            "name": self.code.name,
            "code_size": len(self.code),
            "neighbour_set_size": self.gamma1_size,
            "min_distance": self.delta,
            "degenerate": self.code.degenerate,
            "group_order": self.group_order,
        }
        for key in ("transitive_on_V", "primitive_on_V", "two_transitive_on_V"):
            d[key] = self.group_facts[key]
        for flag in self.FLAG_ORDER:
            d[flag] = self.flags[flag]
        d["witnesses"] = {k: list(map(str, w))
                          for k, w in self.witnesses.items()}
        if self.intersection_numbers is not None:
            d["intersection_numbers"] = self.intersection_numbers
        d["notes"] = self.notes
        return d


def check_properties(code, G, cap_orbit=DEFAULT_ORBIT_CAP,
                     cap_partition=johnson.DEFAULT_PARTITION_CAP):
    if G.degree != code.v:
        raise ValueError("group degree does not match the code's point set")
    for g in G.generators:
        for w in code.codewords:
            if g.apply_mask(w) not in code:
                raise ValueError(
                    "group does not preserve the code (not an automorphism "
                    f"group: generator moves a codeword out of the code)")
    flags = {}
    witnesses = {}
    notes = list(code.notes)
    gamma1 = neighbour_set(code)
    delta = min_distance(code)

    ok, wit = _transitive_with_witness(G, code.codewords)
    flags["code_transitive"] = ok
    if not ok:
        witnesses["code_transitive"] = wit

    if flags["code_transitive"] and gamma1:
        ok, wit = _transitive_with_witness(G, gamma1)
    elif not gamma1:
        ok, wit = flags["code_transitive"], witnesses.get("code_transitive")
    else:
        ok, wit = False, witnesses["code_transitive"]
    flags["neighbour_transitive"] = ok
    if not ok:
        witnesses["neighbour_transitive"] = wit or ("code orbit splits",)

    if flags["code_transitive"]:
        ok, wit = _incidence_transitive(code, G, gamma1, cap=cap_orbit)
    else:
        ok, wit = False, ("code is not a single orbit",)
    flags["incidence_transitive"] = ok
    if not ok:
        witnesses["incidence_transitive"] = wit

    if flags["code_transitive"]:
        ok, wit = _strongly_incidence_transitive(code, G, cap=cap_orbit)
    else:
        ok, wit = False, ("code is not a single orbit",)
    flags["strongly_incidence_transitive"] = ok
    if not ok:
        witnesses["strongly_incidence_transitive"] = wit

    intersection_numbers = None
    try:
        part = johnson.distance_partition(code, cap=cap_partition)
        ok = True
        wit = None
        for cell in part.cells:
            cok, cwit = _transitive_with_witness(G, cell)
            if not cok:
                ok, wit = False, cwit
                break
        flags["completely_transitive"] = ok
        if not ok:
            witnesses["completely_transitive"] = wit
        creg, detail = johnson.is_completely_regular(code, cap=cap_partition)
        flags["completely_regular"] = creg
        if creg:
            intersection_numbers = detail
        else:
            witnesses["completely_regular"] = detail
    except ResourceCapError as exc:
        flags["completely_transitive"] = None
        flags["completely_regular"] = None
        notes.append(f"distance partition not computed: {exc}")

    prim, _ = G.primitivity()
    group_facts = {
        "transitive_on_V": G.is_transitive(),
        "primitive_on_V": prim == "primitive",
        "two_transitive_on_V": G.is_2transitive(),
    }
    return PropertyReport(code, G.order(), flags, witnesses, delta,
                          len(gamma1), group_facts,
                          intersection_numbers=intersection_numbers,
                          notes=notes)


def delta_block(u, code):
    """Intersection of all codewords containing the point u."""
    words = [w for w in code.codewords if (w >> u) & 1]
    if not words:
        raise ValueError(f"point {u} lies in no codeword")
    out = words[0]
    for w in words[1:]:
        out &= w
    return out


def check_theorem_consistency(code, G=None, report=None):
    """Consistency of one report with the structural implications.

    Checks, treating an undefined minimum distance (singleton code) as
    satisfying every lower bound:
      1. strongly incidence-transitive iff incidence-transitive and
         delta >= 2;
      2. delta >= 3 and neighbour-transitive implies strongly
         incidence-transitive;
      3. primitive on points and strongly incidence-transitive implies
         2-transitive on points;
      4. the flag chain strongly => incidence => neighbour => code-transitive
         and completely transitive => neighbour-transitive.
    Returns (passed, failures); a failure names the violated implication.
    """
    if report is None:
        report = check_properties(code, G)
    f = report.flags
    delta = report.delta
    d_ge = lambda c: delta is None or delta >= c
    failures = []
    strongly = f["strongly_incidence_transitive"]
    if strongly != (f["incidence_transitive"] and d_ge(2)):
        failures.append(
            "strongly <=> (incidence-transitive and delta >= 2) violated")
    if d_ge(3) and f["neighbour_transitive"] and not strongly:
        failures.append(
            "delta >= 3 and neighbour-transitive must imply strongly")
    if (report.group_facts["primitive_on_V"] and strongly
            and not report.group_facts["two_transitive_on_V"]):
        failures.append(
            "primitive and strongly must imply 2-transitive on points")
    chain = ("strongly_incidence_transitive", "incidence_transitive",
             "neighbour_transitive", "code_transitive")
    for a, b in zip(chain, chain[1:]):
        if f[a] and not f[b]:
            failures.append(f"{a} must imply {b}")
    if f["completely_transitive"] and not f["neighbour_transitive"]:
        failures.append("completely transitive must imply neighbour-transitive")
    return not failures, failures


# ---------------------------------------------------------------------------
# classification search
# ---------------------------------------------------------------------------

def _pred_code_transitive(code, G):
    return _transitive_with_witness(G, code.codewords)[0]


def _pred_gamma1_transitive(code, G):
    gamma1 = neighbour_set(code)
    if not gamma1:
        return False
    return _transitive_with_witness(G, gamma1)[0]


def _pred_neighbour_transitive(code, G):
    return _pred_code_transitive(code, G) and _pred_gamma1_transitive(code, G)


def _pred_incidence_transitive(code, G):
    if not _pred_code_transitive(code, G):
        return False
    return _incidence_transitive(code, G, neighbour_set(code))[0]


def _pred_strong(code, G):
    if not _pred_code_transitive(code, G):
        return False
    return _strongly_incidence_transitive(code, G)[0]


def _pred_completely_regular(code, G):
    return johnson.is_completely_regular(code)[0]


def _pred_completely_transitive(code, G):
    part = johnson.distance_partition(code)
    return all(_transitive_with_witness(G, cell)[0] for cell in part.cells)


PREDICATES = {
    "code_transitive": _pred_code_transitive,
    "neighbour_transitive": _pred_neighbour_transitive,
    "gamma1_transitive": _pred_gamma1_transitive,
    "incidence_transitive": _pred_incidence_transitive,
    "strongly_incidence_transitive": _pred_strong,
    "strong": _pred_strong,
    "completely_regular": _pred_completely_regular,
    "completely_transitive": _pred_completely_transitive,
}


def subset_orbits(G, k, cap=DEFAULT_ORBIT_CAP):
    """All G-orbits on k-subsets, each as a sorted tuple of masks."""
    total = comb(G.degree, k)
    if total > cap:
        raise ResourceCapError(f"C({G.degree},{k}) = {total} exceeds cap {cap}")
    rest = set(johnson.all_ksubsets(G.degree, k))
    out = []
    while rest:
        orb = G.subset_orbit(min(rest), cap=cap)
        members = sorted(orb.members)
        out.append(tuple(members))
        rest.difference_update(members)
    return out


def classify_search(G, k, predicate, max_union=1, cap=DEFAULT_ORBIT_CAP,
                    include_degenerate=False):
    """All union-of-orbit codes on which the named predicate holds.

    Scans every union of at most max_union G-orbits on k-subsets (default:
    single orbits, which are automatically code-transitive) and keeps the
    unions satisfying the predicate.  The full vertex set is skipped unless
    include_degenerate is set, since a code must be a proper subset.
    """
    if predicate not in PREDICATES:
        raise ValueError(f"unknown predicate {predicate!r}; choose from "
                         + ", ".join(sorted(PREDICATES)))
    if max_union > 3:
        raise ValueError("unions of more than 3 orbits are not supported")
    pred = PREDICATES[predicate]
    orbits = subset_orbits(G, k, cap=cap)
    total = comb(G.degree, k)
    found = []
    for r in range(1, max_union + 1):
        for chosen in combinations(range(len(orbits)), r):
            words = []
            for i in chosen:
                words.extend(orbits[i])
            if len(words) == total and not include_degenerate:
                continue
            code = Code(G.degree, k, words,
                        name=f"search(k={k},orbits={list(chosen)})")
            if pred(code, G):
                found.append(code)
    found.sort(key=lambda c: (len(c), c.codewords))
    return found
