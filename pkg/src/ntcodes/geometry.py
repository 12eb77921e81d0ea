"""Finite geometries and the 2-transitive groups acting on them.

Point sets: AG(n,q) (all vectors of F_q^n), PG(n-1,q) (1-spaces, normalized
so the first nonzero coordinate is 1, indexed lexicographically), and the
Hermitian isotropic points of PG(2,q^2) under the form
phi(x,y) = x1*conj(y3) + x3*conj(y1) + x2*conj(y2).

Groups are emitted as permutations of the point indices: linear parts from
elementary transvections and a diagonal torus element, translations for the
affine case, a Weyl element and Frobenius where needed.
"""

from itertools import product

from .gf import GF, FieldError
from .johnson import Code
from .perm import PermGroup, Permutation, mask_of

MAX_POINTS = 4096


class GeometryError(ValueError):
    pass


class GeometrySpace:
    """An indexed point set with enough structure to act on and draw lines."""

    def __init__(self, kind, points, field=None, params=None):
        if len(points) > MAX_POINTS:
            raise GeometryError(f"{len(points)} points exceeds cap {MAX_POINTS}")
        self.kind = kind
        self.points = tuple(points)
        self.field = field
        self.params = dict(params or {})
        self.index = {pt: i for i, pt in enumerate(points)}

    def __len__(self):
        return len(self.points)

    def __repr__(self):
        return f"GeometrySpace({self.kind}, {self.params}, {len(self)} points)"


def _normalize(F, vec):
    """Scale so the first nonzero coordinate is 1; None for the zero vector."""
    for c in vec:
        if c:
            inv = F.inv(c)
            return tuple(F.mul(inv, e) for e in vec)
    return None


def _projective_points(F, n):
    pts = set()
    for vec in product(F.elements(), repeat=n):
        nv = _normalize(F, vec)
        if nv is not None:
            pts.add(nv)
    return sorted(pts)


def hermitian_form(F, x, y):
    """phi(x,y) = x1*conj(y3) + x3*conj(y1) + x2*conj(y2) over GF(q0^2)."""
    return F.add(
        F.add(F.mul(x[0], F.conj(y[2])), F.mul(x[2], F.conj(y[0]))),
        F.mul(x[1], F.conj(y[1])))


def build_space(kind, **params):
    if kind == "affine":
        n, q = params["n"], params["q"]
        F = GF(q)
        pts = sorted(product(F.elements(), repeat=n))
        return GeometrySpace("affine", pts, F, {"n": n, "q": q})
    if kind == "projective":
        n, q = params["n"], params["q"]
        F = GF(q)
        return GeometrySpace("projective", _projective_points(F, n), F,
                             {"n": n, "q": q})
    if kind == "hermitian_isotropic":
        q = params["q"]
        F = GF(q * q)
        pts = [p for p in _projective_points(F, 3)
               if hermitian_form(F, p, p) == 0]
        if len(pts) != q ** 3 + 1:
            raise GeometryError("isotropic point count mismatch")
        return GeometrySpace("hermitian_isotropic", pts, F, {"q": q})
    if kind == "abstract":
        v = params["v"]
        return GeometrySpace("abstract", list(range(v)), None, {"v": v})
    raise GeometryError(f"unknown space kind {kind!r}")


# ---- permutations from (semi)linear maps -----------------------------------

def _mat_vec(F, M, vec):
    return tuple(
        _dot(F, row, vec) for row in M)


def _dot(F, row, vec):
    s = 0
    for c, e in zip(row, vec):
        s = F.add(s, F.mul(c, e))
    return s


def perm_from_map(space, matrix=None, frob=0, translation=None):
    """Permutation of the point indices induced by x -> M(x^(p^frob)) + t.

    Raises if any image falls outside the space, which in particular checks
    that unitary generators preserve the isotropic set.
    """
    F = space.field
    images = []
    for pt in space.points:
        vec = pt
        if frob:
            vec = tuple(F.frobenius(e, frob) for e in vec)
        if matrix is not None:
            vec = _mat_vec(F, matrix, vec)
        if translation is not None:
            vec = tuple(F.add(e, t) for e, t in zip(vec, translation))
        if space.kind in ("projective", "hermitian_isotropic"):
            vec = _normalize(F, vec)
        if vec not in space.index:
            raise GeometryError(
                f"map does not preserve the {space.kind} point set")
        images.append(space.index[vec])
    return Permutation(images)


def _identity_matrix(n):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def _sl_generators(F, n):
    """Elementary transvections I + lambda*E_ij over an F_p basis of F_q."""
    basis = [F.pow(F.x, i) for i in range(F.a)] if F.q > 2 else [1]
    mats = []
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            for lam in basis:
                M = _identity_matrix(n)
                M[i][j] = lam
                mats.append(M)
    return mats


def _gl_extra(F, n):
    M = _identity_matrix(n)
    M[0][0] = F.x
    return M


# ---- group families ---------------------------------------------------------

def group_generators(family, **params):
    """A PermGroup for the named family, acting on the matching space."""
    if family == "sym":
        return PermGroup.symmetric(params["n"])
    if family == "alt":
        return PermGroup.alternating(params["n"])
    if family == "wreath_stab":
        return wreath_stabilizer(params["a"], params["b"])
    if family == "subset_stab":
        return subset_stabilizer(params["v"], params["subset"])
    if family in ("agl", "agammal"):
        return _affine_group(params["n"], params["q"], family == "agammal")
    if family in ("pgl", "pgammal"):
        return _projective_group(params["n"], params["q"],
                                 family == "pgammal")
    if family == "psl2":
        return _psl2(params["q"])
    if family in ("pgu", "pgammau"):
        return _unitary_group(params["q"], family == "pgammau")
    raise GeometryError(f"unknown group family {family!r}")


def wreath_stabilizer(a, b):
    """Stabilizer of the partition of {0..ab-1} into b consecutive a-blocks."""
    n = a * b
    gens = []
    if a >= 2:
        gens.append(Permutation.from_cycles(n, [(0, 1)]))
    if a >= 3:
        gens.append(Permutation.from_cycles(n, [tuple(range(a))]))
    if b >= 2:
        gens.append(Permutation.from_cycles(
            n, [(i, a + i) for i in range(a)]))
    if b >= 3:
        images = [(x + a) % n for x in range(n)]
        gens.append(Permutation(images))
    return PermGroup(n, gens)


def partition_blocks(a, b):
    """Masks of the b consecutive a-blocks that wreath_stabilizer preserves."""
    return [mask_of(range(i * a, (i + 1) * a)) for i in range(b)]


def subset_stabilizer(v, subset):
    """Sym(U) x Sym(complement) inside Sym(v)."""
    u = sorted(set(subset))
    rest = sorted(set(range(v)) - set(u))
    gens = []
    for part in (u, rest):
        if len(part) >= 2:
            gens.append(Permutation.from_cycles(v, [(part[0], part[1])]))
        if len(part) >= 3:
            gens.append(Permutation.from_cycles(v, [tuple(part)]))
    return PermGroup(v, gens)


def _affine_group(n, q, semilinear):
    space = build_space("affine", n=n, q=q)
    F = space.field
    gens = []
    for M in _sl_generators(F, n):
        gens.append(perm_from_map(space, matrix=M))
    gens.append(perm_from_map(space, matrix=_gl_extra(F, n)))
    e1 = tuple([1] + [0] * (n - 1))
    gens.append(perm_from_map(space, translation=e1))
    if semilinear and F.a > 1:
        gens.append(perm_from_map(space, frob=1))
    return PermGroup(len(space), gens)


def _projective_group(n, q, semilinear):
    space = build_space("projective", n=n, q=q)
    F = space.field
    gens = [perm_from_map(space, matrix=M) for M in _sl_generators(F, n)]
    gens.append(perm_from_map(space, matrix=_gl_extra(F, n)))
    if semilinear and F.a > 1:
        gens.append(perm_from_map(space, frob=1))
    return PermGroup(len(space), gens)


def _psl2(q):
    space = build_space("projective", n=2, q=q)
    F = space.field
    gens = [perm_from_map(space, matrix=M) for M in _sl_generators(F, 2)]
    return PermGroup(len(space), gens)


def _trace_zero_nonzero(F):
    for e in F.units():
        if F.add(e, F.conj(e)) == 0:
            return e
    raise GeometryError("no nonzero trace-zero element found")


def _unitary_group(q, semilinear):
    """PGU(3,q) (resp. PGammaU(3,q)) on the q^3+1 isotropic points."""
    space = build_space("hermitian_isotropic", q=q)
    F = space.field
    gens = []
    # root elements t_{alpha,beta} with alpha + conj(alpha) + beta*conj(beta) = 0
    a0 = _trace_zero_nonzero(F)
    gens.append(perm_from_map(space, matrix=[
        [1, 0, a0], [0, 1, 0], [0, 0, 1]]))
    beta = 1
    norm = F.mul(beta, F.conj(beta))
    alpha = next(e for e in F.elements()
                 if F.add(F.add(e, F.conj(e)), norm) == 0)
    gens.append(perm_from_map(space, matrix=[
        [1, F.neg(F.conj(beta)), alpha], [0, 1, beta], [0, 0, 1]]))
    # torus h_{nu,mu} = diag(nu, mu, conj(nu)^-1) with mu*conj(mu) = 1
    xi = F.x
    gens.append(perm_from_map(space, matrix=[
        [xi, 0, 0], [0, 1, 0], [0, 0, F.inv(F.conj(xi))]]))
    mu = F.pow(xi, F.sqrt_order - 1)
    gens.append(perm_from_map(space, matrix=[
        [1, 0, 0], [0, mu, 0], [0, 0, 1]]))
    # Weyl element swapping <e1>, <e3>
    gens.append(perm_from_map(space, matrix=[
        [0, 0, 1], [0, F.neg(1), 0], [1, 0, 0]]))
    if semilinear:
        gens.append(perm_from_map(space, frob=1))
    return PermGroup(len(space), gens)


# ---- lines ------------------------------------------------------------------

def lines(space):
    """All lines, as sorted tuples of point indices."""
    F = space.field
    if space.kind == "affine":
        n = space.params["n"]
        dirs = _projective_points(F, n)
        out = []
        for d in dirs:
            seen = set()
            for i, p in enumerate(space.points):
                if i in seen:
                    continue
                line = sorted(
                    space.index[tuple(F.add(e, F.mul(t, de))
                                      for e, de in zip(p, d))]
                    for t in F.elements())
                seen.update(line)
                out.append(tuple(line))
        return sorted(out)
    if space.kind == "projective":
        out = set()
        for i, p in enumerate(space.points):
            for j in range(i + 1, len(space.points)):
                r = space.points[j]
                pts = {i, j}
                for t in F.units():
                    comb = tuple(F.add(e, F.mul(t, re))
                                 for e, re in zip(p, r))
                    pts.add(space.index[_normalize(F, comb)])
                out.add(tuple(sorted(pts)))
        return sorted(out)
    raise GeometryError(f"lines undefined for kind {space.kind!r}")


def line_class(space, mask):
    """Sorted set of intersection sizes of the subset with all lines."""
    return sorted({bin(mask & mask_of(line)).count("1")
                   for line in lines(space)})


# ---- derived point-block structures ------------------------------------------

def unital_blocks(q):
    """The classical unital: isotropic points cut by non-degenerate 2-spaces.

    Each block is the perp of a non-isotropic point m, i.e. the q+1 isotropic
    points x with phi(x, m) = 0; v = q^3 + 1, k = q + 1.
    """
    space = build_space("hermitian_isotropic", q=q)
    F = space.field
    blocks = set()
    for m in _projective_points(F, 3):
        if hermitian_form(F, m, m) == 0:
            continue
        mask = mask_of(i for i, x in enumerate(space.points)
                       if hermitian_form(F, x, m) == 0)
        if bin(mask).count("1") != q + 1:
            raise GeometryError("unital block of wrong size")
        blocks.add(mask)
    return Code(q ** 3 + 1, q + 1, blocks, name=f"unital(q={q})",
                params={"q": q})


def standard_baer_subline(q0):
    """(space PG(1,q0^2), mask of the subfield-plus-infinity subline)."""
    space = build_space("projective", n=2, q=q0 * q0)
    F = space.field
    sub = set(F.subfield_elements(F.a // 2))
    pts = [space.index[(0, 1)]]
    pts += [space.index[(1, t)] for t in sub]
    return space, mask_of(pts)


def baer_sublines(q0):
    """Orbit of the standard Baer subline under PGammaL(2, q0^2)."""
    space, rep = standard_baer_subline(q0)
    G = group_generators("pgammal", n=2, q=q0 * q0)
    orb = G.subset_orbit(rep)
    return Code(len(space), q0 + 1, orb.members,
                name=f"baer_subline(q0={q0})", params={"q0": q0})


def hyperoval_setting():
    """(space PG(2,4), hyperoval mask, first external line, all external lines).

    The hyperoval is the conic {(1,t,t^2)} + {(0,0,1)} plus its nucleus
    (0,1,0); external lines are the six lines missing it entirely.
    """
    space = build_space("projective", n=3, q=4)
    F = space.field
    pts = [space.index[(0, 0, 1)], space.index[(0, 1, 0)]]
    pts += [space.index[(1, t, F.mul(t, t))] for t in F.elements()]
    hmask = mask_of(pts)
    externals = [mask_of(line) for line in lines(space)
                 if not (mask_of(line) & hmask)]
    if len(externals) != 6:
        raise GeometryError("hyperoval should have exactly 6 external lines")
    return space, hmask, min(externals), sorted(externals)


def restrict_group(G, mask):
    """Induced group on the points of an invariant subset, relabeled 0..m-1.

    Point i of the new domain is the i-th smallest member of the subset.
    """
    pts = [i for i in range(G.degree) if (mask >> i) & 1]
    relabel = {p: i for i, p in enumerate(pts)}
    gens = []
    for g in G.generators:
        if g.apply_mask(mask) != mask:
            raise GeometryError("generator does not preserve the subset")
        gens.append(Permutation([relabel[g.images[p]] for p in pts]))
    return PermGroup(len(pts), gens)
