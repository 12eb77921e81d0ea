"""Exact permutation groups: elements, orbits, stabilizers, BSGS.

Permutations act on {0, ..., degree-1}.  Products compose left to right:
(p * q) means "apply p, then q", so x^(p*q) = (x^p)^q.  Subsets of the
domain travel as integer bitmasks throughout.

The stabilizer chain is built by a deterministic Schreier-Sims: base points
are the smallest non-fixed points, orbits grow breadth-first in generator
order, so orders, transversals and element enumeration are reproducible.
"""

import re

MAX_DEGREE = 4096
DEFAULT_ORBIT_CAP = 10 ** 6


class PermError(ValueError):
    pass


class ResourceCapError(RuntimeError):
    """An orbit or partition exceeded its configured cap."""


def popcount(mask):
    return mask.bit_count()


def mask_of(points):
    m = 0
    for x in points:
        m |= 1 << x
    return m


def bits(mask):
    """Set bits of mask, ascending."""
    while mask:
        b = mask & -mask
        yield b.bit_length() - 1
        mask ^= b


class Permutation:
    __slots__ = ("images",)

    def __init__(self, images, check=True):
        images = tuple(images)
        if check:
            n = len(images)
            if n > MAX_DEGREE:
                raise PermError(f"degree {n} exceeds cap {MAX_DEGREE}")
            seen = [False] * n
            for i in images:
                if not (0 <= i < n) or seen[i]:
                    raise PermError("images are not a bijection")
                seen[i] = True
        self.images = images

    @property
    def degree(self):
        return len(self.images)

    @classmethod
    def identity(cls, n):
        return cls(range(n), check=False)

    @classmethod
    def from_cycles(cls, n, cycles):
        images = list(range(n))
        for cycle in cycles:
            for i, x in enumerate(cycle):
                if x >= n:
                    raise PermError(f"point {x} out of range for degree {n}")
                images[x] = cycle[(i + 1) % len(cycle)]
        return cls(images)

    @classmethod
    def parse(cls, text, n):
        """Parse cycle notation like "(0 1 2)(3 4)"; "()" is the identity."""
        body = text.strip()
        if not re.fullmatch(r"(\(\s*(\d+[\s,]*)*\)\s*)+", body):
            raise PermError(f"cannot parse permutation {text!r}")
        cycles = []
        for inner in re.findall(r"\(([^)]*)\)", body):
            pts = [int(t) for t in re.split(r"[\s,]+", inner.strip()) if t]
            if len(set(pts)) != len(pts):
                raise PermError(f"repeated point in cycle {inner!r}")
            if pts:
                cycles.append(pts)
        return cls.from_cycles(n, cycles)

    def __mul__(self, other):
        oi = other.images
        if len(oi) != len(self.images):
            raise PermError("degree mismatch in product")
        return Permutation((oi[i] for i in self.images), check=False)

    def inverse(self):
        inv = [0] * len(self.images)
        for i, j in enumerate(self.images):
            inv[j] = i
        return Permutation(inv, check=False)

    def __call__(self, x):
        return self.images[x]

    def apply_mask(self, mask):
        out = 0
        img = self.images
        while mask:
            b = mask & -mask
            out |= 1 << img[b.bit_length() - 1]
            mask ^= b
        return out

    def is_identity(self):
        return all(i == j for j, i in enumerate(self.images))

    def order(self):
        n = 1
        g = self
        while not g.is_identity():
            g = g * self
            n += 1
        return n

    def cycles(self):
        seen = set()
        out = []
        for i in range(len(self.images)):
            if i in seen or self.images[i] == i:
                continue
            cyc = [i]
            j = self.images[i]
            while j != i:
                seen.add(j)
                cyc.append(j)
                j = self.images[j]
            out.append(tuple(cyc))
        return out

    def __repr__(self):
        cycs = self.cycles()
        if not cycs:
            return "()"
        return "".join("(" + " ".join(map(str, c)) + ")" for c in cycs)

    def __eq__(self, other):
        return isinstance(other, Permutation) and self.images == other.images

    def __hash__(self):
        return hash(self.images)


def act(p, x):
    """Image of a point or bitmask-subset under p."""
    if isinstance(x, int) and x < p.degree and x >= 0 and False:
        pass
    if isinstance(x, frozenset) or isinstance(x, (set, list, tuple)):
        return type(x)(p.images[i] for i in x)
    raise PermError("use __call__ for points or apply_mask for masks")


class SubsetOrbit:
    """Orbit of a k-subset with Schreier bookkeeping.

    members is in BFS order; schreier maps each non-representative member
    to (predecessor member, generator index), so a group word mapping the
    representative to any member can be reconstructed.
    """

    def __init__(self, group, representative, members, schreier):
        self.group = group
        self.representative = representative
        self.members = members
        self.schreier = schreier
        self._transversal = {representative: Permutation.identity(group.degree)}

    def __len__(self):
        return len(self.members)

    def __contains__(self, mask):
        return mask == self.representative or mask in self.schreier

    def transversal(self, mask):
        """A group element mapping the representative to mask."""
        cache = self._transversal
        if mask in cache:
            return cache[mask]
        path = []
        m = mask
        while m not in cache:
            path.append(m)
            m = self.schreier[m][0]
        g = cache[m]
        for m in reversed(path):
            g = g * self.group.generators[self.schreier[m][1]]
            cache[m] = g
        return cache[mask]


class PermGroup:
    """A finitely generated permutation group on {0..degree-1}."""

    def __init__(self, degree, generators):
        if degree < 1 or degree > MAX_DEGREE:
            raise PermError(f"degree {degree} out of range")
        gens = []
        for g in generators:
            if g.degree != degree:
                raise PermError("generator degree mismatch")
            gens.append(g)
        self.degree = degree
        self.generators = tuple(gens)
        self._bsgs = None

    @classmethod
    def trivial(cls, degree):
        return cls(degree, [])

    @classmethod
    def symmetric(cls, n):
        gens = []
        if n >= 2:
            gens.append(Permutation.from_cycles(n, [(0, 1)]))
        if n >= 3:
            gens.append(Permutation.from_cycles(n, [tuple(range(n))]))
        return cls(n, gens)

    @classmethod
    def alternating(cls, n):
        gens = []
        if n >= 3:
            gens.append(Permutation.from_cycles(n, [(0, 1, 2)]))
        if n >= 4:
            cyc = tuple(range(n)) if n % 2 else tuple(range(1, n))
            gens.append(Permutation.from_cycles(n, [cyc]))
        return cls(n, gens)

    # ---- stabilizer chain ------------------------------------------------

    def _build_bsgs(self):
        n = self.degree
        base = []          # base points
        level_gens = []    # level_gens[i]: strong generators fixing base[:i]
        transversals = []  # transversals[i]: point -> coset rep (base[i] -> point)

        def first_moved(g):
            for i, im in enumerate(g.images):
                if im != i:
                    return i
            return None

        def level_of(g):
            for i, b in enumerate(base):
                if g.images[b] != b:
                    return i
            pt = first_moved(g)
            if pt is None:
                return None  # identity
            base.append(pt)
            level_gens.append([])
            transversals.append(None)
            return len(base) - 1

        def add_gen(g):
            j = level_of(g)
            if j is None:
                return False
            for l in range(j + 1):
                level_gens[l].append(g)
            return True

        def rebuild_transversal(i):
            b = base[i]
            tr = {b: Permutation.identity(n)}
            queue = [b]
            for pt in queue:
                u = tr[pt]
                for g in level_gens[i]:
                    im = g.images[pt]
                    if im not in tr:
                        tr[im] = u * g
                        queue.append(im)
            transversals[i] = tr

        def strip(g, start):
            for i in range(start, len(base)):
                im = g.images[base[i]]
                tr = transversals[i]
                if tr is None or im not in tr:
                    return g
                g = g * tr[im].inverse()
            return g

        for g in self.generators:
            add_gen(g)
        if not base:
            self._bsgs = ([], [], [])
            return

        i = len(base) - 1
        while i >= 0:
            rebuild_transversal(i)
            complete = True
            tr = transversals[i]
            # BFS order of the orbit is the dict insertion order
            for pt in list(tr):
                u = tr[pt]
                for g in level_gens[i]:
                    im = g.images[pt]
                    schreier = (u * g) * tr[im].inverse()
                    if schreier.is_identity():
                        continue
                    residue = strip(schreier, i + 1)
                    if not residue.is_identity():
                        add_gen(residue)
                        complete = False
                        break
                if not complete:
                    break
            if complete:
                i -= 1
            else:
                for l in range(i + 1, len(base)):
                    rebuild_transversal(l)
                i = len(base) - 1
        self._bsgs = (base, level_gens, transversals)

    def bsgs(self):
        if self._bsgs is None:
            self._build_bsgs()
        return self._bsgs

    def order(self):
        base, _, transversals = self.bsgs()
        n = 1
        for tr in transversals:
            n *= len(tr)
        return n

    def sift(self, g):
        """Residue of g after stripping through the chain (identity iff g in G)."""
        if g.degree != self.degree:
            raise PermError("degree mismatch")
        base, _, transversals = self.bsgs()
        for i in range(len(base)):
            im = g.images[base[i]]
            tr = transversals[i]
            if im not in tr:
                return g
            g = g * tr[im].inverse()
        return g

    def __contains__(self, g):
        return self.sift(g).is_identity()

    def elements(self, cap=DEFAULT_ORBIT_CAP):
        """All group elements in deterministic chain-traversal order."""
        if self.order() > cap:
            raise ResourceCapError(f"group order {self.order()} exceeds cap {cap}")
        base, _, transversals = self.bsgs()

        def rec(i):
            if i == len(base):
                yield Permutation.identity(self.degree)
                return
            reps = [transversals[i][pt] for pt in sorted(transversals[i])]
            for s in rec(i + 1):
                for u in reps:
                    yield s * u

        return rec(0)

    # ---- orbits and stabilizers -------------------------------------------

    def orbit(self, x):
        if not (0 <= x < self.degree):
            raise PermError(f"point {x} out of range")
        seen = {x}
        queue = [x]
        for pt in queue:
            for g in self.generators:
                im = g.images[pt]
                if im not in seen:
                    seen.add(im)
                    queue.append(im)
        return seen

    def orbits(self):
        rest = set(range(self.degree))
        out = []
        while rest:
            o = self.orbit(min(rest))
            out.append(o)
            rest -= o
        return out

    def point_transversal(self, x):
        """(orbit in BFS order, dict point -> rep with x^rep = point)."""
        tr = {x: Permutation.identity(self.degree)}
        queue = [x]
        for pt in queue:
            u = tr[pt]
            for g in self.generators:
                im = g.images[pt]
                if im not in tr:
                    tr[im] = u * g
                    queue.append(im)
        return queue, tr

    def point_stabilizer(self, x):
        """Stabilizer of the point x, from Schreier generators."""
        queue, tr = self.point_transversal(x)
        gens = []
        seen = set()
        for pt in queue:
            u = tr[pt]
            for g in self.generators:
                s = (u * g) * tr[g.images[pt]].inverse()
                if not s.is_identity() and s.images not in seen:
                    seen.add(s.images)
                    gens.append(s)
        return PermGroup(self.degree, gens)

    def subset_orbit(self, mask, cap=DEFAULT_ORBIT_CAP):
        """Orbit of a bitmask subset under the induced action on subsets."""
        if mask >> self.degree:
            raise PermError("subset not contained in the domain")
        schreier = {}
        members = [mask]
        seen = {mask}
        for m in members:
            for gi, g in enumerate(self.generators):
                im = g.apply_mask(m)
                if im not in seen:
                    seen.add(im)
                    schreier[im] = (m, gi)
                    members.append(im)
                    if len(members) > cap:
                        raise ResourceCapError(
                            f"subset orbit exceeds cap {cap}")
        return SubsetOrbit(self, mask, members, schreier)

    def setwise_stabilizer(self, mask, cap=DEFAULT_ORBIT_CAP):
        """Stabilizer of a subset (as bitmask), via subset-orbit Schreier generators."""
        orb = self.subset_orbit(mask, cap=cap)
        gens = []
        seen = set()
        for m in orb.members:
            u = orb.transversal(m)
            for g in self.generators:
                s = (u * g) * orb.transversal(g.apply_mask(m)).inverse()
                if not s.is_identity() and s.images not in seen:
                    seen.add(s.images)
                    gens.append(s)
        return PermGroup(self.degree, gens)

    # ---- transitivity and primitivity --------------------------------------

    def is_transitive(self):
        return len(self.orbit(0)) == self.degree

    def is_transitive_on(self, masks):
        """True iff the induced action on the given subset collection is transitive."""
        masks = set(masks)
        if not masks:
            return True
        start = min(masks)
        seen = {start}
        queue = [start]
        for m in queue:
            for g in self.generators:
                im = g.apply_mask(m)
                if im not in masks:
                    return False
                if im not in seen:
                    seen.add(im)
                    queue.append(im)
        return len(seen) == len(masks)

    def is_transitive_on_product(self, aset, bset):
        """True iff the action on ordered pairs A x B has a single orbit."""
        aset, bset = set(aset), set(bset)
        if not aset or not bset:
            raise PermError("empty factor in product-transitivity test")
        target = len(aset) * len(bset)
        start = (min(aset), min(bset))
        seen = {start}
        queue = [start]
        for (x, y) in queue:
            for g in self.generators:
                pair = (g.images[x], g.images[y])
                if pair[0] not in aset or pair[1] not in bset:
                    return False
                if pair not in seen:
                    seen.add(pair)
                    queue.append(pair)
        return len(seen) == target

    def minimal_block(self, x):
        """Smallest block of imprimitivity containing {0, x} (Atkinson)."""
        n = self.degree
        parent = list(range(n))

        def find(a):
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        def union(a, b):
            ra, rb = find(a), find(b)
            if ra == rb:
                return None
            if rb < ra:
                ra, rb = rb, ra
            parent[rb] = ra
            return rb

        union(0, x)
        queue = [x]
        while queue:
            y = queue.pop()
            r = find(y)
            for g in self.generators:
                merged = union(g.images[y], g.images[r])
                if merged is not None:
                    queue.append(merged)
        block = {i for i in range(n) if find(i) == find(0)}
        return block

    def primitivity(self):
        """('intransitive'|'imprimitive'|'primitive', witness block or None)."""
        if not self.is_transitive():
            return "intransitive", self.orbit(0)
        if self.degree == 1:
            return "primitive", None
        for x in range(1, self.degree):
            block = self.minimal_block(x)
            if 1 < len(block) < self.degree:
                return "imprimitive", block
        return "primitive", None

    def is_primitive(self):
        return self.primitivity()[0] == "primitive"

    def is_2transitive(self):
        if not self.is_transitive():
            return False
        stab = self.point_stabilizer(0)
        if self.degree == 1:
            return True
        return len(stab.orbit(1)) == self.degree - 1

    def block_system(self, block):
        """The G-translates of a block; raises if they do not partition the domain."""
        bm = mask_of(block)
        orb = self.subset_orbit(bm)
        seenpts = 0
        for m in orb.members:
            if m & seenpts:
                raise PermError("witness block system is not G-invariant")
            seenpts |= m
        if seenpts != (1 << self.degree) - 1:
            raise PermError("block translates do not cover the domain")
        return [set(bits(m)) for m in orb.members]

    def __repr__(self):
        return f"PermGroup(degree={self.degree}, ngens={len(self.generators)})"
