"""Johnson graph layer: k-subsets as bitmasks, distances, neighbour sets,
distance partitions, minimum distance, complete regularity, part-intersection
types, and complementation.

A vertex of J(v,k) is a k-subset of {0..v-1}, stored as an int bitmask.
Two vertices are adjacent when they share k-1 points, so the graph distance
between masks a, b is k - popcount(a & b).
"""

from itertools import combinations

from .perm import ResourceCapError, bits, mask_of, popcount

DEFAULT_PARTITION_CAP = 10 ** 6


class JohnsonError(ValueError):
    pass


def mask_to_tuple(mask):
    return tuple(bits(mask))


def all_ksubsets(v, k):
    """All k-subset masks of {0..v-1}, ascending by mask value."""
    return sorted(mask_of(c) for c in combinations(range(v), k))


def jdistance(a, b, k=None):
    """Graph distance in J(v,k) between two k-subset masks."""
    ka = popcount(a)
    if popcount(b) != ka:
        raise JohnsonError("subsets have different cardinalities")
    if k is not None and k != ka:
        raise JohnsonError(f"subsets are not {k}-subsets")
    return ka - popcount(a & b)


def vertex_neighbours(mask, v):
    """All k-subsets at distance 1 from mask: swap one point in for one out."""
    out = []
    comp = ((1 << v) - 1) ^ mask
    for u in bits(mask):
        base = mask ^ (1 << u)
        for w in bits(comp):
            out.append(base | (1 << w))
    return set(out)


class Code:
    """A set of k-subsets of {0..v-1} with construction metadata.

    codewords are stored sorted by ascending mask value.  A code flagged
    degenerate equals the full vertex set of J(v,k) (or violates the
    2 <= k <= v-2 window) and is excluded from theorem-consistency runs.
    """

    def __init__(self, v, k, codewords, name="", params=None, notes=None,
                 degenerate=None):
        codewords = sorted(set(codewords))
        if not codewords:
            raise JohnsonError("empty code")
        for m in codewords:
            if popcount(m) != k:
                raise JohnsonError("codeword of wrong cardinality")
            if m >> v:
                raise JohnsonError("codeword exceeds ground set")
        self.v = v
        self.k = k
        self.codewords = tuple(codewords)
        self.name = name
        self.params = dict(params or {})
        self.notes = list(notes or [])
        if degenerate is None:
            from math import comb
            degenerate = (len(codewords) == comb(v, k)) or not (2 <= k <= v - 2)
        self.degenerate = degenerate
        self._set = frozenset(codewords)

    def __len__(self):
        return len(self.codewords)

    def __contains__(self, mask):
        return mask in self._set

    def __eq__(self, other):
        return (isinstance(other, Code) and (self.v, self.k) == (other.v, other.k)
                and self.codewords == other.codewords)

    def __hash__(self):
        return hash((self.v, self.k, self.codewords))

    def __repr__(self):
        return (f"Code(v={self.v}, k={self.k}, size={len(self.codewords)},"
                f" name={self.name!r})")

    def as_dict(self):
        # codewords as ascending index lists, sorted lexicographically
        # (the JSON interchange convention; in memory they sort by mask)
        return {
            "v": self.v,
            "k": self.k,
            "name": self.name,
            "codewords": sorted(list(bits(m)) for m in self.codewords),
        }


def neighbour_set(code):
    """The neighbour set: vertices at distance exactly 1 from the code."""
    out = set()
    for m in code.codewords:
        out |= vertex_neighbours(m, code.v)
    return out - code._set


def min_distance(code):
    """Least Johnson distance between distinct codewords; None for singletons."""
    words = code.codewords
    if len(words) < 2:
        return None
    best = 0  # max intersection
    k = code.k
    for i, a in enumerate(words):
        for b in words[i + 1:]:
            inter = popcount(a & b)
            if inter > best:
                best = inter
                if best == k - 1:
                    return 1
    return k - best


class DistancePartition:
    """BFS layering of all vertices of J(v,k) by distance to a code."""

    def __init__(self, cells):
        self.cells = cells

    @property
    def covering_index(self):
        return len(self.cells)

    def __iter__(self):
        return iter(self.cells)


def distance_partition(code, cap=DEFAULT_PARTITION_CAP):
    from math import comb
    total = comb(code.v, code.k)
    if total > cap:
        raise ResourceCapError(
            f"J({code.v},{code.k}) has {total} vertices, over cap {cap}")
    cells = [set(code.codewords)]
    seen = set(code.codewords)
    while len(seen) < total:
        layer = set()
        for m in cells[-1]:
            for nb in vertex_neighbours(m, code.v):
                if nb not in seen:
                    layer.add(nb)
        cells.append(layer)
        seen |= layer
    return DistancePartition(cells)


def is_completely_regular(code, cap=DEFAULT_PARTITION_CAP):
    """Equitability of the distance partition.

    Returns (True, matrix) where matrix[i][j] is the constant number of
    cell-j neighbours of a cell-i vertex, or (False, witness) with the first
    (i, j, vertex_a, vertex_b, count_a, count_b) violation found.
    """
    part = distance_partition(code, cap=cap)
    cell_index = {}
    for i, cell in enumerate(part.cells):
        for m in cell:
            cell_index[m] = i
    r = part.covering_index
    matrix = []
    for i, cell in enumerate(part.cells):
        row = None
        first = None
        for m in sorted(cell):
            counts = [0] * r
            for nb in vertex_neighbours(m, code.v):
                counts[cell_index[nb]] += 1
            if row is None:
                row = counts
                first = m
            elif counts != row:
                j = next(j for j in range(r) if counts[j] != row[j])
                return False, (i, j, first, m, row[j], counts[j])
        matrix.append(row)
    return True, matrix


def u_type(mask, partition):
    """Multiset of nonzero part-intersection sizes, as a sorted tuple.

    partition is a sequence of disjoint part masks covering {0..v-1}.
    """
    covered = 0
    sizes = []
    for part in partition:
        if part & covered:
            raise JohnsonError("parts are not disjoint")
        covered |= part
        c = popcount(mask & part)
        if c:
            sizes.append(c)
    if mask & ~covered:
        raise JohnsonError("parts do not cover the subset")
    return tuple(sorted(sizes))


def complement_code(code):
    """The code of complements, living in J(v, v-k)."""
    full = (1 << code.v) - 1
    return Code(code.v, code.v - code.k,
                [full ^ m for m in code.codewords],
                name=f"complement({code.name})" if code.name else "complement",
                params=dict(code.params), notes=list(code.notes),
                degenerate=code.degenerate)
