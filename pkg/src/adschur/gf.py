"""Small dense linear algebra over GF(p) for odd primes, tuned for the oracle.

Vectors of length `width` are packed into a single Python int, one 16-bit lane
per coordinate.  A row operation v + c*w is then one big-int multiply-add;
lanes are renormalized mod p lazily.  The lane bound is safe because a vector
is reduced against at most `width` pivots between renormalizations and
width * (p-1)^2 + (p-1) < 2^16 for p <= 7 and width <= 64.

Subspaces are kept in fully reduced row echelon form with monic pivots, so
`rows` is a canonical, hashable key.
"""

from __future__ import annotations

LANE = 16
_MASK = (1 << LANE) - 1


class GF:
    """Context for GF(p) vectors of a fixed width."""

    def __init__(self, p: int, width: int):
        if p < 2 or width < 1:
            raise ValueError("need a prime p >= 3 and positive width")
        if width * (p - 1) * (p - 1) + p >= 1 << LANE:
            raise ValueError(f"width {width} too large for lane-packed GF({p})")
        self.p = p
        self.width = width
        self.inv = [0] * p
        for a in range(1, p):
            self.inv[a] = pow(a, p - 2, p)

    # -- scalar/vector helpers ------------------------------------------------

    def pack(self, coords) -> int:
        v = 0
        for i, c in enumerate(coords):
            v |= (c % self.p) << (LANE * i)
        return v

    def unpack(self, v: int):
        return [(v >> (LANE * i)) & _MASK for i in range(self.width)]

    def normalize(self, v: int) -> int:
        p = self.p
        out = 0
        i = 0
        while v:
            c = (v & _MASK) % p
            if c:
                out |= c << (LANE * i)
            v >>= LANE
            i += 1
        return out

    def lane(self, v: int, i: int) -> int:
        return ((v >> (LANE * i)) & _MASK) % self.p

    def unit(self, i: int) -> int:
        return 1 << (LANE * i)

    def first_lane(self, v: int) -> int:
        """Index of the lowest nonzero lane of a normalized vector."""
        return (v & -v).bit_length() // LANE if v else -1

    def scale(self, v: int, c: int) -> int:
        return self.normalize(v * (c % self.p))


class Subspace:
    """Immutable subspace in canonical reduced row echelon form."""

    __slots__ = ("gf", "rows", "pivots", "_pivot_set")

    def __init__(self, gf: GF, rows: tuple = (), pivots: tuple = ()):
        self.gf = gf
        self.rows = rows
        self.pivots = pivots
        self._pivot_set = dict(zip(pivots, range(len(pivots))))

    @property
    def dim(self) -> int:
        return len(self.rows)

    def key(self):
        return self.rows

    def __eq__(self, other):
        return isinstance(other, Subspace) and self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    # -- reduction -------------------------------------------------------------

    def reduce(self, v: int) -> int:
        """Canonical representative of v modulo the subspace (normalized)."""
        gf = self.gf
        p = gf.p
        for row, piv in zip(self.rows, self.pivots):
            c = ((v >> (LANE * piv)) & _MASK) % p
            if c:
                v = v + (p - c) * row
        return gf.normalize(v)

    def contains(self, v: int) -> bool:
        return self.reduce(v) == 0

    def contains_space(self, other: "Subspace") -> bool:
        return all(self.contains(r) for r in other.rows)

    def extend(self, v: int) -> "Subspace":
        """Subspace spanned by self and v (v must not lie in self)."""
        gf = self.gf
        v = self.reduce(v)
        if not v:
            raise ValueError("vector lies in the subspace")
        piv = gf.first_lane(v)
        v = gf.scale(v, gf.inv[gf.lane(v, piv)])
        p = gf.p
        new_rows = []
        for row in self.rows:
            c = gf.lane(row, piv)
            if c:
                row = gf.normalize(row + (p - c) * v)
            new_rows.append(row)
        new_rows.append(v)
        new_pivots = self.pivots + (piv,)
        order = sorted(range(len(new_rows)), key=lambda k: new_pivots[k])
        return Subspace(gf,
                        tuple(new_rows[k] for k in order),
                        tuple(new_pivots[k] for k in order))

    def basis(self):
        return self.rows


def span(gf: GF, vectors) -> Subspace:
    s = Subspace(gf)
    for v in vectors:
        v = s.reduce(v)
        if v:
            s = s.extend(v)
    return s


def add(a: Subspace, b: Subspace) -> Subspace:
    if a.dim < b.dim:
        a, b = b, a
    s = a
    for v in b.rows:
        v = s.reduce(v)
        if v:
            s = s.extend(v)
    return s


def complement(a: Subspace) -> Subspace:
    """Annihilator under the standard dot product (x with a . x = 0)."""
    gf = a.gf
    rows = a.rows
    pivots = a.pivots
    pivot_at = {piv: r for piv, r in zip(pivots, rows)}
    p = gf.p
    out = []
    for f in range(gf.width):
        if f in pivot_at:
            continue
        v = gf.unit(f)
        for piv, row in pivot_at.items():
            c = gf.lane(row, f)
            if c:
                v |= (p - c) << (LANE * piv)
        out.append(gf.normalize(v))
    return span(gf, out)


def intersect(a: Subspace, b: Subspace) -> Subspace:
    if a.dim == 0 or b.dim == 0:
        return Subspace(a.gf)
    return complement(add(complement(a), complement(b)))


def rank_of_sum(a: Subspace, b: Subspace) -> int:
    return add(a, b).dim


class LinearMap:
    """Linear map given by packed columns: image(x) = sum x_i * col_i."""

    __slots__ = ("gf", "cols")

    def __init__(self, gf: GF, cols):
        self.gf = gf
        self.cols = tuple(cols)

    def apply(self, v: int) -> int:
        gf = self.gf
        out = 0
        i = 0
        while v:
            c = (v & _MASK) % gf.p
            if c:
                out += c * self.cols[i]
            v >>= LANE
            i += 1
        return gf.normalize(out)

    def image(self, a: Subspace) -> Subspace:
        return span(self.gf, (self.apply(r) for r in a.rows))

    def preimage(self, a: Subspace) -> Subspace:
        """{x : M x in a}, via annihilators: x . (M^t y) = 0 for y in a-perp."""
        gf = self.gf
        perp = complement(a)
        tcols = transpose_cols(gf, self.cols)
        tmap = LinearMap(gf, tcols)
        constraints = span(gf, (tmap.apply(y) for y in perp.rows))
        return complement(constraints)


def transpose_cols(gf: GF, cols):
    out = []
    for i in range(gf.width):
        v = 0
        for jj, col in enumerate(cols):
            c = gf.lane(col, i)
            if c:
                v |= c << (LANE * jj)
        out.append(v)
    return out


def bilinear_complement(gf: GF, bmap: LinearMap, a: Subspace) -> Subspace:
    """{x : (B u) . x = 0 for all u in a}, for the form B(u, x) = (B u) . x."""
    constraints = span(gf, (bmap.apply(r) for r in a.rows))
    return complement(constraints)


def bilinear_value(gf: GF, bmap: LinearMap, u: int, w: int) -> int:
    """Evaluate the form: (B u) . w in GF(p)."""
    bu = bmap.apply(u)
    total = 0
    i = 0
    while bu and w:
        cu = (bu & _MASK) % gf.p
        cw = (w & _MASK) % gf.p
        total += cu * cw
        bu >>= LANE
        w >>= LANE
    return total % gf.p


def lines_mod(base: Subspace, ambient_vectors) -> list[int]:
    """Distinct lines of span(ambient_vectors) modulo `base`.

    Returns monic canonical representatives (reduced mod base).
    """
    gf = base.gf
    p = gf.p
    # a small complement basis of base inside the span
    comp_rows = []
    probe = base
    for v in ambient_vectors:
        v = probe.reduce(v)
        if v:
            probe = probe.extend(v)
            comp_rows.append(v)
    reps = {}
    k = len(comp_rows)
    if k == 0:
        return []
    coeffs = [0] * k
    while True:
        # advance odometer
        i = 0
        while i < k and coeffs[i] == p - 1:
            coeffs[i] = 0
            i += 1
        if i == k:
            break
        coeffs[i] += 1
        v = 0
        for c, row in zip(coeffs, comp_rows):
            if c:
                v += c * row
        v = base.reduce(v)
        if not v:
            continue
        piv = gf.first_lane(v)
        v = gf.scale(v, gf.inv[gf.lane(v, piv)])
        reps[v] = None
    return list(reps)
