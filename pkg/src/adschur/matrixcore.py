"""Periodic matrices and weights of affine types D and A.

Type D data lives on Z x Z matrices with the fold symmetry

    a_{i,j} = a_{1-i,1-j} = a_{i+n,j+n},      n = 2r,

stored on the window rows [1, n] with unbounded, finitely supported columns.
Every entry orbit {(i+kn, j+kn), (1-i+kn, 1-j+kn)} meets the window in exactly
two slots (n is even), and both slots are stored, so row/column statistics can
be read off the window directly.  A signed matrix carries an extra sign in
{+1, -1} recording which group component the first flag of the orbit lies in.

Type A matrices satisfy only a_{i,j} = a_{i+n,j+n} and have window sum d.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations_with_replacement


class MatrixError(ValueError):
    pass


class ShapeError(MatrixError):
    """No Chevalley-type shape exists with the requested column profile."""


def _ceil_div(a: int, b: int) -> int:
    return -((-a) // b)


# ---------------------------------------------------------------------------
# weights
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class WeightD:
    """Type D weight: entries (l_1 .. l_r) extended by l_i = l_{1-i} = l_{i+n}."""

    n: int
    entries: tuple[int, ...]

    def __post_init__(self):
        if self.n % 2 or self.n < 2:
            raise MatrixError(f"n must be even and positive, got {self.n}")
        if len(self.entries) != self.n // 2:
            raise MatrixError("weight must have r = n/2 entries")
        if any(x < 0 for x in self.entries):
            raise MatrixError("weight entries must be nonnegative")

    @property
    def r(self) -> int:
        return self.n // 2

    @property
    def d(self) -> int:
        return sum(self.entries)

    def window(self) -> tuple[int, ...]:
        """The full window vector (l_1, ..., l_r, l_r, ..., l_1)."""
        return self.entries + self.entries[::-1]

    def at(self, j: int) -> int:
        """Entry l_j for arbitrary j in Z."""
        w = (j - 1) % self.n + 1
        return self.entries[w - 1] if w <= self.r else self.entries[self.n - w]

    def bump(self, index: int, delta: int) -> "WeightD":
        """Add delta to folded entry `index` (1-based, in [1, r])."""
        e = list(self.entries)
        e[index - 1] += delta
        if e[index - 1] < 0:
            raise ShapeError(f"weight entry {index} would become negative")
        return WeightD(self.n, tuple(e))


@dataclass(frozen=True)
class WeightA:
    """Type A weight: entries (l_1 .. l_n) extended n-periodically."""

    n: int
    entries: tuple[int, ...]

    def __post_init__(self):
        if len(self.entries) != self.n:
            raise MatrixError("weight must have n entries")
        if any(x < 0 for x in self.entries):
            raise MatrixError("weight entries must be nonnegative")

    @property
    def d(self) -> int:
        return sum(self.entries)

    def at(self, j: int) -> int:
        return self.entries[(j - 1) % self.n]

    def bump(self, index: int, delta: int) -> "WeightA":
        e = list(self.entries)
        k = (index - 1) % self.n
        e[k] += delta
        if e[k] < 0:
            raise ShapeError(f"weight entry {index} would become negative")
        return WeightA(self.n, tuple(e))


def weights_d(n: int, d: int):
    """All type D weights at (n, d), ordered lexicographically."""
    r = n // 2
    out = []

    def rec(prefix, rest):
        if len(prefix) == r - 1:
            out.append(WeightD(n, tuple(prefix) + (rest,)))
            return
        for x in range(rest + 1):
            rec(prefix + [x], rest - x)

    rec([], d)
    return out


def weights_a(n: int, d: int):
    out = []

    def rec(prefix, rest):
        if len(prefix) == n - 1:
            out.append(WeightA(n, tuple(prefix) + (rest,)))
            return
        for x in range(rest + 1):
            rec(prefix + [x], rest - x)

    rec([], d)
    return out


# ---------------------------------------------------------------------------
# type D signed matrices
# ---------------------------------------------------------------------------

def _window_pos(n: int, i: int, j: int) -> tuple[int, int]:
    """Shift (i, j) diagonally so the row lands in [1, n]."""
    s = (i - 1) % n + 1 - i
    return i + s, j + s


def _fold_pos(n: int, i: int, j: int) -> tuple[int, int]:
    return _window_pos(n, 1 - i, 1 - j)


class SignedMat:
    """A signed matrix (A, sign): folded periodic matrix plus a component sign.

    The band maps window positions (i in [1, n], j in Z) to positive entries
    and is closed under the fold (i, j) -> (n+1-i, n+1-j).  Window entry total
    is 2d.
    """

    __slots__ = ("n", "d", "sign", "_band", "_key", "_hash")

    def __init__(self, n: int, band: dict, sign: int, _validated: bool = False):
        self.n = n
        self.sign = sign
        self._band = band
        self._key = tuple(sorted(band.items()))
        self._hash = hash((n, sign, self._key))
        total = sum(band.values())
        if total % 2:
            raise MatrixError("window sum must be even")
        self.d = total // 2
        if not _validated:
            self._validate()

    def _validate(self):
        if self.n % 2 or self.n < 2:
            raise MatrixError(f"n must be even and positive, got {self.n}")
        if self.sign not in (1, -1):
            raise MatrixError("sign must be +1 or -1")
        for (i, j), x in self._band.items():
            if not 1 <= i <= self.n:
                raise MatrixError(f"row {i} outside window [1, {self.n}]")
            if x <= 0:
                raise MatrixError("stored entries must be positive")
            fi, fj = _fold_pos(self.n, i, j)
            if self._band.get((fi, fj)) != x:
                raise MatrixError(f"fold symmetry broken at ({i}, {j})")

    # -- construction --------------------------------------------------------

    @staticmethod
    def from_window(n: int, entries: dict, sign: int) -> "SignedMat":
        band = {pos: int(v) for pos, v in entries.items() if v}
        return SignedMat(n, band, sign)

    @staticmethod
    def diagonal(weight: WeightD, sign: int) -> "SignedMat":
        w = weight.window()
        band = {(i, i): w[i - 1] for i in range(1, weight.n + 1) if w[i - 1]}
        return SignedMat(weight.n, band, sign, _validated=True)

    def add_theta(self, i: int, j: int, delta: int, *, flip_sign: bool = False) -> "SignedMat":
        """Add delta * E_theta^{i,j}; both window slots of the orbit move."""
        band = dict(self._band)
        for pos in (_window_pos(self.n, i, j), _fold_pos(self.n, i, j)):
            x = band.get(pos, 0) + delta
            if x < 0:
                raise ShapeError(f"entry at {pos} would become negative")
            if x:
                band[pos] = x
            else:
                del band[pos]
        return SignedMat(self.n, band, -self.sign if flip_sign else self.sign,
                         _validated=True)

    def with_sign(self, sign: int) -> "SignedMat":
        return SignedMat(self.n, self._band, sign, _validated=True)

    # -- entry access ---------------------------------------------------------

    def entry(self, i: int, j: int) -> int:
        return self._band.get(_window_pos(self.n, i, j), 0)

    def window_items(self):
        return self._key

    def row_entries(self, i: int):
        """All (j, value) in row i (any i in Z), via the periodic shift."""
        wi = (i - 1) % self.n + 1
        shift = wi - i
        return [(j - shift, x) for (k, j), x in self._band.items() if k == wi]

    @property
    def r(self) -> int:
        return self.n // 2

    def is_diagonal(self) -> bool:
        return all(i == j for i, j in self._band)

    def column_spread(self) -> int:
        return max((abs(j - i) for i, j in self._band), default=0)

    # -- hashing --------------------------------------------------------------

    def __hash__(self):
        return self._hash

    def __eq__(self, other):
        return (isinstance(other, SignedMat) and self.n == other.n
                and self.sign == other.sign and self._key == other._key)

    def __repr__(self):
        sg = "+" if self.sign == 1 else "-"
        ent = ", ".join(f"({i},{j}):{x}" for (i, j), x in self._key)
        return f"SignedMat(n={self.n}, d={self.d}, {sg}, {{{ent}}})"

    # -- serialization ----------------------------------------------------------

    def to_json(self) -> dict:
        reps = {}
        for (i, j), x in self._band.items():
            rep = min((i, j), _fold_pos(self.n, i, j))
            reps[rep] = x
        return {
            "n": self.n,
            "d": self.d,
            "sign": "+" if self.sign == 1 else "-",
            "entries": [[i, j, x] for (i, j), x in sorted(reps.items())],
        }

    @staticmethod
    def from_json(data) -> "SignedMat":
        n = int(data["n"])
        sign = 1 if data["sign"] == "+" else -1
        band: dict = {}
        for i, j, x in data["entries"]:
            for pos in {_window_pos(n, i, j), _fold_pos(n, i, j)}:
                band[pos] = band.get(pos, 0) + int(x)
        m = SignedMat(n, band, sign)
        if "d" in data and m.d != int(data["d"]):
            raise MatrixError("window sum disagrees with declared d")
        return m


class MatA:
    """Periodic type A matrix: band on rows [1, n], window sum d."""

    __slots__ = ("n", "d", "_band", "_key", "_hash")

    def __init__(self, n: int, band: dict, _validated: bool = False):
        self.n = n
        self._band = band
        self._key = tuple(sorted(band.items()))
        self._hash = hash((n, self._key))
        self.d = sum(band.values())
        if not _validated:
            for (i, j), x in band.items():
                if not 1 <= i <= n:
                    raise MatrixError(f"row {i} outside window [1, {n}]")
                if x <= 0:
                    raise MatrixError("stored entries must be positive")

    @staticmethod
    def from_window(n: int, entries: dict) -> "MatA":
        return MatA(n, {pos: int(v) for pos, v in entries.items() if v})

    @staticmethod
    def diagonal(weight: WeightA) -> "MatA":
        band = {(i, i): weight.entries[i - 1]
                for i in range(1, weight.n + 1) if weight.entries[i - 1]}
        return MatA(weight.n, band, _validated=True)

    def add_unit(self, i: int, j: int, delta: int) -> "MatA":
        band = dict(self._band)
        pos = _window_pos(self.n, i, j)
        x = band.get(pos, 0) + delta
        if x < 0:
            raise ShapeError(f"entry at {pos} would become negative")
        if x:
            band[pos] = x
        else:
            del band[pos]
        return MatA(self.n, band, _validated=True)

    def entry(self, i: int, j: int) -> int:
        return self._band.get(_window_pos(self.n, i, j), 0)

    def window_items(self):
        return self._key

    def row_entries(self, i: int):
        wi = (i - 1) % self.n + 1
        shift = wi - i
        return [(j - shift, x) for (k, j), x in self._band.items() if k == wi]

    def is_diagonal(self) -> bool:
        return all(i == j for i, j in self._band)

    def column_spread(self) -> int:
        return max((abs(j - i) for i, j in self._band), default=0)

    def __hash__(self):
        return self._hash

    def __eq__(self, other):
        return isinstance(other, MatA) and self.n == other.n and self._key == other._key

    def __repr__(self):
        ent = ", ".join(f"({i},{j}):{x}" for (i, j), x in self._key)
        return f"MatA(n={self.n}, d={self.d}, {{{ent}}})"

    def to_json(self) -> dict:
        return {"n": self.n, "d": self.d,
                "entries": [[i, j, x] for (i, j), x in self._key]}

    @staticmethod
    def from_json(data) -> "MatA":
        n = int(data["n"])
        band = {(int(i), int(j)): int(x) for i, j, x in data["entries"]}
        m = MatA(n, band)
        if "d" in data and m.d != int(data["d"]):
            raise MatrixError("window sum disagrees with declared d")
        return m


# ---------------------------------------------------------------------------
# statistics
# ---------------------------------------------------------------------------

def row_col(m):
    """Row and column sum vectors, folded to the appropriate weight type."""
    n = m.n
    ro = [0] * n
    co = [0] * n
    for (i, j), x in m.window_items():
        ro[i - 1] += x
        co[(j - 1) % n] += x
    if isinstance(m, SignedMat):
        r = n // 2
        for name, vec in (("row", ro), ("column", co)):
            for i in range(r):
                if vec[i] != vec[n - 1 - i]:
                    raise MatrixError(f"{name} sums are not fold symmetric")
        return WeightD(n, tuple(ro[:r])), WeightD(n, tuple(co[:r]))
    return WeightA(n, tuple(ro)), WeightA(n, tuple(co))


def ro(m):
    return row_col(m)[0]


def co(m):
    return row_col(m)[1]


def _pairs_quadratic(m) -> int:
    """sum over window (i,j) of a_ij * #{(k,l) <= periodic copies : k <= i, l > j}.

    The shift count for a window entry (k0, l0) against (i, j) is the number
    of integers s with k0 + sn <= i and l0 + sn > j, which is
    floor((i-k0)/n) - floor((j-l0)/n) when positive.
    """
    n = m.n
    items = m.window_items()
    total = 0
    for (i, j), x in items:
        sub = 0
        for (k0, l0), y in items:
            cnt = (i - k0) // n - (j - l0) // n
            if cnt > 0:
                sub += y * cnt
        total += x * sub
    return total


def _crossing_count(m, row_ge: int, col_lt: int) -> int:
    """sum of entries with i >= row_ge and j < col_lt over the full plane."""
    n = m.n
    total = 0
    for (i0, j0), x in m.window_items():
        hi = (col_lt - 1 - j0) // n          # s <= this from j0 + sn <= col_lt - 1
        lo = _ceil_div(row_ge - i0, n)       # s >= this from i0 + sn >= row_ge
        if hi >= lo:
            total += x * (hi - lo + 1)
    return total


def dim_d(m: SignedMat) -> int:
    """Orbit dimension d(a) for a signed matrix.

    Computed exactly: the quadratic sum and the two correction terms are
    evaluated by counting periodic shifts in closed form, so no truncation
    margin enters.
    """
    r = m.n // 2
    val = _pairs_quadratic(m) - _crossing_count(m, 1, 1) - _crossing_count(m, r + 1, r + 1)
    if val % 2 or val < 0:
        raise MatrixError(f"dimension formula gave non-integral or negative value {val}/2")
    return val // 2


def dim_a(m: MatA) -> int:
    """Type A orbit dimension: the quadratic sum alone."""
    return _pairs_quadratic(m)


def component_parity(m) -> int:
    """Parity deciding whether the two flags of the orbit share a component.

    This is the parity of  sum_{i<=0<j} a_ij + sum_{i<=r<j} a_ij, the analogue
    of the evenness condition defining the component split.
    """
    n = m.n
    r = n // 2
    total = 0
    for (i0, j0), x in m.window_items():
        for row_le, col_gt in ((0, 0), (r, r)):
            hi = (row_le - i0) // n              # i0 + sn <= row_le
            lo = _ceil_div(col_gt + 1 - j0, n)   # j0 + sn >= col_gt + 1
            if hi >= lo:
                total += x * (hi - lo + 1)
    return total % 2


def transpose(m: SignedMat) -> SignedMat:
    """The anti-automorphism companion: (A, s) -> (A^t, s') with the
    sign flipped exactly when the two flags lie in different components."""
    band = {}
    for (i, j), x in m.window_items():
        band[_window_pos(m.n, j, i)] = x
    sign = m.sign if component_parity(m) == 0 else -m.sign
    return SignedMat(m.n, band, sign, _validated=True)


def is_aperiodic(m) -> bool:
    """True iff every off-diagonal stripe p has a zero entry a_{i,i+p}."""
    n = m.n
    stripes: dict[int, int] = {}
    for (i, j), _ in m.window_items():
        p = j - i
        if p:
            stripes[p] = stripes.get(p, 0) + 1
    full = {p for p, cnt in stripes.items()
            if all(m.entry(i, i + p) for i in range(1, n + 1))}
    return not full


def full_stripes(m) -> list[int]:
    """Offsets p != 0 whose stripe is everywhere nonzero (empty iff aperiodic)."""
    n = m.n
    offsets = sorted({j - i for (i, j), _ in m.window_items() if j != i})
    return [p for p in offsets if all(m.entry(i, i + p) for i in range(1, n + 1))]


def _corner_sum(m, i: int, j: int) -> int:
    """sigma(i, j) = sum of entries with row >= i, col <= j."""
    n = m.n
    total = 0
    for (k0, l0), x in m.window_items():
        hi = (j - l0) // n                   # l0 + sn <= j
        lo = _ceil_div(i - k0, n)            # k0 + sn >= i
        if hi >= lo:
            total += x * (hi - lo + 1)
    return total


LESS, EQUAL, GREATER, INCOMPARABLE = "less", "equal", "greater", "incomparable"


def leq_order(a: SignedMat, b: SignedMat) -> str:
    """Compare under the BLM-style partial order.

    a is below b iff the signs agree, row and column sums agree, and all
    corner sums sigma(i, j) = sum_{k>=i, l<=j} over i > j are dominated.
    """
    if a.n != b.n or a.d != b.d:
        raise MatrixError("order comparison requires matching (n, d)")
    if a == b:
        return EQUAL
    if a.sign != b.sign or row_col(a) != row_col(b):
        return INCOMPARABLE
    cols = [j for (_, j), _ in a.window_items()] + [j for (_, j), _ in b.window_items()]
    jmin = min(cols) - a.n - 1
    a_le_b = True
    b_le_a = True
    for i in range(1, a.n + 1):
        for j in range(jmin, i):
            sa = _corner_sum(a, i, j)
            sb = _corner_sum(b, i, j)
            if sa > sb:
                a_le_b = False
            if sb > sa:
                b_le_a = False
        if not a_le_b and not b_le_a:
            return INCOMPARABLE
    if a_le_b and b_le_a:
        # equal corner sums everywhere but a != b cannot happen: the corner
        # sums determine the matrix by inclusion-exclusion
        raise MatrixError("corner sums coincide for distinct matrices")
    return LESS if a_le_b else GREATER


def strictly_less(a: SignedMat, b: SignedMat) -> bool:
    return leq_order(a, b) == LESS


# ---------------------------------------------------------------------------
# Chevalley-type shapes
# ---------------------------------------------------------------------------

E, F, T0, TR = "E", "F", "T0", "TR"

_KINDS = (E, F, T0, TR)


def stripe_orbit(kind: str, h: int, r: int) -> tuple[int, int]:
    """The E_theta orbit carrying the off-diagonal stripe of each shape kind.

    E(h) raises the weight index h -> h+1 and lives on the orbit (h+1, h);
    F(h) lowers and lives on (h, h+1); the two T kinds sit at the fold nodes.
    """
    if kind == E:
        return (h + 1, h)
    if kind == F:
        return (h, h + 1)
    if kind == T0:
        return (0, 1)
    if kind == TR:
        return (r, r + 1)
    raise MatrixError(f"unknown shape kind {kind!r}")


def _stripe_col_index(kind: str, h: int, r: int) -> int:
    # folded weight entry hit by both window columns of the stripe orbit
    if kind == E:
        return h
    if kind == F:
        return h + 1
    if kind == T0:
        return 1
    return r


def shape(kind: str, h: int, R: int, co_target: WeightD, sign_in: int) -> SignedMat:
    """The unique shape with matrix = diagonal + R*E_theta and co = co_target.

    For E/F kinds the sign equals sign_in; a T step flips the component of the
    first flag, so T shapes flip the sign when R is odd.  Raises ShapeError
    when the forced diagonal entry would be negative.
    """
    n, r = co_target.n, co_target.r
    if R < 1:
        raise MatrixError("shape multiplicity R must be >= 1")
    if kind in (E, F) and not 1 <= h <= r - 1:
        raise MatrixError(f"E/F index h={h} outside [1, {r - 1}]")
    diag = co_target.bump(_stripe_col_index(kind, h, r), -R)
    sign = sign_in if kind in (E, F) else (sign_in if R % 2 == 0 else -sign_in)
    si, sj = stripe_orbit(kind, h, r)
    out = SignedMat.diagonal(diag, sign).add_theta(si, sj, R)
    return out


def remark_gap(m: SignedMat) -> int:
    """d(a) - d(a^t) expressed through row/column sums:
    one quarter of (sum of squared window row sums - squared column sums)."""
    rw, cw = row_col(m)
    num = sum(x * x for x in rw.window()) - sum(x * x for x in cw.window())
    if num % 4:
        raise MatrixError("transpose gap formula gave a non-integer")
    return num // 4


# ---------------------------------------------------------------------------
# enumeration helpers (used by scans and tests)
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def _orbit_reps(n: int, spread: int) -> tuple:
    reps = set()
    for i in range(1, n + 1):
        for j in range(i - spread, i + spread + 1):
            reps.add(min((i, j), _fold_pos(n, i, j)))
    return tuple(sorted(reps))


def signed_mats(n: int, d: int, spread: int, signs=(1, -1)):
    """All signed matrices at (n, d) with |j - i| <= spread on the support."""
    reps = _orbit_reps(n, spread)
    out = []
    for combo in combinations_with_replacement(reps, d):
        band: dict = {}
        for (i, j) in combo:
            for pos in (_window_pos(n, i, j), _fold_pos(n, i, j)):
                band[pos] = band.get(pos, 0) + 1
        for sign in signs:
            out.append(SignedMat(n, band, sign, _validated=True))
    return out


def aperiodic_signed_mats(n: int, d: int, spread: int, signs=(1, -1)):
    return [m for m in signed_mats(n, d, spread, signs) if is_aperiodic(m)]
