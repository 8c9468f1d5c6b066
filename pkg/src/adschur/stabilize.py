"""Transfer maps, diagonal shifts, and stabilization scans.

Shifting a signed matrix by pI adds an even p to every diagonal entry and
raises the degree from d to d + pn/2.  The monomial plan of a shifted
aperiodic matrix has the same factor kinds and multiplicities (the off
diagonal band is untouched), so the coefficient of [b + pI] in the expansion
of zeta_{a + pI} is a function of p; the paper asserts it is eventually
constant, and the scan reports the empirical onset.

Bases b live in the stable world: subtracting pI from a window term may leave
negative diagonal entries, which is fine for bookkeeping (only b + pI for
large p needs to be an honest matrix).
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .laurent import LaurentPoly, ZERO
from .matrixcore import MatrixError, SignedMat, is_aperiodic
from .basis import expand_zeta, monomial_sequence
from .schur_d import ElementD


def shift_matrix(a: SignedMat, p: int) -> SignedMat:
    """a + pI: add the even integer p to every diagonal entry."""
    if p % 2:
        raise MatrixError("diagonal shifts must be even")
    if p == 0:
        return a
    out = a
    for i in range(1, a.n // 2 + 1):
        out = out.add_theta(i, i, p)
    return out


def unshift_matrix(a: SignedMat, p: int) -> SignedMat:
    return shift_matrix(a, -p)


def stable_base(m: SignedMat, p: int):
    """The equivalence-class key of m - pI, diagonal entries allowed negative.

    Returns (sign, off-diagonal window entries, diagonal window vector - p).
    """
    off = tuple(sorted(((i, j), x) for (i, j), x in m.window_items() if i != j))
    diag = tuple(m.entry(i, i) - p for i in range(1, m.n + 1))
    return (m.sign, off, diag)


def base_json(key) -> dict:
    sign, off, diag = key
    return {"sign": "+" if sign == 1 else "-",
            "offdiag": [[i, j, x] for (i, j), x in off],
            "diagonal": list(diag)}


def transfer_word(word, d: int, n: int):
    """The transfer map fixes every generator symbol; it only rebinds the
    evaluation degree from d to d - n."""
    if d - n < 0:
        raise MatrixError(f"transfer would reach negative degree {d - n}")
    return word, d - n


@dataclass
class StableFamily:
    base: SignedMat
    expansions: dict = field(default_factory=dict)   # even p -> ElementD

    def add(self, p: int, elem: ElementD):
        want = self.base.d + (p // 2) * self.base.n
        if elem.d != want:
            raise MatrixError("expansion degree does not match the shift")
        self.expansions[p] = elem


@dataclass
class ScanReport:
    base: SignedMat
    ps: tuple
    table: dict          # stable base key -> list of coefficients per p
    onset: int | None    # least p0 with all coefficients constant from p0 on

    def stabilized(self) -> bool:
        return self.onset is not None

    def to_json(self):
        rows = []
        for key, coeffs in sorted(self.table.items(), key=repr):
            rows.append({"term": base_json(key),
                         "coeffs": [c.to_json() for c in coeffs]})
        return {"base": self.base.to_json(), "shifts": list(self.ps),
                "terms": rows, "onset": self.onset}


def stabilization_scan(a: SignedMat, p_max: int = 6) -> ScanReport:
    """Expand zeta_{a + pI} for p = 0, 2, ..., p_max and track coefficients.

    Terms are matched across degrees by subtracting pI; a base absent at some
    shift is tracked with coefficient zero there, never dropped.
    """
    if p_max % 2:
        raise MatrixError("p_max must be even")
    if not is_aperiodic(a):
        raise MatrixError("stabilization scans require an aperiodic base")
    ps = tuple(range(0, p_max + 1, 2))
    per_p = []
    for p in ps:
        expansion = expand_zeta(monomial_sequence(shift_matrix(a, p)))
        per_p.append({stable_base(m, p): c for m, c in expansion.terms.items()})
    all_bases = sorted({k for bucket in per_p for k in bucket}, key=repr)
    table = {k: [bucket.get(k, ZERO) for bucket in per_p] for k in all_bases}
    onset = None
    for idx in range(len(ps)):
        tails = (coeffs[idx:] for coeffs in table.values())
        if all(all(c == tail[0] for c in tail) for tail in map(list, tails)):
            onset = ps[idx]
            break
    return ScanReport(a, ps, table, onset)
