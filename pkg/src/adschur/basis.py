"""Aperiodic monomial basis of the Lusztig algebra.

For an aperiodic signed matrix a, a product of Chevalley-type standard basis
elements zeta_a = [b_1] * ... * [b_m] is constructed whose expansion is
[a] plus strictly lower terms in the partial order.  The construction peels
the outermost band stripe: find the widest offset band, a transition point
where it vanishes, slide the row mass down one row, and recurse; the weighted
band statistic sum |j - i| a_{ij} strictly decreases, so this terminates.
"""

from __future__ import annotations

from dataclasses import dataclass

from .laurent import ONE
from .matrixcore import (
    E, F, T0, TR,
    LESS, MatrixError, SignedMat, WeightD,
    full_stripes, is_aperiodic, leq_order, row_col, shape,
)
from .schur_d import ElementD, basis_elem, mult_bracket


class AperiodicityError(MatrixError):
    """Raised when a monomial plan is requested for a non-aperiodic matrix."""


@dataclass(frozen=True)
class PlanFactor:
    kind: str          # E / F / T0 / TR
    h: int             # node index for E/F kinds, 0 otherwise
    R: int             # stripe multiplicity
    co_target: WeightD
    sign_in: int       # sign of the element the factor multiplies

    def shape(self) -> SignedMat:
        return shape(self.kind, self.h, self.R, self.co_target, self.sign_in)


@dataclass(frozen=True)
class MonomialPlan:
    target: SignedMat
    factors: tuple[PlanFactor, ...]
    base: SignedMat    # the diagonal idempotent the factors act on

    def to_json(self):
        return {
            "target": self.target.to_json(),
            "base": self.base.to_json(),
            "factors": [{"kind": f.kind, "h": f.h, "R": f.R,
                         "co": list(f.co_target.entries),
                         "sign_in": f.sign_in} for f in self.factors],
        }


def psi_weight(a: SignedMat) -> int:
    """The band statistic sum_{i in [1,n], j > i} (j - i) a_{ij}."""
    return sum((j - i) * x for (i, j), x in a.window_items() if j > i)


def _node_kind(k: int, n: int):
    """Classify the stripe orbit (k-1, k) by its fold-reduced node.

    Returns (kind, h): the stripe E_theta^{k-1,k} equals an F stripe at h for
    k-1 in [1, r-1], the E stripe at h for the mirrored rows, or a T node.
    """
    r = n // 2
    k1 = (k - 1) % n       # the row k-1 reduced to [0, n-1]
    if k1 == 0:
        return T0, 0
    if k1 == r:
        return TR, 0
    if 1 <= k1 <= r - 1:
        return F, k1
    # rows r+1 .. n-1: E_theta^{k-1,k} = E_theta^{n+1-k, n-k}, an E stripe
    return E, n - k1


def f_reduce(k: int, s: int, t: int, a: SignedMat) -> SignedMat:
    """Slide all mass of row k-1 in columns [s, t] down to row k.

    The sign flips when the slide crosses a T node (k = 1 mod r) and the moved
    mass is odd, matching the single-T-step sign bookkeeping.
    """
    moved = 0
    out = a
    for j, x in a.row_entries(k - 1):
        if s <= j <= t:
            out = out.add_theta(k - 1, j, -x).add_theta(k, j, x)
            moved += x
    kind, _ = _node_kind(k, a.n)
    if kind in (T0, TR) and moved % 2 == 1:
        out = out.with_sign(-out.sign)
    return out


def monomial_sequence(a: SignedMat) -> MonomialPlan:
    """A plan whose expansion is [a] + strictly lower terms."""
    if not is_aperiodic(a):
        raise AperiodicityError(
            f"matrix has full stripes {full_stripes(a)}; no aperiodic monomial")
    factors = []
    cur = a
    guard = psi_weight(a) + 1
    while not cur.is_diagonal():
        guard -= 1
        if guard < 0:
            raise MatrixError("monomial reduction failed to terminate")
        m = max(j - i for (i, j), _ in cur.window_items() if j != i)
        if m <= 0:
            raise MatrixError("non-diagonal matrix with empty upper band")
        k = None
        for kk in range(1, cur.n + 1):
            if cur.entry(kk, kk + m) == 0 and cur.entry(kk - 1, kk + m - 1) != 0:
                k = kk
                break
        if k is None:
            raise MatrixError("aperiodic matrix has no band transition point")
        row_cols = [j for j, _ in cur.row_entries(k - 1)]
        u = None
        for s in range(k + m - 1, min(row_cols) - 1, -1):
            if is_aperiodic(f_reduce(k, s, k + m - 1, cur)):
                u = s
                break
        if u is None:
            raise MatrixError("no aperiodic reduction found; tie-break failed")
        red = f_reduce(k, u, k + m - 1, cur)
        if psi_weight(red) >= psi_weight(cur):
            raise MatrixError("band statistic failed to decrease")
        moved = sum(x for j, x in cur.row_entries(k - 1) if u <= j <= k + m - 1)
        kind, h = _node_kind(k, cur.n)
        factors.append(PlanFactor(kind, h, moved, row_col(red)[0], red.sign))
        cur = red
    return MonomialPlan(a, tuple(factors), cur)


def expand_zeta(plan: MonomialPlan) -> ElementD:
    """Multiply the plan factors against the base idempotent."""
    x = basis_elem(plan.base)
    for f in reversed(plan.factors):
        x = mult_bracket(f.kind, f.h, f.R, x)
    return x


@dataclass(frozen=True)
class LeadingReport:
    target: SignedMat
    leading_ok: bool
    lower_ok: bool
    term_count: int
    offenders: tuple

    @property
    def ok(self) -> bool:
        return self.leading_ok and self.lower_ok


def check_triangular(target: SignedMat, expansion: ElementD) -> LeadingReport:
    """Assert expansion = [target] + strictly lower terms."""
    lead = expansion.coeff(target)
    leading_ok = lead == ONE
    offenders = []
    for m in expansion.terms:
        if m == target:
            continue
        if leq_order(m, target) != LESS:
            offenders.append(m)
    return LeadingReport(target, leading_ok, not offenders,
                         len(expansion.terms), tuple(offenders))


def check_leading(a: SignedMat) -> LeadingReport:
    plan = monomial_sequence(a)
    return check_triangular(a, expand_zeta(plan))
