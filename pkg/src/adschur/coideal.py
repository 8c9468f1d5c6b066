"""Generator-level comultiplication into (type D) x (type A) Schur algebras.

The comultiplication and the embedding into the type A algebra are given on
generators by finite tables; words are evaluated by multiplying the tensor
images symbol by symbol, each tensor factor realized through the convolution
engines against the identity.  J projections are not in the domain.
"""

from __future__ import annotations

from functools import lru_cache

from .laurent import LaurentPoly, ONE, ZERO, exact_div, v_power
from .matrixcore import MatrixError
from .schur_a import (
    ElementA, apply_word_a_to, basis_elem_a, identity_a, sym_e, sym_f, sym_k,
)
from .schur_d import ElementD, apply_word_to, basis_elem, identity


class CoidealDomainError(MatrixError):
    """Symbol outside the coideal subalgebra (J projections, divided powers)."""


def _amod(n: int, i: int) -> int:
    return (i - 1) % n + 1


def delta_gen(sym, n: int):
    """Tensor image of one generator: a list of (scalar, dword, aword)."""
    fam = sym[0]
    r = n // 2
    if fam == "J":
        raise CoidealDomainError("J projections are not in the coideal domain")
    if fam in ("E", "F", "T0", "TR") and sym[2] != 1:
        raise CoidealDomainError("comultiplication table covers single powers only")
    if fam == "E":
        i = sym[1]
        return [
            (ONE, (("E", i, 1),), (sym_k(i),)),
            (ONE, (), (sym_e(i),)),
            (ONE, (("K", i, 1),), (sym_f(_amod(n, n - i)), sym_k(i))),
        ]
    if fam == "F":
        i = sym[1]
        return [
            (ONE, (("F", i, 1),), (sym_k(_amod(n, n - i)),)),
            (ONE, (("K", i, -1),), (sym_k(_amod(n, n - i)), sym_f(i))),
            (ONE, (), (sym_e(_amod(n, n - i)),)),
        ]
    if fam == "T0":
        return [
            (ONE, (("T0", 0, 1),), (sym_k(n),)),
            (ONE, (), (sym_e(n),)),
            (v_power(-1), (), (sym_f(n), sym_k(n))),
        ]
    if fam == "TR":
        return [
            (ONE, (("TR", 0, 1),), (sym_k(r),)),
            (ONE, (), (sym_e(r),)),
            (v_power(-1), (), (sym_f(r), sym_k(r))),
        ]
    if fam == "K":
        _, i, s = sym
        return [(ONE, (("K", i, s),),
                 (sym_k(i, s), sym_k(_amod(n, n - i), -s)))]
    raise CoidealDomainError(f"no comultiplication table for {sym!r}")


def delta_a_gen(sym, n: int):
    """Type A comultiplication table: (scalar, left aword, right aword)."""
    fam = sym[0]
    if fam == "e":
        if sym[2] != 1:
            raise CoidealDomainError("table covers single powers only")
        i = sym[1]
        return [(ONE, (sym_e(i),), (sym_k(i),)), (ONE, (), (sym_e(i),))]
    if fam == "f":
        if sym[2] != 1:
            raise CoidealDomainError("table covers single powers only")
        i = sym[1]
        return [(ONE, (sym_f(i),), ()), (ONE, (sym_k(i, -1),), (sym_f(i),))]
    if fam == "k":
        _, i, s = sym
        return [(ONE, (sym_k(i, s),), (sym_k(i, s),))]
    raise CoidealDomainError(f"no type A comultiplication for {sym!r}")


def jmath_gen(sym, n: int):
    """The embedding table into the type A algebra: (scalar, aword) parts."""
    fam = sym[0]
    r = n // 2
    if fam == "J":
        raise CoidealDomainError("J projections have no type A image")
    if fam in ("E", "F", "T0", "TR") and sym[2] != 1:
        raise CoidealDomainError("embedding table covers single powers only")
    if fam == "E":
        i = sym[1]
        return [(ONE, (sym_e(i),)), (ONE, (sym_k(i), sym_f(_amod(n, n - i))))]
    if fam == "F":
        i = sym[1]
        return [(ONE, (sym_e(_amod(n, n - i)),)),
                (ONE, (sym_f(i), sym_k(_amod(n, n - i))))]
    if fam == "T0":
        return [(ONE, (sym_e(n),)), (v_power(-1), (sym_f(n), sym_k(n)))]
    if fam == "TR":
        return [(ONE, (sym_e(r),)), (v_power(-1), (sym_f(r), sym_k(r)))]
    if fam == "K":
        _, i, s = sym
        return [(ONE, (sym_k(i, s), sym_k(_amod(n, n - i), -s)))]
    raise CoidealDomainError(f"no embedding table for {sym!r}")


# ---------------------------------------------------------------------------
# tensor elements
# ---------------------------------------------------------------------------

class TensorDA:
    """Finite sum over (SignedMat, MatA) basis pairs at (n; d', d'')."""

    __slots__ = ("n", "dp", "ds", "terms")

    def __init__(self, n: int, dp: int, ds: int, terms: dict | None = None):
        self.n = n
        self.dp = dp
        self.ds = ds
        self.terms = {k: v for k, v in (terms or {}).items() if v}

    def add_into(self, key, coeff):
        s = self.terms.get(key, ZERO) + coeff
        if s:
            self.terms[key] = s
        else:
            self.terms.pop(key, None)

    def scale(self, c) -> "TensorDA":
        return TensorDA(self.n, self.dp, self.ds,
                        {k: v * c for k, v in self.terms.items()})

    def __add__(self, other):
        out = TensorDA(self.n, self.dp, self.ds, dict(self.terms))
        for k, v in other.terms.items():
            out.add_into(k, v)
        return out

    def __sub__(self, other):
        return self + other.scale(-1)

    def __eq__(self, other):
        return (isinstance(other, TensorDA)
                and (self.n, self.dp, self.ds) == (other.n, other.dp, other.ds)
                and self.terms == other.terms)

    def is_zero(self):
        return not self.terms

    def to_json(self):
        items = sorted(self.terms.items(),
                       key=lambda kv: (repr(kv[0][0]), repr(kv[0][1])))
        return {"n": self.n, "dprime": self.dp, "dsecond": self.ds,
                "terms": [[m.to_json(), am.to_json(), c.to_json()]
                          for (m, am), c in items]}


class Tensor3:
    """Triple tensors for the coassociativity check."""

    __slots__ = ("shape", "terms")

    def __init__(self, shape, terms: dict | None = None):
        self.shape = shape
        self.terms = {k: v for k, v in (terms or {}).items() if v}

    def add_into(self, key, coeff):
        s = self.terms.get(key, ZERO) + coeff
        if s:
            self.terms[key] = s
        else:
            self.terms.pop(key, None)

    def __eq__(self, other):
        return (isinstance(other, Tensor3) and self.shape == other.shape
                and self.terms == other.terms)


def identity_tensor(n: int, dp: int, ds: int) -> TensorDA:
    out = TensorDA(n, dp, ds)
    for m, c in identity(n, dp).terms.items():
        for am, ca in identity_a(n, ds).terms.items():
            out.add_into((m, am), c * ca)
    return out


@lru_cache(maxsize=None)
def _left_action(word, mat):
    return apply_word_to(word, basis_elem(mat))


@lru_cache(maxsize=None)
def _right_action(word, amat):
    return apply_word_a_to(word, basis_elem_a(amat))


def _apply_delta_sym(sym, t: TensorDA) -> TensorDA:
    out = TensorDA(t.n, t.dp, t.ds)
    parts = delta_gen(sym, t.n)
    for (m, am), c in t.terms.items():
        for scalar, dword, aword in parts:
            left = _left_action(dword, m)
            right = _right_action(aword, am)
            if left.is_zero() or right.is_zero():
                continue
            for m2, cl in left.terms.items():
                for am2, cr in right.terms.items():
                    out.add_into((m2, am2), c * scalar * cl * cr)
    return out


def _apply_kdiff_tensor(i: int, t: TensorDA) -> TensorDA:
    den = v_power(1) - v_power(-1)
    plus = _apply_delta_sym(("K", i, 1), t)
    minus = _apply_delta_sym(("K", i, -1), t)
    diff = plus - minus
    return TensorDA(t.n, t.dp, t.ds,
                    {k: exact_div(v, den) for k, v in diff.terms.items()})


def delta_word(word, n: int, dp: int, ds: int) -> TensorDA:
    """Evaluate the tensor image of a generator word against the identities."""
    t = identity_tensor(n, dp, ds)
    for sym in reversed(word):
        if sym[0] == "KDIFF":
            t = _apply_kdiff_tensor(sym[1], t)
        else:
            t = _apply_delta_sym(sym, t)
    return t


def delta_a_word(word, n: int, dp: int, ds: int):
    """Type A comultiplication image, evaluated on identity (x) identity."""
    terms = {}
    for m, c in identity_a(n, dp).terms.items():
        for am, ca in identity_a(n, ds).terms.items():
            terms[(m, am)] = c * ca
    for sym in reversed(word):
        out: dict = {}
        parts = delta_a_gen(sym, n)
        for (m, am), c in terms.items():
            for scalar, w1, w2 in parts:
                left = _right_action(w1, m)
                right = _right_action(w2, am)
                for m2, cl in left.terms.items():
                    for am2, cr in right.terms.items():
                        key = (m2, am2)
                        s = out.get(key, ZERO) + c * scalar * cl * cr
                        if s:
                            out[key] = s
                        else:
                            out.pop(key, None)
        terms = out
    return terms


def _expand_delta_word(word, n: int):
    """Symbolic expansion of the tensor image of a word: (scalar, dw, aw)."""
    parts = [(ONE, (), ())]
    for sym in word:
        new = []
        for scalar, dw, aw in parts:
            for s2, dw2, aw2 in delta_gen(sym, n):
                new.append((scalar * s2, dw + dw2, aw + aw2))
        parts = new
    return parts


def _expand_delta_a_word(word, n: int):
    parts = [(ONE, (), ())]
    for sym in word:
        new = []
        for scalar, w1, w2 in parts:
            for s2, u1, u2 in delta_a_gen(sym, n):
                new.append((scalar * s2, w1 + u1, w2 + u2))
        parts = new
    return parts


def coassoc_check(word, n: int, d1: int, d2: int, d3: int) -> bool:
    """(1 (x) Delta) Delta = (Delta (x) 1) Delta on the given word, evaluated
    exactly as triple tensors at (d1, d2, d3)."""
    route1 = Tensor3((n, d1, d2, d3))
    for scalar, dw, aw in _expand_delta_word(word, n):
        for s2, aw1, aw2 in _expand_delta_a_word(aw, n):
            _accumulate_triple(route1, scalar * s2, dw, aw1, aw2, n, d1, d2, d3)
    route2 = Tensor3((n, d1, d2, d3))
    for scalar, dw, aw in _expand_delta_word(word, n):
        for s2, dw1, aw1 in _expand_delta_word(dw, n):
            _accumulate_triple(route2, scalar * s2, dw1, aw1, aw, n, d1, d2, d3)
    return route1 == route2


def _accumulate_triple(acc: Tensor3, scalar, dword, aword1, aword2,
                       n, d1, d2, d3):
    left = apply_word_to(dword, identity(n, d1))
    mid = apply_word_a_to(aword1, identity_a(n, d2))
    right = apply_word_a_to(aword2, identity_a(n, d3))
    if left.is_zero() or mid.is_zero() or right.is_zero():
        return
    for m, cl in left.terms.items():
        for am1, cm in mid.terms.items():
            part = cl * cm * scalar
            for am2, cr in right.terms.items():
                acc.add_into((m, am1, am2), part * cr)


def jmath_word(word, n: int, d: int) -> ElementA:
    """Image in the type A algebra, evaluated against its identity."""
    x = identity_a(n, d)
    for sym in reversed(word):
        if sym[0] == "KDIFF":
            from .schur_a import kdiff_a
            plus = ElementA(n, d)
            den = v_power(1) - v_power(-1)
            a1 = _jmath_apply(("K", sym[1], 1), x, n)
            a2 = _jmath_apply(("K", sym[1], -1), x, n)
            diff = a1 - a2
            x = ElementA(n, d, {k: exact_div(v, den)
                                for k, v in diff.terms.items()})
        else:
            x = _jmath_apply(sym, x, n)
    return x


def _jmath_apply(sym, x: ElementA, n: int) -> ElementA:
    out = ElementA(x.n, x.d)
    for scalar, aword in jmath_gen(sym, n):
        out = out + apply_word_a_to(aword, x).scale(scalar)
    return out


def collapse_left_zero(t: TensorDA) -> ElementA:
    """Project a (d'=0) tensor onto its type A factor.

    The left factor must be supported on the two zero-weight idempotents with
    equal right cofactors; the common cofactor is returned.
    """
    if t.dp != 0:
        raise MatrixError("collapse requires d' = 0")
    per_sign: dict[int, dict] = {1: {}, -1: {}}
    for (m, am), c in t.terms.items():
        if not m.is_diagonal():
            raise MatrixError("left factor not diagonal at d' = 0")
        per_sign[m.sign][am] = per_sign[m.sign].get(am, ZERO) + c
    a_plus = ElementA(t.n, t.ds, per_sign[1])
    a_minus = ElementA(t.n, t.ds, per_sign[-1])
    if a_plus != a_minus:
        raise MatrixError("the two sign components disagree at d' = 0")
    return a_plus


# ---------------------------------------------------------------------------
# relation image suites
# ---------------------------------------------------------------------------

def _coideal_relations(n: int):
    """Defining relations without J projections (the coideal domain)."""
    from .schur_d import relation_table
    out = []
    for name, lhs, rhs in relation_table(n):
        words = [w for _, w in lhs] + [w for _, w in rhs]
        if any(sym[0] == "J" for w in words for sym in w):
            continue
        out.append((name, lhs, rhs))
    return out


def delta_relation_suite(n: int, dp: int, ds: int):
    """Evaluate both sides of each defining relation through the tensor map."""
    results = []
    for name, lhs, rhs in _coideal_relations(n):
        def side(ws):
            acc = TensorDA(n, dp, ds)
            for coeff, w in ws:
                acc = acc + delta_word(w, n, dp, ds).scale(coeff)
            return acc
        results.append((name, side(lhs) == side(rhs)))
    return results


def jmath_relation_suite(n: int, d: int):
    results = []
    for name, lhs, rhs in _coideal_relations(n):
        def side(ws):
            acc = ElementA(n, d)
            for coeff, w in ws:
                acc = acc + jmath_word(w, n, d).scale(coeff)
            return acc
        results.append((name, side(lhs) == side(rhs)))
    return results


def degeneration_check(word, n: int, d: int) -> bool:
    """Delta at d' = 0, left factor collapsed, equals the embedding image."""
    t = delta_word(word, n, 0, d)
    return collapse_left_zero(t) == jmath_word(word, n, d)
