"""The affine type A Schur algebra: the comultiplication target.

Same engine pattern as the type D side but without folding or signs: periodic
matrices a_{ij} = a_{i+n,j+n} with window sum d, normalized standard basis
[A] = v^{-dim_a(A)} e_A, and Chevalley moves along single stripes E^{h,h+1}
(all indices mod n, so h = n is the same node as h = 0).
"""

from __future__ import annotations

from functools import lru_cache

from .laurent import LaurentPoly, ONE, ZERO, qbinom, v_power
from .matrixcore import (
    MatA, MatrixError, ShapeError, WeightA, dim_a, row_col, weights_a,
)


class ElementA:
    """Linear combination of normalized type A standard basis elements."""

    __slots__ = ("n", "d", "terms")

    def __init__(self, n: int, d: int, terms: dict | None = None):
        self.n = n
        self.d = d
        self.terms: dict[MatA, LaurentPoly] = {}
        if terms:
            for m, c in terms.items():
                if m.n != n or m.d != d:
                    raise MatrixError("term does not match the ambient (n, d)")
                if c:
                    self.terms[m] = c

    def __add__(self, other: "ElementA") -> "ElementA":
        if (self.n, self.d) != (other.n, other.d):
            raise MatrixError("cannot add elements of different (n, d)")
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = out.get(m, ZERO) + c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return ElementA(self.n, self.d, out)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c) -> "ElementA":
        c = c if isinstance(c, LaurentPoly) else LaurentPoly.const(c)
        if not c:
            return ElementA(self.n, self.d)
        return ElementA(self.n, self.d, {m: x * c for m, x in self.terms.items()})

    def coeff(self, m: MatA) -> LaurentPoly:
        return self.terms.get(m, ZERO)

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        return (isinstance(other, ElementA) and self.n == other.n
                and self.d == other.d and self.terms == other.terms)

    def __hash__(self):
        return hash((self.n, self.d, frozenset(self.terms.items())))

    def __repr__(self):
        if not self.terms:
            return f"ElementA(n={self.n}, d={self.d}, 0)"
        return " + ".join(f"({c})*[{m!r}]" for m, c in sorted(
            self.terms.items(), key=lambda t: t[0].window_items()))

    def to_json(self):
        items = sorted(self.terms.items(), key=lambda t: t[0].window_items())
        return {"n": self.n, "d": self.d,
                "terms": [[m.to_json(), c.to_json()] for m, c in items]}


def basis_elem_a(m: MatA) -> ElementA:
    return ElementA(m.n, m.d, {m: ONE})


def idempotent_a(weight: WeightA) -> ElementA:
    return basis_elem_a(MatA.diagonal(weight))


def identity_a(n: int, d: int) -> ElementA:
    return ElementA(n, d, {MatA.diagonal(w): ONE for w in weights_a(n, d)})


dim = lru_cache(maxsize=None)(dim_a)


@lru_cache(maxsize=None)
def _ro_a(m: MatA) -> WeightA:
    return row_col(m)[0]


RAISE, LOWER = "raise", "lower"


def shape_a(direction: str, h: int, R: int, co_target: WeightA) -> MatA:
    """diagonal + R*E^{h+1,h} (raise) or R*E^{h,h+1} (lower), co as requested."""
    n = co_target.n
    h = (h - 1) % n + 1
    col = h if direction == RAISE else h + 1
    diag = co_target.bump(col, -R)
    out = MatA.diagonal(WeightA(n, diag.entries))
    if direction == RAISE:
        return out.add_unit(h + 1, h, R)
    return out.add_unit(h, h + 1, R)


def _row_a(a: MatA, i: int) -> dict[int, int]:
    wi = (i - 1) % a.n + 1
    shift = wi - i
    return {j - shift: x for (k, j), x in a.window_items() if k == wi}


def _mult_e_term_a(direction: str, h: int, R: int, a: MatA):
    """e_shape * e_a at e-level; dict target -> coefficient in N[v^2]."""
    n = a.n
    h = (h - 1) % n + 1
    try:
        shape_a(direction, h, R, _ro_a(a))
    except ShapeError:
        return {}
    if direction == RAISE:
        src, dst = h, h + 1
    else:
        src, dst = h + 1, h
    row_src = _row_a(a, src)
    row_dst = _row_a(a, dst)
    from .schur_d import _bounded_compositions
    out: dict[MatA, LaurentPoly] = {}
    for t in _bounded_compositions(sorted(row_src.items()), R):
        exp = 0
        coeff = ONE
        for u, tu in t.items():
            if direction == RAISE:
                exp += 2 * tu * sum(x for j, x in row_dst.items() if j < u)
            else:
                exp += 2 * tu * sum(x for j, x in row_dst.items() if j > u)
            coeff = coeff * qbinom(row_dst.get(u, 0) + tu, tu)
        target = a
        for u, tu in t.items():
            target = target.add_unit(dst, u, tu).add_unit(src, u, -tu)
        out[target] = out.get(target, ZERO) + coeff * v_power(exp)
    return out


def mult_e_chev_a(direction: str, h: int, R: int, x: ElementA) -> ElementA:
    out: dict[MatA, LaurentPoly] = {}
    for a, c in x.terms.items():
        for target, g in _mult_e_term_a(direction, h, R, a).items():
            s = out.get(target, ZERO) + c * g
            if s:
                out[target] = s
            else:
                out.pop(target, None)
    return ElementA(x.n, x.d, out)


@lru_cache(maxsize=None)
def _bracket_term_a(direction: str, h: int, R: int, a: MatA):
    try:
        b = shape_a(direction, h, R, _ro_a(a))
    except ShapeError:
        return ()
    shift = -dim(b) - dim(a)
    return tuple((t, g.shift(shift + dim(t)))
                 for t, g in _mult_e_term_a(direction, h, R, a).items())


def mult_bracket_a(direction: str, h: int, R: int, x: ElementA) -> ElementA:
    out: dict[MatA, LaurentPoly] = {}
    for a, c in x.terms.items():
        for target, g in _bracket_term_a(direction, h, R, a):
            s = out.get(target, ZERO) + c * g
            if s:
                out[target] = s
            else:
                out.pop(target, None)
    return ElementA(x.n, x.d, out)


def apply_generator_a(sym, x: ElementA) -> ElementA:
    """Type A generators: ("e", i, R), ("f", i, R), ("h", a, s), ("k", i, s)."""
    fam = sym[0]
    n = x.n
    if fam == "e":
        return mult_bracket_a(RAISE, sym[1], sym[2], x)
    if fam == "f":
        return mult_bracket_a(LOWER, sym[1], sym[2], x)
    if fam == "h":
        _, a_idx, s = sym
        return ElementA(x.n, x.d, {
            m: c * v_power(s * _ro_a(m).at(a_idx)) for m, c in x.terms.items()})
    if fam == "k":
        _, i, s = sym
        return ElementA(x.n, x.d, {
            m: c * v_power(s * (_ro_a(m).at(i + 1) - _ro_a(m).at(i)))
            for m, c in x.terms.items()})
    raise MatrixError(f"unknown type A generator {sym!r}")


def apply_word_a_to(word, x: ElementA) -> ElementA:
    for sym in reversed(word):
        x = apply_generator_a(sym, x)
    return x


def apply_word_a(word, n: int, d: int) -> ElementA:
    return apply_word_a_to(word, identity_a(n, d))


def sym_e(i: int, R: int = 1):
    return ("e", i, R)


def sym_f(i: int, R: int = 1):
    return ("f", i, R)


def sym_h(a: int, s: int = 1):
    return ("h", a, s)


def sym_k(i: int, s: int = 1):
    return ("k", i, s)


def kdiff_a(i: int, x: ElementA) -> ElementA:
    from .laurent import exact_div
    den = v_power(1) - v_power(-1)
    out = {}
    for m, c in x.terms.items():
        k = _ro_a(m).at(i + 1) - _ro_a(m).at(i)
        s = exact_div(v_power(k) - v_power(-k), den)
        if s:
            out[m] = c * s
    return ElementA(x.n, x.d, out)
