"""Exact arithmetic in the ring Z[v, v^-1].

Every scalar in this package is a Laurent polynomial in the indeterminate v
with integer coefficients, stored sparsely as {exponent: coefficient}.
Coefficients are Python ints, so stabilization scans cannot overflow.

The quantum integers used throughout are the *unbalanced* ones,

    [a] = (v^{2a} - 1) / (v^2 - 1),

together with their binomial products [a, b] = prod_{i=1..b} [a-i+1]/[i].
"""

from __future__ import annotations

from functools import lru_cache
from typing import Iterable, Mapping


class ExactDivisionError(ArithmeticError):
    """Raised when a division in Z[v, v^-1] leaves a remainder."""


class LaurentPoly:
    """Immutable sparse element of Z[v, v^-1]."""

    __slots__ = ("_c", "_hash")

    def __init__(self, coeffs: Mapping[int, int] | Iterable[tuple[int, int]] = ()):
        c = dict(coeffs)
        self._c = {e: int(x) for e, x in c.items() if x != 0}
        self._hash = None

    # -- constructors ------------------------------------------------------

    @staticmethod
    def zero() -> "LaurentPoly":
        return _ZERO

    @staticmethod
    def one() -> "LaurentPoly":
        return _ONE

    @staticmethod
    def const(a: int) -> "LaurentPoly":
        return LaurentPoly({0: a})

    @staticmethod
    def v_power(k: int, coeff: int = 1) -> "LaurentPoly":
        return LaurentPoly({k: coeff})

    # -- basic queries -----------------------------------------------------

    def is_zero(self) -> bool:
        return not self._c

    def items(self):
        return self._c.items()

    def coeff(self, exponent: int) -> int:
        return self._c.get(exponent, 0)

    @property
    def degree(self) -> int:
        """Top exponent; raises on the zero polynomial."""
        return max(self._c)

    @property
    def valuation(self) -> int:
        return min(self._c)

    # -- ring structure ----------------------------------------------------

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        c = dict(self._c)
        for e, x in other._c.items():
            y = c.get(e, 0) + x
            if y:
                c[e] = y
            else:
                c.pop(e, None)
        return _wrap(c)

    __radd__ = __add__

    def __neg__(self):
        return _wrap({e: -x for e, x in self._c.items()})

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return _coerce(other) - self

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if not self._c or not other._c:
            return _ZERO
        a, b = self._c, other._c
        if len(a) > len(b):
            a, b = b, a
        c: dict[int, int] = {}
        for e1, x1 in a.items():
            for e2, x2 in b.items():
                e = e1 + e2
                y = c.get(e, 0) + x1 * x2
                if y:
                    c[e] = y
                else:
                    del c[e]
        return _wrap(c)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative powers are not defined for general elements")
        out = _ONE
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self._c == other._c

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._c.items()))
        return self._hash

    def __bool__(self):
        return bool(self._c)

    # -- involutions and specializations ------------------------------------

    def bar(self) -> "LaurentPoly":
        """The bar involution v -> v^-1."""
        return _wrap({-e: x for e, x in self._c.items()})

    def shift(self, k: int) -> "LaurentPoly":
        """Multiply by v^k."""
        if k == 0:
            return self
        return _wrap({e + k: x for e, x in self._c.items()})

    def specialize_v2(self, q: int) -> int:
        """Evaluate at v = sqrt(q), valid only when all exponents are even."""
        total = 0
        for e, x in self._c.items():
            if e % 2:
                raise ValueError(f"odd exponent {e} cannot be specialized at v^2={q}")
            total += x * q ** (e // 2)
        return total

    def has_nonneg_coeffs(self) -> bool:
        return all(x > 0 for x in self._c.values())

    # -- serialization -------------------------------------------------------

    def to_json(self) -> list[list[int]]:
        return [[e, x] for e, x in sorted(self._c.items())]

    @staticmethod
    def from_json(data) -> "LaurentPoly":
        return LaurentPoly({int(e): int(x) for e, x in data})

    def __str__(self):
        if not self._c:
            return "0"
        parts = []
        for e, x in sorted(self._c.items()):
            if e == 0:
                parts.append(str(x))
            else:
                head = "" if x == 1 else ("-" if x == -1 else f"{x}*")
                parts.append(f"{head}v^{e}" if e != 1 else f"{head}v")
        out = " + ".join(parts)
        return out.replace("+ -", "- ")

    def __repr__(self):
        return f"LaurentPoly({self})"


def _wrap(c: dict) -> LaurentPoly:
    p = LaurentPoly.__new__(LaurentPoly)
    p._c = c
    p._hash = None
    return p


def _coerce(x):
    if isinstance(x, LaurentPoly):
        return x
    if isinstance(x, int):
        return LaurentPoly({0: x}) if x else _ZERO
    return NotImplemented


_ZERO = LaurentPoly()
_ONE = LaurentPoly({0: 1})

ZERO = _ZERO
ONE = _ONE
V = LaurentPoly({1: 1})


def v_power(k: int) -> LaurentPoly:
    return LaurentPoly({k: 1})


@lru_cache(maxsize=None)
def qint(a: int) -> LaurentPoly:
    """The unbalanced quantum integer [a] = (v^{2a} - 1)/(v^2 - 1).

    Defined for every integer a; for a >= 1 this is 1 + v^2 + ... + v^{2(a-1)},
    for a <= -1 it is -(v^{-2} + v^{-4} + ... + v^{2a}).
    """
    if a == 0:
        return _ZERO
    if a > 0:
        return LaurentPoly({2 * i: 1 for i in range(a)})
    return LaurentPoly({2 * i: -1 for i in range(a, 0)})


@lru_cache(maxsize=None)
def qbinom(a: int, b: int) -> LaurentPoly:
    """The quantum binomial [a, b] = prod_{i=1..b} [a-i+1] / [i], b >= 0.

    The quotient is always exact in Z[v, v^-1]; inexactness indicates a bug.
    """
    if b < 0:
        raise ValueError("second argument of qbinom must be nonnegative")
    num = _ONE
    for i in range(1, b + 1):
        num = num * qint(a - i + 1)
    den = _ONE
    for i in range(1, b + 1):
        den = den * qint(i)
    return exact_div(num, den)


def bar(p: LaurentPoly) -> LaurentPoly:
    return p.bar()


def exact_div(num: LaurentPoly, den: LaurentPoly) -> LaurentPoly:
    """Exact division in Z[v, v^-1]; raises ExactDivisionError on remainder."""
    if den.is_zero():
        raise ZeroDivisionError("division of Laurent polynomials by zero")
    if num.is_zero():
        return _ZERO
    dc = dict(num._c)
    den_deg = den.degree
    den_lead = den.coeff(den_deg)
    quot: dict[int, int] = {}
    while dc:
        deg = max(dc)
        lead = dc[deg]
        q, r = divmod(lead, den_lead)
        if r:
            raise ExactDivisionError(f"leading coefficient {lead} not divisible by {den_lead}")
        e = deg - den_deg
        quot[e] = q
        for de, dx in den._c.items():
            ee = de + e
            y = dc.get(ee, 0) - q * dx
            if y:
                dc[ee] = y
            else:
                dc.pop(ee, None)
        if dc and max(dc) >= deg:
            raise ExactDivisionError("division did not reduce degree")
    return _wrap(quot)


_TERM_RE = None


def parse(text: str) -> LaurentPoly:
    """Parse the textual form, e.g. "3*v^-2 + 1 + 2*v^4"."""
    global _TERM_RE
    if _TERM_RE is None:
        import re
        _TERM_RE = re.compile(
            r"\s*([+-]?)\s*(?:(\d+)\s*\*?\s*)?(v(?:\^(-?\d+))?)?\s*")
    out: dict[int, int] = {}
    pos = 0
    s = text.strip()
    if not s or s == "0":
        return _ZERO
    while pos < len(s):
        m = _TERM_RE.match(s, pos)
        if not m or m.end() == pos or (m.group(2) is None and m.group(3) is None):
            raise ValueError(f"cannot parse Laurent polynomial near {s[pos:]!r}")
        sign = -1 if m.group(1) == "-" else 1
        coeff = sign * (int(m.group(2)) if m.group(2) else 1)
        if m.group(3):
            exp = int(m.group(4)) if m.group(4) else 1
        else:
            exp = 0
        out[exp] = out.get(exp, 0) + coeff
        pos = m.end()
    return LaurentPoly(out)
