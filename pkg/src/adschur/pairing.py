"""The bilinear form on generator-word elements via adjunction stripping.

The form is diagonal on the normalized standard basis with
< [D_l^s], [D_l^s] > = 1, so a pairing of two word elements is computed by
peeling generators off the left word, moving their adjoints onto the right
element, and finally reading one coefficient:

    < g x, y > = < x, adjoint(g) y >,     < 1_l^s, z > = coeff of [D_l^s] in z.
"""

from __future__ import annotations

from dataclasses import dataclass

from .laurent import LaurentPoly, ONE, ZERO, v_power
from .matrixcore import MatrixError, SignedMat, WeightD
from .schur_d import ElementD, apply_word_to, basis_elem, idempotent


class AdjointError(MatrixError):
    """No printed adjoint exists (divided powers)."""


def adjoint(sym):
    """The adjoint of one generator as (scalar, word).

    E_i and F_i twist by the Cartan element; T_0, T_r, K_i and the J
    projections are self-adjoint.  Divided powers are rejected: the source
    prints no adjoint for them.
    """
    fam = sym[0]
    if fam in ("E", "F", "T0", "TR") and sym[2] != 1:
        raise AdjointError(f"no adjoint available for divided power {sym!r}")
    if fam == "E":
        i = sym[1]
        return (v_power(1), (("K", i, 1), ("F", i, 1)))
    if fam == "F":
        i = sym[1]
        return (v_power(-1), (("E", i, 1), ("K", i, -1)))
    if fam in ("T0", "TR", "K", "H", "J"):
        return (ONE, (sym,))
    raise AdjointError(f"unknown generator {sym!r}")


@dataclass(frozen=True)
class PairedQuery:
    left_word: tuple
    left_weight: WeightD
    left_sign: int
    right_word: tuple
    right_weight: WeightD
    right_sign: int
    d: int

    def swap(self) -> "PairedQuery":
        return PairedQuery(self.right_word, self.right_weight, self.right_sign,
                           self.left_word, self.left_weight, self.left_sign,
                           self.d)


def pair(query: PairedQuery) -> LaurentPoly:
    """Evaluate the form on (left word applied to an idempotent, same on the
    right), stripping the left word onto the right element."""
    n = query.left_weight.n
    if query.left_weight.d != query.d or query.right_weight.d != query.d:
        raise MatrixError("weights do not match the pairing degree")
    y = apply_word_to(query.right_word,
                      idempotent(query.right_weight, query.right_sign))
    scalar = ONE
    for sym in query.left_word:
        s, word = adjoint(sym)
        scalar = scalar * s
        y = apply_word_to(word, y)
    target = SignedMat.diagonal(query.left_weight, query.left_sign)
    return scalar * y.coeff(target)


def pair_elements(x: ElementD, y: ElementD) -> LaurentPoly:
    """The diagonal form on two expanded elements: sum over the shared
    standard basis support of the coefficient products.

    Only valid when x is supported on diagonal matrices (the base case); used
    for cross-checking the stripping route.
    """
    total = ZERO
    for m, c in x.terms.items():
        if not m.is_diagonal():
            raise MatrixError("direct pairing needs a diagonal left element")
        total = total + c * y.coeff(m)
    return total
