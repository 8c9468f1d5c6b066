"""Exact computations in the Schur and Lusztig algebras of affine type D.

Subpackages:

* laurent     -- exact Z[v, v^-1] arithmetic
* matrixcore  -- folded periodic matrices, weights, orders, shapes
* schur_d     -- the type D convolution engine and generator action
* schur_a     -- the affine type A companion algebra
* basis       -- aperiodic monomial basis and triangularity checks
* coideal     -- comultiplication, coassociativity, the embedding into type A
* stabilize   -- transfer maps and stabilization scans
* pairing     -- the bilinear form via adjunction stripping
* ff_oracle   -- finite-field brute force over lattice flags
* cli         -- batch front door
"""

__version__ = "0.1.0"
