"""Exact classification engine for rank-3 fusion rings with premodular data.

Subpackages and modules:

- ``exactnum``: integer polynomials, real algebraic numbers, roots of unity,
  complex ball arithmetic.
- ``fusion``: rank-3 based rings, axioms, canonical forms, enumeration,
  Frobenius-Perron dimensions.
- ``characters``: the three ring homomorphisms of a rank-3 ring and their
  Galois orbit structure.
- ``premodular``: S-matrices from (dimension, twist) data, structure
  classification, and the ribbon-witness search.
- ``classify``: the case-by-case admissibility filters and the full
  classification driver with machine-checkable certificates.
- ``cli``: command-line interface.
"""

__version__ = "0.1.0"
