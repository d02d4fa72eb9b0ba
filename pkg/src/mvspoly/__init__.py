"""Minimal value set polynomials over finite fields.

Library layout:

- gf          exact arithmetic in F_{p^N} with a distinguished base F_q
- poly        sparse univariate polynomials over the ambient field
- linearized  q-additive (twisted) polynomials, Ore left division, kernels
- mvsp        minimality test, Mills criterion, reductions, classification
- wspace      orbit tables, explicit bases and enumeration of member spaces
- oracle      independent brute-force ground truth used to cross-check
- cli         command line front end
"""

from .errors import GuardError, InputError

__version__ = "0.1.0"

__all__ = ["GuardError", "InputError", "__version__"]
