"""knaplab: a lab for an ElGamal-disguised multiplicative-knapsack cipher.

The package implements the original cipher with its defects intact, the
ciphertext-only attacks those defects enable, a hardened variant with
consistency-checked decryption, and the security-game experiments that
measure both.
"""

from .errors import MalformedCiphertext, ParameterError
from .numtheory import (
    BitVector,
    PrimeSequence,
    SafePrimeGroup,
    SuperIncreasingSeq,
)

__version__ = "0.1.0"

__all__ = [
    "BitVector",
    "SuperIncreasingSeq",
    "PrimeSequence",
    "SafePrimeGroup",
    "ParameterError",
    "MalformedCiphertext",
    "__version__",
]
