"""Arithmetic obstructions to embedding rational homology balls B_{p,q}.

Submodules:

    modarith   square roots modulo p^2 and friends
    hjchain    Hirzebruch-Jung strings and the d-vector recursion
    lattice    unimodular Gram completions, kernel vectors, extension classes
    markov     Markov triples p^2 + s^2 + t^2 = 3pst
    obstruct   per-pair classification and range search
    cli        command line front end (``qhb``)
"""

from .errors import (
    ConsistencyFailure,
    InvalidPair,
    ModulusTooLarge,
    NoUnimodularCompletion,
)
from .obstruct import ObstructionReport, classify, search

__all__ = [
    "ConsistencyFailure",
    "InvalidPair",
    "ModulusTooLarge",
    "NoUnimodularCompletion",
    "ObstructionReport",
    "classify",
    "search",
]

__version__ = "0.1.0"
