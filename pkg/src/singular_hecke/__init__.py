"""Exact invariants of closed singular braids through singular Hecke algebras."""

from .braid import BraidWord, Letter, ParseError, WordSum, word
from .coeffs import LaurentPoly, RationalFn, substitute, var
from .hecke import HeckeElem, ocneanu_trace
from .invariant import (
    NotExpressible,
    basis_invariants,
    canonical_invariant,
    invariant,
    invariant_raw,
    resolution_invariant,
    to_canonical,
)
from .singular import SingularElem, probe_zero, rewrite_to_spanning
from .traces import basis_trace, independence_matrix, markov_class_eq, trace_vector, universal_trace
from .xypoly import InvariantPoly

__version__ = "0.1.0"

__all__ = [
    "BraidWord", "Letter", "ParseError", "WordSum", "word",
    "LaurentPoly", "RationalFn", "substitute", "var",
    "HeckeElem", "ocneanu_trace",
    "NotExpressible", "basis_invariants", "canonical_invariant", "invariant",
    "invariant_raw", "resolution_invariant", "to_canonical",
    "SingularElem", "probe_zero", "rewrite_to_spanning",
    "basis_trace", "independence_matrix", "markov_class_eq", "trace_vector", "universal_trace",
    "InvariantPoly",
]
