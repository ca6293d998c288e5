"""Exact arithmetic for the interleaving monoidal structure on bijections of N,
and a unification-based coherence check for its associator terms."""

from .residue import (Branch, CongruenceClass, ModularBijection, apply, canonicalize,
                      compose, equal, identity, interleave, invert, pretty, sigma, tau)
from .terms import Compose, Gen, Inverse, Star, evaluate, parse, random_term, to_text
from .free import Leaf, Node, WArrow, canonical_term, enumerate_trees, rank, sub_arrow
from .lifter import Diagram, Verdict, coherence_equal, infer_typing, unify, verify_diagram
from .harness import VerifiedIdentity, generate_identities

__all__ = [
    "Branch", "CongruenceClass", "ModularBijection", "apply", "canonicalize", "compose",
    "equal", "identity", "interleave", "invert", "pretty", "sigma", "tau",
    "Compose", "Gen", "Inverse", "Star", "evaluate", "parse", "random_term", "to_text",
    "Leaf", "Node", "WArrow", "canonical_term", "enumerate_trees", "rank", "sub_arrow",
    "Diagram", "Verdict", "coherence_equal", "infer_typing", "unify", "verify_diagram",
    "VerifiedIdentity", "generate_identities",
]
