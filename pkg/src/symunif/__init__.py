"""Unification with parameters in the modal logics KB, KDB and KTB.

Formulas, finite symmetric Kripke models, a decision procedure with
certified countermodels, substitutions, the sigma/tau/lambda/mu families
with the nullary formula, and a registry of executable lemma checks.
"""

from .constructions import (
    bridge_model, extract_witness_path, lambda_k, mu_k, nullary_formula, sigma_k, tau_k,
)
from .formula import (
    BOT, TOP, P, Q, X, And, Atom, AtomRef, Bot, Box, Diamond, Formula, Iff, Imp, Neg, Or,
    atoms, boxminus, boxminus_bounded, boxminus_iter, boxplus, boxplus_bounded, boxplus_iter,
    degree, par, parameters, parse, to_text, var, variables,
)
from .kripke import (
    Frame, Model, PointedModel, chain_model, disjoint_union, satisfies, symmetric_unravelling,
)
from .prover import Invalid, Logic, Unknown, Valid, brute_force_countermodel, decide
from .substitution import (
    IDENTITY, Substitution, apply, compose, equivalent, is_unifier,
    more_general_with_witness, restrict_to,
)

__version__ = "0.1.0"

__all__ = [
    "And",
    "Atom",
    "AtomRef",
    "BOT",
    "Bot",
    "Box",
    "Diamond",
    "Formula",
    "Frame",
    "IDENTITY",
    "Invalid",
    "Logic",
    "Unknown",
    "Valid",
    "Iff",
    "Imp",
    "Model",
    "Neg",
    "Or",
    "P",
    "PointedModel",
    "Q",
    "Substitution",
    "TOP",
    "X",
    "apply",
    "atoms",
    "boxminus",
    "boxminus_bounded",
    "boxminus_iter",
    "boxplus",
    "boxplus_bounded",
    "boxplus_iter",
    "bridge_model",
    "brute_force_countermodel",
    "chain_model",
    "compose",
    "decide",
    "degree",
    "disjoint_union",
    "equivalent",
    "extract_witness_path",
    "is_unifier",
    "lambda_k",
    "more_general_with_witness",
    "mu_k",
    "nullary_formula",
    "par",
    "parameters",
    "parse",
    "restrict_to",
    "satisfies",
    "sigma_k",
    "symmetric_unravelling",
    "tau_k",
    "to_text",
    "var",
    "variables",
]
