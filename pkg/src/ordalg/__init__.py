"""Finite ordered algebras: preorders, theories with ordered arities, models,
relations, clones and checks of Mal'tsev-type and protomodularity-type
conditions."""

from .algebra import (
    Algebra,
    Homomorphism,
    check_homomorphism,
    comma_algebra,
    eval_term,
    kernel_comma,
    product_algebra,
    subalgebra,
    validate_algebra,
)
from .checks import (
    Diagram,
    check_degenerate,
    check_maltsev_ideal_property,
    check_noncoherent_example,
    check_ord_maltsev,
    check_permutability,
    check_ss5l_instance,
)
from .clone import SearchBudget, find_maltsev, find_proto_witnesses, generate_clone, verify_witnesses
from .oset import MonotoneMap, OSet, chain, codiscrete, discrete, power, validate_oset
from .relations import Relation, compose, enumerate_congruences, enumerate_ideals, generate_relation
from .results import CheckResult
from .theory import Theory, builtin_theory, parse_term

__all__ = [
    "Algebra",
    "Homomorphism",
    "check_homomorphism",
    "comma_algebra",
    "eval_term",
    "kernel_comma",
    "product_algebra",
    "subalgebra",
    "validate_algebra",
    "Diagram",
    "check_degenerate",
    "check_maltsev_ideal_property",
    "check_noncoherent_example",
    "check_ord_maltsev",
    "check_permutability",
    "check_ss5l_instance",
    "SearchBudget",
    "find_maltsev",
    "find_proto_witnesses",
    "generate_clone",
    "verify_witnesses",
    "MonotoneMap",
    "OSet",
    "chain",
    "codiscrete",
    "discrete",
    "power",
    "validate_oset",
    "Relation",
    "compose",
    "enumerate_congruences",
    "enumerate_ideals",
    "generate_relation",
    "CheckResult",
    "Theory",
    "builtin_theory",
    "parse_term",
]

__version__ = "0.1.0"
