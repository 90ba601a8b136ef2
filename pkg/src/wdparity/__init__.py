"""Exact parity calculus for symplectic Weil-Deligne data.

The package computes the local sign of an essentially self-dual
Weil-Deligne representation by two independent routes, checks the
reduction identities that make the routes agree, evaluates the
cohomology dimension formulary attached to de Rham numerology pairs,
and assembles the modified global parity invariant from local
contributions.  All arithmetic is exact: scalars live in a cyclotomic
field with an adjoined square root of the residue cardinality.
"""

from .corpus import CorpusCase, SuiteResult, corpus, random_case, selfcheck
from .datum import FormularyInput, LocalInput, parse, parse_text, serialize
from .eps import (HodgeTateData, PSTLocalDatum, d_invariants,
                  det_at_minus_one, det_galois_at_minus_one, eps_sign,
                  h0_dminus, panchishkin_eps, reduction_identity_checks,
                  unramified_quotient_det)
from .errors import (ClassificationError, DatumError, LinAlgError,
                     NonSplitError, NumerologyError, PairingError,
                     PurityError, RepInvariantError, ScalarError,
                     UnsupportedInputError, WDParityError, WeightAbsentError)
from .numerology import (DeRhamNumerology, FormularyOutput,
                         PanchishkinSequenceResult, cyclotomic_rank_one,
                         euler_tate_check, formulary, panchishkin_sequence,
                         trivial_rank_one)
from .parity import (AwayPlace, GlobalPointDatum, PAdicPlace, ParityReport,
                     eps_infinity, family_constancy_check, global_eps,
                     modified_invariants, validate_away_place,
                     validate_datum, validate_pst_datum)
from .report import IdentityCheck, IdentityReport
from .scalars import CWScalar, CycloWeilField
from .symplectic import (LagrangianSplit, SnakeForm, SympPairing,
                         SymplecticBlock, decompose_symplectic,
                         hyperbolic_pair, lagrangian_split, model_block,
                         pair_value, parity_congruence_check,
                         reassembly_certificate, snake_pairing,
                         special_symplectic, split_from_blocks,
                         validate_pairing)
from .wd import (MonodromyFiltration, PurityResult, WDRep, direct_sum, dual,
                 eigen_data, exact_eigenspace, is_frobenius_semisimple,
                 is_isomorphic, is_pure, jordan_chains, make_sp, make_unr,
                 monodromy_filtration, quotient_rep, restrict_rep,
                 semisimplify, tensor, twist, weight_pieces)

__all__ = [
    "AwayPlace",
    "CWScalar",
    "ClassificationError",
    "CorpusCase",
    "CycloWeilField",
    "DatumError",
    "DeRhamNumerology",
    "FormularyInput",
    "FormularyOutput",
    "GlobalPointDatum",
    "HodgeTateData",
    "IdentityCheck",
    "IdentityReport",
    "LagrangianSplit",
    "LinAlgError",
    "LocalInput",
    "MonodromyFiltration",
    "NonSplitError",
    "NumerologyError",
    "PAdicPlace",
    "PSTLocalDatum",
    "PairingError",
    "PanchishkinSequenceResult",
    "ParityReport",
    "PurityError",
    "PurityResult",
    "RepInvariantError",
    "ScalarError",
    "SnakeForm",
    "SuiteResult",
    "SympPairing",
    "SymplecticBlock",
    "UnsupportedInputError",
    "WDParityError",
    "WDRep",
    "WeightAbsentError",
    "corpus",
    "cyclotomic_rank_one",
    "d_invariants",
    "decompose_symplectic",
    "det_at_minus_one",
    "det_galois_at_minus_one",
    "direct_sum",
    "dual",
    "eigen_data",
    "eps_infinity",
    "eps_sign",
    "euler_tate_check",
    "exact_eigenspace",
    "family_constancy_check",
    "formulary",
    "global_eps",
    "h0_dminus",
    "hyperbolic_pair",
    "is_frobenius_semisimple",
    "is_isomorphic",
    "is_pure",
    "jordan_chains",
    "lagrangian_split",
    "make_sp",
    "make_unr",
    "model_block",
    "modified_invariants",
    "monodromy_filtration",
    "pair_value",
    "panchishkin_eps",
    "panchishkin_sequence",
    "parity_congruence_check",
    "parse",
    "parse_text",
    "quotient_rep",
    "random_case",
    "reassembly_certificate",
    "reduction_identity_checks",
    "restrict_rep",
    "selfcheck",
    "semisimplify",
    "serialize",
    "snake_pairing",
    "special_symplectic",
    "split_from_blocks",
    "tensor",
    "trivial_rank_one",
    "twist",
    "unramified_quotient_det",
    "validate_away_place",
    "validate_datum",
    "validate_pairing",
    "validate_pst_datum",
    "weight_pieces",
]
