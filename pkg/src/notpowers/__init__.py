"""Counting non-k-th powers in finite groups, with executable checks of the bounds they obey."""

from .errors import (
    CapExceeded,
    GroupError,
    InvalidParameters,
    NoIdentity,
    NoInverse,
    NotAssociative,
    NotClosed,
    NotNormal,
    NotPrime,
    ParseError,
)
from .families import FamilySpec, builtin_corpus, make, parse_spec
from .group import (
    ConjugacyClass,
    FiniteGroup,
    PermutationGenSet,
    Subgroup,
    all_subgroups,
    build_from_cayley,
    build_from_permutations,
    center,
    centralizer,
    conjugacy_classes,
    direct_product,
    is_normal,
    power,
    quotient,
    semidirect_product,
    subgroup_generated,
)
from .powers import (
    NonPowerProfile,
    PowerAnalysis,
    analyze_powers,
    analyze_powers_in_subgroup,
    exponent,
    generator_partition,
    non_power_profile,
    p_singular_data,
    reduce_k_to_prime,
)
from .structure import (
    Case,
    ClassificationOutcome,
    FrobeniusStructure,
    central_involution_quotient_check,
    classify_new_jumps,
    frobenius_structure,
    is_theoremB_exception,
    p_residual,
    sylow_subgroup,
)
from .verifier import ALL_CHECKS, CheckResult, Status, VerificationReport, run_suite

__version__ = "0.1.0"
