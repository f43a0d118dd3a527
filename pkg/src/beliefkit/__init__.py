"""beliefkit: exact-rational belief functions over finite frames.

Frames and bitmask subsets, mass/belief/plausibility with exact rational
arithmetic, Dempster's rule with explicit conflict, population semantics
(response sets, labels, frequency estimators), deterministic and randomized
relabeling processes, and a verification harness with golden fixtures.
"""

from .errors import (
    BeliefkitError,
    EmptyPopulationError,
    FormatError,
    FrameDefinitionError,
    FrameMismatchError,
    LabelingSpecError,
    MassValidationError,
    NotABeliefFunctionError,
    PopulationError,
    RecordInvariantError,
    TableTooLargeError,
    TotalConflictError,
    UnknownElementError,
)
from .frames import (
    MAX_FRAME_SIZE,
    Frame,
    FrameSubset,
    decode_subset,
    encode_subset,
    make_frame,
    subset_from_names,
    subsets_of,
)
from .masses import (
    DENSE_TABLE_LIMIT,
    BeliefTable,
    MassFunction,
    Rational,
    belief,
    belief_table,
    categorical_mass,
    dempster_combine,
    make_mass,
    mass_from_belief,
    plausibility,
    vacuous_mass,
)
from .populations import (
    AxiomCheck,
    AxiomReport,
    Population,
    PopulationRecord,
    effective_response,
    estimate_belief_direct,
    estimate_mass,
    estimate_plausibility_direct,
    expr_holds,
    measure,
    measure_labeled,
    synthesize_population,
    validate_axioms,
)
from .relabel import (
    LabelingProcessSpec,
    expected_class_weights,
    general_relabel,
    simple_relabel,
)
from .harness import (
    COOT_DENOMINATOR,
    COOT_DERIVED_BEL,
    COOT_TABLE,
    Check,
    VerificationReport,
    coot_fixture,
    coot_frame,
    coot_label,
    coot_unlabeled_standin,
    verify_coot_printed_table,
    verify_general_relabel,
    verify_mte_axioms,
    verify_simple_relabel,
)
from .formats import (
    load_mass,
    load_population,
    mass_from_json_bytes,
    mass_to_json_bytes,
    population_from_csv_bytes,
    population_to_csv_bytes,
    save_mass,
    save_population,
)

__version__ = "0.1.0"

__all__ = [
    "BeliefkitError",
    "EmptyPopulationError",
    "FormatError",
    "FrameDefinitionError",
    "FrameMismatchError",
    "LabelingSpecError",
    "MassValidationError",
    "NotABeliefFunctionError",
    "PopulationError",
    "RecordInvariantError",
    "TableTooLargeError",
    "TotalConflictError",
    "UnknownElementError",
    "MAX_FRAME_SIZE",
    "Frame",
    "FrameSubset",
    "decode_subset",
    "encode_subset",
    "make_frame",
    "subset_from_names",
    "subsets_of",
    "DENSE_TABLE_LIMIT",
    "BeliefTable",
    "MassFunction",
    "Rational",
    "belief",
    "belief_table",
    "categorical_mass",
    "dempster_combine",
    "make_mass",
    "mass_from_belief",
    "plausibility",
    "vacuous_mass",
    "AxiomCheck",
    "AxiomReport",
    "Population",
    "PopulationRecord",
    "effective_response",
    "estimate_belief_direct",
    "estimate_mass",
    "estimate_plausibility_direct",
    "expr_holds",
    "measure",
    "measure_labeled",
    "synthesize_population",
    "validate_axioms",
    "LabelingProcessSpec",
    "expected_class_weights",
    "general_relabel",
    "simple_relabel",
    "COOT_DENOMINATOR",
    "COOT_DERIVED_BEL",
    "COOT_TABLE",
    "Check",
    "VerificationReport",
    "coot_fixture",
    "coot_frame",
    "coot_label",
    "coot_unlabeled_standin",
    "verify_coot_printed_table",
    "verify_general_relabel",
    "verify_mte_axioms",
    "verify_simple_relabel",
    "load_mass",
    "load_population",
    "mass_from_json_bytes",
    "mass_to_json_bytes",
    "population_from_csv_bytes",
    "population_to_csv_bytes",
    "save_mass",
    "save_population",
]
