"""Index of zero-sum sequences over finite cyclic groups.

Exact integer machinery for the index of residue sequences, minimal
zero-sum enumeration at length 5, normal-form witness search, and
per-prime verification sweeps with a caching CLI front end.
"""

__version__ = "0.1.0"

from .engine import (
    IndexCertificate,
    index_certificate,
    index_value,
    is_minimal_zero_sum,
    is_zero_sum,
    max_multiplicity,
    norm,
    orbit_canonical,
)
from .normalform import (
    CLOSED_FORM_CASES,
    DirectCertificate,
    NormalForm,
    Normalized,
    NotApplicable,
    WitnessResult,
    closed_form_witness,
    find_witness,
    interval_width,
    k1_width_bound,
    reduce_sequence,
)
from .residues import (
    CyclicOrder,
    ResidueSequence,
    is_prime,
    least_positive_residue,
    modular_inverse,
    primes_between,
    scale,
    units,
)
from .suites import (
    SMALL_PRIME_INDEX2_TABLE,
    AuditRow,
    ClassificationRecord,
    TheoremCheck,
    audit_cases,
    classify,
    enumerate_minimal,
    high_multiplicity_sweep,
    special_family,
    special_family_triple,
    verify_unique_family,
)

__all__ = [
    "__version__",
    "CyclicOrder",
    "ResidueSequence",
    "least_positive_residue",
    "units",
    "modular_inverse",
    "primes_between",
    "is_prime",
    "scale",
    "IndexCertificate",
    "norm",
    "index_certificate",
    "index_value",
    "is_zero_sum",
    "is_minimal_zero_sum",
    "max_multiplicity",
    "orbit_canonical",
    "NormalForm",
    "DirectCertificate",
    "Normalized",
    "NotApplicable",
    "WitnessResult",
    "reduce_sequence",
    "find_witness",
    "closed_form_witness",
    "CLOSED_FORM_CASES",
    "k1_width_bound",
    "interval_width",
    "ClassificationRecord",
    "AuditRow",
    "TheoremCheck",
    "classify",
    "enumerate_minimal",
    "special_family",
    "special_family_triple",
    "audit_cases",
    "verify_unique_family",
    "high_multiplicity_sweep",
    "SMALL_PRIME_INDEX2_TABLE",
]
