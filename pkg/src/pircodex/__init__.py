"""Private information retrieval over linear-coded distributed storage.

Exact finite-field and coding-theory primitives, achievable-rate matrices,
the repetition/round retrieval schedule, an in-memory storage simulator with
privacy audits, and capacity analysis with an agreement scanner.
"""

from .fields import Field, FieldElement, FieldMismatchError
from .fmatrix import Matrix, SingularMatrixError
from .codes import (
    BudgetExceededError,
    FieldTooSmallError,
    InvalidCodeError,
    InvalidPolynomialError,
    LinearCode,
    UnsupportedFamilyError,
    automorphism_family,
    code_cyclic,
    code_from_generator,
    code_from_text,
    code_mds,
    code_reed_muller,
    code_repetition,
    code_to_text,
    load_code,
    rotation_permutations,
    save_code,
    translation_permutations,
)
from .ratematrix import (
    InterferencePair,
    RateMatrix,
    RateMatrixError,
    SearchOutcome,
    capacity_ratio_pairs,
    interference,
    interference_to_rate_matrix,
    load_rate_matrix,
    rate_matrix_from_permutations,
    rate_matrix_from_text,
    rate_matrix_to_text,
    ratio_bound_check,
    s_set,
    save_rate_matrix,
    search_rate_matrix,
    valid_row_supports,
    validate_rate_matrix,
    verify_claim1,
)
from .protocol import (
    DecodeIntegrityError,
    LedgerError,
    ProtocolParams,
    Query,
    QueryPlan,
    SideLedger,
    build_queries,
    d_of,
    decode,
    n_of,
    node_respond,
    total_download,
    u_of,
)
from .dss import (
    AuditReport,
    SessionResult,
    StorageArray,
    encode_storage,
    privacy_audit,
    random_files,
    run_session,
)
from .analysis import (
    Classification,
    NecessaryConditionResult,
    ScanReport,
    ScanRow,
    achievable_rate,
    classify,
    conjecture_scan,
    min_distance_rate_bound,
    dedupe_binary_codes,
    enumerate_rref_generators,
    find_capacity_matrix,
    mds_pir_capacity,
    mds_pir_capacity_limit,
    necessary_condition,
    rate_formula,
    rate_formula_limit,
    scan_code,
)

__version__ = "0.1.0"
