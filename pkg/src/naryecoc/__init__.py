"""N-ary error-correcting output codes: deterministic coding matrices,
distance metrics, random search, verification oracles and ECOC ensembles."""

from .coding import (
    CapacityError,
    CodingError,
    CodingMatrix,
    CompositeBaseError,
    MatrixFormatError,
    build_m1,
    build_mk,
    build_mk_unchecked,
    build_punctured_walsh,
    build_walsh,
    format_matrix,
    from_rows,
    load_matrix,
    parse_matrix,
    save_matrix,
    shift,
)
from .datasets import Dataset, load_csv, load_sparse, make_blobs, save_csv, stratified_folds
from .ensemble import CVResult, EcocEnsemble, decode, evaluate_cv, train, train_dataset
from .factory import (
    DimensionPolicy,
    FactoryResult,
    RepairError,
    SearchConfig,
    deterministic_matrix,
    random_matrix,
    repair_duplicate_rows,
    truncate,
)
from .learners import DecisionTree, LearnerSpec, NearestCentroid
from .metrics import (
    DistanceReport,
    Metric,
    are_nary_complements,
    distance_report,
    hamming,
    multiplicity,
    validate_ecoc_properties,
)
from .verification import BudgetExceeded, check_theorem12, exhaustive_max_dT

__version__ = "0.1.0"
