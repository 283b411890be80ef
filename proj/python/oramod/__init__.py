"""Finite models of oracle modalities, nuclei and realizability.

Frame elements are carrier indices; tables map each index to the index of
its image. Labels of an element come from ``Frame.labels``.
"""

from ._oramod import (
    Frame,
    OramodError,
    Pca,
    __version__,
    enumerate_nuclei,
    lem_oracle,
    oracle_modality,
    oracle_modality_bruteforce,
    retract,
    run,
    sheaf_classify,
    sup_nuclei,
    tree_suites,
    validate_nucleus,
    verify,
)

__all__ = [
    "Frame",
    "OramodError",
    "Pca",
    "__version__",
    "enumerate_nuclei",
    "lem_oracle",
    "oracle_modality",
    "oracle_modality_bruteforce",
    "retract",
    "run",
    "sheaf_classify",
    "sup_nuclei",
    "tree_suites",
    "validate_nucleus",
    "verify",
]
