"""Whitehead minimization for free groups.

Thin wrapper around the compiled _whmin module: free-group words, Nielsen and
Whitehead automorphisms, the maximal-edge and centroid heuristics, the WMIN
minimality classifier and the WR/HDWR/HPWR reduction engines.
"""

from ._whmin import (
    ModelBundle,
    NielsenAut,
    ReductionResult,
    WhiteheadAut,
    WhminError,
    Word,
    apply_sequence,
    cyclic_reduce,
    decide,
    enumerate_nielsen,
    enumerate_whitehead,
    feature_dim,
    feature_vector,
    free_reduce,
    gen_dataset,
    hdwr,
    hpwr,
    inverse,
    load_models,
    mahalanobis_sq,
    multiply,
    nielsen_count,
    random_cyclically_reduced_word,
    random_reduced_word,
    train_models,
    whitehead_count,
    wr,
)

__all__ = [
    "ModelBundle",
    "NielsenAut",
    "ReductionResult",
    "WhiteheadAut",
    "WhminError",
    "Word",
    "apply_sequence",
    "cyclic_reduce",
    "decide",
    "enumerate_nielsen",
    "enumerate_whitehead",
    "feature_dim",
    "feature_vector",
    "free_reduce",
    "gen_dataset",
    "hdwr",
    "hpwr",
    "inverse",
    "load_models",
    "mahalanobis_sq",
    "multiply",
    "nielsen_count",
    "random_cyclically_reduced_word",
    "random_reduced_word",
    "train_models",
    "whitehead_count",
    "wr",
]

__version__ = "0.1.0"
