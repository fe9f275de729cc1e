from .generate import random_autpair, random_pants, random_trefoil_rep
from .hom import HomSpace, StarMorphism, ext1_autpair, hom_autpair, hom_dims, hom_star
from .reps import (
    AutPair,
    BadAutPair,
    ClassificationResult,
    InvalidRep,
    Isomorphism,
    ShapeMismatch,
    StarSumRep,
    ValidationReport,
    classify,
    from_autpair,
    graph_slope,
    permute,
    roundtrip_witness,
    same_image,
    star_from_graphs,
    to_autpair,
    transform,
    validate,
)
from .serialize import (
    SchemaError,
    autpair_from_json,
    autpair_to_json,
    load_object,
    rep_from_json,
    rep_to_json,
)
