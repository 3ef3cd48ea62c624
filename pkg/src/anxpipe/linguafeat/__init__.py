"""Engineered linguistic features: segmentation, families, registry, selection."""

from .extract import (
    FeatureMatrix,
    Standardizer,
    apply_standardizer,
    extract_feature_matrix,
    fit_standardizer,
    read_feature_matrix,
    write_feature_matrix,
)
from .families import (
    FeatureError,
    lexical_richness_features,
    lexicon_features,
    morphosyntactic_features,
    ngram_register_features,
)
from .kolmogorov import kolmogorov_complexity
from .readability import READABILITY_FEATURES, readability_features
from .registry import DEFAULT_TARGET, FeatureRegistry, build_registry
from .resources import GENRES, ResourceBundle, ResourceError, load_resources, sample_resources_path
from .rfe import recursive_feature_elimination
from .segmentation import (
    SegmentationError,
    Sentence,
    Token,
    count_syllables,
    segment_sentences,
    tokenize,
)
from .syntax import SyntaxAnnotation, annotate_syntax

__all__ = [
    "FeatureMatrix",
    "Standardizer",
    "apply_standardizer",
    "extract_feature_matrix",
    "fit_standardizer",
    "read_feature_matrix",
    "write_feature_matrix",
    "FeatureError",
    "lexical_richness_features",
    "lexicon_features",
    "morphosyntactic_features",
    "ngram_register_features",
    "kolmogorov_complexity",
    "READABILITY_FEATURES",
    "readability_features",
    "DEFAULT_TARGET",
    "FeatureRegistry",
    "build_registry",
    "GENRES",
    "ResourceBundle",
    "ResourceError",
    "load_resources",
    "sample_resources_path",
    "recursive_feature_elimination",
    "SegmentationError",
    "Sentence",
    "Token",
    "count_syllables",
    "segment_sentences",
    "tokenize",
    "SyntaxAnnotation",
    "annotate_syntax",
]
