"""Quality engine: property/metadata forests, lattice registry, control filter."""

from oerrec.quality.control import FilterOutcome, quality_filter, quality_scores
from oerrec.quality.forest import ForestModel, predict_proba, train_forest
from oerrec.quality.lattice import (
    METADATA_FEATURES,
    METADATA_FIELDS,
    PROPERTY_FEATURES,
    MetadataRecord,
    ModelRegistry,
    PropertyFeatures,
    lattice_feature_sets,
    metadata_completeness_score,
    select_alternate_model,
    train_metadata_model,
    train_property_registry,
)

__all__ = [
    "FilterOutcome",
    "ForestModel",
    "METADATA_FEATURES",
    "METADATA_FIELDS",
    "MetadataRecord",
    "ModelRegistry",
    "PROPERTY_FEATURES",
    "PropertyFeatures",
    "lattice_feature_sets",
    "metadata_completeness_score",
    "predict_proba",
    "quality_filter",
    "quality_scores",
    "select_alternate_model",
    "train_forest",
    "train_metadata_model",
    "train_property_registry",
]
