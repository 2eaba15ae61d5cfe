"""Quality scoring of OER records and the 0.5-threshold control filter."""

from __future__ import annotations

from dataclasses import dataclass, field

from oerrec.core import OerRecord
from oerrec.errors import ModelSelectionError
from oerrec.quality.forest import ForestModel, predict_proba
from oerrec.quality.lattice import (
    MetadataRecord,
    ModelRegistry,
    PropertyFeatures,
    metadata_feature_row,
    select_alternate_model,
)

DEFAULT_THRESHOLD = 0.5


def quality_scores(
    oer: OerRecord,
    prop_registry: ModelRegistry,
    meta_model: ForestModel,
    meta_weights: dict[str, float] | None = None,
) -> tuple[float, float]:
    """(quality_meta, quality_prop) for one record.

    Raises ModelSelectionError when no property model matches the record's
    available features; callers treat that as "unscorable" (excluded).
    """
    meta_row = metadata_feature_row(MetadataRecord.from_oer(oer), meta_weights)
    quality_meta = predict_proba(meta_model, meta_row)

    available = PropertyFeatures.from_oer(oer).available()
    if not available:
        raise ModelSelectionError(f"OER {oer.id!r} has no property features")
    model = select_alternate_model(prop_registry, set(available))
    quality_prop = predict_proba(model, available)
    return quality_meta, quality_prop


@dataclass
class FilterOutcome:
    kept: list[OerRecord] = field(default_factory=list)
    removed: list[OerRecord] = field(default_factory=list)
    reasons: dict[str, str] = field(default_factory=dict)  # oer id -> reason


def quality_filter(corpus: list[OerRecord], threshold: float = DEFAULT_THRESHOLD) -> FilterOutcome:
    """Partition scored records: drop when EITHER score is strictly below the
    threshold or the record is unscorable (missing either score). Records at
    exactly the threshold are kept."""
    outcome = FilterOutcome()
    for oer in corpus:
        if oer.quality_meta is None or oer.quality_prop is None:
            outcome.removed.append(oer)
            outcome.reasons[oer.id] = "unscorable"
        elif oer.quality_meta < threshold:
            outcome.removed.append(oer)
            outcome.reasons[oer.id] = f"quality_meta {oer.quality_meta:.4f} < {threshold}"
        elif oer.quality_prop < threshold:
            outcome.removed.append(oer)
            outcome.reasons[oer.id] = f"quality_prop {oer.quality_prop:.4f} < {threshold}"
        else:
            outcome.kept.append(oer)
    return outcome
