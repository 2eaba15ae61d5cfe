"""Model registry over the feature-missingness lattice, plus the metadata model.

Property models: the full five-feature set and every subset obtained by
dropping one or two of the realistically-missing fields {rate, view_count,
skill_similarity}. Scoring picks, among models whose features are all
available, the one with the highest validation F1.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from pathlib import Path

import numpy as np

from oerrec.core import OerRecord, native_rate_to_unit
from oerrec.errors import ConfigError, ModelSelectionError, ValidationError
from oerrec.quality.forest import ForestModel, train_forest

PROPERTY_FEATURES = ["length", "rate", "skill_similarity", "view_count", "ranking_position_score"]
DROPPABLE_FEATURES = ("rate", "view_count", "skill_similarity")

METADATA_FIELDS = ["title", "description", "level", "length", "subject", "language", "url", "provider"]
METADATA_FEATURES = ["has_" + f for f in METADATA_FIELDS] + ["completeness"]


def lattice_feature_sets() -> list[tuple[str, ...]]:
    """Feature subsets to train, in a fixed order: full, drop-one, drop-two."""
    sets = [tuple(PROPERTY_FEATURES)]
    for k in (1, 2):
        for dropped in combinations(DROPPABLE_FEATURES, k):
            sets.append(tuple(f for f in PROPERTY_FEATURES if f not in dropped))
    return sets


@dataclass
class PropertyFeatures:
    """Optional raw property values of one OER; at least one must be present."""

    length: float | None = None
    rate: float | None = None
    skill_similarity: float | None = None
    view_count: float | None = None
    ranking_position_score: float | None = None

    @classmethod
    def from_oer(cls, oer: OerRecord) -> "PropertyFeatures":
        return cls(
            length=oer.length,
            rate=native_rate_to_unit(oer.native_rate) if oer.native_rate is not None else None,
            skill_similarity=oer.skill_similarity,
            view_count=float(oer.view_count) if oer.view_count is not None else None,
            ranking_position_score=oer.ranking_position_score,
        )

    def available(self) -> dict[str, float]:
        return {name: float(v) for name in PROPERTY_FEATURES if (v := getattr(self, name)) is not None}


@dataclass
class ModelRegistry:
    """Trained property models keyed by feature subset; must include the full set."""

    models: list[ForestModel]

    def __post_init__(self):
        seen = set()
        for model in self.models:
            key = tuple(model.feature_set)
            if key in seen:
                raise ValidationError(f"duplicate feature subset in registry: {key}")
            seen.add(key)
        if tuple(PROPERTY_FEATURES) not in seen:
            raise ValidationError("registry must contain the full-feature model")

    def select(self, available: set[str]) -> ForestModel:
        return select_alternate_model(self, available)

    def save(self, directory) -> None:
        directory = Path(directory)
        directory.mkdir(parents=True, exist_ok=True)
        names = []
        for i, model in enumerate(self.models):
            name = f"properties_{i:02d}.json"
            model.save(directory / name)
            names.append(name)
        (directory / "registry.json").write_text(
            "\n".join(names) + "\n", encoding="utf-8"
        )

    @classmethod
    def load(cls, directory) -> "ModelRegistry":
        directory = Path(directory)
        names = (directory / "registry.json").read_text(encoding="utf-8").split()
        return cls(models=[ForestModel.load(directory / name) for name in names])


def select_alternate_model(registry: ModelRegistry, available: set[str]) -> ForestModel:
    """Highest-F1 model whose features are all available.

    Ties go to the larger feature set, then to the lexicographically smallest
    feature-name tuple. Raises ModelSelectionError when nothing fits (the OER
    cannot be property-scored).
    """
    if not registry.models:
        raise ModelSelectionError("empty model registry")
    compatible = [m for m in registry.models if set(m.feature_set) <= set(available)]
    if not compatible:
        raise ModelSelectionError(f"no model compatible with available features {sorted(available)}")
    compatible.sort(key=lambda m: (-m.validation_f1, -len(m.feature_set), tuple(sorted(m.feature_set))))
    return compatible[0]


def train_property_registry(
    rows: list[dict],
    labels,
    seed: int = 0,
    **forest_params,
) -> ModelRegistry:
    """Train one forest per lattice subset on the rows complete for that subset.

    `rows` are dicts of feature name -> value or None; labels are 0/1.
    """
    labels = np.asarray(labels, dtype=np.int64)
    if len(rows) != len(labels):
        raise ValidationError("rows and labels length mismatch")
    models = []
    for feature_set in lattice_feature_sets():
        keep = [
            i for i, row in enumerate(rows)
            if all(row.get(name) is not None for name in feature_set)
        ]
        if not keep:
            raise ValidationError(f"no complete rows for feature subset {feature_set}")
        X = np.array([[float(rows[i][name]) for name in feature_set] for i in keep])
        y = labels[keep]
        models.append(train_forest(X, y, list(feature_set), seed=seed, **forest_params))
    return ModelRegistry(models=models)


@dataclass
class MetadataRecord:
    """Presence indicators for the eight scored metadata fields."""

    has_title: bool = False
    has_description: bool = False
    has_level: bool = False
    has_length: bool = False
    has_subject: bool = False
    has_language: bool = False
    has_url: bool = False
    has_provider: bool = False

    @classmethod
    def from_oer(cls, oer: OerRecord) -> "MetadataRecord":
        # language is not captured by the connectors, so it is always absent
        return cls(
            has_title=bool(oer.title and oer.title.strip()),
            has_description=bool(oer.description and oer.description.strip()),
            has_level=oer.level is not None,
            has_length=oer.length is not None,
            has_subject=bool(oer.target_skill and oer.target_skill.strip()),
            has_language=False,
            has_url=bool(oer.url and oer.url.strip()),
            has_provider=oer.source is not None,
        )

    def presence(self) -> dict[str, bool]:
        return {"has_" + f: bool(getattr(self, "has_" + f)) for f in METADATA_FIELDS}


def metadata_completeness_score(md: MetadataRecord, weights: dict[str, float] | None = None) -> float:
    """Sum of the weights of present fields; weights must sum to 1 (±1e-9)."""
    if weights is None:
        weights = {f: 1.0 / len(METADATA_FIELDS) for f in METADATA_FIELDS}
    if set(weights) != set(METADATA_FIELDS):
        raise ConfigError(f"weights must cover exactly the fields {METADATA_FIELDS}")
    if any(w < 0 for w in weights.values()):
        raise ConfigError("weights must be non-negative")
    total = sum(weights.values())
    if abs(total - 1.0) > 1e-9:
        raise ConfigError(f"weights must sum to 1, got {total}")
    presence = md.presence()
    return sum(weights[f] for f in METADATA_FIELDS if presence["has_" + f])


def metadata_feature_row(md: MetadataRecord, weights: dict[str, float] | None = None) -> dict[str, float]:
    row = {name: float(flag) for name, flag in md.presence().items()}
    row["completeness"] = metadata_completeness_score(md, weights)
    return row


def train_metadata_model(records: list[MetadataRecord], labels, seed: int = 0, **forest_params) -> ForestModel:
    """Train the quality-control-vs-not classifier on presence rows + completeness."""
    labels = np.asarray(labels, dtype=np.int64)
    X = np.array([[metadata_feature_row(md)[name] for name in METADATA_FEATURES] for md in records])
    return train_forest(X, labels, list(METADATA_FEATURES), seed=seed, **forest_params)
