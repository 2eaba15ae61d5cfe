"""Domain types and the small pure normalization functions they rely on.

Everything here is an immutable-ish value type or a pure function; records are
plain dataclasses and safe to share read-only across threads.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field, replace
from datetime import date, datetime

from oerrec.errors import ValidationError

# Bump when the source registry order or membership changes.
SOURCE_REGISTRY_VERSION = 1


class ExpertiseLevel(enum.IntEnum):
    """Four-step ordinal expertise scale."""

    BEGINNER = 0
    INTERMEDIATE = 1
    ADVANCED = 2
    MASTER = 3

    @classmethod
    def parse(cls, value) -> "ExpertiseLevel":
        if isinstance(value, cls):
            return value
        if isinstance(value, int) and not isinstance(value, bool):
            try:
                return cls(value)
            except ValueError:
                raise ValidationError(f"expertise level out of range: {value}", field="level")
        if isinstance(value, str):
            try:
                return cls[value.strip().upper()]
            except KeyError:
                raise ValidationError(f"unknown expertise level: {value!r}", field="level")
        raise ValidationError(f"cannot parse expertise level from {value!r}", field="level")

    def next_up(self) -> "ExpertiseLevel":
        if self is ExpertiseLevel.MASTER:
            raise ValidationError("already at maximum level", field="level")
        return ExpertiseLevel(self.value + 1)


class SourceRepository(enum.Enum):
    """The seven registered repositories; values are the fixed one-hot indices."""

    YOUTUBE = 0
    MIT_OCW = 1
    SKILLS_COMMONS = 2
    OER_COMMONS = 3
    WISC_ONLINE = 4
    KHAN_ACADEMY = 5
    WIKIPEDIA = 6

    @property
    def one_hot_index(self) -> int:
        return self.value

    @property
    def media_kind(self) -> str:
        """Length normalization bucket: video sources vs text sources."""
        return "video" if self in (SourceRepository.YOUTUBE, SourceRepository.KHAN_ACADEMY) else "text"

    @classmethod
    def parse(cls, tag) -> "SourceRepository":
        if isinstance(tag, cls):
            return tag
        if isinstance(tag, int) and not isinstance(tag, bool):
            try:
                return cls(tag)
            except ValueError:
                raise ValidationError(f"source index out of range: {tag}", field="source")
        if isinstance(tag, str):
            try:
                return cls[tag.strip().upper()]
            except KeyError:
                raise ValidationError(f"unknown source repository: {tag!r}", field="source")
        raise ValidationError(f"cannot parse source from {tag!r}", field="source")


N_SOURCES = len(SourceRepository)


@dataclass(frozen=True)
class NativeRate:
    """Source-native popularity rating: star scale or like/dislike counts.

    Exactly one variant is populated.
    """

    star_rating: float | None = None
    likes: int | None = None
    dislikes: int | None = None

    def __post_init__(self):
        has_stars = self.star_rating is not None
        has_votes = self.likes is not None or self.dislikes is not None
        if has_stars == has_votes:
            raise ValidationError("NativeRate needs exactly one of star_rating or like/dislike counts")
        if has_stars and not 0.0 <= self.star_rating <= 5.0:
            raise ValidationError(f"star rating out of [0,5]: {self.star_rating}", field="star_rating")
        if has_votes:
            likes = self.likes if self.likes is not None else 0
            dislikes = self.dislikes if self.dislikes is not None else 0
            if likes < 0 or dislikes < 0:
                raise ValidationError("like/dislike counts must be non-negative")
            object.__setattr__(self, "likes", likes)
            object.__setattr__(self, "dislikes", dislikes)


@dataclass
class OerRecord:
    """One educational resource with metadata, properties, and derived scores."""

    id: str
    source: SourceRepository
    title: str
    target_skill: str
    level: ExpertiseLevel
    url: str
    description: str | None = None
    length: float | None = None  # seconds
    transcription: str | None = None
    view_count: int | None = None
    native_rate: NativeRate | None = None
    ranking_position: int | None = None
    # derived
    ranking_position_score: float | None = None
    skill_similarity: float | None = None
    quality_meta: float | None = None
    quality_prop: float | None = None

    def __post_init__(self):
        if self.ranking_position is not None:
            if self.ranking_position_score is None:
                self.ranking_position_score = ranking_position_score(self.ranking_position)
        if self.view_count is not None and self.view_count < 0:
            raise ValidationError("view_count must be non-negative", field="view_count")
        if self.length is not None and self.length < 0:
            raise ValidationError("length must be non-negative", field="length")
        for name in ("ranking_position_score", "quality_meta", "quality_prop"):
            value = getattr(self, name)
            if value is not None and not 0.0 <= value <= 1.0:
                raise ValidationError(f"{name} out of [0,1]: {value}", field=name)
        if self.skill_similarity is not None and not -1.0 <= self.skill_similarity <= 1.0:
            raise ValidationError(f"skill_similarity out of [-1,1]: {self.skill_similarity}")

    def with_quality(self, quality_meta: float, quality_prop: float) -> "OerRecord":
        return replace(self, quality_meta=quality_meta, quality_prop=quality_prop)


@dataclass
class JobExperience:
    job_title: str
    industry: str
    skills: list[tuple[str, ExpertiseLevel]] = field(default_factory=list)


@dataclass
class SkillGoal:
    skill_id: str
    current_level: ExpertiseLevel


@dataclass
class Goals:
    target_job: str
    skills: list[SkillGoal] = field(default_factory=list)

    def level_for(self, skill_id: str) -> ExpertiseLevel | None:
        for goal in self.skills:
            if goal.skill_id == skill_id:
                return goal.current_level
        return None


@dataclass
class LearnerProfile:
    id: str
    country: str
    city: str
    birth_date: date
    gender: str | None = None
    job_experiences: list[JobExperience] = field(default_factory=list)
    goals: Goals | None = None
    preference: list[float] | None = None  # 12 components in [0,1]

    def __post_init__(self):
        if not self.country or not self.country.strip():
            raise ValidationError("country must be non-empty", field="country")
        if not self.city or not self.city.strip():
            raise ValidationError("city must be non-empty", field="city")
        if self.goals is not None:
            seen = set()
            for goal in self.goals.skills:
                if goal.skill_id in seen:
                    raise ValidationError(f"duplicate goal skill {goal.skill_id!r}", field="skills")
                seen.add(goal.skill_id)

    def experience_skill_ids(self) -> set[str]:
        return {skill for exp in self.job_experiences for skill, _ in exp.skills}


class RecommendationStatus(enum.Enum):
    IN_PROGRESS = "in_progress"
    FINISHED = "finished"
    CHANGED = "changed"
    IRRELEVANT = "irrelevant"


@dataclass
class RatedRecommendation:
    """One issued recommendation with its feature snapshot and feedback state."""

    rec_id: str
    learner_id: str
    oer_id: str
    skill_id: str
    status: RecommendationStatus
    issued_at: datetime
    feature_vector: list[float]  # X snapshot at issue time
    rating: int | None = None
    finished_at: datetime | None = None

    def __post_init__(self):
        if self.rating is not None:
            if self.status is not RecommendationStatus.FINISHED:
                raise ValidationError("rating is only legal on finished recommendations", field="rating")
            if self.rating not in (1, 2, 3, 4, 5):
                raise ValidationError(f"rating out of 1..5: {self.rating}", field="rating")


def ranking_position_score(position: int) -> float:
    """Reciprocal of the 1-based position in the source repository search order."""
    if not isinstance(position, int) or isinstance(position, bool) or position < 1:
        raise ValidationError(f"ranking position must be a positive integer, got {position!r}")
    return 1.0 / position


def normalize_rating(rating: int) -> float:
    """Map the 1..5 satisfaction scale affinely onto [0, 1]."""
    if rating not in (1, 2, 3, 4, 5):
        raise ValidationError(f"rating out of 1..5: {rating!r}", field="rating")
    return (rating - 1) / 4


def normalize_length(length_seconds: float, corpus_min: float, corpus_max: float) -> float:
    """Min-max scale a duration against its media kind's corpus range.

    The value is clamped into [corpus_min, corpus_max] first; a degenerate
    range maps everything to 0.5.
    """
    if length_seconds < 0:
        raise ValidationError(f"length must be non-negative, got {length_seconds}")
    if corpus_min > corpus_max:
        raise ValidationError(f"corpus_min {corpus_min} > corpus_max {corpus_max}")
    if corpus_max == corpus_min:
        return 0.5
    clamped = min(max(length_seconds, corpus_min), corpus_max)
    return (clamped - corpus_min) / (corpus_max - corpus_min)


def native_rate_to_unit(rate: NativeRate) -> float:
    """Collapse either rate variant to [0, 1]; zero total votes is neutral 0.5."""
    if rate.star_rating is not None:
        return rate.star_rating / 5.0
    total = rate.likes + rate.dislikes
    if total == 0:
        return 0.5
    return rate.likes / total
