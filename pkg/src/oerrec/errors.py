"""Exception types shared across the package."""


class OerRecError(Exception):
    """Base class for all package errors."""


class ValidationError(OerRecError):
    """Input violates a documented precondition or range."""

    def __init__(self, message, field=None):
        super().__init__(message)
        self.field = field


class ConfigError(OerRecError):
    """Invalid configuration (weights, hyperparameters, study setup)."""


class TrainingError(OerRecError):
    """Dataset unusable for training (single class, empty, ...)."""


class ModelSelectionError(OerRecError):
    """No registered model is compatible with the available features."""


class UnknownJobError(OerRecError):
    """Job title absent from the market index at every fallback level."""


class UnknownSkillError(OerRecError):
    """Skill id absent from the lexicon or description corpus."""


class LevelExhausted(OerRecError):
    """No candidate left at the learner's current level for a skill."""

    def __init__(self, skill_id, level):
        super().__init__(f"no unconsumed OER at level {level.name} for skill {skill_id!r}")
        self.skill_id = skill_id
        self.level = level


class StoreIntegrityError(OerRecError):
    """Persisted store has dangling references."""

    def __init__(self, message, dangling=()):
        super().__init__(message)
        self.dangling = list(dangling)


class SchemaVersionError(OerRecError):
    """Persisted store was written by an incompatible schema version."""


class NotFoundError(OerRecError):
    """Referenced entity does not exist."""


class ConflictError(OerRecError):
    """Request valid in shape but illegal in the entity's current state."""
